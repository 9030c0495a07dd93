// Copyright 2026 The dagcut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dagcut/gd_enum.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_set>

namespace dagcut {

void validate_instance(const GdInstance& inst) {
  if (inst.k < 1) throw InvariantViolation("k must be >= 1");
  if (inst.alpha < 1) throw InvariantViolation("alpha must be >= 1");
}

// ---------------------------------------------------------------------------
// Bin packing

namespace {

class Packer {
 public:
  Packer(const std::vector<std::size_t>& sizes, std::size_t k, std::size_t alpha)
      : sizes_(sizes), k_(k), alpha_(alpha), order_(sizes.size()), bin_of_(sizes.size()) {
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return sizes_[a] > sizes_[b]; });
    suffix_.assign(order_.size() + 1, 0);
    for (std::size_t i = order_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + sizes_[order_[i]];
  }

  bool run() { return place(0); }
  const std::vector<std::size_t>& bins() const { return bin_of_; }

 private:
  bool place(std::size_t i) {
    if (i == order_.size()) return true;
    std::size_t free = (alpha_ - loads_.size()) * k_;
    for (auto load : loads_) free += k_ - load;
    if (suffix_[i] > free) return false;

    const auto item = order_[i];
    const auto size = sizes_[item];
    for (std::size_t b = 0; b < loads_.size(); ++b) {
      if (loads_[b] + size > k_) continue;
      bool seen_equal = false;
      for (std::size_t c = 0; c < b && !seen_equal; ++c) seen_equal = loads_[c] == loads_[b];
      if (seen_equal) continue;
      loads_[b] += size;
      bin_of_[item] = b;
      if (place(i + 1)) return true;
      loads_[b] -= size;
    }
    if (loads_.size() < alpha_) {
      loads_.push_back(size);
      bin_of_[item] = loads_.size() - 1;
      if (place(i + 1)) return true;
      loads_.pop_back();
    }
    return false;
  }

  const std::vector<std::size_t>& sizes_;
  std::size_t k_;
  std::size_t alpha_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> suffix_;
  std::vector<std::size_t> loads_;
  std::vector<std::size_t> bin_of_;
};

}  // namespace

std::optional<ClusterAssignment> pack_components(const std::vector<std::size_t>& sizes,
                                                 std::size_t k, std::size_t alpha) {
  for (auto s : sizes) {
    if (s > k) return std::nullopt;
  }
  Packer packer(sizes, k, alpha);
  if (!packer.run()) return std::nullopt;

  ClusterAssignment a;
  std::vector<std::size_t> renumber(sizes.size(), SIZE_MAX);
  for (auto b : packer.bins()) {
    if (renumber[b] == SIZE_MAX) renumber[b] = a.cluster_count++;
    a.cluster_of.push_back(renumber[b]);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

std::vector<std::size_t> component_input_counts(const DuplicatedDag& d,
                                                const AcceptabilityReport& report) {
  std::vector<std::size_t> sizes;
  for (const auto& c : report.components) {
    std::size_t ins = 0;
    for (auto v : c.vertices) ins += d.graph.vertex(v).kind == VertexKind::Input;
    sizes.push_back(ins);
  }
  return sizes;
}

GdSolution build_solution(const GdInstance& inst, const CutSet& cuts, WitnessKind witness) {
  GdSolution sol;
  sol.cuts = cuts;
  sol.witness = witness;
  sol.duplicated = duplicate(inst.graph, cuts);
  const auto report = is_acceptable(sol.duplicated);
  if (!report.acceptable) throw InternalInvariantBroken("search returned an unacceptable cut set");
  auto packed = pack_components(component_input_counts(sol.duplicated, report), inst.k, inst.alpha);
  if (!packed) throw InternalInvariantBroken("search returned an unpackable cut set");
  sol.assignment = std::move(*packed);
  sol.stats = cluster_stats(sol.duplicated, sol.assignment);
  return sol;
}

bool is_io_edge(const DagGraph& g, const Edge& e) {
  return g.vertex(e.src).kind == VertexKind::Input || g.vertex(e.dst).kind == VertexKind::Output;
}

// Evaluates one cut subset on the original graph without materialising the
// duplicated dag.
class CutEvaluator {
 public:
  CutEvaluator(const LegalDag& g, std::size_t k, std::size_t alpha)
      : g_(g.graph()), k_(k), alpha_(alpha), order_(*g.graph().topological_order()) {}

  bool feasible(const std::vector<EdgeId>& subset) const {
    const auto n = g_.vertex_count();
    std::vector<bool> cut(g_.edge_count(), false);
    for (auto e : subset) cut[index_of(e)] = true;

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : g_.edges()) {
      if (cut[index_of(e.id)]) continue;
      auto a = find(index_of(e.src));
      auto b = find(index_of(e.dst));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    // A cut whose endpoints stay connected is redundant: dropping it gives a
    // smaller feasible set that the enumeration reaches first.
    for (auto e : subset) {
      if (find(index_of(g_.edge(e).src)) == find(index_of(g_.edge(e).dst))) return false;
    }

    std::vector<std::size_t> size(n, 0);
    for (const auto& v : g_.vertices()) {
      if (v.kind == VertexKind::Input) ++size[find(index_of(v.id))];
    }
    for (auto e : subset) {
      if (++size[find(index_of(g_.edge(e).dst))] > k_) return false;
    }

    std::vector<bool> rin(n, false);
    std::vector<bool> rout(n, false);
    for (auto v : order_) {
      auto r = rin[index_of(v)];
      r = g_.vertex(v).kind == VertexKind::Input;
      for (auto e : g_.in_edges(v)) r = r || (!cut[index_of(e)] && rin[index_of(g_.edge(e).src)]);
    }
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      auto r = rout[index_of(*it)];
      r = g_.vertex(*it).kind == VertexKind::Output;
      for (auto e : g_.out_edges(*it)) {
        r = r || (!cut[index_of(e)] && rout[index_of(g_.edge(e).dst)]);
      }
    }
    std::vector<bool> good(n, false);
    for (std::size_t v = 0; v < n; ++v) {
      if (rin[v] && rout[v]) good[find(v)] = true;
    }
    std::vector<std::size_t> sizes;
    for (std::size_t v = 0; v < n; ++v) {
      if (find(v) != v) continue;
      if (!good[v] || size[v] > k_) return false;
      sizes.push_back(size[v]);
    }
    return pack_components(sizes, k_, alpha_).has_value();
  }

 private:
  const DagGraph& g_;
  std::size_t k_;
  std::size_t alpha_;
  std::vector<VertexId> order_;
};

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const auto s = idx.size();
  for (std::size_t i = s; i-- > 0;) {
    if (idx[i] < n - s + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::optional<CutSet> generic_first_cut_set(const GdInstance& inst, std::size_t max_cuts,
                                            const EnumOptions& opts) {
  const auto& g = inst.graph.graph();
  std::vector<EdgeId> candidates;
  for (const auto& e : g.edges()) {
    if (!opts.prune_io_edges || !is_io_edge(g, e)) candidates.push_back(e.id);
  }
  const CutEvaluator eval(inst.graph, inst.k, inst.alpha);
  const unsigned threads = std::max(1u, opts.threads);
  constexpr std::size_t kBatch = 2048;

  for (std::size_t s = 0; s <= std::min(max_cuts, candidates.size()); ++s) {
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    bool more = true;
    while (more) {
      std::vector<std::vector<EdgeId>> batch;
      while (more && batch.size() < (threads == 1 ? 1 : kBatch)) {
        std::vector<EdgeId> subset;
        for (auto i : idx) subset.push_back(candidates[i]);
        batch.push_back(std::move(subset));
        more = next_combination(idx, candidates.size());
      }
      std::atomic<std::size_t> best{SIZE_MAX};
      auto work = [&](unsigned tid) {
        for (std::size_t i = tid; i < batch.size() && i < best.load(); i += threads) {
          if (eval.feasible(batch[i])) {
            auto cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return;
          }
        }
      };
      if (threads == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
      }
      if (best.load() != SIZE_MAX) {
        const auto& win = batch[best.load()];
        return CutSet(win.begin(), win.end());
      }
    }
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Forest search
//
// Vertices are visited in preorder over each rooted tree. Each visited
// vertex contributes to the component holding it: `rin` (reached from an
// original input inside its subtree), `rout` (reaches an original output
// inside its subtree) and `path` (some vertex of the subtree has both). The
// topmost vertex of any input-to-output path sees the whole path inside its
// own subtree, so `path` at a component's top vertex decides acceptability.
//
// A vertex whose last child is being explored never needs its own frame:
// its pending combination is folded into a Chain, a closed-form summary of
// "what happens to the child's result on its way up". Only vertices with
// children still to visit keep explicit frames, which keeps memo keys small
// on path-like trees.

namespace {

struct Frame {
  bool rin = false;
  bool rout = false;
  bool path = false;
  int size = 0;
};

struct Chain {
  bool known = false;  // path already established inside the chain
  bool x_in = false;   // child's rin completes a path
  bool x_out = false;  // child's rout completes a path
  bool r_in = false;
  bool r_out = false;
  bool f_in = true;  // child's rin flows to the top
  bool f_out = true;
  int size = 0;
  bool closes = false;  // top edge is cut, or the top is a tree root
  bool up = false;      // attached top feeds its parent through top -> parent

  static Chain attached(bool up) {
    Chain c;
    c.up = up;
    return c;
  }
  static Chain closing() {
    Chain c;
    c.closes = true;
    c.f_in = c.f_out = false;
    return c;
  }
  // Tail vertex p whose last child is joined through an uncut edge.
  static Chain single(const Frame& p, bool child_up) {
    Chain c;
    c.known = p.path;
    c.x_in = child_up && p.rout;
    c.x_out = !child_up && p.rin;
    c.r_in = p.rin;
    c.r_out = p.rout;
    c.f_in = child_up;
    c.f_out = !child_up;
    c.size = p.size;
    return c;
  }
  // `below` sits underneath `above`.
  static Chain compose(const Chain& above, const Chain& below) {
    Chain c;
    c.known = above.known || below.known || (above.x_in && below.r_in) ||
              (above.x_out && below.r_out);
    c.x_in = below.x_in || (above.x_in && below.f_in);
    c.x_out = below.x_out || (above.x_out && below.f_out);
    c.r_in = above.r_in || (above.f_in && below.r_in);
    c.r_out = above.r_out || (above.f_out && below.r_out);
    c.f_in = above.f_in && below.f_in;
    c.f_out = above.f_out && below.f_out;
    c.size = above.size + below.size;
    c.closes = above.closes;
    c.up = above.up;
    if (c.closes) c.r_in = c.r_out = c.f_in = c.f_out = c.up = false;
    return c;
  }
};

struct Event {
  std::size_t vertex = 0;
  bool root = false;
  EdgeId edge{};
  bool child_up = false;  // edge runs child -> parent
  bool last = false;      // last non-leaf child of its parent
  bool io_edge = false;
  bool has_children = false;  // has non-leaf children
  int leaf_inputs = 0;
  bool out_leaf = false;
  bool is_input = false;
  bool is_output = false;
};

class ForestSearch {
 public:
  ForestSearch(const LegalDag& legal, const ForestQuery& q) : g_(legal.graph()), q_(q) {
    const auto& g = legal.graph();
    const auto n = g.vertex_count();
    std::vector<std::vector<std::pair<EdgeId, std::size_t>>> adj(n);
    for (const auto& e : g.edges()) {
      adj[index_of(e.src)].push_back({e.id, index_of(e.dst)});
      adj[index_of(e.dst)].push_back({e.id, index_of(e.src)});
    }
    const auto label = component_labels(g);
    std::size_t comps = 0;
    for (auto l : label) comps = std::max(comps, l + 1);
    std::vector<std::size_t> root(comps, SIZE_MAX);
    for (std::size_t v = 0; v < n; ++v) {
      auto& r = root[label[v]];
      const bool gate = g.vertex(vertex_at(v)).kind == VertexKind::Gate;
      if (r == SIZE_MAX || (gate && g.vertex(vertex_at(r)).kind != VertexKind::Gate)) r = v;
    }

    std::vector<std::size_t> parent(n, SIZE_MAX);
    std::vector<EdgeId> parent_edge(n);
    std::vector<std::vector<std::size_t>> children(n);
    std::vector<std::size_t> subtree(n, 1);
    for (auto r : root) {
      std::vector<std::size_t> order{r};
      parent[r] = r;
      for (std::size_t i = 0; i < order.size(); ++i) {
        const auto v = order[i];
        for (auto [e, w] : adj[v]) {
          if (parent[w] != SIZE_MAX) continue;
          parent[w] = v;
          parent_edge[w] = e;
          children[v].push_back(w);
          order.push_back(w);
        }
      }
      for (std::size_t i = order.size(); i-- > 1;) subtree[parent[order[i]]] += subtree[order[i]];
    }

    auto kind = [&](std::size_t v) { return g.vertex(vertex_at(v)).kind; };
    std::vector<std::vector<std::size_t>> inner(n);
    for (std::size_t v = 0; v < n; ++v) {
      for (auto c : children[v]) {
        if (!children[c].empty()) inner[v].push_back(c);
      }
      std::sort(inner[v].begin(), inner[v].end(), [&](std::size_t a, std::size_t b) {
        return subtree[a] != subtree[b] ? subtree[a] < subtree[b] : a < b;
      });
    }

    auto make_event = [&](std::size_t v, bool is_root, bool last) {
      Event ev;
      ev.vertex = v;
      ev.root = is_root;
      ev.last = last;
      ev.is_input = kind(v) == VertexKind::Input;
      ev.is_output = kind(v) == VertexKind::Output;
      ev.has_children = !inner[v].empty();
      for (auto c : children[v]) {
        if (!children[c].empty()) continue;
        if (kind(c) == VertexKind::Input) ++ev.leaf_inputs;
        if (kind(c) == VertexKind::Output) ev.out_leaf = true;
      }
      if (!is_root) {
        ev.edge = parent_edge[v];
        ev.child_up = index_of(g.edge(ev.edge).src) == v;
        ev.io_edge = is_io_edge(g, g.edge(ev.edge));
      }
      return ev;
    };
    std::vector<std::size_t> roots = root;
    std::sort(roots.begin(), roots.end());
    for (auto r : roots) {
      std::vector<std::pair<std::size_t, bool>> stack{{r, true}};
      bool first = true;
      while (!stack.empty()) {
        auto [v, last] = stack.back();
        stack.pop_back();
        events_.push_back(make_event(v, first, last));
        first = false;
        for (std::size_t i = inner[v].size(); i-- > 0;) {
          stack.push_back({inner[v][i], i + 1 == inner[v].size()});
        }
      }
    }
    inputs_from_.assign(events_.size() + 1, 0);
    for (std::size_t i = events_.size(); i-- > 0;) {
      inputs_from_[i] = inputs_from_[i + 1] + events_[i].leaf_inputs + (events_[i].is_input ? 1 : 0);
    }
    event_of_edge_.assign(g.edge_count(), SIZE_MAX);
    for (std::size_t i = 0; i < events_.size(); ++i) {
      if (!events_[i].root) event_of_edge_[index_of(events_[i].edge)] = i;
    }
    failed_.resize(events_.size() + 1);
  }

  // Failure memos survive a query change only when every constraint on the
  // events they cover became tighter; callers drop the rest with forget().
  void set_query(const ForestQuery& q) { q_ = q; }

  void forget_through(std::size_t pos) {
    for (std::size_t i = 0; i <= pos && i < failed_.size(); ++i) failed_[i].clear();
  }

  std::size_t event_of(EdgeId e) const { return event_of_edge_[index_of(e)]; }

  bool run() {
    if (q_.min_cuts > q_.max_cuts) return false;
    forced_from_.assign(events_.size() + 1, 0);
    for (auto e : q_.forced_cut) {
      if (is_io_edge(g_, g_.edge(e))) return false;
      ++forced_from_[event_of(e)];
    }
    for (std::size_t i = events_.size(); i-- > 0;) forced_from_[i] += forced_from_[i + 1];
    path_cuts_.clear();
    State s;
    return at_event(std::move(s));
  }

  CutSet witness() const { return CutSet(witness_.begin(), witness_.end()); }

 private:
  struct State {
    std::size_t pos = 0;
    int cuts = 0;
    std::vector<int> bins;
    std::vector<Frame> frames;
    std::vector<Chain> chains;
  };

  using Cont = bool (ForestSearch::*)(State&, const Event&, bool);

  std::string key(const State& s) const {
    std::string k;
    k.reserve(4 * (4 + s.bins.size() + 4 * s.frames.size()));
    auto put = [&](int x) { k.append(reinterpret_cast<const char*>(&x), sizeof x); };
    put(static_cast<int>(s.pos));
    put(s.cuts);
    for (auto b : s.bins) put(b);
    put(-1);
    for (std::size_t i = 0; i < s.frames.size(); ++i) {
      const auto& f = s.frames[i];
      const auto& c = s.chains[i];
      put(f.size);
      put(c.size);
      put(f.rin | f.rout << 1 | f.path << 2 | c.known << 3 | c.x_in << 4 | c.x_out << 5 |
          c.r_in << 6);
      put(c.r_out | c.f_in << 1 | c.f_out << 2 | c.closes << 3 | c.up << 4);
    }
    return k;
  }

  bool bounds_ok(const State& s) const {
    const auto k = static_cast<int>(q_.k);
    int open = 0;
    int acc = 0;
    for (std::size_t i = s.frames.size(); i-- > 0;) {
      acc += s.frames[i].size + s.chains[i].size;
      if (s.chains[i].closes) {
        if (acc > k) return false;
        open += acc;
        acc = 0;
      }
    }
    long total = open + static_cast<long>(inputs_from_[s.pos]);
    for (auto b : s.bins) total += b;
    total += std::max<long>(static_cast<long>(q_.min_cuts), s.cuts);
    total -= s.cuts;
    return total <= static_cast<long>(q_.alpha * q_.k);
  }

  bool at_event(State s) {
    if (s.pos == events_.size()) {
      if (s.cuts < static_cast<int>(q_.min_cuts)) return false;
      witness_ = path_cuts_;
      return true;
    }
    if (!bounds_ok(s)) return false;
    if (s.cuts + forced_from_[s.pos] > q_.max_cuts) return false;
    auto k = key(s);
    auto& failed = failed_[s.pos];
    if (failed.contains(k)) return false;
    const auto& ev = events_[s.pos];
    bool ok = false;
    if (ev.root) {
      State t = s;
      ok = enter(t, ev, false);
    } else {
      const bool forced_cut = q_.forced_cut.contains(ev.edge);
      const bool can_cut = !ev.io_edge && !q_.forced_uncut.contains(ev.edge) &&
                           s.cuts < static_cast<int>(q_.max_cuts);
      if (!forced_cut) {
        State t = s;
        ok = enter(t, ev, false);
      }
      if (!ok && can_cut) {
        State t = s;
        path_cuts_.push_back(ev.edge);
        ok = enter(t, ev, true);
        if (!ok) path_cuts_.pop_back();
      }
    }
    if (!ok) failed.insert(std::move(k));
    return ok;
  }

  bool enter(State& s, const Event& ev, bool cut) {
    if (ev.root) {
      s.chains.push_back(Chain::closing());
      s.frames.emplace_back();
      return start_vertex(s, ev, false);
    }
    if (cut) {
      ++s.cuts;
      if (ev.child_up) s.frames.back().size += 1;
    }
    if (!ev.last) {
      s.chains.push_back(cut ? Chain::closing() : Chain::attached(ev.child_up));
      s.frames.emplace_back();
      return start_vertex(s, ev, cut);
    }
    const Frame p = s.frames.back();
    s.frames.pop_back();
    if (!cut) {
      s.chains.back() = Chain::compose(s.chains.back(), Chain::single(p, ev.child_up));
      s.frames.emplace_back();
      return start_vertex(s, ev, cut);
    }
    const Chain ch = s.chains.back();
    s.chains.pop_back();
    return finish(s, ch, p, ev, cut, &ForestSearch::push_cut_child);
  }

  bool push_cut_child(State& s, const Event& ev, bool cut) {
    s.chains.push_back(Chain::closing());
    s.frames.emplace_back();
    return start_vertex(s, ev, cut);
  }

  bool start_vertex(State& s, const Event& ev, bool cut) {
    auto& f = s.frames.back();
    f.rin = ev.is_input || ev.leaf_inputs > 0;
    f.rout = ev.is_output || ev.out_leaf;
    f.path = f.rin && f.rout;
    f.size = (ev.is_input ? 1 : 0) + ev.leaf_inputs + (cut && !ev.child_up ? 1 : 0);
    if (ev.has_children) {
      ++s.pos;
      return at_event(std::move(s));
    }
    const Frame done = s.frames.back();
    s.frames.pop_back();
    const Chain ch = s.chains.back();
    s.chains.pop_back();
    return finish(s, ch, done, ev, cut, &ForestSearch::advance);
  }

  bool advance(State& s, const Event&, bool) {
    ++s.pos;
    return at_event(std::move(s));
  }

  // Completes the chain above a finished frame, then closes the component
  // or feeds the frame below the chain, and continues.
  bool finish(State& s, const Chain& ch, const Frame& f, const Event& ev, bool cut, Cont cont) {
    const bool path = ch.known || f.path || (ch.x_in && f.rin) || (ch.x_out && f.rout);
    const int size = ch.size + f.size;
    if (!ch.closes) {
      auto& w = s.frames.back();
      if (ch.up) {
        w.rin = w.rin || ch.r_in || (ch.f_in && f.rin);
      } else {
        w.rout = w.rout || ch.r_out || (ch.f_out && f.rout);
      }
      w.path = w.path || path || (w.rin && w.rout);
      w.size += size;
      return (this->*cont)(s, ev, cut);
    }
    if (!path || size > static_cast<int>(q_.k)) return false;
    const auto k = static_cast<int>(q_.k);
    for (std::size_t b = 0; b < s.bins.size(); ++b) {
      if (s.bins[b] + size > k || (b > 0 && s.bins[b] == s.bins[b - 1])) continue;
      State t = s;
      t.bins[b] += size;
      std::sort(t.bins.begin(), t.bins.end());
      if ((this->*cont)(t, ev, cut)) return true;
    }
    if (s.bins.size() < q_.alpha) {
      State t = s;
      t.bins.push_back(size);
      std::sort(t.bins.begin(), t.bins.end());
      if ((this->*cont)(t, ev, cut)) return true;
    }
    return false;
  }

  const DagGraph& g_;
  ForestQuery q_;
  std::vector<Event> events_;
  std::vector<std::size_t> inputs_from_;
  std::vector<std::size_t> event_of_edge_;
  std::vector<std::size_t> forced_from_;
  std::vector<std::unordered_set<std::string>> failed_;
  std::vector<EdgeId> path_cuts_;
  std::vector<EdgeId> witness_;
};

}  // namespace

bool forest_feasible(const LegalDag& g, const ForestQuery& q) {
  if (!is_forest(g.graph())) throw InvariantViolation("forest search needs a forest");
  if (g.t() + q.min_cuts > q.alpha * q.k) return false;
  ForestSearch search(g, q);
  return search.run();
}

std::optional<CutSet> forest_first_cut_set(const LegalDag& g, std::size_t k, std::size_t alpha,
                                           std::size_t max_cuts) {
  if (!is_forest(g.graph())) throw InvariantViolation("forest search needs a forest");
  if (g.t() > alpha * k) return std::nullopt;
  ForestQuery q{k, alpha, 0, max_cuts, {}, {}};
  ForestSearch search(g, q);
  if (!search.run()) return std::nullopt;

  // Shrink the cut budget below each witness until the search fails. The
  // failure memo is kept across these tightening steps.
  auto witness = search.witness();
  while (!witness.empty()) {
    q.max_cuts = witness.size() - 1;
    search.set_query(q);
    if (!search.run()) break;
    witness = search.witness();
  }
  q.max_cuts = witness.size();
  search.set_query(q);
  search.forget_through(SIZE_MAX - 1);

  // Lexicographic self-reduction in edge id order. An edge in the current
  // witness can be committed without a query.
  const auto& graph = g.graph();
  for (const auto& e : graph.edges()) {
    if (q.forced_cut.size() == q.max_cuts) break;
    if (is_io_edge(graph, e)) continue;
    if (witness.contains(e.id)) {
      q.forced_cut.insert(e.id);
      continue;
    }
    auto trial = q;
    trial.forced_cut.insert(e.id);
    search.set_query(trial);
    if (search.run()) {
      q = std::move(trial);
      witness = search.witness();
    } else {
      search.forget_through(search.event_of(e.id));
      q.forced_uncut.insert(e.id);
    }
  }
  return CutSet(q.forced_cut.begin(), q.forced_cut.end());
}

// ---------------------------------------------------------------------------

std::optional<GdSolution> solve_decision(const GdInstance& inst, const EnumOptions& opts) {
  validate_instance(inst);
  const auto capacity = inst.alpha * inst.k;
  if (inst.graph.t() > capacity) return std::nullopt;
  const auto max_cuts = std::min(inst.beta, capacity - inst.graph.t());

  std::optional<CutSet> cuts;
  if (opts.use_forest_search && is_forest(inst.graph.graph())) {
    cuts = forest_first_cut_set(inst.graph, inst.k, inst.alpha, max_cuts);
  } else {
    cuts = generic_first_cut_set(inst, max_cuts, opts);
  }
  if (!cuts) return std::nullopt;
  return build_solution(inst, *cuts, WitnessKind::Decision);
}

std::optional<MinBetaResult> optimize_min_beta(const LegalDag& g, std::size_t k, std::size_t alpha,
                                               std::size_t beta_max, const EnumOptions& opts) {
  GdInstance inst{g, k, alpha, beta_max};
  auto sol = solve_decision(inst, opts);
  if (!sol) return std::nullopt;
  sol->witness = WitnessKind::Optimal;
  return MinBetaResult{sol->cuts.size(), std::move(*sol)};
}

std::string verify_solution(const GdInstance& inst, const CutSet& cuts,
                            const ClusterAssignment& assignment) {
  if (cuts.size() > inst.beta) {
    return "uses " + std::to_string(cuts.size()) + " cuts, beta is " + std::to_string(inst.beta);
  }
  if (assignment.cluster_count > inst.alpha) {
    return "uses " + std::to_string(assignment.cluster_count) + " clusters, alpha is " +
           std::to_string(inst.alpha);
  }
  DuplicatedDag d;
  try {
    d = duplicate(inst.graph, cuts);
  } catch (const ValidationError& e) {
    return e.what();
  }
  const auto report = is_acceptable(d);
  for (std::size_t i = 0; i < report.components.size(); ++i) {
    if (!report.components[i].acceptable) {
      return "component " + std::to_string(i) + " has no original input-to-output path";
    }
  }
  std::vector<ClusterStats> stats;
  try {
    stats = cluster_stats(d, assignment);
  } catch (const ValidationError& e) {
    return e.what();
  }
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (stats[i].input_count != stats[i].output_count) {
      return "cluster " + std::to_string(i) + " is unbalanced";
    }
    if (stats[i].input_count > inst.k) {
      return "cluster " + std::to_string(i) + " has " + std::to_string(stats[i].input_count) +
             " inputs, k is " + std::to_string(inst.k);
    }
  }
  return {};
}

}  // namespace dagcut
