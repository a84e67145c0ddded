// Copyright 2026 The Refuel Authors
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

// Combinatorial kernels on pair subgraphs: shortest paths, time-separator
// generation and minimalization, vertex min cuts and constrained shortest
// paths. All routines work on local subgraph indices and report global
// node indices in their results.

#ifndef REFUEL_GRAPH_ALGORITHMS_HPP_
#define REFUEL_GRAPH_ALGORITHMS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "refuel/network.hpp"

namespace refuel {

// Number of Dijkstra invocations within one solve. Owned per solve.
class DijkstraCounter {
 public:
  void increment() { ++count_; }
  [[nodiscard]] std::uint64_t value() const { return count_; }

 private:
  std::uint64_t count_ = 0;
};

enum class Direction { forward, backward };

// Optional per-node and per-arc masks over local indices. An empty span
// admits everything. Nodes that are not expandable receive labels but are
// never relaxed from (the search source is always expanded).
struct SearchFilter {
  std::span<const char> enterable;
  std::span<const char> expandable;
  std::span<const char> arc_allowed;
};

struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<std::int32_t> pred_arc;  // local arc into the node, -1 at root
};

inline ShortestPathTree dijkstra_tree(const OdSubgraph& sub, std::int32_t source,
                                      Direction dir,
                                      std::span<const double> arc_weight,
                                      const SearchFilter& filter = {},
                                      DijkstraCounter* counter = nullptr) {
  if (counter) counter->increment();
  const auto n = static_cast<std::size_t>(sub.node_count());
  ShortestPathTree tree{std::vector<double>(n, kInfinity),
                        std::vector<std::int32_t>(n, -1)};
  if (n == 0) return tree;
  using Entry = std::pair<double, std::int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  tree.dist[source] = 0.0;
  heap.emplace(0.0, source);
  const bool forward = dir == Direction::forward;
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > tree.dist[v]) continue;
    if (v != source && !filter.expandable.empty() && !filter.expandable[v]) {
      continue;
    }
    for (std::int32_t a : forward ? sub.out_arcs(v) : sub.in_arcs(v)) {
      if (!filter.arc_allowed.empty() && !filter.arc_allowed[a]) continue;
      const auto& arc = sub.arc(a);
      const std::int32_t w = forward ? arc.head : arc.tail;
      if (!filter.enterable.empty() && !filter.enterable[w]) continue;
      const double nd = d + arc_weight[a];
      if (nd < tree.dist[w]) {
        tree.dist[w] = nd;
        tree.pred_arc[w] = a;
        heap.emplace(nd, w);
      }
    }
  }
  return tree;
}

// Exact distances from `source`; unreachable nodes get +inf.
inline std::vector<double> dijkstra(const OdSubgraph& sub, std::int32_t source,
                                    Direction dir,
                                    std::span<const double> arc_weight,
                                    const SearchFilter& filter = {},
                                    DijkstraCounter* counter = nullptr) {
  return dijkstra_tree(sub, source, dir, arc_weight, filter, counter).dist;
}

inline std::vector<double> transit_times(const OdSubgraph& sub) {
  std::vector<double> w(sub.arc_count());
  for (std::int32_t a = 0; a < sub.arc_count(); ++a) w[a] = sub.arc(a).tau;
  return w;
}

struct TimeSeparator {
  int pair = -1;
  std::vector<NodeIndex> stations;  // global indices, sorted ascending

  friend bool operator==(const TimeSeparator&, const TimeSeparator&) = default;
};

namespace detail {

inline TimeSeparator to_separator(const OdSubgraph& sub,
                                  const std::vector<std::int32_t>& local_set) {
  TimeSeparator sep{sub.pair_index(), {}};
  for (std::int32_t v : local_set) sep.stations.push_back(sub.global(v));
  std::sort(sep.stations.begin(), sep.stations.end());
  return sep;
}

inline bool within(double time, const OdSubgraph& sub) {
  return time <= sub.time_bound() + sub.tolerance();
}

}  // namespace detail

// True when no time-feasible origin-destination path avoids `local_set`.
inline bool is_time_separator(const OdSubgraph& sub,
                              std::span<const std::int32_t> local_set,
                              DijkstraCounter* counter = nullptr) {
  if (sub.empty()) return true;
  std::vector<char> enterable(sub.node_count(), 1);
  for (std::int32_t v : local_set) enterable[v] = 0;
  const auto tau = transit_times(sub);
  const auto dist = dijkstra(sub, sub.source(), Direction::forward, tau,
                             {enterable, {}, {}}, counter);
  return !detail::within(dist[sub.target()], sub);
}

// Removes members in descending station id order while the set stays a
// time-separator. Each candidate is tested with forward and backward labels
// computed with the current set blocked; labels are recomputed only after
// an actual removal. Throws std::logic_error if `local_set` is not a
// time-separator.
inline std::vector<std::int32_t> minimalize_separator_local(
    const OdSubgraph& sub, std::vector<std::int32_t> local_set,
    DijkstraCounter* counter = nullptr) {
  if (sub.empty()) return {};
  const auto tau = transit_times(sub);
  std::vector<char> in_set(sub.node_count(), 0);
  for (std::int32_t v : local_set) in_set[v] = 1;
  std::vector<char> expandable(sub.node_count(), 1);
  auto compute = [&](std::vector<double>& fwd, std::vector<double>& bwd) {
    for (std::int32_t v = 0; v < sub.node_count(); ++v) {
      expandable[v] = in_set[v] ? 0 : 1;
    }
    fwd = dijkstra(sub, sub.source(), Direction::forward, tau,
                   {{}, expandable, {}}, counter);
    bwd = dijkstra(sub, sub.target(), Direction::backward, tau,
                   {{}, expandable, {}}, counter);
  };
  std::vector<double> fwd;
  std::vector<double> bwd;
  compute(fwd, bwd);
  if (detail::within(fwd[sub.target()], sub)) {
    throw std::logic_error("minimalize_separator: input is not a time-separator");
  }
  std::vector<std::int32_t> order = local_set;
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return sub.node_id(a) > sub.node_id(b);
  });
  for (std::int32_t v : order) {
    if (detail::within(fwd[v] + bwd[v], sub)) continue;  // v is needed
    in_set[v] = 0;
    compute(fwd, bwd);
  }
  std::vector<std::int32_t> out;
  for (std::int32_t v : local_set) {
    if (in_set[v]) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline TimeSeparator minimalize_separator(const OdSubgraph& sub,
                                          const TimeSeparator& separator,
                                          DijkstraCounter* counter = nullptr) {
  std::vector<std::int32_t> local_set;
  for (NodeIndex v : separator.stations) {
    if (auto l = sub.local(v)) local_set.push_back(*l);
  }
  return detail::to_separator(
      sub, minimalize_separator_local(sub, std::move(local_set), counter));
}

// Breadth-first layers {v : hop(s, v) = k} for 1 <= k < hop(s, t). Every
// origin-destination path crosses each layer, so each layer separates.
inline std::vector<TimeSeparator> hop_layer_separators(
    const OdSubgraph& sub, bool minimalize = true,
    DijkstraCounter* counter = nullptr) {
  std::vector<TimeSeparator> out;
  if (sub.empty()) return out;
  std::vector<int> hops(sub.node_count(), -1);
  std::deque<std::int32_t> queue{sub.source()};
  hops[sub.source()] = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (std::int32_t a : sub.out_arcs(v)) {
      const auto w = sub.arc(a).head;
      if (hops[w] < 0) {
        hops[w] = hops[v] + 1;
        queue.push_back(w);
      }
    }
  }
  const int depth = hops[sub.target()];
  for (int k = 1; k < depth; ++k) {
    std::vector<std::int32_t> layer;
    for (std::int32_t v = 0; v < sub.node_count(); ++v) {
      if (hops[v] == k && sub.is_station(v)) layer.push_back(v);
    }
    if (minimalize) layer = minimalize_separator_local(sub, layer, counter);
    auto sep = detail::to_separator(sub, layer);
    if (std::find(out.begin(), out.end(), sep) == out.end()) {
      out.push_back(std::move(sep));
    }
  }
  return out;
}

// Violated time-separator for a binary station activation (indexed by local
// node). Returns nullopt when the active stations already admit a
// time-feasible path. Uses two Dijkstra runs before minimalization.
inline std::optional<TimeSeparator> integer_time_separator(
    const OdSubgraph& sub, std::span<const char> active,
    DijkstraCounter* counter = nullptr, bool minimalize = true) {
  if (sub.empty()) return TimeSeparator{sub.pair_index(), {}};
  const auto tau = transit_times(sub);
  std::vector<char> expandable(sub.node_count(), 0);
  for (std::int32_t v = 0; v < sub.node_count(); ++v) {
    expandable[v] = sub.is_station(v) && active[v] ? 1 : 0;
  }
  const auto fwd = dijkstra(sub, sub.source(), Direction::forward, tau,
                            {{}, expandable, {}}, counter);
  if (detail::within(fwd[sub.target()], sub)) return std::nullopt;
  const auto bwd =
      dijkstra(sub, sub.target(), Direction::backward, tau, {}, counter);
  std::vector<std::int32_t> set;
  for (std::int32_t v = 0; v < sub.node_count(); ++v) {
    if (sub.is_station(v) && !active[v] && detail::within(fwd[v] + bwd[v], sub)) {
      set.push_back(v);
    }
  }
  if (minimalize) set = minimalize_separator_local(sub, std::move(set), counter);
  return detail::to_separator(sub, set);
}

// Reference routine: starts from every inactive station of the subgraph
// and minimalizes. Same coverage test as integer_time_separator.
inline std::optional<TimeSeparator> baseline_time_separator(
    const OdSubgraph& sub, std::span<const char> active,
    DijkstraCounter* counter = nullptr) {
  if (sub.empty()) return TimeSeparator{sub.pair_index(), {}};
  const auto tau = transit_times(sub);
  std::vector<char> expandable(sub.node_count(), 0);
  for (std::int32_t v = 0; v < sub.node_count(); ++v) {
    expandable[v] = sub.is_station(v) && active[v] ? 1 : 0;
  }
  const auto fwd = dijkstra(sub, sub.source(), Direction::forward, tau,
                            {{}, expandable, {}}, counter);
  if (detail::within(fwd[sub.target()], sub)) return std::nullopt;
  std::vector<std::int32_t> set;
  for (std::int32_t v = 0; v < sub.node_count(); ++v) {
    if (sub.is_station(v) && !active[v]) set.push_back(v);
  }
  return detail::to_separator(
      sub, minimalize_separator_local(sub, std::move(set), counter));
}

namespace detail {

// Dinic max flow on doubles.
class MaxFlow {
 public:
  static constexpr double kUnbounded = 1e30;

  explicit MaxFlow(int n) : graph_(n), level_(n), next_(n) {}

  int add_edge(int from, int to, double cap) {
    graph_[from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, cap});
    graph_[to].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0.0});
    return static_cast<int>(edges_.size()) - 2;
  }

  double run(int s, int t) {
    double total = 0.0;
    while (bfs(s, t)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (true) {
        const double f = dfs(s, t, kUnbounded);
        if (f <= kEps) break;
        total += f;
        if (total >= kUnbounded) return total;
      }
    }
    return total;
  }

  // Nodes reachable from s in the residual graph after run().
  std::vector<char> source_side(int s) const {
    std::vector<char> seen(graph_.size(), 0);
    std::deque<int> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int e : graph_[v]) {
        if (edges_[e].cap > kEps && !seen[edges_[e].to]) {
          seen[edges_[e].to] = 1;
          queue.push_back(edges_[e].to);
        }
      }
    }
    return seen;
  }

 private:
  static constexpr double kEps = 1e-12;
  struct Edge {
    int to;
    double cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<int> queue{s};
    level_[s] = 0;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int e : graph_[v]) {
        if (edges_[e].cap > kEps && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[v] + 1;
          queue.push_back(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double dfs(int v, int t, double pushed) {
    if (v == t) return pushed;
    for (int& i = next_[v]; i < static_cast<int>(graph_[v].size()); ++i) {
      const int e = graph_[v][i];
      const int w = edges_[e].to;
      if (edges_[e].cap <= kEps || level_[w] != level_[v] + 1) continue;
      const double f = dfs(w, t, std::min(pushed, edges_[e].cap));
      if (f > kEps) {
        edges_[e].cap -= f;
        edges_[e ^ 1].cap += f;
        return f;
      }
    }
    return 0.0;
  }

  std::vector<std::vector<int>> graph_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<int> next_;
};

}  // namespace detail

struct FractionalCut {
  std::vector<NodeIndex> cut;  // raw source-side minimum vertex cut
  TimeSeparator separator;     // cut after minimalization
  double cut_weight = 0.0;
  double weight = 0.0;         // weight of the minimalized separator
};

// Minimum-weight station separator via max flow on the node-split graph.
// `weight` is indexed by local node; only stations are split. Returns
// nullopt when the subgraph is empty or a station-free path exists.
inline std::optional<FractionalCut> fractional_separator_mincut(
    const OdSubgraph& sub, std::span<const double> weight,
    DijkstraCounter* counter = nullptr) {
  if (sub.empty()) return std::nullopt;
  const int n = sub.node_count();
  // Node v enters at v and leaves at n + v; non-stations are not split.
  auto in_node = [](int v) { return v; };
  auto out_node = [&](int v) { return sub.is_station(v) ? n + v : v; };
  detail::MaxFlow flow(2 * n);
  for (int v = 0; v < n; ++v) {
    if (sub.is_station(v)) {
      flow.add_edge(in_node(v), out_node(v), std::clamp(weight[v], 0.0, 1e12));
    }
  }
  for (std::int32_t a = 0; a < sub.arc_count(); ++a) {
    const auto& arc = sub.arc(a);
    flow.add_edge(out_node(arc.tail), in_node(arc.head),
                  detail::MaxFlow::kUnbounded);
  }
  const double value = flow.run(sub.source(), sub.target());
  if (value >= detail::MaxFlow::kUnbounded / 2) return std::nullopt;
  const auto reach = flow.source_side(sub.source());
  FractionalCut result;
  std::vector<std::int32_t> cut_local;
  for (int v = 0; v < n; ++v) {
    if (sub.is_station(v) && reach[in_node(v)] && !reach[out_node(v)]) {
      cut_local.push_back(v);
      result.cut.push_back(sub.global(v));
      result.cut_weight += weight[v];
    }
  }
  std::sort(result.cut.begin(), result.cut.end());
  const auto minimal = minimalize_separator_local(sub, cut_local, counter);
  result.separator = detail::to_separator(sub, minimal);
  for (std::int32_t v : minimal) result.weight += weight[v];
  return result;
}

struct CostedPath {
  std::vector<NodeIndex> nodes;       // global node sequence
  std::vector<std::int32_t> arcs;     // local arcs of the subgraph
  double time = 0.0;
  double cost = 0.0;
};

namespace detail {

inline CostedPath trace_path(const OdSubgraph& sub,
                             const std::vector<std::int32_t>& local_arcs,
                             std::span<const double> node_cost) {
  CostedPath path;
  path.arcs = local_arcs;
  path.nodes.push_back(sub.global(sub.source()));
  for (std::int32_t a : local_arcs) {
    const auto& arc = sub.arc(a);
    path.time += arc.tau;
    path.nodes.push_back(sub.global(arc.head));
    if (arc.head != sub.target()) path.cost += node_cost[arc.head];
  }
  return path;
}

inline std::optional<std::vector<std::int32_t>> tree_path(
    const OdSubgraph& sub, const ShortestPathTree& tree) {
  if (tree.dist[sub.target()] == kInfinity) return std::nullopt;
  std::vector<std::int32_t> arcs;
  for (std::int32_t v = sub.target(); v != sub.source();) {
    const auto a = tree.pred_arc[v];
    arcs.push_back(a);
    v = sub.arc(a).tail;
  }
  std::reverse(arcs.begin(), arcs.end());
  return arcs;
}

}  // namespace detail

// Minimum-cost origin-destination path with total time <= bound. Costs are
// charged at interior nodes (indexed by local node); +inf forbids a node.
// Label setting in (time, cost) order with Pareto dominance.
inline std::optional<CostedPath> csp_exact(const OdSubgraph& sub,
                                           std::span<const double> node_cost,
                                           double bound,
                                           std::span<const char> arc_allowed = {}) {
  if (sub.empty()) return std::nullopt;
  constexpr double kTol = 1e-9;
  struct Label {
    std::int32_t node;
    std::int32_t arc;
    std::int32_t parent;
    double time;
    double cost;
  };
  std::vector<Label> labels;
  std::vector<std::vector<std::int32_t>> settled(sub.node_count());
  using Entry = std::tuple<double, double, std::int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  labels.push_back({sub.source(), -1, -1, 0.0, 0.0});
  heap.emplace(0.0, 0.0, 0);
  auto dominated = [&](std::int32_t v, double time, double cost) {
    for (std::int32_t id : settled[v]) {
      if (labels[id].cost <= cost + kTol && labels[id].time <= time + kTol) {
        return true;
      }
    }
    return false;
  };
  std::int32_t best = -1;
  while (!heap.empty()) {
    const auto [time, cost, id] = heap.top();
    heap.pop();
    const std::int32_t v = labels[id].node;
    if (dominated(v, time, cost)) continue;
    settled[v].push_back(id);
    if (v == sub.target()) {
      best = id;  // later settled labels at the target are strictly cheaper
      continue;
    }
    for (std::int32_t a : sub.out_arcs(v)) {
      if (!arc_allowed.empty() && !arc_allowed[a]) continue;
      const auto& arc = sub.arc(a);
      const std::int32_t w = arc.head;
      const double nt = time + arc.tau;
      if (nt + sub.to_destination(w) > bound + sub.tolerance()) continue;
      const double step = w == sub.target() ? 0.0 : node_cost[w];
      if (step == kInfinity) continue;
      const double nc = cost + step;
      if (dominated(w, nt, nc)) continue;
      labels.push_back({w, a, id, nt, nc});
      heap.emplace(nt, nc, static_cast<std::int32_t>(labels.size() - 1));
    }
  }
  if (best < 0) return std::nullopt;
  std::vector<std::int32_t> arcs;
  for (std::int32_t id = best; labels[id].parent >= 0; id = labels[id].parent) {
    arcs.push_back(labels[id].arc);
  }
  std::reverse(arcs.begin(), arcs.end());
  return detail::trace_path(sub, arcs, node_cost);
}

struct LaracOptions {
  int max_iterations = 50;
  double multiplier_tolerance = 1e-7;
};

// Lagrangian relaxation heuristic for the constrained shortest path: any
// returned path meets the time bound, its cost is an upper bound on the
// optimum.
inline std::optional<CostedPath> csp_larac(const OdSubgraph& sub,
                                           std::span<const double> node_cost,
                                           double bound,
                                           std::span<const char> arc_allowed = {},
                                           DijkstraCounter* counter = nullptr,
                                           const LaracOptions& options = {}) {
  if (sub.empty()) return std::nullopt;
  std::vector<char> enterable(sub.node_count(), 1);
  for (std::int32_t v = 0; v < sub.node_count(); ++v) {
    if (v != sub.target() && node_cost[v] == kInfinity) enterable[v] = 0;
  }
  const SearchFilter filter{enterable, {}, arc_allowed};
  std::vector<double> arc_cost(sub.arc_count());
  for (std::int32_t a = 0; a < sub.arc_count(); ++a) {
    const auto head = sub.arc(a).head;
    arc_cost[a] = head == sub.target() || !enterable[head] ? 0.0 : node_cost[head];
  }
  auto solve = [&](double theta) -> std::optional<CostedPath> {
    std::vector<double> w(sub.arc_count());
    for (std::int32_t a = 0; a < sub.arc_count(); ++a) {
      w[a] = arc_cost[a] + theta * sub.arc(a).tau;
    }
    const auto tree =
        dijkstra_tree(sub, sub.source(), Direction::forward, w, filter, counter);
    auto arcs = detail::tree_path(sub, tree);
    if (!arcs) return std::nullopt;
    return detail::trace_path(sub, *arcs, node_cost);
  };
  const double limit = bound + sub.tolerance();
  auto cheap = solve(0.0);
  if (!cheap) return std::nullopt;
  if (cheap->time <= limit) return cheap;
  std::vector<double> tau = transit_times(sub);
  auto fast_tree =
      dijkstra_tree(sub, sub.source(), Direction::forward, tau, filter, counter);
  auto fast_arcs = detail::tree_path(sub, fast_tree);
  if (!fast_arcs) return std::nullopt;
  auto fast = detail::trace_path(sub, *fast_arcs, node_cost);
  if (fast.time > limit) return std::nullopt;
  double previous = -1.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    const double dt = cheap->time - fast.time;
    if (dt <= 0.0) break;
    const double theta = (fast.cost - cheap->cost) / dt;
    if (std::abs(theta - previous) < options.multiplier_tolerance) break;
    previous = theta;
    auto r = solve(theta);
    if (!r) break;
    const double lr = r->cost + theta * r->time;
    const double lc = cheap->cost + theta * cheap->time;
    if (std::abs(lr - lc) <= 1e-9 * std::max(1.0, std::abs(lc))) break;
    if (r->time <= limit) {
      fast = std::move(*r);
    } else {
      cheap = std::move(r);
    }
  }
  return fast;
}

}  // namespace refuel

#endif  // REFUEL_GRAPH_ALGORITHMS_HPP_
