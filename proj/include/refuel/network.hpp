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

// Expanded refueling network, origin-destination subgraphs, problem
// instances and end-to-end solution verification.

#ifndef REFUEL_NETWORK_HPP_
#define REFUEL_NETWORK_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace refuel {

using NodeIndex = std::int32_t;
using ArcIndex = std::int32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Absolute slack applied to every transit-time comparison.
inline constexpr double kTimeTolerance = 1e-9;

enum class NodeRole { terminal, station };

struct Node {
  std::int64_t id = 0;
  NodeRole role = NodeRole::station;
};

struct Arc {
  NodeIndex tail = 0;
  NodeIndex head = 0;
  double tau = 0.0;  // transit time
  double ell = 0.0;  // distance
};

// Directed graph over terminals and stations. Immutable after construction.
class NetworkGraph {
 public:
  NetworkGraph() = default;

  // Throws std::invalid_argument on self loops, parallel arcs, negative
  // tau/ell, duplicate node ids or dangling arc endpoints.
  NetworkGraph(std::vector<Node> nodes, std::vector<Arc> arcs)
      : nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
    const auto n = static_cast<NodeIndex>(nodes_.size());
    out_.assign(nodes_.size(), {});
    in_.assign(nodes_.size(), {});
    for (NodeIndex v = 0; v < n; ++v) {
      if (!index_.emplace(nodes_[v].id, v).second) {
        throw std::invalid_argument("duplicate node id " +
                                    std::to_string(nodes_[v].id));
      }
    }
    for (ArcIndex a = 0; a < static_cast<ArcIndex>(arcs_.size()); ++a) {
      const Arc& arc = arcs_[a];
      if (arc.tail < 0 || arc.tail >= n || arc.head < 0 || arc.head >= n) {
        throw std::invalid_argument("arc endpoint out of range");
      }
      if (arc.tail == arc.head) {
        throw std::invalid_argument("self-loop arc at node " +
                                    std::to_string(nodes_[arc.tail].id));
      }
      if (!(arc.tau >= 0.0) || !(arc.ell >= 0.0) || !std::isfinite(arc.tau) ||
          !std::isfinite(arc.ell)) {
        throw std::invalid_argument("arc tau/ell must be finite and >= 0");
      }
      if (!arc_index_.emplace(key(arc.tail, arc.head), a).second) {
        throw std::invalid_argument(
            "parallel arcs " + std::to_string(nodes_[arc.tail].id) + "->" +
            std::to_string(nodes_[arc.head].id));
      }
      out_[arc.tail].push_back(a);
      in_[arc.head].push_back(a);
    }
  }

  [[nodiscard]] NodeIndex node_count() const {
    return static_cast<NodeIndex>(nodes_.size());
  }
  [[nodiscard]] ArcIndex arc_count() const {
    return static_cast<ArcIndex>(arcs_.size());
  }
  [[nodiscard]] const Node& node(NodeIndex v) const { return nodes_[v]; }
  [[nodiscard]] const Arc& arc(ArcIndex a) const { return arcs_[a]; }
  [[nodiscard]] std::span<const Node> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const Arc> arcs() const { return arcs_; }
  [[nodiscard]] std::span<const ArcIndex> out_arcs(NodeIndex v) const {
    return out_[v];
  }
  [[nodiscard]] std::span<const ArcIndex> in_arcs(NodeIndex v) const {
    return in_[v];
  }
  [[nodiscard]] bool is_station(NodeIndex v) const {
    return nodes_[v].role == NodeRole::station;
  }
  [[nodiscard]] bool is_terminal(NodeIndex v) const { return !is_station(v); }

  [[nodiscard]] std::optional<ArcIndex> find_arc(NodeIndex tail,
                                                 NodeIndex head) const {
    auto it = arc_index_.find(key(tail, head));
    if (it == arc_index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] std::optional<NodeIndex> index_of(std::int64_t id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] std::vector<NodeIndex> stations() const {
    std::vector<NodeIndex> out;
    for (NodeIndex v = 0; v < node_count(); ++v) {
      if (is_station(v)) out.push_back(v);
    }
    return out;
  }

 private:
  static std::uint64_t key(NodeIndex tail, NodeIndex head) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(tail)) << 32) |
           static_cast<std::uint32_t>(head);
  }

  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcIndex>> out_;
  std::vector<std::vector<ArcIndex>> in_;
  std::unordered_map<std::int64_t, NodeIndex> index_;
  std::unordered_map<std::uint64_t, ArcIndex> arc_index_;
};

struct RangeParams {
  double r_max = 0.0;
  double rho_orig = 0.0;
  double rho_dest = 0.0;

  static RangeParams half_capacity(double r_max) {
    return {r_max, r_max / 2.0, r_max / 2.0};
  }

  void validate() const {
    if (!(rho_orig > 0.0) || !(rho_orig <= rho_dest) || !(rho_dest <= r_max)) {
      throw std::invalid_argument(
          "ranges must satisfy 0 < rho_orig <= rho_dest <= r_max");
    }
  }

  // Largest distance a range-feasible connection may have, by endpoint roles.
  [[nodiscard]] double bound(NodeRole from, NodeRole to) const {
    if (from == NodeRole::station) {
      return to == NodeRole::station ? r_max : r_max - rho_dest;
    }
    return to == NodeRole::station ? rho_orig : rho_orig - rho_dest;
  }
};

// Keeps exactly the range-feasible candidate connections. Terminal to
// terminal connections are never kept: rho_orig <= rho_dest forces an
// intermediate stop.
inline NetworkGraph build_expanded_graph(std::vector<Node> nodes,
                                         std::span<const Arc> connections,
                                         const RangeParams& ranges) {
  ranges.validate();
  std::vector<Arc> kept;
  for (const Arc& c : connections) {
    if (c.tail < 0 || c.head < 0 ||
        c.tail >= static_cast<NodeIndex>(nodes.size()) ||
        c.head >= static_cast<NodeIndex>(nodes.size())) {
      throw std::invalid_argument("connection endpoint out of range");
    }
    if (!(c.tau >= 0.0) || !(c.ell >= 0.0)) {
      throw std::invalid_argument("negative tau/ell in connection table");
    }
    if (c.tail == c.head) continue;
    const NodeRole from = nodes[c.tail].role;
    const NodeRole to = nodes[c.head].role;
    if (from == NodeRole::terminal && to == NodeRole::terminal) continue;
    if (c.ell <= ranges.bound(from, to)) kept.push_back(c);
  }
  return NetworkGraph(std::move(nodes), std::move(kept));
}

// Adds full_refuel_time * ell / r_max to every arc that ends at a station.
inline NetworkGraph apply_refuel_surcharge(const NetworkGraph& graph,
                                           double full_refuel_time,
                                           double r_max) {
  if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
  if (!(full_refuel_time >= 0.0)) {
    throw std::invalid_argument("full refuel time must be >= 0");
  }
  std::vector<Arc> arcs(graph.arcs().begin(), graph.arcs().end());
  for (Arc& a : arcs) {
    if (graph.is_station(a.head)) a.tau += full_refuel_time * a.ell / r_max;
  }
  return NetworkGraph(std::vector<Node>(graph.nodes().begin(), graph.nodes().end()),
                      std::move(arcs));
}

// Counts triples u->v->w with a direct arc u->w that is slower than the
// two-arc detour. Zero for quasimetric transit times.
inline std::size_t count_triangle_violations(const NetworkGraph& graph,
                                             double tolerance = 1e-9) {
  std::size_t violations = 0;
  for (const Arc& first : graph.arcs()) {
    for (ArcIndex b : graph.out_arcs(first.head)) {
      const Arc& second = graph.arc(b);
      if (second.head == first.tail) continue;
      if (auto direct = graph.find_arc(first.tail, second.head)) {
        if (graph.arc(*direct).tau > first.tau + second.tau + tolerance) {
          ++violations;
        }
      }
    }
  }
  return violations;
}

struct OdPair {
  NodeIndex origin = 0;
  NodeIndex destination = 0;
  double demand = 1.0;
  double time_bound = 0.0;
};

struct SubgraphOptions {
  // When false the subgraph keeps every node and arc on some origin to
  // destination walk, ignoring the time bound (the bound is still recorded
  // and used by all separation and pricing routines).
  bool prune_by_time = true;
  double tolerance = kTimeTolerance;
};

// Restriction of the network to the nodes and arcs that can appear on a
// time-feasible route of one pair. Nodes are renumbered locally; the origin
// and destination are local nodes 0 and 1 whenever the subgraph is non-empty.
class OdSubgraph {
 public:
  struct LocalArc {
    std::int32_t tail;
    std::int32_t head;
    double tau;
    ArcIndex global;
  };

  OdSubgraph() = default;

  [[nodiscard]] int pair_index() const { return pair_index_; }
  [[nodiscard]] double time_bound() const { return time_bound_; }
  [[nodiscard]] double tolerance() const { return tolerance_; }
  [[nodiscard]] bool empty() const { return nodes_.empty(); }
  [[nodiscard]] std::int32_t node_count() const {
    return static_cast<std::int32_t>(nodes_.size());
  }
  [[nodiscard]] std::int32_t arc_count() const {
    return static_cast<std::int32_t>(arcs_.size());
  }
  [[nodiscard]] std::int32_t source() const { return 0; }
  [[nodiscard]] std::int32_t target() const { return 1; }
  [[nodiscard]] NodeIndex origin() const { return origin_; }
  [[nodiscard]] NodeIndex destination() const { return destination_; }
  [[nodiscard]] NodeIndex global(std::int32_t local) const {
    return nodes_[local];
  }
  // External id of a local node.
  [[nodiscard]] std::int64_t node_id(std::int32_t local) const {
    return ids_[local];
  }
  [[nodiscard]] std::optional<std::int32_t> local(NodeIndex global) const {
    if (global < 0 || global >= static_cast<NodeIndex>(local_of_.size()) ||
        local_of_[global] < 0) {
      return std::nullopt;
    }
    return local_of_[global];
  }
  [[nodiscard]] bool contains_global_arc(ArcIndex a) const {
    return std::binary_search(global_arcs_.begin(), global_arcs_.end(), a);
  }
  [[nodiscard]] bool is_station(std::int32_t local) const {
    return station_[local] != 0;
  }
  [[nodiscard]] const LocalArc& arc(std::int32_t a) const { return arcs_[a]; }
  [[nodiscard]] std::span<const std::int32_t> out_arcs(std::int32_t v) const {
    return out_[v];
  }
  [[nodiscard]] std::span<const std::int32_t> in_arcs(std::int32_t v) const {
    return in_[v];
  }
  // Shortest transit time from the origin (over the whole network).
  [[nodiscard]] double from_origin(std::int32_t v) const {
    return from_origin_[v];
  }
  // Shortest transit time to the destination (over the whole network).
  [[nodiscard]] double to_destination(std::int32_t v) const {
    return to_destination_[v];
  }
  [[nodiscard]] std::vector<std::int32_t> local_stations() const {
    std::vector<std::int32_t> out;
    for (std::int32_t v = 0; v < node_count(); ++v) {
      if (is_station(v)) out.push_back(v);
    }
    return out;
  }
  [[nodiscard]] std::optional<std::int32_t> find_local_arc(
      std::int32_t tail, std::int32_t head) const {
    for (std::int32_t a : out_[tail]) {
      if (arcs_[a].head == head) return a;
    }
    return std::nullopt;
  }

  friend OdSubgraph build_od_subgraph(const NetworkGraph& graph,
                                      const OdPair& pair, int pair_index,
                                      const SubgraphOptions& options);

 private:
  int pair_index_ = -1;
  NodeIndex origin_ = -1;
  NodeIndex destination_ = -1;
  double time_bound_ = 0.0;
  double tolerance_ = kTimeTolerance;
  std::vector<NodeIndex> nodes_;
  std::vector<std::int64_t> ids_;
  std::vector<std::int32_t> local_of_;
  std::vector<char> station_;
  std::vector<LocalArc> arcs_;
  std::vector<ArcIndex> global_arcs_;  // sorted
  std::vector<std::vector<std::int32_t>> out_;
  std::vector<std::vector<std::int32_t>> in_;
  std::vector<double> from_origin_;
  std::vector<double> to_destination_;
};

namespace detail {

// Shortest transit times from `source` over nodes admitted by `usable`.
// Arcs entering `blocked_head` or leaving `blocked_tail` are ignored.
inline std::vector<double> network_dijkstra(
    const NetworkGraph& graph, NodeIndex source, bool forward,
    const std::function<bool(NodeIndex)>& usable, NodeIndex blocked_head,
    NodeIndex blocked_tail) {
  std::vector<double> dist(graph.node_count(), kInfinity);
  using Entry = std::pair<double, NodeIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (ArcIndex a : forward ? graph.out_arcs(v) : graph.in_arcs(v)) {
      const Arc& arc = graph.arc(a);
      if (arc.head == blocked_head || arc.tail == blocked_tail) continue;
      const NodeIndex w = forward ? arc.head : arc.tail;
      if (!usable(w)) continue;
      const double nd = d + arc.tau;
      if (nd < dist[w]) {
        dist[w] = nd;
        heap.emplace(nd, w);
      }
    }
  }
  return dist;
}

}  // namespace detail

// Routes may only pass through stations, so terminals other than the
// pair's own endpoints are excluded before the time labels are computed.
inline OdSubgraph build_od_subgraph(const NetworkGraph& graph,
                                    const OdPair& pair, int pair_index,
                                    const SubgraphOptions& options = {}) {
  const NodeIndex s = pair.origin;
  const NodeIndex t = pair.destination;
  if (s < 0 || t < 0 || s >= graph.node_count() || t >= graph.node_count() ||
      !graph.is_terminal(s) || !graph.is_terminal(t) || s == t) {
    throw std::invalid_argument("pair endpoints must be distinct terminals");
  }
  auto usable = [&](NodeIndex v) {
    return graph.is_station(v) || v == s || v == t;
  };
  const auto fwd = detail::network_dijkstra(graph, s, true, usable, s, t);
  const auto bwd = detail::network_dijkstra(graph, t, false, usable, s, t);
  const double bound = pair.time_bound;
  const double tol = options.tolerance;
  const bool prune = options.prune_by_time;

  OdSubgraph sub;
  sub.pair_index_ = pair_index;
  sub.origin_ = s;
  sub.destination_ = t;
  sub.time_bound_ = bound;
  sub.tolerance_ = tol;
  sub.local_of_.assign(graph.node_count(), -1);

  auto keep_node = [&](NodeIndex v) {
    if (!usable(v) || fwd[v] == kInfinity || bwd[v] == kInfinity) return false;
    return !prune || fwd[v] + bwd[v] <= bound + tol;
  };
  if (!keep_node(s) || !keep_node(t)) return sub;

  auto add_node = [&](NodeIndex v) {
    sub.local_of_[v] = static_cast<std::int32_t>(sub.nodes_.size());
    sub.nodes_.push_back(v);
    sub.ids_.push_back(graph.node(v).id);
    sub.station_.push_back(graph.is_station(v) ? 1 : 0);
    sub.from_origin_.push_back(fwd[v]);
    sub.to_destination_.push_back(bwd[v]);
  };
  add_node(s);
  add_node(t);
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    if (v != s && v != t && keep_node(v)) add_node(v);
  }
  sub.out_.assign(sub.nodes_.size(), {});
  sub.in_.assign(sub.nodes_.size(), {});
  for (ArcIndex a = 0; a < graph.arc_count(); ++a) {
    const Arc& arc = graph.arc(a);
    if (arc.head == s || arc.tail == t) continue;
    const auto lt = sub.local_of_[arc.tail];
    const auto lh = sub.local_of_[arc.head];
    if (lt < 0 || lh < 0) continue;
    if (prune && fwd[arc.tail] + arc.tau + bwd[arc.head] > bound + tol) {
      continue;
    }
    const auto la = static_cast<std::int32_t>(sub.arcs_.size());
    sub.arcs_.push_back({lt, lh, arc.tau, a});
    sub.global_arcs_.push_back(a);
    sub.out_[lt].push_back(la);
    sub.in_[lh].push_back(la);
  }
  return sub;
}

struct Instance {
  NetworkGraph graph;
  RangeParams ranges;
  std::vector<OdPair> pairs;
  std::vector<double> cost;      // per node; zero for terminals
  std::vector<double> capacity;  // per node; +inf means unlimited
  double deviation = 0.0;        // lambda, metadata only

  void validate() const {
    ranges.validate();
    const auto n = static_cast<std::size_t>(graph.node_count());
    if (cost.size() != n || capacity.size() != n) {
      throw std::invalid_argument("cost/capacity must be given for every node");
    }
    for (NodeIndex v = 0; v < graph.node_count(); ++v) {
      if (!(cost[v] >= 0.0) || !std::isfinite(cost[v])) {
        throw std::invalid_argument("station cost must be finite and >= 0");
      }
      if (!(capacity[v] >= 0.0)) {
        throw std::invalid_argument("station capacity must be >= 0");
      }
    }
    for (const Arc& a : graph.arcs()) {
      if (graph.is_terminal(a.tail) && graph.is_terminal(a.head)) {
        throw std::invalid_argument(
            "terminal to terminal arc is not range-feasible");
      }
    }
    for (const OdPair& p : pairs) {
      if (p.origin < 0 || p.origin >= graph.node_count() ||
          !graph.is_terminal(p.origin)) {
        throw std::invalid_argument("origin must be terminal");
      }
      if (p.destination < 0 || p.destination >= graph.node_count() ||
          !graph.is_terminal(p.destination)) {
        throw std::invalid_argument("destination must be terminal");
      }
      if (p.origin == p.destination) {
        throw std::invalid_argument("origin and destination must differ");
      }
      if (!(p.demand > 0.0) || !(p.time_bound > 0.0)) {
        throw std::invalid_argument("demand and time bound must be positive");
      }
    }
  }

  [[nodiscard]] double total_demand() const {
    double total = 0.0;
    for (const OdPair& p : pairs) total += p.demand;
    return total;
  }

  // Capacity clipped to the total demand, so unlimited stations stay finite.
  [[nodiscard]] double effective_capacity(NodeIndex v) const {
    return std::min(capacity[v], total_demand());
  }

  [[nodiscard]] bool integral_costs() const {
    for (NodeIndex v : graph.stations()) {
      if (cost[v] != std::floor(cost[v])) return false;
    }
    return true;
  }

  [[nodiscard]] std::vector<OdSubgraph> subgraphs(
      const SubgraphOptions& options = {}) const {
    std::vector<OdSubgraph> out;
    out.reserve(pairs.size());
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      out.push_back(build_od_subgraph(graph, pairs[q], static_cast<int>(q),
                                      options));
    }
    return out;
  }
};

struct DropReport {
  Instance instance;
  std::size_t removed = 0;
  std::vector<std::size_t> kept_indices;  // original index of each kept pair
};

// Removes pairs without any time-feasible path.
inline DropReport drop_infeasible_pairs(const Instance& instance) {
  DropReport report{instance, 0, {}};
  report.instance.pairs.clear();
  for (std::size_t q = 0; q < instance.pairs.size(); ++q) {
    const auto sub = build_od_subgraph(instance.graph, instance.pairs[q],
                                       static_cast<int>(q));
    if (sub.empty()) {
      ++report.removed;
    } else {
      report.instance.pairs.push_back(instance.pairs[q]);
      report.kept_indices.push_back(q);
    }
  }
  return report;
}

struct Solution {
  std::vector<NodeIndex> open;                 // sorted station indices
  std::vector<std::vector<NodeIndex>> routes;  // one node sequence per pair
  double objective = 0.0;
  std::vector<double> load;  // per node
  double gap = 0.0;
};

// Loads per node implied by the routes (interior nodes only).
inline std::vector<double> route_loads(const Instance& instance,
                                       const std::vector<std::vector<NodeIndex>>& routes) {
  std::vector<double> load(instance.graph.node_count(), 0.0);
  for (std::size_t q = 0; q < routes.size() && q < instance.pairs.size(); ++q) {
    const auto& r = routes[q];
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
      if (r[i] >= 0 && r[i] < instance.graph.node_count()) {
        load[r[i]] += instance.pairs[q].demand;
      }
    }
  }
  return load;
}

// Assembles a Solution (open set = stations on some route) from routes.
inline Solution make_solution(const Instance& instance,
                              std::vector<std::vector<NodeIndex>> routes) {
  Solution sol;
  sol.routes = std::move(routes);
  sol.load = route_loads(instance, sol.routes);
  for (NodeIndex v = 0; v < instance.graph.node_count(); ++v) {
    if (instance.graph.is_station(v) && sol.load[v] > 0.0) {
      sol.open.push_back(v);
      sol.objective += instance.cost[v];
    }
  }
  return sol;
}

// Mean over open stations of load / capacity, as a fraction.
inline double mean_utilization(const Instance& instance, const Solution& sol) {
  if (sol.open.empty()) return 0.0;
  double total = 0.0;
  for (NodeIndex v : sol.open) {
    const double cap = instance.capacity[v];
    if (cap > 0.0 && std::isfinite(cap)) total += sol.load[v] / cap;
  }
  return total / static_cast<double>(sol.open.size());
}

enum class ViolationKind {
  route_count,
  route_endpoints,
  repeated_node,
  missing_arc,
  outside_subgraph,
  time_bound,
  closed_station,
  capacity,
  objective,
};

inline const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::route_count: return "route_count";
    case ViolationKind::route_endpoints: return "route_endpoints";
    case ViolationKind::repeated_node: return "repeated_node";
    case ViolationKind::missing_arc: return "missing_arc";
    case ViolationKind::outside_subgraph: return "outside_subgraph";
    case ViolationKind::time_bound: return "time";
    case ViolationKind::closed_station: return "closed_station";
    case ViolationKind::capacity: return "capacity";
    case ViolationKind::objective: return "objective";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  int pair = -1;        // offending pair, if any
  NodeIndex node = -1;  // offending node, if any
  std::string message;
};

struct Verdict {
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] const Violation* first() const {
    return violations.empty() ? nullptr : &violations.front();
  }
};

// Checks routes, open stations, capacities and the objective independently
// of how the solution was produced.
inline Verdict verify_solution(const Instance& instance, const Solution& sol,
                               double tolerance = kTimeTolerance) {
  Verdict verdict;
  auto fail = [&](ViolationKind kind, int q, NodeIndex v, std::string msg) {
    verdict.violations.push_back({kind, q, v, std::move(msg)});
  };
  const auto& g = instance.graph;
  if (sol.routes.size() != instance.pairs.size()) {
    fail(ViolationKind::route_count, -1, -1,
         "expected " + std::to_string(instance.pairs.size()) + " routes");
    return verdict;
  }
  std::vector<char> open(g.node_count(), 0);
  for (NodeIndex v : sol.open) {
    if (v >= 0 && v < g.node_count()) open[v] = 1;
  }
  std::vector<double> load(g.node_count(), 0.0);
  for (std::size_t qi = 0; qi < sol.routes.size(); ++qi) {
    const int q = static_cast<int>(qi);
    const OdPair& pair = instance.pairs[qi];
    const auto& route = sol.routes[qi];
    if (route.size() < 2 || route.front() != pair.origin ||
        route.back() != pair.destination) {
      fail(ViolationKind::route_endpoints, q, -1,
           "route must start at origin and end at destination");
      continue;
    }
    bool valid_ids = std::all_of(route.begin(), route.end(), [&](NodeIndex v) {
      return v >= 0 && v < g.node_count();
    });
    if (!valid_ids) {
      fail(ViolationKind::missing_arc, q, -1, "route references unknown node");
      continue;
    }
    std::vector<NodeIndex> sorted = route;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(ViolationKind::repeated_node, q, -1, "route revisits a node");
    }
    const auto sub = build_od_subgraph(g, pair, q, {true, tolerance});
    double time = 0.0;
    bool arcs_ok = true;
    for (std::size_t i = 0; i + 1 < route.size(); ++i) {
      auto a = g.find_arc(route[i], route[i + 1]);
      if (!a) {
        fail(ViolationKind::missing_arc, q, route[i],
             "no arc from node " + std::to_string(g.node(route[i]).id));
        arcs_ok = false;
        break;
      }
      time += g.arc(*a).tau;
      if (!sub.contains_global_arc(*a)) {
        fail(ViolationKind::outside_subgraph, q, route[i],
             "arc outside the pair subgraph");
      }
    }
    if (arcs_ok && time > pair.time_bound + tolerance) {
      std::ostringstream msg;
      msg << "route time " << time << " exceeds bound " << pair.time_bound;
      fail(ViolationKind::time_bound, q, -1, msg.str());
    }
    for (std::size_t i = 1; i + 1 < route.size(); ++i) {
      const NodeIndex v = route[i];
      if (!g.is_station(v) || !open[v]) {
        fail(ViolationKind::closed_station, q, v,
             "interior node " + std::to_string(g.node(v).id) +
                 " is not an open station");
      }
      load[v] += pair.demand;
    }
  }
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (load[v] > instance.capacity[v] + 1e-9) {
      std::ostringstream msg;
      msg << "load " << load[v] << " exceeds capacity " << instance.capacity[v]
          << " at node " << g.node(v).id;
      fail(ViolationKind::capacity, -1, v, msg.str());
    }
  }
  double objective = 0.0;
  for (NodeIndex v : sol.open) {
    if (v >= 0 && v < g.node_count()) objective += instance.cost[v];
  }
  if (std::abs(objective - sol.objective) > 1e-6) {
    fail(ViolationKind::objective, -1, -1, "objective does not match open set");
  }
  return verdict;
}

}  // namespace refuel

#endif  // REFUEL_NETWORK_HPP_
