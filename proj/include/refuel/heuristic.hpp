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

// Rounding heuristic: routes pairs one at a time along constrained
// shortest paths priced from the fractional assignment, evicting earlier
// pairs first-in-first-out where a station runs out of capacity.

#ifndef REFUEL_HEURISTIC_HPP_
#define REFUEL_HEURISTIC_HPP_

#include <algorithm>
#include <deque>
#include <optional>
#include <vector>

#include "refuel/graph_algorithms.hpp"
#include "refuel/network.hpp"

namespace refuel {

inline constexpr double kHopPenalty = 1e-7;
inline constexpr double kBlockedCost = 1e6;
inline constexpr std::size_t kEvictionFactor = 5;

struct HeuristicState {
  std::vector<double> load;                          // per node
  std::vector<std::vector<NodeIndex>> route;         // per pair, empty if unassigned
  std::vector<std::deque<int>> station_queue;        // per node, FIFO of pairs
  std::deque<int> pending;                           // pairs still to route
  std::size_t evictions = 0;
  std::size_t eviction_cap = 0;

  HeuristicState(const Instance& inst)
      : load(inst.graph.node_count(), 0.0),
        route(inst.pairs.size()),
        station_queue(inst.graph.node_count()),
        eviction_cap(kEvictionFactor * inst.pairs.size()) {
    for (std::size_t q = 0; q < inst.pairs.size(); ++q) pending.push_back(static_cast<int>(q));
  }
};

struct HeuristicStats {
  std::size_t evictions = 0;
  std::size_t csp_calls = 0;
  bool guard_hit = false;
  bool stuck = false;  // some pair had no usable path at all
};

namespace detail {

inline void unassign(const Instance& inst, int q, HeuristicState& st) {
  const double f = inst.pairs[q].demand;
  auto& r = st.route[q];
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    const NodeIndex v = r[i];
    st.load[v] -= f;
    if (st.load[v] < 1e-9) st.load[v] = 0.0;
    auto& queue = st.station_queue[v];
    queue.erase(std::remove(queue.begin(), queue.end(), q), queue.end());
  }
  r.clear();
}

}  // namespace detail

// Commits `path` for pair q station by station; where a station cannot
// take the demand, earlier pairs are evicted from it first-in-first-out
// (their whole routes are released and they are queued again). Returns
// false once the eviction cap is exceeded.
inline bool heuristic_resolve_infeasibility(const Instance& inst, int q,
                                            const std::vector<NodeIndex>& path,
                                            HeuristicState& st) {
  const double f = inst.pairs[q].demand;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const NodeIndex v = path[i];
    const double kappa = inst.capacity[v];
    while (st.load[v] + f > kappa + 1e-9 && !st.station_queue[v].empty()) {
      const int evicted = st.station_queue[v].front();
      detail::unassign(inst, evicted, st);
      st.pending.push_back(evicted);
      if (++st.evictions > st.eviction_cap) return false;
    }
    st.load[v] += f;
    st.station_queue[v].push_back(q);
  }
  st.route[q] = path;
  return true;
}

// zbar[q][local node] is the fractional assignment on pair q's subgraph.
inline std::optional<Solution> primal_heuristic_csp(
    const Instance& inst, const std::vector<OdSubgraph>& subs,
    const std::vector<std::vector<double>>& zbar, HeuristicStats* stats = nullptr) {
  HeuristicState st(inst);
  HeuristicStats local;
  HeuristicStats& s = stats ? *stats : local;
  s = {};
  while (!st.pending.empty()) {
    const int q = st.pending.front();
    st.pending.pop_front();
    const OdSubgraph& sub = subs[q];
    if (sub.empty()) {
      s.stuck = true;
      return std::nullopt;
    }
    const double f = inst.pairs[q].demand;
    std::vector<double> cost(sub.node_count(), 0.0);
    bool any_blocked = false;
    for (std::int32_t v = 0; v < sub.node_count(); ++v) {
      if (!sub.is_station(v)) continue;
      const NodeIndex g = sub.global(v);
      if (f > inst.capacity[g] + 1e-9) {
        cost[v] = kInfinity;
      } else if (st.load[g] + f > inst.capacity[g] + 1e-9) {
        cost[v] = kInfinity;
        any_blocked = true;
      } else if (st.load[g] > 0.0) {
        cost[v] = kHopPenalty;
      } else {
        cost[v] = std::max(0.0, 1.0 - zbar[q][v]) + kHopPenalty;
      }
    }
    ++s.csp_calls;
    auto path = csp_exact(sub, cost, sub.time_bound());
    if (!path && any_blocked) {
      for (std::int32_t v = 0; v < sub.node_count(); ++v) {
        if (!sub.is_station(v)) continue;
        const NodeIndex g = sub.global(v);
        if (f <= inst.capacity[g] + 1e-9 && st.load[g] + f > inst.capacity[g] + 1e-9) {
          cost[v] = kBlockedCost;
        }
      }
      ++s.csp_calls;
      path = csp_exact(sub, cost, sub.time_bound());
    }
    if (!path) {
      s.stuck = true;
      s.evictions = st.evictions;
      return std::nullopt;
    }
    if (!heuristic_resolve_infeasibility(inst, q, path->nodes, st)) {
      s.guard_hit = true;
      s.evictions = st.evictions;
      return std::nullopt;
    }
  }
  s.evictions = st.evictions;
  return make_solution(inst, std::move(st.route));
}

}  // namespace refuel

#endif  // REFUEL_HEURISTIC_HPP_
