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

// Exhaustive reference solver for tiny instances. Station subsets are
// scanned by non-decreasing cost; each subset is checked by a depth-first
// assignment of pre-enumerated time-feasible paths with capacity
// bookkeeping. Shares no code with the exact solvers beyond the data model.

#ifndef REFUEL_ORACLE_HPP_
#define REFUEL_ORACLE_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "refuel/network.hpp"

namespace refuel {

struct OracleLimits {
  int max_stations = 16;
  std::size_t max_paths_per_pair = 200000;
};

struct OracleResult {
  bool feasible = false;
  double objective = kInfinity;
  std::optional<Solution> certificate;
  std::size_t subsets_checked = 0;
};

namespace detail {

struct OraclePath {
  std::vector<NodeIndex> nodes;
  std::uint32_t mask = 0;  // interior stations as bits of the station order
};

inline std::vector<OraclePath> oracle_paths(const Instance& inst, const OdPair& pair,
                                            const std::vector<int>& bit_of,
                                            std::size_t limit) {
  const auto& g = inst.graph;
  std::vector<OraclePath> out;
  std::vector<NodeIndex> path{pair.origin};
  std::vector<char> on(g.node_count(), 0);
  on[pair.origin] = 1;
  const double bound = pair.time_bound + kTimeTolerance;
  auto dfs = [&](auto&& self, NodeIndex v, double time, std::uint32_t mask) -> void {
    for (ArcIndex a : g.out_arcs(v)) {
      const Arc& arc = g.arc(a);
      const NodeIndex w = arc.head;
      const double nt = time + arc.tau;
      if (on[w] || nt > bound) continue;
      if (w == pair.destination) {
        path.push_back(w);
        out.push_back({path, mask});
        path.pop_back();
        if (out.size() > limit) throw std::length_error("oracle: too many paths");
        continue;
      }
      if (!g.is_station(w)) continue;
      on[w] = 1;
      path.push_back(w);
      self(self, w, nt, mask | (1u << bit_of[w]));
      path.pop_back();
      on[w] = 0;
    }
  };
  dfs(dfs, pair.origin, 0.0, 0u);
  return out;
}

}  // namespace detail

inline OracleResult brute_force_oracle(const Instance& inst, const OracleLimits& limits = {}) {
  const auto stations = inst.graph.stations();
  if (static_cast<int>(stations.size()) > limits.max_stations) {
    throw std::invalid_argument("brute_force_oracle: more than " +
                                std::to_string(limits.max_stations) + " stations");
  }
  OracleResult result;
  if (inst.pairs.empty()) {
    result.feasible = true;
    result.objective = 0.0;
    result.certificate = make_solution(inst, {});
    return result;
  }
  std::vector<int> bit_of(inst.graph.node_count(), -1);
  for (std::size_t i = 0; i < stations.size(); ++i) bit_of[stations[i]] = static_cast<int>(i);

  const std::size_t nq = inst.pairs.size();
  std::vector<std::vector<detail::OraclePath>> paths(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    paths[q] = detail::oracle_paths(inst, inst.pairs[q], bit_of, limits.max_paths_per_pair);
    if (paths[q].empty()) return result;
  }

  const std::uint32_t count = 1u << stations.size();
  std::vector<std::uint32_t> subsets(count);
  std::iota(subsets.begin(), subsets.end(), 0u);
  std::vector<double> cost(count, 0.0);
  for (std::uint32_t s = 0; s < count; ++s) {
    for (std::size_t i = 0; i < stations.size(); ++i) {
      if (s >> i & 1u) cost[s] += inst.cost[stations[i]];
    }
  }
  std::stable_sort(subsets.begin(), subsets.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (cost[a] != cost[b]) return cost[a] < cost[b];
    return std::popcount(a) < std::popcount(b);
  });

  std::vector<double> residual(stations.size());
  std::vector<std::vector<const detail::OraclePath*>> usable(nq);
  std::vector<std::size_t> order(nq);
  std::vector<const detail::OraclePath*> chosen(nq);
  for (std::uint32_t subset : subsets) {
    ++result.subsets_checked;
    bool possible = true;
    for (std::size_t q = 0; q < nq && possible; ++q) {
      usable[q].clear();
      for (const auto& p : paths[q]) {
        if ((p.mask & ~subset) != 0) continue;
        bool fits = true;
        for (std::size_t i = 0; i < stations.size(); ++i) {
          if ((p.mask >> i & 1u) && inst.pairs[q].demand > inst.capacity[stations[i]]) {
            fits = false;
          }
        }
        if (fits) usable[q].push_back(&p);
      }
      possible = !usable[q].empty();
    }
    if (!possible) continue;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return usable[a].size() < usable[b].size();
    });
    for (std::size_t i = 0; i < stations.size(); ++i) residual[i] = inst.capacity[stations[i]];
    auto assign = [&](auto&& self, std::size_t k) -> bool {
      if (k == nq) return true;
      const std::size_t q = order[k];
      const double f = inst.pairs[q].demand;
      for (const auto* p : usable[q]) {
        bool fits = true;
        for (std::size_t i = 0; i < stations.size() && fits; ++i) {
          if ((p->mask >> i & 1u) && residual[i] < f - 1e-9) fits = false;
        }
        if (!fits) continue;
        for (std::size_t i = 0; i < stations.size(); ++i) {
          if (p->mask >> i & 1u) residual[i] -= f;
        }
        chosen[q] = p;
        if (self(self, k + 1)) return true;
        for (std::size_t i = 0; i < stations.size(); ++i) {
          if (p->mask >> i & 1u) residual[i] += f;
        }
      }
      return false;
    };
    if (!assign(assign, 0)) continue;
    std::vector<std::vector<NodeIndex>> routes(nq);
    for (std::size_t q = 0; q < nq; ++q) routes[q] = chosen[q]->nodes;
    result.certificate = make_solution(inst, std::move(routes));
    result.feasible = true;
    result.objective = result.certificate->objective;
    return result;
  }
  return result;
}

}  // namespace refuel

#endif  // REFUEL_ORACLE_HPP_
