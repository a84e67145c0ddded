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

// Shared fixtures and brute-force oracles for the test suites. Nothing here
// calls into the solver kernels; the oracles enumerate paths directly on
// the network.

#ifndef REFUEL_TESTS_SUPPORT_HPP_
#define REFUEL_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "refuel/network.hpp"

namespace refuel::testing {

// Small network with two terminals s, t and stations a, b, c, d:
// s->a 2, s->b 2, a->c 1, b->c 1, a->d 1, d->t 2, c->t 3, b->t 3.
struct Fig1 {
  static constexpr NodeIndex s = 0, t = 1, a = 2, b = 3, c = 4, d = 5;

  static NetworkGraph graph() {
    std::vector<Node> nodes = {{0, NodeRole::terminal}, {1, NodeRole::terminal},
                               {2, NodeRole::station},  {3, NodeRole::station},
                               {4, NodeRole::station},  {5, NodeRole::station}};
    std::vector<Arc> arcs = {{s, a, 2, 2}, {s, b, 2, 2}, {a, c, 1, 1}, {b, c, 1, 1},
                             {a, d, 1, 1}, {d, t, 2, 2}, {c, t, 3, 3}, {b, t, 3, 3}};
    return NetworkGraph(std::move(nodes), std::move(arcs));
  }

  // `pairs` copies of the pair (s, t) with u = 5 and unit demand.
  static Instance instance(int pairs = 1,
                           double capacity = std::numeric_limits<double>::infinity()) {
    Instance inst;
    inst.graph = graph();
    inst.ranges = RangeParams{10.0, 5.0, 5.0};
    for (int q = 0; q < pairs; ++q) inst.pairs.push_back({s, t, 1.0, 5.0});
    inst.cost.assign(6, 1.0);
    inst.cost[s] = inst.cost[t] = 0.0;
    inst.capacity.assign(6, capacity);
    return inst;
  }
};

// All simple origin-destination paths whose interior consists of stations,
// with total time within the bound.
inline std::vector<std::vector<NodeIndex>> enumerate_paths(
    const NetworkGraph& g, NodeIndex s, NodeIndex t, double bound,
    double tol = kTimeTolerance) {
  std::vector<std::vector<NodeIndex>> out;
  std::vector<NodeIndex> path{s};
  std::vector<char> on(g.node_count(), 0);
  on[s] = 1;
  std::function<void(NodeIndex, double)> dfs = [&](NodeIndex v, double time) {
    for (ArcIndex a : g.out_arcs(v)) {
      const Arc& arc = g.arc(a);
      const NodeIndex w = arc.head;
      const double nt = time + arc.tau;
      if (on[w] || nt > bound + tol) continue;
      if (w == t) {
        path.push_back(w);
        out.push_back(path);
        path.pop_back();
        continue;
      }
      if (!g.is_station(w)) continue;
      on[w] = 1;
      path.push_back(w);
      dfs(w, nt);
      path.pop_back();
      on[w] = 0;
    }
  };
  dfs(s, 0.0);
  return out;
}

inline std::vector<std::vector<NodeIndex>> enumerate_paths(const Instance& inst,
                                                           std::size_t q) {
  const auto& p = inst.pairs[q];
  return enumerate_paths(inst.graph, p.origin, p.destination, p.time_bound);
}

inline double path_time(const NetworkGraph& g, const std::vector<NodeIndex>& p) {
  double time = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    time += g.arc(*g.find_arc(p[i], p[i + 1])).tau;
  }
  return time;
}

// True iff every enumerated time-feasible path meets `stations`.
inline bool hits_all_paths(const Instance& inst, std::size_t q,
                           const std::vector<NodeIndex>& stations) {
  const std::set<NodeIndex> set(stations.begin(), stations.end());
  for (const auto& path : enumerate_paths(inst, q)) {
    bool hit = false;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) hit |= set.count(path[i]) > 0;
    if (!hit) return false;
  }
  return true;
}

// Fastest origin-destination time with a station-only interior (O(n^2)
// label correcting, independent of the library's Dijkstra).
inline double fastest_time(const NetworkGraph& g, NodeIndex s, NodeIndex t) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.node_count(), inf);
  dist[s] = 0.0;
  for (NodeIndex round = 0; round < g.node_count(); ++round) {
    bool changed = false;
    for (const Arc& arc : g.arcs()) {
      if (arc.tail != s && !g.is_station(arc.tail)) continue;
      if (arc.head != t && !g.is_station(arc.head)) continue;
      if (arc.head == s || arc.tail == t) continue;
      if (dist[arc.tail] + arc.tau < dist[arc.head]) {
        dist[arc.head] = dist[arc.tail] + arc.tau;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return dist[t];
}

// Every 0/1 choice of pairs through the station whose demand fits the
// capacity satisfies sum coef(q) z_q <= rhs. `coef` and `rhs` describe the
// inequality, indexed by pair.
inline bool knapsack_valid(const std::vector<double>& demand, double kappa,
                           const std::vector<int>& coef, int rhs) {
  const std::size_t n = demand.size();
  std::vector<int> support;
  for (std::size_t q = 0; q < n; ++q) {
    if (coef[q] != 0) support.push_back(static_cast<int>(q));
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << support.size()); ++mask) {
    double load = 0.0;
    int lhs = 0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (mask >> i & 1u) {
        load += demand[support[i]];
        lhs += coef[support[i]];
      }
    }
    if (load <= kappa + 1e-9 && lhs > rhs) return false;
  }
  return true;
}

// Random network: `terminals` terminals then `stations` stations, arcs with
// integer transit times in [1, 5], no terminal to terminal arcs.
inline Instance random_instance(std::uint64_t seed, int terminals, int stations,
                                int pairs, double density, double capacity,
                                double slack = 1.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> time(1, 5);
  std::vector<Node> nodes;
  const int n = terminals + stations;
  for (int v = 0; v < n; ++v) {
    nodes.push_back({v, v < terminals ? NodeRole::terminal : NodeRole::station});
  }
  std::vector<Arc> arcs;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v || (u < terminals && v < terminals)) continue;
      if (unit(rng) < density) {
        const double tau = time(rng);
        arcs.push_back({u, v, tau, tau});
      }
    }
  }
  Instance inst;
  inst.graph = NetworkGraph(std::move(nodes), std::move(arcs));
  inst.ranges = RangeParams{10.0, 5.0, 5.0};
  inst.cost.assign(n, 0.0);
  inst.capacity.assign(n, capacity);
  for (int v = terminals; v < n; ++v) inst.cost[v] = 1.0;
  std::uniform_int_distribution<int> pick(0, terminals - 1);
  for (int q = 0; q < pairs; ++q) {
    int s = pick(rng);
    int t = pick(rng);
    while (t == s) t = pick(rng);
    inst.pairs.push_back({s, t, 1.0, 1.0});
  }
  // Time bound: slack times the fastest station-only route (or 1 if none).
  for (auto& p : inst.pairs) {
    const double best = fastest_time(inst.graph, p.origin, p.destination);
    p.time_bound = std::isfinite(best) ? std::floor(best * slack) : 1.0;
  }
  return inst;
}

}  // namespace refuel::testing

#endif  // REFUEL_TESTS_SUPPORT_HPP_
