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

#ifndef REFUEL_SOLVER_CONFIG_HPP_
#define REFUEL_SOLVER_CONFIG_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "refuel/bnb.hpp"
#include "refuel/graph_algorithms.hpp"
#include "refuel/heuristic.hpp"
#include "refuel/lifted_cover.hpp"
#include "refuel/network.hpp"

namespace refuel {

enum class SeparationVariant { ours, baseline };

inline const char* to_string(SeparationVariant v) {
  return v == SeparationVariant::ours ? "ours" : "baseline";
}

// Pricing state of one pair when a node's column generation has converged.
struct PairPricing {
  int pair = -1;
  double sigma = 0.0;              // dual of the pair's convexity row
  std::vector<double> node_cost;   // per local node, +inf where excluded
  std::vector<char> arc_allowed;   // per local arc
};

struct ConvergedPricing {
  std::int64_t node = 0;
  double objective = 0.0;
  std::vector<PairPricing> pairs;
};

// Observers; any may be left empty.
struct SolverHooks {
  std::function<void(const TimeSeparator&)> on_separator;
  std::function<void(const LiftedCover&)> on_lci;
  std::function<void(const std::optional<Solution>&, const HeuristicStats&)> on_heuristic;
  std::function<void(std::int64_t node, double bound)> on_lagrangian;
  std::function<void(const ConvergedPricing&)> on_converged;
};

struct SolverConfig {
  BnbLimits limits;
  bool lci = true;
  bool fractional = true;
  bool heuristic = true;
  bool larac = true;
  bool early_termination = true;
  SeparationVariant separation = SeparationVariant::ours;
  SolverHooks hooks;
};

namespace detail {

// Fastest route through the nodes flagged in `usable` (local indices;
// the endpoints are always usable). Nullopt if none meets the time bound.
inline std::optional<std::vector<NodeIndex>> route_through(const OdSubgraph& sub,
                                                           const std::vector<char>& usable) {
  if (sub.empty()) return std::nullopt;
  std::vector<char> enterable = usable;
  enterable[sub.source()] = 1;
  enterable[sub.target()] = 1;
  const auto tau = transit_times(sub);
  SearchFilter filter;
  filter.enterable = enterable;
  const auto tree = dijkstra_tree(sub, sub.source(), Direction::forward, tau, filter);
  if (!within(tree.dist[sub.target()], sub)) return std::nullopt;
  auto arcs = tree_path(sub, tree);
  if (!arcs) return std::nullopt;
  const std::vector<double> zero(sub.node_count(), 0.0);
  return trace_path(sub, *arcs, zero).nodes;
}

inline bool near_integral(double v, double tol = 1e-6) {
  return std::abs(v - std::round(v)) <= tol;
}

}  // namespace detail

}  // namespace refuel

#endif  // REFUEL_SOLVER_CONFIG_HPP_
