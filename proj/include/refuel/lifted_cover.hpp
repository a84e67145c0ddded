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

// Lifted cover inequalities for a station's capacity knapsack
//   sum_{q in C} z^q + sum_{q not in C} alpha_q z^q <= |C| - 1.

#ifndef REFUEL_LIFTED_COVER_HPP_
#define REFUEL_LIFTED_COVER_HPP_

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "refuel/network.hpp"

namespace refuel {

inline constexpr double kSaturationTolerance = 1e-6;
inline constexpr double kCutViolationTolerance = 1e-6;

// Greedy cover over `pairs` in order of non-increasing zbar (ties: lower
// pair index), then stripped of members, largest demand first, while the
// rest still exceeds kappa. zbar and demand are indexed by pair. Returns
// nullopt if all of `pairs` together fit.
inline std::optional<std::vector<int>> minimal_cover(std::span<const int> pairs,
                                                     std::span<const double> zbar,
                                                     std::span<const double> demand,
                                                     double kappa) {
  std::vector<int> order(pairs.begin(), pairs.end());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (zbar[a] != zbar[b]) return zbar[a] > zbar[b];
    return a < b;
  });
  std::vector<int> cover;
  double total = 0.0;
  for (int q : order) {
    cover.push_back(q);
    total += demand[q];
    if (total > kappa) break;
  }
  if (!(total > kappa)) return std::nullopt;
  std::vector<int> by_demand = cover;
  std::stable_sort(by_demand.begin(), by_demand.end(), [&](int a, int b) {
    if (demand[a] != demand[b]) return demand[a] > demand[b];
    return a < b;
  });
  std::vector<char> dropped(demand.size(), 0);
  for (int q : by_demand) {
    if (total - demand[q] > kappa) {
      total -= demand[q];
      dropped[q] = 1;
    }
  }
  std::vector<int> out;
  for (int q : cover) {
    if (!dropped[q]) out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Prefix sums S(0..|C|) of the cover demands sorted non-increasing.
inline std::vector<double> cover_prefix_sums(std::span<const int> cover,
                                             std::span<const double> demand) {
  std::vector<double> f;
  for (int q : cover) f.push_back(demand[q]);
  std::sort(f.begin(), f.end(), std::greater<>());
  std::vector<double> s(f.size() + 1, 0.0);
  for (std::size_t r = 0; r < f.size(); ++r) s[r + 1] = s[r] + f[r];
  return s;
}

// The unique integer alpha with S(alpha) <= f < S(alpha + 1), where
// S(r) = +inf for r beyond the cover size.
inline int balas_coefficient(std::span<const double> prefix, double f) {
  int alpha = 0;
  while (alpha + 1 < static_cast<int>(prefix.size()) && prefix[alpha + 1] <= f) ++alpha;
  return alpha;
}

struct LiftedCover {
  NodeIndex station = -1;
  std::vector<int> cover;                      // sorted pair indices
  std::vector<std::pair<int, int>> lifted;     // (pair, alpha) with alpha > 0
  int rhs = 0;                                 // |C| - 1

  [[nodiscard]] int coefficient(int q) const {
    if (std::binary_search(cover.begin(), cover.end(), q)) return 1;
    for (auto [p, a] : lifted) {
      if (p == q) return a;
    }
    return 0;
  }

  // Left-hand side at the pair values `z` (indexed by pair).
  [[nodiscard]] double lhs(std::span<const double> z) const {
    double v = 0.0;
    for (int q : cover) v += z[q];
    for (auto [q, a] : lifted) v += a * z[q];
    return v;
  }
};

inline LiftedCover balas_lift(NodeIndex station, std::vector<int> cover,
                              std::span<const int> pairs,
                              std::span<const double> demand) {
  LiftedCover lci;
  lci.station = station;
  std::sort(cover.begin(), cover.end());
  const auto prefix = cover_prefix_sums(cover, demand);
  for (int q : pairs) {
    if (std::binary_search(cover.begin(), cover.end(), q)) continue;
    const int alpha = balas_coefficient(prefix, demand[q]);
    if (alpha > 0) lci.lifted.emplace_back(q, alpha);
  }
  std::sort(lci.lifted.begin(), lci.lifted.end());
  lci.rhs = static_cast<int>(cover.size()) - 1;
  lci.cover = std::move(cover);
  return lci;
}

// Separation at one station. `pairs` are the pairs whose subgraph holds
// the station; zbar and demand are indexed by pair. Returns an LCI only if
// the station is saturated and the inequality is violated.
inline std::optional<LiftedCover> separate_lci(NodeIndex station, std::span<const int> pairs,
                                               std::span<const double> zbar,
                                               std::span<const double> demand,
                                               double kappa, double xbar) {
  double load = 0.0;
  for (int q : pairs) load += demand[q] * zbar[q];
  if (load < kappa * xbar - kSaturationTolerance) return std::nullopt;
  auto cover = minimal_cover(pairs, zbar, demand, kappa);
  if (!cover) return std::nullopt;
  auto lci = balas_lift(station, std::move(*cover), pairs, demand);
  if (lci.lhs(zbar) <= lci.rhs + kCutViolationTolerance) return std::nullopt;
  return lci;
}

}  // namespace refuel

#endif  // REFUEL_LIFTED_COVER_HPP_
