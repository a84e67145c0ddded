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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "refuel/lifted_cover.hpp"

namespace refuel {
namespace {

const std::vector<int> kFour{0, 1, 2, 3};
const std::vector<double> kDemand{6, 5, 4, 7};

// Sum of the r largest cover demands, computed from scratch.
double largest_sum(std::vector<double> f, int r) {
  std::sort(f.begin(), f.end(), std::greater<>());
  double s = 0.0;
  for (int i = 0; i < r && i < static_cast<int>(f.size()); ++i) s += f[i];
  return s;
}

TEST(MinimalCover, GreedyThenStrip) {
  const std::vector<double> z{0.9, 0.8, 0.7, 0.6};
  const auto cover = minimal_cover(kFour, z, kDemand, 10.0);
  ASSERT_TRUE(cover);
  EXPECT_EQ(*cover, (std::vector<int>{0, 1}));
}

TEST(MinimalCover, EverySubsetCheckedByHand) {
  // {0,1} is a cover, and each singleton fits.
  EXPECT_GT(kDemand[0] + kDemand[1], 10.0);
  EXPECT_LE(kDemand[0], 10.0);
  EXPECT_LE(kDemand[1], 10.0);
}

TEST(MinimalCover, SingleOversizedPair) {
  const std::vector<int> pairs{0, 1};
  const std::vector<double> f{12, 3};
  const std::vector<double> z{0.5, 0.9};
  const auto cover = minimal_cover(pairs, z, f, 10.0);
  ASSERT_TRUE(cover);
  EXPECT_EQ(*cover, (std::vector<int>{0}));
}

TEST(MinimalCover, NoneWhenEverythingFits) {
  const std::vector<int> pairs{0, 1};
  const std::vector<double> f{4, 5};
  const std::vector<double> z{1, 1};
  EXPECT_FALSE(minimal_cover(pairs, z, f, 9.0));
}

TEST(MinimalCover, RandomCoversAreMinimal) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dem(1, 9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 7;
    std::vector<int> pairs(n);
    std::iota(pairs.begin(), pairs.end(), 0);
    std::vector<double> f(n), z(n);
    for (int q = 0; q < n; ++q) {
      f[q] = dem(rng);
      z[q] = unit(rng);
    }
    const double kappa = dem(rng) + 2;
    const auto cover = minimal_cover(pairs, z, f, kappa);
    const double total = std::accumulate(f.begin(), f.end(), 0.0);
    if (total <= kappa) {
      EXPECT_FALSE(cover);
      continue;
    }
    ASSERT_TRUE(cover);
    double sum = 0.0;
    for (int q : *cover) sum += f[q];
    EXPECT_GT(sum, kappa);
    for (int q : *cover) EXPECT_LE(sum - f[q], kappa);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(BalasLift, SpecificCoefficients) {
  const auto lci = balas_lift(7, {0, 1}, kFour, kDemand);
  EXPECT_EQ(lci.station, 7);
  EXPECT_EQ(lci.rhs, 1);
  EXPECT_EQ(lci.coefficient(0), 1);
  EXPECT_EQ(lci.coefficient(1), 1);
  EXPECT_EQ(lci.coefficient(2), 0);  // 0 <= 4 < 6
  EXPECT_EQ(lci.coefficient(3), 1);  // 6 <= 7 < 11
}

TEST(BalasLift, LeftBoundaryIsInclusive) {
  const std::vector<double> f{6, 5, 6};
  const std::vector<int> pairs{0, 1, 2};
  const auto lci = balas_lift(0, {0, 1}, pairs, f);
  EXPECT_EQ(lci.coefficient(2), 1);
}

TEST(BalasLift, BeyondCoverTotalTakesCoverSize) {
  const std::vector<double> f{6, 5, 20};
  const std::vector<int> pairs{0, 1, 2};
  EXPECT_EQ(balas_lift(0, {0, 1}, pairs, f).coefficient(2), 2);
}

TEST(BalasLift, SandwichOnRandomCovers) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dem(1, 15);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 6;
    std::vector<double> f(n);
    for (auto& v : f) v = dem(rng);
    std::vector<int> pairs(n);
    std::iota(pairs.begin(), pairs.end(), 0);
    const std::vector<int> cover{0, 1};
    const auto lci = balas_lift(0, cover, pairs, f);
    const std::vector<double> cf{f[0], f[1]};
    for (int q = 2; q < n; ++q) {
      const int a = lci.coefficient(q);
      EXPECT_LE(largest_sum(cf, a), f[q]);
      if (a < 2) {
        EXPECT_LT(f[q], largest_sum(cf, a + 1));
      }
    }
  }
}

TEST(SeparateLci, ViolatedCoverIsEmitted) {
  const std::vector<double> z{0.9, 0.9, 0.0, 0.3};
  const auto lci = separate_lci(3, kFour, z, kDemand, 10.0, 1.0);
  ASSERT_TRUE(lci);
  EXPECT_EQ(lci->cover, (std::vector<int>{0, 1}));
  EXPECT_NEAR(lci->lhs(z), 2.1, 1e-12);
  EXPECT_EQ(lci->rhs, 1);
}

TEST(SeparateLci, UnsaturatedStationSkipped) {
  const std::vector<double> z{0.9, 0.9, 0.0, 0.3};
  // Load 12 < 10 * 1.5.
  EXPECT_FALSE(separate_lci(3, kFour, z, kDemand, 10.0, 1.5));
}

TEST(SeparateLci, TightInequalityNotAdded) {
  // Load 3.6 >= 5 * 0.7, cover {0,1}, lhs = 0.6 + 0.4 = 1 = rhs.
  const std::vector<int> pairs{0, 1};
  const std::vector<double> f{4, 3};
  const std::vector<double> z{0.6, 0.4};
  EXPECT_FALSE(separate_lci(0, pairs, z, f, 5.0, 0.7));
  // The same point with a singleton cover is cut off.
  EXPECT_TRUE(separate_lci(0, pairs, z, std::vector<double>{6, 5}, 5.6, 1.0));
}

// Every 0/1 assignment that respects the knapsack satisfies the LCI.
TEST(SeparateLci, ValidForAllFeasibleAssignments) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dem(1, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int emitted = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 3 + trial % 6;
    std::vector<double> f(n), z(n);
    for (int q = 0; q < n; ++q) {
      f[q] = dem(rng);
      z[q] = unit(rng);
    }
    std::vector<int> pairs(n);
    std::iota(pairs.begin(), pairs.end(), 0);
    const double kappa = 4 + trial % 5;
    double load = 0.0;
    for (int q = 0; q < n; ++q) load += f[q] * z[q];
    const double xbar = std::min(1.0, load / kappa);
    const auto lci = separate_lci(0, pairs, z, f, kappa, xbar);
    if (!lci) continue;
    ++emitted;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      double w = 0.0;
      std::vector<double> zi(n, 0.0);
      for (int q = 0; q < n; ++q) {
        if (mask >> q & 1u) {
          zi[q] = 1.0;
          w += f[q];
        }
      }
      if (w > kappa) continue;
      EXPECT_LE(lci->lhs(zi), lci->rhs + 1e-9);
    }
  }
  EXPECT_GT(emitted, 20);
}

}  // namespace
}  // namespace refuel
