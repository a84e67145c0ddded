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

#include <cmath>
#include <string>

#include "refuel/instance_io.hpp"
#include "support.hpp"

namespace refuel {
namespace {

using testing::Fig1;

const char* kMinimal = R"({
  "ranges": {"r_max": 10, "rho_orig": 5, "rho_dest": 5},
  "nodes": [
    {"id": 10, "role": "terminal"},
    {"id": 20, "role": "terminal"},
    {"id": 30, "role": "station", "cost": 2, "capacity": 3}
  ],
  "arcs": [
    {"tail": 10, "head": 30, "tau": 4, "ell": 4},
    {"tail": 30, "head": 20, "tau": 4, "ell": 4}
  ],
  "od_pairs": [{"s": 10, "t": 20, "f": 1.5, "u": 9}]
})";

std::string with(const std::string& from, const std::string& to) {
  std::string text = kMinimal;
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

std::string parse_error(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseInstance, MinimalDocument) {
  const auto inst = parse_instance(kMinimal);
  EXPECT_EQ(inst.graph.stations().size(), 1u);
  EXPECT_EQ(inst.graph.node_count(), 3);
  EXPECT_EQ(inst.graph.arc_count(), 2);
  ASSERT_EQ(inst.pairs.size(), 1u);
  EXPECT_EQ(inst.pairs[0].demand, 1.5);
  EXPECT_EQ(inst.pairs[0].time_bound, 9.0);
  EXPECT_EQ(inst.cost[2], 2.0);
  EXPECT_EQ(inst.capacity[2], 3.0);
}

TEST(ParseInstance, NullCapacityIsUnlimited) {
  const auto inst = parse_instance(with("\"capacity\": 3", "\"capacity\": null"));
  EXPECT_TRUE(std::isinf(inst.capacity[2]));
}

TEST(ParseInstance, ErrorsNameTheField) {
  EXPECT_NE(parse_error(with("\"s\": 10", "\"s\": 30")).find("origin must be terminal"),
            std::string::npos);
  EXPECT_NE(parse_error(with("\"t\": 20", "\"t\": 30")).find("destination must be terminal"),
            std::string::npos);
  EXPECT_NE(parse_error(with("\"f\": 1.5", "\"f\": 0")).find("od_pairs[0].f"),
            std::string::npos);
  EXPECT_NE(parse_error(with("\"head\": 20", "\"head\": 99")).find("unknown node id"),
            std::string::npos);
  EXPECT_NE(parse_error(with("\"role\": \"station\"", "\"role\": \"depot\"")).find(".role"),
            std::string::npos);
  EXPECT_NE(parse_error(with("\"capacity\": 3", "\"capacity\": -1")).find("capacity"),
            std::string::npos);
  EXPECT_NE(parse_error("{").find("malformed JSON"), std::string::npos);
  EXPECT_NE(parse_error("[]").find("expected an object"), std::string::npos);
  EXPECT_NE(parse_error(with("\"ranges\"", "\"rangez\"")).find("ranges"), std::string::npos);
}

TEST(WriteInstance, RoundTrip) {
  const auto inst = Fig1::instance(2, 1.0);
  const std::string text = write_instance(inst);
  const auto back = parse_instance(text);
  EXPECT_EQ(write_instance(back), text);
  EXPECT_EQ(back.graph.node_count(), inst.graph.node_count());
  EXPECT_EQ(back.graph.arc_count(), inst.graph.arc_count());
  ASSERT_EQ(back.pairs.size(), inst.pairs.size());
  for (std::size_t q = 0; q < inst.pairs.size(); ++q) {
    EXPECT_EQ(back.pairs[q].origin, inst.pairs[q].origin);
    EXPECT_EQ(back.pairs[q].destination, inst.pairs[q].destination);
    EXPECT_EQ(back.pairs[q].time_bound, inst.pairs[q].time_bound);
  }
  for (NodeIndex v : inst.graph.stations()) {
    EXPECT_EQ(back.capacity[v], inst.capacity[v]);
    EXPECT_EQ(back.cost[v], inst.cost[v]);
  }
}

TEST(WriteInstance, RoundTripRandomAndUnlimited) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = testing::random_instance(seed, 4, 6, 4, 0.4, seed % 2 ? 2.0 : kInfinity);
    const std::string text = write_instance(inst);
    EXPECT_EQ(write_instance(parse_instance(text)), text);
  }
}

TEST(TimeBounds, Formula) {
  auto inst = Fig1::instance();
  const auto out = compute_time_bounds(inst, 0.05, {100.0});
  EXPECT_DOUBLE_EQ(out.pairs[0].time_bound, 105.0);
  EXPECT_EQ(out.deviation, 0.05);
  EXPECT_EQ(compute_time_bounds(inst, 0.0, {42.0}).pairs[0].time_bound, 42.0);
  EXPECT_THROW(compute_time_bounds(inst, -0.1, {1.0}), std::invalid_argument);
  EXPECT_THROW(compute_time_bounds(inst, 0.1, {}), std::invalid_argument);
}

TEST(TimeBounds, ConventionalTimeIsFastestRoute) {
  const auto inst = Fig1::instance();
  EXPECT_EQ(conventional_times(inst), std::vector<double>{5.0});
}

TEST(Generator, DeterministicBytes) {
  GeneratorConfig cfg;
  cfg.seed = 7;
  EXPECT_EQ(write_instance(generate_instance(cfg)), write_instance(generate_instance(cfg)));
  cfg.seed = 8;
  cfg.width = cfg.height = 500;
  EXPECT_NE(write_instance(generate_instance(cfg)), write_instance(generate_instance({})));
}

TEST(Generator, HalfCapacityAndSizes) {
  GeneratorConfig cfg;
  cfg.width = cfg.height = 500;
  cfg.kappa = 2.0;
  const auto inst = generate_instance(cfg);
  EXPECT_EQ(inst.ranges.rho_orig, cfg.r_max / 2);
  EXPECT_EQ(inst.ranges.rho_dest, cfg.r_max / 2);
  EXPECT_EQ(inst.graph.stations().size(), 12u);
  EXPECT_EQ(inst.graph.node_count(), 18);
  EXPECT_LE(inst.pairs.size(), 8u);
  for (NodeIndex v : inst.graph.stations()) EXPECT_EQ(inst.capacity[v], 2.0);
}

TEST(Generator, KeptPairsHaveRoutes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.width = cfg.height = 500;
    const auto inst = generate_instance(cfg);
    EXPECT_EQ(drop_infeasible_pairs(inst).removed, 0u);
    for (const auto& sub : inst.subgraphs()) EXPECT_FALSE(sub.empty());
  }
}

TEST(Generator, RejectsBadConfig) {
  GeneratorConfig cfg;
  cfg.terminals = 1;
  EXPECT_THROW(generate_instance(cfg), std::invalid_argument);
  cfg = {};
  cfg.lambda = -1;
  EXPECT_THROW(generate_instance(cfg), std::invalid_argument);
}

TEST(ResultsRow, InfeasibleUsesMarkers) {
  ResultsRow row;
  row.formulation = "cf";
  row.lambda = 0.1;
  row.kappa = kInfinity;
  row.time_s = 0.25;
  row.nodes = 3;
  EXPECT_EQ(format_results_row(row), "cf,0.1,inf,0.250,---,3,---,---");
}

TEST(ResultsRow, FeasibleRow) {
  ResultsRow row;
  row.formulation = "pf";
  row.lambda = 0.2;
  row.kappa = 2;
  row.feasible = true;
  row.objective = 3;
  row.nodes = 1;
  row.utilization_pct = 50;
  EXPECT_EQ(format_results_row(row), "pf,0.2,2,0.000,3,1,0.00,50.00");
  EXPECT_EQ(std::string(kResultsHeader),
            "formulation,lambda,kappa,time_s,obj,nodes,gap_pct,utilization_pct");
}

TEST(WriteSolution, UtilizationPerOpenStation) {
  const auto inst = Fig1::instance(2, 2.0);
  const auto sol = make_solution(inst, {{Fig1::s, Fig1::b, Fig1::t}, {Fig1::s, Fig1::b, Fig1::t}});
  EXPECT_EQ(sol.open, (std::vector<NodeIndex>{Fig1::b}));
  EXPECT_DOUBLE_EQ(mean_utilization(inst, sol), 1.0);
  const std::string doc = write_solution(inst, sol);
  EXPECT_NE(doc.find("\"utilization\""), std::string::npos);
  EXPECT_NE(doc.find("\"objective\": 1.0"), std::string::npos);
}

}  // namespace
}  // namespace refuel
