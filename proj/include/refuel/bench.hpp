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

// Benchmark grids over (formulation, lambda, kappa) and the separation
// comparison on uncapacitated instances. Cells run on a small thread pool,
// each with its own solver state; rows come back in grid order.

#ifndef REFUEL_BENCH_HPP_
#define REFUEL_BENCH_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "refuel/cut_solver.hpp"
#include "refuel/instance_io.hpp"
#include "refuel/network.hpp"
#include "refuel/path_solver.hpp"

namespace refuel {

enum class Formulation { cf, pf };

inline const char* to_string(Formulation f) { return f == Formulation::cf ? "cf" : "pf"; }

inline Formulation parse_formulation(const std::string& s) {
  if (s == "cf") return Formulation::cf;
  if (s == "pf") return Formulation::pf;
  throw std::invalid_argument("unknown formulation '" + s + "'");
}

inline SolveResult solve(const Instance& inst, Formulation f, const SolverConfig& config) {
  return f == Formulation::cf ? solve_cf(inst, config) : solve_pf(inst, config);
}

// Instance for one grid cell: time bounds from lambda over the conventional
// times, every station capacity set to kappa, pairs without a feasible
// route dropped.
inline Instance derive_instance(const Instance& base, double lambda, double kappa) {
  Instance inst = compute_time_bounds(base, lambda, conventional_times(base));
  for (NodeIndex v : inst.graph.stations()) inst.capacity[v] = kappa;
  return drop_infeasible_pairs(inst).instance;
}

inline ResultsRow results_row(const Instance& inst, const std::string& formulation,
                              double lambda, double kappa, const SolveResult& r) {
  ResultsRow row;
  row.formulation = formulation;
  row.lambda = lambda;
  row.kappa = kappa;
  row.time_s = r.wall_time_s;
  row.nodes = r.nodes;
  row.feasible = r.solution.has_value();
  if (row.feasible) {
    row.objective = r.objective;
    row.gap_pct = 100.0 * r.gap;
    row.utilization_pct = 100.0 * mean_utilization(inst, *r.solution);
  }
  return row;
}

struct BenchPlan {
  std::optional<Instance> instance;  // generated per cell when absent
  GeneratorConfig generator;
  std::vector<Formulation> formulations{Formulation::cf, Formulation::pf};
  std::vector<double> lambdas{0.1};
  std::vector<double> kappas{kInfinity};
  double time_limit_s = 60.0;
  std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();
  bool lci = true;
  bool larac = true;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (formulations.empty() || lambdas.empty() || kappas.empty()) {
      throw std::invalid_argument("bench: every grid must be nonempty");
    }
    if (!(time_limit_s > 0.0) || node_limit <= 0) {
      throw std::invalid_argument("bench: limits must be positive");
    }
    for (double l : lambdas) {
      if (!(l >= 0.0)) throw std::invalid_argument("bench: lambda must be >= 0");
    }
    for (double k : kappas) {
      if (!(k >= 0.0)) throw std::invalid_argument("bench: kappa must be >= 0");
    }
  }
};

struct BenchCell {
  Formulation formulation = Formulation::cf;
  double lambda = 0.0;
  double kappa = kInfinity;
  std::size_t pairs = 0;
  std::optional<SolveResult> result;
  ResultsRow row;
  std::string error;  // nonempty if the cell failed
};

namespace detail {

inline void run_parallel(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) task(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace detail

inline std::vector<BenchCell> run_bench(const BenchPlan& plan) {
  plan.validate();
  std::vector<BenchCell> cells;
  for (Formulation f : plan.formulations) {
    for (double l : plan.lambdas) {
      for (double k : plan.kappas) {
        BenchCell c;
        c.formulation = f;
        c.lambda = l;
        c.kappa = k;
        cells.push_back(c);
      }
    }
  }
  detail::run_parallel(cells.size(), plan.threads, [&](std::size_t i) {
    BenchCell& c = cells[i];
    try {
      Instance inst;
      if (plan.instance) {
        inst = derive_instance(*plan.instance, c.lambda, c.kappa);
      } else {
        GeneratorConfig g = plan.generator;
        g.lambda = c.lambda;
        g.kappa = c.kappa;
        inst = generate_instance(g);
      }
      c.pairs = inst.pairs.size();
      SolverConfig config;
      config.limits = {plan.time_limit_s, plan.node_limit};
      config.lci = plan.lci;
      config.larac = plan.larac;
      c.result = solve(inst, c.formulation, config);
      c.row = results_row(inst, to_string(c.formulation), c.lambda, c.kappa, *c.result);
    } catch (const std::exception& e) {
      c.error = e.what();
      c.row.formulation = to_string(c.formulation);
      c.row.lambda = c.lambda;
      c.row.kappa = c.kappa;
    }
  });
  return cells;
}

inline std::string bench_csv(const std::vector<BenchCell>& cells) {
  std::ostringstream os;
  os << kResultsHeader << '\n';
  for (const auto& c : cells) os << format_results_row(c.row) << '\n';
  return os.str();
}

// One tab-separated series file per metric: gap, time, utilization and
// objective against kappa, one block per (formulation, lambda).
inline std::vector<std::pair<std::string, std::string>> plot_data(
    const std::vector<BenchCell>& cells) {
  struct Metric {
    const char* name;
    std::function<std::optional<double>(const BenchCell&)> value;
  };
  const std::vector<Metric> metrics{
      {"gap", [](const BenchCell& c) -> std::optional<double> {
         if (!c.row.feasible) return std::nullopt;
         return c.row.gap_pct;
       }},
      {"time", [](const BenchCell& c) -> std::optional<double> {
         if (!c.result) return std::nullopt;
         return c.row.time_s;
       }},
      {"utilization", [](const BenchCell& c) -> std::optional<double> {
         if (!c.row.feasible) return std::nullopt;
         return c.row.utilization_pct;
       }},
      {"objective", [](const BenchCell& c) -> std::optional<double> {
         if (!c.row.feasible) return std::nullopt;
         return c.row.objective;
       }},
  };
  std::vector<const BenchCell*> order;
  for (const auto& c : cells) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(), [](const BenchCell* a, const BenchCell* b) {
    if (a->formulation != b->formulation) return a->formulation < b->formulation;
    if (a->lambda != b->lambda) return a->lambda < b->lambda;
    return a->kappa < b->kappa;
  });
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& m : metrics) {
    std::ostringstream os;
    os << "formulation\tlambda\tkappa\t" << m.name << '\n';
    for (const BenchCell* c : order) {
      const auto v = m.value(*c);
      os << to_string(c->formulation) << '\t' << detail::format_number(c->lambda) << '\t'
         << detail::format_number(c->kappa) << '\t';
      if (v) {
        os << *v;
      } else {
        os << "nan";
      }
      os << '\n';
    }
    files.emplace_back(std::string(m.name) + ".tsv", os.str());
  }
  return files;
}

inline constexpr const char* kSeparationHeader =
    "lambda,seed,pairs,variant,time_s,obj,nodes,dijkstra_calls";

struct SeparationPlan {
  GeneratorConfig generator;  // kappa is ignored
  std::vector<double> lambdas{0.1, 0.2, 0.5};
  int instances = 20;  // per lambda, seeds generator.seed + i
  double time_limit_s = 60.0;
  unsigned threads = 0;
};

struct SeparationCell {
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::size_t pairs = 0;
  std::optional<SolveResult> ours;
  std::optional<SolveResult> baseline;
  std::string error;
};

inline std::vector<SeparationCell> compare_separation(const SeparationPlan& plan) {
  if (plan.lambdas.empty() || plan.instances <= 0 || !(plan.time_limit_s > 0.0)) {
    throw std::invalid_argument("compare-separation: empty grid or nonpositive limit");
  }
  std::vector<SeparationCell> cells;
  for (double l : plan.lambdas) {
    for (int i = 0; i < plan.instances; ++i) {
      SeparationCell c;
      c.lambda = l;
      c.seed = plan.generator.seed + static_cast<std::uint64_t>(i);
      cells.push_back(c);
    }
  }
  detail::run_parallel(cells.size(), plan.threads, [&](std::size_t i) {
    SeparationCell& c = cells[i];
    try {
      GeneratorConfig g = plan.generator;
      g.seed = c.seed;
      g.lambda = c.lambda;
      g.kappa = kInfinity;
      const Instance inst = generate_instance(g);
      c.pairs = inst.pairs.size();
      const BnbLimits limits{plan.time_limit_s, std::numeric_limits<std::int64_t>::max()};
      c.ours = solve_cf_uncapacitated(inst, SeparationVariant::ours, limits);
      c.baseline = solve_cf_uncapacitated(inst, SeparationVariant::baseline, limits);
    } catch (const std::exception& e) {
      c.error = e.what();
    }
  });
  return cells;
}

inline std::string separation_csv(const std::vector<SeparationCell>& cells) {
  std::ostringstream os;
  os << kSeparationHeader << '\n';
  for (const auto& c : cells) {
    auto line = [&](const char* variant, const std::optional<SolveResult>& r) {
      os << detail::format_number(c.lambda) << ',' << c.seed << ',' << c.pairs << ',' << variant
         << ',';
      if (!r) {
        os << "---,---,---,---\n";
        return;
      }
      std::ostringstream t;
      t << std::fixed << std::setprecision(3) << r->wall_time_s;
      os << t.str() << ',';
      if (r->solution) {
        os << detail::format_number(r->objective);
      } else {
        os << "---";
      }
      os << ',' << r->nodes << ',' << r->dijkstra_calls << '\n';
    };
    line("ours", c.ours);
    line("baseline", c.baseline);
  }
  return os.str();
}

}  // namespace refuel

#endif  // REFUEL_BENCH_HPP_
