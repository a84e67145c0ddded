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

#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "refuel/refuel.hpp"

namespace fs = std::filesystem;
using namespace refuel;

namespace {

struct Options {
  std::string instance;
  std::vector<std::string> formulations{"cf"};
  double time_limit = 60.0;
  std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();
  std::vector<double> lambdas;
  std::vector<double> kappas;
  std::uint64_t seed = 1;
  std::string out;
  bool no_lci = false;
  bool no_larac = false;
  bool uncapacitated = false;
  std::string separation = "ours";
  int stations = 12;
  int terminals = 6;
  int pairs = 8;
  int count = 20;
  unsigned threads = 0;
};

// Plain-text kappa with "inf" for unlimited.
double parse_kappa(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "unlimited") return kInfinity;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size() || !(v >= 0.0)) throw CLI::ValidationError("--kappa", "bad value " + s);
  return v;
}

void add_kappa(CLI::App* app, Options& o, bool many) {
  auto* opt = app->add_option_function<std::vector<std::string>>(
      "--kappa",
      [&o](const std::vector<std::string>& raw) {
        o.kappas.clear();
        for (const auto& s : raw) o.kappas.push_back(parse_kappa(s));
      },
      many ? "Station capacity grid (comma separated, 'inf' for unlimited)"
           : "Override every station capacity ('inf' for unlimited)");
  if (many) {
    opt->delimiter(',');
  } else {
    opt->expected(1);
  }
}

void add_generator_options(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "Generator seed");
  app->add_option("--stations", o.stations, "Station count")->check(CLI::PositiveNumber);
  app->add_option("--terminals", o.terminals, "Terminal count")->check(CLI::Range(2, 1000000));
  app->add_option("--pairs", o.pairs, "Requested OD pair count")->check(CLI::NonNegativeNumber);
}

GeneratorConfig generator_config(const Options& o) {
  GeneratorConfig g;
  g.seed = o.seed;
  g.stations = o.stations;
  g.terminals = o.terminals;
  g.pairs = o.pairs;
  if (!o.lambdas.empty()) g.lambda = o.lambdas.front();
  if (!o.kappas.empty()) g.kappa = o.kappas.front();
  return g;
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

int cmd_solve(const Options& o) {
  Instance inst = load_instance(o.instance);
  if (!o.lambdas.empty()) {
    inst = drop_infeasible_pairs(compute_time_bounds(inst, o.lambdas.front(),
                                                     conventional_times(inst)))
               .instance;
  }
  if (!o.kappas.empty()) {
    for (NodeIndex v : inst.graph.stations()) inst.capacity[v] = o.kappas.front();
  }
  const BnbLimits limits{o.time_limit, o.node_limit};
  SolveResult r;
  std::string label;
  if (o.uncapacitated) {
    const auto variant =
        o.separation == "baseline" ? SeparationVariant::baseline : SeparationVariant::ours;
    r = solve_cf_uncapacitated(inst, variant, limits);
    for (auto& c : inst.capacity) c = kInfinity;
    label = std::string("cfinf-") + to_string(variant);
  } else {
    const Formulation f = parse_formulation(o.formulations.front());
    SolverConfig config;
    config.limits = limits;
    config.lci = !o.no_lci;
    config.larac = !o.no_larac;
    r = solve(inst, f, config);
    label = to_string(f);
  }
  double kappa = kInfinity;
  for (NodeIndex v : inst.graph.stations()) kappa = std::min(kappa, inst.capacity[v]);
  const ResultsRow row = results_row(inst, label, inst.deviation, kappa, r);
  std::cout << "formulation=" << label << " status=" << to_string(r.status)
            << " time_s=" << fixed(r.wall_time_s, 3) << " obj="
            << (r.solution ? detail::format_number(r.objective) : "---")
            << " nodes=" << r.nodes
            << " gap_pct=" << (r.solution ? fixed(row.gap_pct, 2) : "---")
            << " utilization_pct=" << (r.solution ? fixed(row.utilization_pct, 2) : "---")
            << " dijkstra_calls=" << r.dijkstra_calls << '\n';
  if (!o.out.empty()) {
    ensure_dir(o.out);
    write_text_file((fs::path(o.out) / "results.csv").string(),
                    std::string(kResultsHeader) + "\n" + format_results_row(row) + "\n");
    if (r.solution) {
      write_text_file((fs::path(o.out) / "solution.json").string(),
                      write_solution(inst, *r.solution) + "\n");
    }
  }
  return 0;
}

int cmd_generate(const Options& o) {
  const Instance inst = generate_instance(generator_config(o));
  const std::string text = write_instance(inst) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return 0;
  }
  fs::path path(o.out);
  if (path.extension() != ".json") {
    ensure_dir(o.out);
    path /= "instance_" + std::to_string(o.seed) + ".json";
  } else if (path.has_parent_path()) {
    ensure_dir(path.parent_path().string());
  }
  write_text_file(path.string(), text);
  std::cerr << "wrote " << path.string() << " (" << inst.pairs.size() << " pairs)\n";
  return 0;
}

int cmd_bench(const Options& o) {
  BenchPlan plan;
  if (!o.instance.empty()) plan.instance = load_instance(o.instance);
  plan.generator = generator_config(o);
  plan.formulations.clear();
  for (const auto& f : o.formulations) plan.formulations.push_back(parse_formulation(f));
  if (!o.lambdas.empty()) plan.lambdas = o.lambdas;
  if (!o.kappas.empty()) plan.kappas = o.kappas;
  plan.time_limit_s = o.time_limit;
  plan.node_limit = o.node_limit;
  plan.lci = !o.no_lci;
  plan.larac = !o.no_larac;
  plan.threads = o.threads;
  const auto cells = run_bench(plan);
  const std::string csv = bench_csv(cells);
  std::cout << csv;
  for (const auto& c : cells) {
    if (!c.error.empty()) {
      std::cerr << to_string(c.formulation) << " lambda=" << c.lambda << " kappa=" << c.kappa
                << ": " << c.error << '\n';
    }
  }
  const std::string dir = o.out.empty() ? "bench_out" : o.out;
  ensure_dir(dir);
  write_text_file((fs::path(dir) / "results.csv").string(), csv);
  ensure_dir((fs::path(dir) / "plot").string());
  for (const auto& [name, text] : plot_data(cells)) {
    write_text_file((fs::path(dir) / "plot" / name).string(), text);
  }
  return 0;
}

int cmd_compare(const Options& o) {
  SeparationPlan plan;
  plan.generator = generator_config(o);
  if (!o.lambdas.empty()) plan.lambdas = o.lambdas;
  plan.instances = o.count;
  plan.time_limit_s = o.time_limit;
  plan.threads = o.threads;
  const auto cells = compare_separation(plan);
  const std::string csv = separation_csv(cells);
  std::cout << csv;
  int fewer = 0;
  int equal = 0;
  int solved = 0;
  for (const auto& c : cells) {
    if (!c.error.empty()) {
      std::cerr << "lambda=" << c.lambda << " seed=" << c.seed << ": " << c.error << '\n';
      continue;
    }
    ++solved;
    fewer += c.ours->dijkstra_calls < c.baseline->dijkstra_calls;
    equal += c.ours->objective == c.baseline->objective;
  }
  std::cerr << "fewer dijkstra calls: " << fewer << "/" << solved
            << ", equal objectives: " << equal << "/" << solved << '\n';
  if (!o.out.empty()) {
    ensure_dir(o.out);
    write_text_file((fs::path(o.out) / "separation.csv").string(), csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacitated refueling station location with routing"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("--instance", o.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--formulation", o.formulations, "cf or pf")
      ->expected(1)
      ->check(CLI::IsMember({"cf", "pf"}));
  solve->add_option("--time-limit", o.time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve->add_option("--node-limit", o.node_limit, "Node limit")->check(CLI::PositiveNumber);
  solve->add_option("--lambda", o.lambdas, "Recompute time bounds with this deviation")
      ->expected(1);
  add_kappa(solve, o, false);
  solve->add_option("--out", o.out, "Directory for solution.json and results.csv");
  solve->add_flag("--no-lci", o.no_lci, "Disable lifted cover inequalities");
  solve->add_flag("--no-larac", o.no_larac, "Exact pricing only");
  solve->add_flag("--uncapacitated", o.uncapacitated, "Solve the uncapacitated cut formulation");
  solve->add_option("--separation", o.separation, "Integer separation for --uncapacitated")
      ->check(CLI::IsMember({"ours", "baseline"}));

  auto* generate = app.add_subcommand("generate", "Write a synthetic instance");
  add_generator_options(generate, o);
  generate->add_option("--lambda", o.lambdas, "Deviation tolerance")->expected(1);
  add_kappa(generate, o, false);
  generate->add_option("--out", o.out, "Output .json file or directory (default stdout)");

  auto* bench = app.add_subcommand("bench", "Run a (formulation, lambda, kappa) grid");
  bench->add_option("--instance", o.instance, "Base instance (default: generated)")
      ->check(CLI::ExistingFile);
  bench->add_option("--formulation", o.formulations, "Formulations")
      ->delimiter(',')
      ->check(CLI::IsMember({"cf", "pf"}));
  bench->add_option("--lambda", o.lambdas, "Deviation grid")->delimiter(',');
  add_kappa(bench, o, true);
  bench->add_option("--time-limit", o.time_limit, "Seconds per cell")->check(CLI::PositiveNumber);
  bench->add_option("--node-limit", o.node_limit, "Nodes per cell")->check(CLI::PositiveNumber);
  add_generator_options(bench, o);
  bench->add_option("--threads", o.threads, "Concurrent cells (0: all cores)");
  bench->add_option("--out", o.out, "Output directory (default bench_out)");
  bench->add_flag("--no-lci", o.no_lci, "Disable lifted cover inequalities");
  bench->add_flag("--no-larac", o.no_larac, "Exact pricing only");

  auto* compare = app.add_subcommand("compare-separation",
                                     "Dijkstra calls of the two integer separation routines");
  compare->add_option("--lambda", o.lambdas, "Deviation grid")->delimiter(',');
  compare->add_option("--count", o.count, "Instances per lambda")->check(CLI::PositiveNumber);
  compare->add_option("--time-limit", o.time_limit, "Seconds per solve")
      ->check(CLI::PositiveNumber);
  add_generator_options(compare, o);
  compare->add_option("--threads", o.threads, "Concurrent instances (0: all cores)");
  compare->add_option("--out", o.out, "Output directory");

  CLI11_PARSE(app, argc, argv);
  if (o.formulations.empty()) o.formulations = {"cf"};
  try {
    if (*solve) return cmd_solve(o);
    if (*generate) return cmd_generate(o);
    if (*bench) {
      if (bench->count("--formulation") == 0) o.formulations = {"cf", "pf"};
      return cmd_bench(o);
    }
    if (*compare) return cmd_compare(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
