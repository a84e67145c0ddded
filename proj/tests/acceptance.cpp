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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "refuel/refuel.hpp"
#include "support.hpp"

namespace {

using namespace refuel;
using refuel::testing::Fig1;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Lines are collected and printed in criterion order.
struct Report {
  int failed = 0;
  std::map<int, std::string> lines;
  void line(int n, bool ok, const std::string& what) {
    lines[n] = "criterion " + std::to_string(n) + ": " + (ok ? "PASS" : "FAIL") + " - " + what;
    failed += !ok;
  }
  void print() const {
    for (const auto& [n, l] : lines) std::cout << l << '\n';
  }
};

// Enumerated time-feasible paths per pair, cached per instance.
class PathCache {
 public:
  explicit PathCache(const Instance& inst) : inst_(inst), paths_(inst.pairs.size()) {}

  const std::vector<std::vector<NodeIndex>>& paths(int q) {
    if (!paths_[q]) paths_[q] = refuel::testing::enumerate_paths(inst_, q);
    return *paths_[q];
  }

  bool separates(int q, const std::vector<NodeIndex>& stations) {
    const std::set<NodeIndex> set(stations.begin(), stations.end());
    for (const auto& p : paths(q)) {
      bool hit = false;
      for (std::size_t i = 1; i + 1 < p.size(); ++i) hit |= set.count(p[i]) > 0;
      if (!hit) return false;
    }
    return true;
  }

 private:
  const Instance& inst_;
  std::vector<std::optional<std::vector<std::vector<NodeIndex>>>> paths_;
};

// Shared tallies of the hook audits over the oracle runs.
struct Audit {
  std::size_t separators = 0;
  std::size_t bad_separators = 0;
  std::size_t lcis = 0;
  std::size_t bad_lcis = 0;
  std::size_t heuristic_calls = 0;
  std::size_t heuristic_solutions = 0;
  std::size_t bad_heuristic = 0;
  std::size_t guard_breaches = 0;
  std::size_t converged_nodes = 0;
  std::size_t priced_paths = 0;
  std::size_t negative_paths = 0;
  std::size_t lagrangian_checks = 0;
  std::size_t lagrangian_violations = 0;
};

SolverHooks audit_hooks(const Instance& inst, PathCache& cache, Audit& audit,
                        std::map<std::int64_t, std::vector<double>>& lag) {
  SolverHooks hooks;
  hooks.on_separator = [&inst, &cache, &audit](const TimeSeparator& s) {
    ++audit.separators;
    (void)inst;
    if (!cache.separates(s.pair, s.stations)) ++audit.bad_separators;
  };
  hooks.on_lci = [&inst, &audit](const LiftedCover& l) {
    ++audit.lcis;
    std::vector<double> demand;
    std::vector<int> coef;
    for (std::size_t q = 0; q < inst.pairs.size(); ++q) {
      demand.push_back(inst.pairs[q].demand);
      coef.push_back(l.coefficient(static_cast<int>(q)));
    }
    if (!refuel::testing::knapsack_valid(demand, inst.capacity[l.station], coef, l.rhs)) {
      ++audit.bad_lcis;
    }
  };
  hooks.on_heuristic = [&inst, &audit](const std::optional<Solution>& sol,
                                       const HeuristicStats& stats) {
    ++audit.heuristic_calls;
    if (stats.evictions > kEvictionFactor * inst.pairs.size() + 1) ++audit.guard_breaches;
    if (!sol) return;
    ++audit.heuristic_solutions;
    if (!verify_solution(inst, *sol).ok()) ++audit.bad_heuristic;
  };
  hooks.on_lagrangian = [&lag](std::int64_t node, double b) { lag[node].push_back(b); };
  hooks.on_converged = [&inst, &cache, &audit, &lag](const ConvergedPricing& c) {
    ++audit.converged_nodes;
    for (double b : lag[c.node]) {
      ++audit.lagrangian_checks;
      if (b > c.objective + 1e-6) ++audit.lagrangian_violations;
    }
    const auto subs = inst.subgraphs();
    for (const auto& pp : c.pairs) {
      const auto& sub = subs[pp.pair];
      for (const auto& path : cache.paths(pp.pair)) {
        double cost = 0.0;
        bool allowed = true;
        for (std::size_t i = 0; i + 1 < path.size() && allowed; ++i) {
          const auto u = sub.local(path[i]);
          const auto v = sub.local(path[i + 1]);
          if (!u || !v) {
            allowed = false;
            break;
          }
          bool arc_ok = false;
          for (std::int32_t a : sub.out_arcs(*u)) {
            arc_ok |= sub.arc(a).head == *v && pp.arc_allowed[a];
          }
          allowed &= arc_ok;
          if (i > 0) cost += pp.node_cost[*u];
        }
        if (!allowed || !std::isfinite(cost)) continue;
        ++audit.priced_paths;
        if (cost - pp.sigma < -1e-6) ++audit.negative_paths;
      }
    }
  };
  return hooks;
}

// ---------------------------------------------------------------- 1

void criterion_1(Report& report) {
  const auto t0 = Clock::now();
  const auto inst = Fig1::instance();
  const auto sub = inst.subgraphs()[0];
  std::vector<char> active(sub.node_count(), 0);
  for (NodeIndex v : {Fig1::s, Fig1::a, Fig1::t}) active[*sub.local(v)] = 1;
  const auto sep = integer_time_separator(sub, active);
  const double dt = seconds_since(t0);
  const bool exact = sep && sep->stations == std::vector<NodeIndex>{Fig1::b, Fig1::d};
  const bool no_c = sep && std::find(sep->stations.begin(), sep->stations.end(), Fig1::c) ==
                               sep->stations.end();
  std::ostringstream os;
  os << "integer separator on the four-station example with {s,a,t} active returns ";
  if (sep) {
    os << "{";
    const char* names = "stabcd";
    for (std::size_t i = 0; i < sep->stations.size(); ++i) {
      os << (i ? "," : "") << names[sep->stations[i]];
    }
    os << "}";
  } else {
    os << "nothing";
  }
  os << " in " << dt << " s";
  report.line(1, exact && no_c && dt < 1.0, os.str());
}

// ---------------------------------------------------------------- 2, 3, 4, 8, 9

GeneratorConfig oracle_generator(std::uint64_t seed) {
  GeneratorConfig g;
  g.seed = 5000 + seed;
  g.stations = 12;
  g.terminals = 6;
  g.pairs = 3 + static_cast<int>(seed % 6);
  g.width = g.height = 500.0;
  g.r_max = 400.0;
  g.lambda = 0.5;
  g.demand = 1.0;
  return g;
}

double capacity_of(std::uint64_t seed) {
  const double caps[] = {3.0, 4.0, kInfinity};
  return caps[seed % 3];
}

// Mixed demands in {1,2,3}; unit demands never leave a fractional
// knapsack for the lifted covers to cut.
Instance mixed_demand_instance(std::uint64_t seed) {
  GeneratorConfig g = oracle_generator(seed);
  g.kappa = capacity_of(seed);
  Instance inst = generate_instance(g);
  for (std::size_t q = 0; q < inst.pairs.size(); ++q) {
    inst.pairs[q].demand = 1.0 + static_cast<double>((q * 7 + seed) % 3);
  }
  return inst;
}

Instance with_capacity(Instance inst, double kappa) {
  for (NodeIndex v : inst.graph.stations()) inst.capacity[v] = kappa;
  return inst;
}

double objective_or_inf(const SolveResult& r) {
  return r.status == SolveStatus::optimal ? r.objective : kInfinity;
}

void oracle_criteria(Report& report) {
  const auto t0 = Clock::now();
  Audit audit;
  int agree = 0;
  int feasible = 0;
  int unresolved = 0;
  int pairs_max = 0;
  std::vector<std::string> mismatches;
  int order_checked = 0;
  int order_bad = 0;
  int monotone_bad = 0;
  const std::vector<double> grid{1.0, 2.0, 3.0, 4.0, 6.0, kInfinity};
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance inst = mixed_demand_instance(s);
    pairs_max = std::max<int>(pairs_max, static_cast<int>(inst.pairs.size()));
    PathCache cache(inst);
    std::map<std::int64_t, std::vector<double>> lag_cf;
    std::map<std::int64_t, std::vector<double>> lag_pf;
    SolverConfig cf_config;
    cf_config.hooks = audit_hooks(inst, cache, audit, lag_cf);
    SolverConfig pf_config;
    pf_config.hooks = audit_hooks(inst, cache, audit, lag_pf);
    const auto cf = solve_cf(inst, cf_config);
    const auto pf = solve_pf(inst, pf_config);
    const auto o = brute_force_oracle(inst);
    bool ok;
    if (o.feasible) {
      ++feasible;
      ok = cf.status == SolveStatus::optimal && pf.status == SolveStatus::optimal &&
           cf.objective == o.objective && pf.objective == o.objective;
      unresolved += cf.status == SolveStatus::limit || pf.status == SolveStatus::limit;
    } else {
      ok = cf.status == SolveStatus::infeasible && pf.status == SolveStatus::infeasible;
    }
    if (ok) {
      ++agree;
    } else {
      std::ostringstream os;
      os << "seed " << oracle_generator(s).seed << ": oracle " << (o.feasible ? o.objective : kInfinity)
         << " cf " << objective_or_inf(cf) << " pf " << objective_or_inf(pf);
      mismatches.push_back(os.str());
    }

    // Relaxation ordering on the same network over an ascending grid.
    std::map<std::int64_t, std::vector<double>> lag_inf;
    const auto inf = solve_cf_uncapacitated(inst, SeparationVariant::ours, {},
                                            audit_hooks(inst, cache, audit, lag_inf));
    double previous = kInfinity;
    for (double kappa : grid) {
      const Instance k_inst = with_capacity(inst, kappa);
      PathCache k_cache(k_inst);
      std::map<std::int64_t, std::vector<double>> lag_k;
      SolverConfig config;
      config.hooks = audit_hooks(k_inst, k_cache, audit, lag_k);
      const double obj = objective_or_inf(solve_cf(k_inst, config));
      ++order_checked;
      if (objective_or_inf(inf) > obj) ++order_bad;
      if (obj > previous) ++monotone_bad;
      previous = obj;
    }
  }
  const double dt = seconds_since(t0);

  {
    std::ostringstream os;
    os << agree << "/50 generated instances agree between cut, path and oracle ("
       << feasible << " feasible, up to 12 stations and " << pairs_max
       << " pairs, demands in {1,2,3}, kappa in {3,4,inf}) in " << dt << " s";
    for (const auto& m : mismatches) os << "; " << m;
    report.line(2, agree == 50 && unresolved == 0 && dt < 600.0, os.str());
  }
  {
    std::ostringstream os;
    os << "uncapacitated objective above capacitated in " << order_bad << "/" << order_checked
       << " cells, objective increasing along kappa in " << monotone_bad << " cells";
    report.line(3, order_bad == 0 && monotone_bad == 0, os.str());
  }
  {
    std::ostringstream os;
    os << audit.bad_separators << "/" << audit.separators << " separators miss a path, "
       << audit.bad_lcis << "/" << audit.lcis << " lifted covers cut off a feasible choice";
    report.line(4, audit.bad_separators == 0 && audit.bad_lcis == 0 && audit.separators > 0 &&
                       audit.lcis > 0,
                os.str());
  }
  {
    std::ostringstream os;
    os << audit.bad_heuristic << "/" << audit.heuristic_solutions
       << " heuristic solutions fail verification over " << audit.heuristic_calls
       << " invocations, " << audit.guard_breaches << " eviction guard breaches";
    report.line(8, audit.bad_heuristic == 0 && audit.guard_breaches == 0 &&
                       audit.heuristic_solutions > 0,
                os.str());
  }
  {
    std::ostringstream os;
    os << audit.negative_paths << "/" << audit.priced_paths
       << " enumerated paths price out at " << audit.converged_nodes << " converged nodes, "
       << audit.lagrangian_violations << "/" << audit.lagrangian_checks
       << " Lagrangian bounds above the converged value";
    report.line(9, audit.negative_paths == 0 && audit.lagrangian_violations == 0 &&
                       audit.converged_nodes > 0 && audit.lagrangian_checks > 0,
                os.str());
  }
}

// ---------------------------------------------------------------- 5

double sum_largest(std::vector<double> f, int r) {
  std::sort(f.begin(), f.end(), std::greater<>());
  if (r > static_cast<int>(f.size())) return kInfinity;
  double s = 0.0;
  for (int i = 0; i < r; ++i) s += f[i];
  return s;
}

void criterion_5(Report& report) {
  std::mt19937_64 rng(20260516);
  std::uniform_int_distribution<int> demand(1, 20);
  std::uniform_int_distribution<int> size(2, 10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int cases = 0;
  int coefficients = 0;
  int bad = 0;
  int boundary = 0;
  while (cases < 1000) {
    const int n = size(rng);
    std::vector<double> f(n);
    std::vector<double> z(n);
    for (int q = 0; q < n; ++q) {
      f[q] = demand(rng);
      z[q] = unit(rng);
    }
    double total = 0.0;
    for (double v : f) total += v;
    const double kappa = std::floor(unit(rng) * total);
    std::vector<int> pairs(n);
    for (int q = 0; q < n; ++q) pairs[q] = q;
    const auto cover = minimal_cover(pairs, z, f, kappa);
    if (!cover) continue;
    ++cases;
    std::vector<double> cf;
    for (int q : *cover) cf.push_back(f[q]);
    // Outside demands equal to a prefix sum exercise the closed left end.
    if (cases % 4 == 0 && static_cast<int>(cover->size()) < n) {
      for (int q = 0; q < n; ++q) {
        if (std::find(cover->begin(), cover->end(), q) == cover->end()) {
          f[q] = sum_largest(cf, 1 + q % static_cast<int>(cf.size()));
          ++boundary;
          break;
        }
      }
    }
    const auto lci = balas_lift(0, *cover, pairs, f);
    for (int q = 0; q < n; ++q) {
      if (std::find(cover->begin(), cover->end(), q) != cover->end()) continue;
      const int a = lci.coefficient(q);
      ++coefficients;
      if (!(sum_largest(cf, a) <= f[q] && f[q] < sum_largest(cf, a + 1))) ++bad;
    }
  }
  std::ostringstream os;
  os << bad << "/" << coefficients << " lifting coefficients violate the sandwich over "
     << cases << " random covers (" << boundary << " boundary demands)";
  report.line(5, bad == 0 && cases == 1000 && coefficients > 0, os.str());
}

// ---------------------------------------------------------------- 6

void criterion_6(Report& report) {
  std::mt19937_64 rng(66);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int graphs = 0;
  int feasible = 0;
  int exact_bad = 0;
  int larac_bad = 0;
  for (std::uint64_t s = 0; graphs < 200; ++s) {
    const int stations = 3 + static_cast<int>(s % 6);  // at most 10 nodes
    auto inst = refuel::testing::random_instance(s, 2, stations, 1, 0.5, kInfinity,
                                                 1.0 + unit(rng));
    const auto& pair = inst.pairs[0];
    const auto sub = build_od_subgraph(inst.graph, pair, 0, {false});
    ++graphs;
    std::vector<double> cost(sub.node_count(), 0.0);
    for (std::int32_t v = 0; v < sub.node_count(); ++v) {
      if (!sub.is_station(v)) continue;
      cost[v] = unit(rng) < 0.15 ? kInfinity : std::round(unit(rng) * 20.0) / 4.0;
    }
    std::vector<char> allowed(sub.arc_count(), 1);
    if (s % 2) {
      for (auto& a : allowed) a = unit(rng) < 0.85;
    }
    // Enumeration oracle over the unrestricted network.
    double best = kInfinity;
    for (const auto& path : refuel::testing::enumerate_paths(inst.graph, pair.origin,
                                                             pair.destination, pair.time_bound)) {
      double c = 0.0;
      bool ok = true;
      for (std::size_t i = 0; i + 1 < path.size() && ok; ++i) {
        const auto u = sub.local(path[i]);
        const auto v = sub.local(path[i + 1]);
        if (!u || !v) {
          ok = false;
          break;
        }
        bool arc_ok = false;
        for (std::int32_t a : sub.out_arcs(*u)) arc_ok |= sub.arc(a).head == *v && allowed[a];
        ok &= arc_ok;
        if (i > 0) c += cost[*u];
      }
      if (ok) best = std::min(best, c);
    }
    auto check_path = [&](const CostedPath& p) {
      double c = 0.0;
      double t = 0.0;
      for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) c += cost[*sub.local(p.nodes[i])];
      for (std::int32_t a : p.arcs) {
        t += sub.arc(a).tau;
        if (!allowed[a]) return false;
      }
      return t <= pair.time_bound + 1e-9 && std::abs(c - p.cost) <= 1e-9 && std::isfinite(c);
    };
    const auto exact = csp_exact(sub, cost, pair.time_bound, allowed);
    const auto larac = csp_larac(sub, cost, pair.time_bound, allowed);
    if (std::isfinite(best)) {
      ++feasible;
      if (!exact || std::abs(exact->cost - best) > 1e-9 || !check_path(*exact)) ++exact_bad;
      if (larac && (!check_path(*larac) || larac->cost < best - 1e-9)) ++larac_bad;
    } else {
      if (exact) ++exact_bad;
      if (larac) ++larac_bad;
    }
  }
  std::ostringstream os;
  os << exact_bad << " exact and " << larac_bad << " LARAC violations on " << graphs
     << " random graphs with at most 10 nodes (" << feasible << " feasible)";
  report.line(6, exact_bad == 0 && larac_bad == 0 && feasible > 50, os.str());
}

// ---------------------------------------------------------------- 7

void criterion_7(Report& report) {
  SeparationPlan plan;
  plan.generator.seed = 1;
  plan.generator.stations = 60;
  plan.generator.terminals = 6;
  plan.generator.pairs = 10;
  plan.generator.width = plan.generator.height = 1000.0;
  plan.lambdas = {0.1, 0.2, 0.5};
  plan.instances = 20;
  plan.time_limit_s = 120.0;
  plan.threads = 1;
  const auto cells = compare_separation(plan);
  int total = 0;
  int fewer = 0;
  int equal = 0;
  int solved = 0;
  std::uint64_t ours_calls = 0;
  std::uint64_t base_calls = 0;
  for (const auto& c : cells) {
    ++total;
    if (!c.error.empty() || !c.ours || !c.baseline) continue;
    solved += c.ours->status != SolveStatus::limit && c.baseline->status != SolveStatus::limit;
    fewer += c.ours->dijkstra_calls < c.baseline->dijkstra_calls;
    equal += c.ours->status == c.baseline->status && c.ours->objective == c.baseline->objective;
    ours_calls += c.ours->dijkstra_calls;
    base_calls += c.baseline->dijkstra_calls;
  }
  std::ostringstream os;
  os << "fewer Dijkstra calls on " << fewer << "/" << total << " uncapacitated instances, equal "
     << "objectives on " << equal << "/" << total << ", " << solved << " solved to optimality ("
     << ours_calls << " vs " << base_calls << " calls in total)";
  report.line(7, total == 60 && fewer * 5 >= total * 4 && equal == total && solved == total,
              os.str());
}

// ---------------------------------------------------------------- 10

void criterion_10(Report& report) {
  int cases = 0;
  int agree = 0;
  int markers = 0;
  auto check = [&](const Instance& inst) {
    // Precondition: every time-feasible path of pair 0 meets a station
    // whose capacity is below the pair's demand.
    for (const auto& path : refuel::testing::enumerate_paths(inst, 0)) {
      bool blocked = false;
      for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        blocked |= inst.capacity[path[i]] < inst.pairs[0].demand;
      }
      if (!blocked) return;
    }
    ++cases;
    const auto cf = solve_cf(inst);
    const auto pf = solve_pf(inst);
    const auto o = brute_force_oracle(inst);
    const bool ok = cf.status == SolveStatus::infeasible && pf.status == SolveStatus::infeasible &&
                    !o.feasible;
    agree += ok;
    const auto row = results_row(inst, "cf", inst.deviation, 1.0, cf);
    markers += format_results_row(row).find(",---,") != std::string::npos;
  };
  auto fig = Fig1::instance(2, 1.0);
  fig.pairs[0].demand = 2.0;
  check(fig);
  for (std::uint64_t s = 0; cases < 11 && s < 200; ++s) {
    GeneratorConfig g = oracle_generator(s);
    g.kappa = 1.0;
    Instance inst = generate_instance(g);
    if (inst.pairs.empty()) continue;
    inst.pairs[0].demand = 2.0;
    check(inst);
  }
  std::ostringstream os;
  os << agree << "/" << cases << " blocked instances reported infeasible by cut, path and "
     << "oracle; " << markers << " results rows carry the --- markers";
  report.line(10, cases >= 10 && agree == cases && markers == cases, os.str());
}

}  // namespace

int main() {
  Report report;
  const auto t0 = Clock::now();
  criterion_1(report);
  oracle_criteria(report);
  criterion_5(report);
  criterion_6(report);
  criterion_7(report);
  criterion_10(report);
  report.print();
  std::cout << (report.failed == 0 ? "all criteria passed" : "some criteria failed") << " in "
            << seconds_since(t0) << " s" << std::endl;
  return report.failed == 0 ? 0 : 1;
}
