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

// Branch and cut over the separator (cut) formulation:
//   min sum c_v x_v
//   sum_{v in S} z_v^q >= 1          for every time separator S of pair q
//   sum_q f_q z_v^q <= kappa_v x_v    capacity
//   z_v^q <= x_v                      strong linking
// plus lifted cover inequalities, and the uncapacitated variant over x only.

#ifndef REFUEL_CUT_SOLVER_HPP_
#define REFUEL_CUT_SOLVER_HPP_

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "refuel/bnb.hpp"
#include "refuel/graph_algorithms.hpp"
#include "refuel/heuristic.hpp"
#include "refuel/lifted_cover.hpp"
#include "refuel/lp.hpp"
#include "refuel/network.hpp"
#include "refuel/solver_config.hpp"

namespace refuel {

enum class RowKind { coverage, capacity, linking, lci };

struct Fixing {
  int col = -1;
  double lower = 0.0;
  double upper = 0.0;
};

struct CfNode {
  std::vector<Fixing> fixings;  // cumulative along the path from the root
};

// LP state of the cut formulation: x per station, z per (pair, station of
// the pair's subgraph), tagged rows and a duplicate registry for cuts.
class CfModelState {
 public:
  CfModelState(const Instance& inst, std::vector<OdSubgraph> subs)
      : inst_(&inst), subs_(std::move(subs)) {
    const auto n = inst.graph.node_count();
    x_col_.assign(n, -1);
    for (NodeIndex v : inst.graph.stations()) {
      x_col_[v] = lp_.add_column(inst.cost[v], 0.0, 1.0);
      stations_.push_back(v);
    }
    z_col_.resize(subs_.size());
    for (std::size_t q = 0; q < subs_.size(); ++q) {
      const auto& sub = subs_[q];
      z_col_[q].assign(sub.node_count(), -1);
      const double f = inst.pairs[q].demand;
      for (std::int32_t v = 0; v < sub.node_count(); ++v) {
        if (!sub.is_station(v)) continue;
        const double ub = f > inst.capacity[sub.global(v)] ? 0.0 : 1.0;
        z_col_[q][v] = lp_.add_column(0.0, 0.0, ub);
      }
    }
    root_lower_.resize(lp_.num_cols());
    root_upper_.resize(lp_.num_cols());
    for (int j = 0; j < lp_.num_cols(); ++j) {
      root_lower_[j] = lp_.lower(j);
      root_upper_[j] = lp_.upper(j);
    }
  }

  [[nodiscard]] const Instance& instance() const { return *inst_; }
  [[nodiscard]] const std::vector<OdSubgraph>& subgraphs() const { return subs_; }
  [[nodiscard]] const std::vector<NodeIndex>& stations() const { return stations_; }
  [[nodiscard]] int x_col(NodeIndex v) const { return x_col_[v]; }
  [[nodiscard]] int z_col(int q, std::int32_t local) const { return z_col_[q][local]; }
  [[nodiscard]] LinearProgram& lp() { return lp_; }
  [[nodiscard]] const LinearProgram& lp() const { return lp_; }
  [[nodiscard]] const std::vector<RowKind>& row_kinds() const { return kinds_; }
  [[nodiscard]] double root_lower(int col) const { return root_lower_[col]; }
  [[nodiscard]] double root_upper(int col) const { return root_upper_[col]; }

  int add_row(RowKind kind, RowSense sense, double rhs, const std::vector<LpEntry>& entries) {
    kinds_.push_back(kind);
    return lp_.add_row(sense, rhs, entries);
  }

  // Coverage row sum_{v in S} z_v^q >= 1; false if already present.
  bool add_coverage(const TimeSeparator& sep) {
    if (!cut_registry_.emplace(sep.pair, sep.stations).second) return false;
    const auto& sub = subs_[sep.pair];
    std::vector<LpEntry> entries;
    for (NodeIndex g : sep.stations) {
      const auto v = sub.local(g);
      if (!v) throw std::logic_error("separator station outside the pair subgraph");
      entries.emplace_back(z_col_[sep.pair][*v], 1.0);
    }
    add_row(RowKind::coverage, RowSense::ge, 1.0, entries);
    return true;
  }

  bool add_lci(const LiftedCover& lci) {
    std::vector<std::pair<int, int>> key;
    for (int q : lci.cover) key.emplace_back(q, 1);
    for (auto [q, a] : lci.lifted) key.emplace_back(q, a);
    if (!lci_registry_.emplace(lci.station, key).second) return false;
    std::vector<LpEntry> entries;
    for (auto [q, a] : key) {
      const auto v = subs_[q].local(lci.station);
      if (!v) throw std::logic_error("cover pair does not reach the station");
      entries.emplace_back(z_col_[q][*v], static_cast<double>(a));
    }
    add_row(RowKind::lci, RowSense::le, static_cast<double>(lci.rhs), entries);
    return true;
  }

  // Fractional z of pair q by local node (0 at terminals).
  [[nodiscard]] std::vector<double> zbar(int q) const {
    std::vector<double> z(subs_[q].node_count(), 0.0);
    for (std::size_t v = 0; v < z.size(); ++v) {
      if (z_col_[q][v] >= 0) z[v] = lp_.value(z_col_[q][v]);
    }
    return z;
  }

  [[nodiscard]] bool locally_integral(int q) const {
    for (int col : z_col_[q]) {
      if (col >= 0 && !detail::near_integral(lp_.value(col))) return false;
    }
    return true;
  }

 private:
  const Instance* inst_;
  std::vector<OdSubgraph> subs_;
  std::vector<NodeIndex> stations_;
  LinearProgram lp_;
  std::vector<int> x_col_;
  std::vector<std::vector<int>> z_col_;
  std::vector<RowKind> kinds_;
  std::vector<double> root_lower_;
  std::vector<double> root_upper_;
  std::set<std::pair<int, std::vector<NodeIndex>>> cut_registry_;
  std::set<std::pair<NodeIndex, std::vector<std::pair<int, int>>>> lci_registry_;
};

// Root model: columns, capacity rows, strong linking rows and the
// minimalized hop-layer separators of every pair.
inline CfModelState build_cf_root(const Instance& inst, DijkstraCounter* counter = nullptr,
                                  const SolverHooks* hooks = nullptr) {
  CfModelState state(inst, inst.subgraphs());
  const auto& subs = state.subgraphs();
  for (NodeIndex v : state.stations()) {
    std::vector<LpEntry> entries;
    for (std::size_t q = 0; q < subs.size(); ++q) {
      if (auto lv = subs[q].local(v)) {
        entries.emplace_back(state.z_col(static_cast<int>(q), *lv), inst.pairs[q].demand);
      }
    }
    entries.emplace_back(state.x_col(v), -inst.effective_capacity(v));
    state.add_row(RowKind::capacity, RowSense::le, 0.0, entries);
  }
  for (std::size_t q = 0; q < subs.size(); ++q) {
    for (std::int32_t lv = 0; lv < subs[q].node_count(); ++lv) {
      if (!subs[q].is_station(lv)) continue;
      const int z = state.z_col(static_cast<int>(q), lv);
      state.add_row(RowKind::linking, RowSense::le, 0.0,
                    {{z, 1.0}, {state.x_col(subs[q].global(lv)), -1.0}});
    }
  }
  for (const auto& sub : subs) {
    for (const auto& sep : hop_layer_separators(sub, true, counter)) {
      if (state.add_coverage(sep) && hooks && hooks->on_separator) hooks->on_separator(sep);
    }
  }
  return state;
}

// Integer separation on every pair whose z is locally integral.
inline std::vector<TimeSeparator> cf_separate_integer(const CfModelState& state,
                                                      DijkstraCounter* counter = nullptr) {
  std::vector<TimeSeparator> out;
  const auto& subs = state.subgraphs();
  for (std::size_t q = 0; q < subs.size(); ++q) {
    if (!state.locally_integral(static_cast<int>(q))) continue;
    const auto z = state.zbar(static_cast<int>(q));
    std::vector<char> active(z.size(), 0);
    for (std::size_t v = 0; v < z.size(); ++v) active[v] = z[v] > 0.5;
    if (auto sep = integer_time_separator(subs[q], active, counter)) out.push_back(*sep);
  }
  return out;
}

// Min-cut separation on the pairs that are not locally integral.
inline std::vector<TimeSeparator> cf_separate_fractional(const CfModelState& state,
                                                         DijkstraCounter* counter = nullptr) {
  std::vector<TimeSeparator> out;
  const auto& subs = state.subgraphs();
  for (std::size_t q = 0; q < subs.size(); ++q) {
    if (state.locally_integral(static_cast<int>(q))) continue;
    const auto z = state.zbar(static_cast<int>(q));
    auto cut = fractional_separator_mincut(subs[q], z, counter);
    if (cut && cut->weight < 1.0 - kCutViolationTolerance) out.push_back(cut->separator);
  }
  return out;
}

inline std::vector<LiftedCover> cf_separate_lci(const CfModelState& state) {
  std::vector<LiftedCover> out;
  const auto& inst = state.instance();
  const auto& subs = state.subgraphs();
  const std::size_t nq = subs.size();
  std::vector<double> demand(nq);
  for (std::size_t q = 0; q < nq; ++q) demand[q] = inst.pairs[q].demand;
  std::vector<double> z(nq, 0.0);
  for (NodeIndex v : state.stations()) {
    const double kappa = inst.capacity[v];
    if (!std::isfinite(kappa)) continue;
    std::vector<int> pairs;
    for (std::size_t q = 0; q < nq; ++q) {
      z[q] = 0.0;
      const auto lv = subs[q].local(v);
      if (!lv || demand[q] > kappa) continue;
      pairs.push_back(static_cast<int>(q));
      z[q] = state.lp().value(state.z_col(static_cast<int>(q), *lv));
    }
    const double xbar = state.lp().value(state.x_col(v));
    if (auto lci = separate_lci(v, pairs, z, demand, kappa, xbar)) out.push_back(*lci);
  }
  return out;
}

namespace detail {

inline void check_lp(LpStatus status) {
  if (status == LpStatus::iteration_limit || status == LpStatus::numerical_failure ||
      status == LpStatus::unbounded) {
    throw std::runtime_error(std::string("LP solve failed: ") + to_string(status));
  }
}

// Child restriction sets fixing column `col` to 0 and to 1; the 1-branch
// comes first.
inline std::vector<CfNode> binary_children(const CfNode& node, int col) {
  CfNode up = node;
  up.fixings.push_back({col, 1.0, 1.0});
  CfNode down = node;
  down.fixings.push_back({col, 0.0, 0.0});
  return {std::move(up), std::move(down)};
}

}  // namespace detail

class CfPolicy {
 public:
  using Node = CfNode;

  CfPolicy(const Instance& inst, SolverConfig config)
      : inst_(inst), config_(std::move(config)),
        state_(build_cf_root(inst, &counter_, &config_.hooks)) {}

  [[nodiscard]] CfModelState& state() { return state_; }

  void enter(const Node& node) {
    auto& lp = state_.lp();
    for (int col : touched_) lp.set_bounds(col, state_.root_lower(col), state_.root_upper(col));
    touched_.clear();
    for (const auto& f : node.fixings) {
      const double lo = std::max(f.lower, state_.root_lower(f.col));
      const double hi = std::min(f.upper, state_.root_upper(f.col));
      if (lo > hi) {
        lp.set_bounds(f.col, state_.root_lower(f.col), state_.root_upper(f.col));
        empty_node_ = true;
      } else {
        lp.set_bounds(f.col, lo, hi);
      }
      touched_.push_back(f.col);
    }
    fractional_done_ = false;
  }

  Relaxation solve_relaxation(const NodeContext&) {
    if (empty_node_) {
      empty_node_ = false;
      return {false, kInfinity};
    }
    const auto status = state_.lp().solve();
    detail::check_lp(status);
    if (status == LpStatus::infeasible) return {false, kInfinity};
    return {true, state_.lp().objective()};
  }

  int separate(const NodeContext&, int) {
    int added = 0;
    for (const auto& sep : cf_separate_integer(state_, &counter_)) {
      if (state_.add_coverage(sep)) {
        ++added;
        if (config_.hooks.on_separator) config_.hooks.on_separator(sep);
      }
    }
    if (!fractional_done_) {
      fractional_done_ = true;
      if (config_.fractional) {
        for (const auto& sep : cf_separate_fractional(state_, &counter_)) {
          if (state_.add_coverage(sep)) {
            ++added;
            if (config_.hooks.on_separator) config_.hooks.on_separator(sep);
          }
        }
      }
      if (config_.lci) {
        for (const auto& lci : cf_separate_lci(state_)) {
          if (state_.add_lci(lci)) {
            ++added;
            if (config_.hooks.on_lci) config_.hooks.on_lci(lci);
          }
        }
      }
    }
    return added;
  }

  std::optional<Solution> heuristic(const NodeContext&) {
    if (!config_.heuristic) return std::nullopt;
    std::vector<std::vector<double>> z(state_.subgraphs().size());
    for (std::size_t q = 0; q < z.size(); ++q) z[q] = state_.zbar(static_cast<int>(q));
    HeuristicStats stats;
    auto sol = primal_heuristic_csp(inst_, state_.subgraphs(), z, &stats);
    if (config_.hooks.on_heuristic) config_.hooks.on_heuristic(sol, stats);
    return sol;
  }

  std::optional<Solution> integral_solution(const NodeContext&) {
    const auto& lp = state_.lp();
    for (NodeIndex v : state_.stations()) {
      if (!detail::near_integral(lp.value(state_.x_col(v)))) return std::nullopt;
    }
    const auto& subs = state_.subgraphs();
    std::vector<std::vector<NodeIndex>> routes(subs.size());
    for (std::size_t q = 0; q < subs.size(); ++q) {
      if (!state_.locally_integral(static_cast<int>(q))) return std::nullopt;
      const auto z = state_.zbar(static_cast<int>(q));
      std::vector<char> usable(z.size(), 0);
      for (std::size_t v = 0; v < z.size(); ++v) usable[v] = z[v] > 0.5;
      auto route = detail::route_through(subs[q], usable);
      if (!route) return std::nullopt;
      routes[q] = std::move(*route);
    }
    return make_solution(inst_, std::move(routes));
  }

  std::vector<Node> branch(const NodeContext&, const Node& node) {
    const auto& lp = state_.lp();
    std::vector<double> xs;
    for (NodeIndex v : state_.stations()) xs.push_back(lp.value(state_.x_col(v)));
    if (auto i = most_fractional(xs)) {
      return detail::binary_children(node, state_.x_col(state_.stations()[*i]));
    }
    std::vector<int> cols;
    std::vector<double> zs;
    const auto& subs = state_.subgraphs();
    for (std::size_t q = 0; q < subs.size(); ++q) {
      for (std::int32_t v = 0; v < subs[q].node_count(); ++v) {
        const int col = state_.z_col(static_cast<int>(q), v);
        if (col < 0) continue;
        cols.push_back(col);
        zs.push_back(lp.value(col));
      }
    }
    if (auto i = most_fractional(zs)) return detail::binary_children(node, cols[*i]);
    return {};
  }

  bool verify(const Solution& sol) { return verify_solution(inst_, sol).ok(); }
  [[nodiscard]] bool integral_objective() const { return inst_.integral_costs(); }
  [[nodiscard]] double initial_cutoff() const { return kInfinity; }
  [[nodiscard]] std::uint64_t dijkstra_calls() const { return counter_.value(); }

 private:
  const Instance& inst_;
  SolverConfig config_;
  DijkstraCounter counter_;
  CfModelState state_;
  std::vector<int> touched_;
  bool fractional_done_ = false;
  bool empty_node_ = false;
};

namespace detail {

inline std::optional<SolveResult> trivial_result(const Instance& inst) {
  SolveResult r;
  if (inst.pairs.empty()) {
    r.status = SolveStatus::optimal;
    r.objective = 0.0;
    r.best_bound = 0.0;
    r.gap = 0.0;
    r.solution = make_solution(inst, {});
    return r;
  }
  for (std::size_t q = 0; q < inst.pairs.size(); ++q) {
    if (build_od_subgraph(inst.graph, inst.pairs[q], static_cast<int>(q)).empty()) {
      r.status = SolveStatus::infeasible;
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline SolveResult solve_cf(const Instance& inst, const SolverConfig& config = {}) {
  if (auto r = detail::trivial_result(inst)) return *r;
  CfPolicy policy(inst, config);
  return bnb_run(policy, CfNode{}, config.limits);
}

// Uncapacitated formulation over x only: sum_{v in S} x_v >= 1, with
// separation at integral points only.
class CfInfPolicy {
 public:
  using Node = CfNode;

  CfInfPolicy(const Instance& inst, SeparationVariant variant, SolverHooks hooks = {})
      : inst_(inst), variant_(variant), hooks_(std::move(hooks)), subs_(inst.subgraphs()) {
    relaxed_ = inst;
    for (auto& c : relaxed_.capacity) c = kInfinity;
    x_col_.assign(inst.graph.node_count(), -1);
    for (NodeIndex v : inst.graph.stations()) {
      x_col_[v] = lp_.add_column(inst.cost[v], 0.0, 1.0);
      stations_.push_back(v);
    }
  }

  void enter(const Node& node) {
    for (int col : touched_) lp_.set_bounds(col, 0.0, 1.0);
    touched_.clear();
    for (const auto& f : node.fixings) {
      lp_.set_bounds(f.col, f.lower, f.upper);
      touched_.push_back(f.col);
    }
  }

  Relaxation solve_relaxation(const NodeContext&) {
    const auto status = lp_.solve();
    detail::check_lp(status);
    if (status == LpStatus::infeasible) return {false, kInfinity};
    return {true, lp_.objective()};
  }

  int separate(const NodeContext&, int) {
    if (!x_integral()) return 0;
    int added = 0;
    for (const auto& sub : subs_) {
      std::vector<char> active(sub.node_count(), 0);
      for (std::int32_t v = 0; v < sub.node_count(); ++v) {
        active[v] = sub.is_station(v) && lp_.value(x_col_[sub.global(v)]) > 0.5;
      }
      auto sep = variant_ == SeparationVariant::ours
                     ? integer_time_separator(sub, active, &counter_)
                     : baseline_time_separator(sub, active, &counter_);
      if (!sep || !registry_.emplace(sep->pair, sep->stations).second) continue;
      std::vector<LpEntry> entries;
      for (NodeIndex g : sep->stations) entries.emplace_back(x_col_[g], 1.0);
      lp_.add_row(RowSense::ge, 1.0, entries);
      ++added;
      if (hooks_.on_separator) hooks_.on_separator(*sep);
    }
    return added;
  }

  std::optional<Solution> heuristic(const NodeContext&) { return std::nullopt; }

  std::optional<Solution> integral_solution(const NodeContext&) {
    if (!x_integral()) return std::nullopt;
    std::vector<std::vector<NodeIndex>> routes(subs_.size());
    for (std::size_t q = 0; q < subs_.size(); ++q) {
      const auto& sub = subs_[q];
      std::vector<char> usable(sub.node_count(), 0);
      for (std::int32_t v = 0; v < sub.node_count(); ++v) {
        usable[v] = sub.is_station(v) && lp_.value(x_col_[sub.global(v)]) > 0.5;
      }
      auto route = detail::route_through(sub, usable);
      if (!route) return std::nullopt;
      routes[q] = std::move(*route);
    }
    return make_solution(relaxed_, std::move(routes));
  }

  std::vector<Node> branch(const NodeContext&, const Node& node) {
    std::vector<double> xs;
    for (NodeIndex v : stations_) xs.push_back(lp_.value(x_col_[v]));
    if (auto i = most_fractional(xs)) return detail::binary_children(node, x_col_[stations_[*i]]);
    return {};
  }

  bool verify(const Solution& sol) { return verify_solution(relaxed_, sol).ok(); }
  [[nodiscard]] bool integral_objective() const { return inst_.integral_costs(); }
  [[nodiscard]] double initial_cutoff() const { return kInfinity; }
  [[nodiscard]] std::uint64_t dijkstra_calls() const { return counter_.value(); }

 private:
  bool x_integral() const {
    for (NodeIndex v : stations_) {
      if (!detail::near_integral(lp_.value(x_col_[v]))) return false;
    }
    return true;
  }

  const Instance& inst_;
  SeparationVariant variant_;
  SolverHooks hooks_;
  std::vector<OdSubgraph> subs_;
  Instance relaxed_;
  LinearProgram lp_;
  std::vector<int> x_col_;
  std::vector<NodeIndex> stations_;
  std::vector<int> touched_;
  std::set<std::pair<int, std::vector<NodeIndex>>> registry_;
  DijkstraCounter counter_;
};

inline SolveResult solve_cf_uncapacitated(const Instance& inst,
                                          SeparationVariant variant = SeparationVariant::ours,
                                          BnbLimits limits = {}, SolverHooks hooks = {}) {
  if (auto r = detail::trivial_result(inst)) return *r;
  CfInfPolicy policy(inst, variant, std::move(hooks));
  return bnb_run(policy, CfNode{}, limits);
}

}  // namespace refuel

#endif  // REFUEL_CUT_SOLVER_HPP_
