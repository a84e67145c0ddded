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

// Branch, cut and price over the path formulation:
//   min sum c_v x_v + M sum_q r_q
//   sum_{P in P_q} y_P + r_q = 1                       per pair
//   sum_q f_q sum_P delta_v^P y_P <= kappa_v x_v       per station
//   sum_{P in P_q} delta_v^P y_P <= x_v                lazily
//   lifted covers over the implied z_v^q               lazily

#ifndef REFUEL_PATH_SOLVER_HPP_
#define REFUEL_PATH_SOLVER_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "refuel/bnb.hpp"
#include "refuel/cut_solver.hpp"
#include "refuel/graph_algorithms.hpp"
#include "refuel/heuristic.hpp"
#include "refuel/lifted_cover.hpp"
#include "refuel/lp.hpp"
#include "refuel/network.hpp"
#include "refuel/solver_config.hpp"

namespace refuel {

inline constexpr double kReducedCostTolerance = 1e-6;

struct PathColumn {
  int pair = -1;
  std::vector<NodeIndex> nodes;     // empty for rejection columns
  std::vector<std::int32_t> arcs;   // local arcs of the pair subgraph
  bool rejection = false;
  int col = -1;

  [[nodiscard]] bool visits(NodeIndex v) const {
    return nodes.size() > 2 && std::find(nodes.begin() + 1, nodes.end() - 1, v) != nodes.end() - 1;
  }
};

struct PfNode {
  std::vector<Fixing> x_fixings;
  std::vector<std::pair<int, std::int32_t>> forbidden;  // (pair, local arc)
  std::vector<int> no_rejection;                         // pairs
};

// Bound from a pricing round that solved every pair exactly.
inline double lagrangian_bound(double rmp_objective, const std::vector<double>& best_reduced_cost) {
  double bound = rmp_objective;
  for (double rc : best_reduced_cost) bound += std::min(0.0, rc);
  return bound;
}

namespace detail {

inline double floor_tol(double v) { return std::floor(v + kBoundTolerance); }

}  // namespace detail

// Early stop of column generation; only meaningful with integral costs.
inline bool pricing_termination(double rmp, double lagrangian, double global_lb,
                                std::optional<double> parent_lb, bool integral_costs) {
  if (!integral_costs || !std::isfinite(rmp)) return false;
  const double r = detail::floor_tol(rmp);
  if (std::isfinite(global_lb) && detail::floor_tol(global_lb) == r) return true;
  if (parent_lb && std::isfinite(*parent_lb) && detail::floor_tol(*parent_lb) == r) return true;
  return std::isfinite(lagrangian) && detail::floor_tol(lagrangian) == r;
}

// Restricted master problem.
class PfMaster {
 public:
  PfMaster(const Instance& inst, std::vector<OdSubgraph> subs)
      : inst_(&inst), subs_(std::move(subs)) {
    big_m_ = 1.0;
    for (NodeIndex v : inst.graph.stations()) big_m_ += inst.cost[v];
    const auto n = inst.graph.node_count();
    x_col_.assign(n, -1);
    cap_row_.assign(n, -1);
    lci_at_.assign(n, {});
    for (NodeIndex v : inst.graph.stations()) {
      x_col_[v] = lp_.add_column(inst.cost[v], 0.0, 1.0);
      stations_.push_back(v);
    }
    for (std::size_t q = 0; q < subs_.size(); ++q) {
      conv_row_.push_back(lp_.add_row(RowSense::eq, 1.0, {}));
    }
    for (NodeIndex v : stations_) {
      const std::vector<LpEntry> e{{x_col_[v], -inst.effective_capacity(v)}};
      cap_row_[v] = lp_.add_row(RowSense::le, 0.0, e);
    }
    link_row_.resize(subs_.size());
    for (std::size_t q = 0; q < subs_.size(); ++q) {
      const std::vector<LpEntry> e{{conv_row_[q], 1.0}};
      PathColumn c;
      c.pair = static_cast<int>(q);
      c.rejection = true;
      c.col = lp_.add_column(big_m_, 0.0, kInfinity, e);
      rejection_.push_back(static_cast<int>(columns_.size()));
      columns_.push_back(std::move(c));
      by_pair_.push_back({});
      known_.emplace_back();
    }
  }

  [[nodiscard]] const Instance& instance() const { return *inst_; }
  [[nodiscard]] const std::vector<OdSubgraph>& subgraphs() const { return subs_; }
  [[nodiscard]] const std::vector<NodeIndex>& stations() const { return stations_; }
  [[nodiscard]] LinearProgram& lp() { return lp_; }
  [[nodiscard]] const LinearProgram& lp() const { return lp_; }
  [[nodiscard]] double big_m() const { return big_m_; }
  [[nodiscard]] int x_col(NodeIndex v) const { return x_col_[v]; }
  [[nodiscard]] int conv_row(int q) const { return conv_row_[q]; }
  [[nodiscard]] int cap_row(NodeIndex v) const { return cap_row_[v]; }
  [[nodiscard]] const std::vector<PathColumn>& columns() const { return columns_; }
  [[nodiscard]] const PathColumn& rejection(int q) const { return columns_[rejection_[q]]; }
  [[nodiscard]] const std::vector<int>& pair_columns(int q) const { return by_pair_[q]; }

  [[nodiscard]] std::optional<int> link_row(int q, NodeIndex v) const {
    auto it = link_row_[q].find(v);
    if (it == link_row_[q].end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] const std::vector<std::pair<int, LiftedCover>>& lci_rows() const { return lci_rows_; }

  // Matrix entries of a path column for pair q.
  [[nodiscard]] std::vector<LpEntry> entries(int q, const std::vector<NodeIndex>& nodes) const {
    std::vector<LpEntry> e{{conv_row_[q], 1.0}};
    const double f = inst_->pairs[q].demand;
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
      const NodeIndex v = nodes[i];
      e.emplace_back(cap_row_[v], f);
      if (auto r = link_row(q, v)) e.emplace_back(*r, 1.0);
      for (int j : lci_at_[v]) {
        const int a = lci_rows_[j].second.coefficient(q);
        if (a > 0) e.emplace_back(lci_rows_[j].first, static_cast<double>(a));
      }
    }
    return e;
  }

  [[nodiscard]] bool has_path(int q, const std::vector<NodeIndex>& nodes) const {
    return known_[q].count(nodes) > 0;
  }

  int add_path(int q, const CostedPath& path) {
    PathColumn c;
    c.pair = q;
    c.nodes = path.nodes;
    c.arcs = path.arcs;
    c.col = lp_.add_column(0.0, 0.0, kInfinity, entries(q, path.nodes));
    known_[q].insert(c.nodes);
    by_pair_[q].push_back(static_cast<int>(columns_.size()));
    columns_.push_back(std::move(c));
    return static_cast<int>(columns_.size()) - 1;
  }

  // sum_{P in P_q} delta_v^P y_P - x_v <= 0
  bool add_link(int q, NodeIndex v) {
    if (link_row_[q].count(v)) return false;
    std::vector<LpEntry> e{{x_col_[v], -1.0}};
    for (int k : by_pair_[q]) {
      if (columns_[k].visits(v)) e.emplace_back(columns_[k].col, 1.0);
    }
    link_row_[q][v] = lp_.add_row(RowSense::le, 0.0, e);
    return true;
  }

  bool add_lci(const LiftedCover& lci) {
    std::vector<std::pair<int, int>> key;
    for (int q : lci.cover) key.emplace_back(q, 1);
    for (auto [q, a] : lci.lifted) key.emplace_back(q, a);
    if (!lci_registry_.emplace(lci.station, key).second) return false;
    std::vector<LpEntry> e;
    for (auto [q, a] : key) {
      for (int k : by_pair_[q]) {
        if (columns_[k].visits(lci.station)) e.emplace_back(columns_[k].col, static_cast<double>(a));
      }
    }
    const int row = lp_.add_row(RowSense::le, static_cast<double>(lci.rhs), e);
    lci_at_[lci.station].push_back(static_cast<int>(lci_rows_.size()));
    lci_rows_.emplace_back(row, lci);
    return true;
  }

  // Implied z_v^q = sum_{P in P_q} delta_v^P y_P, indexed [q][global node].
  [[nodiscard]] std::vector<std::vector<double>> implied_z() const {
    std::vector<std::vector<double>> z(subs_.size(),
                                       std::vector<double>(inst_->graph.node_count(), 0.0));
    for (const auto& c : columns_) {
      if (c.rejection) continue;
      const double y = lp_.value(c.col);
      if (y <= 0.0) continue;
      for (std::size_t i = 1; i + 1 < c.nodes.size(); ++i) z[c.pair][c.nodes[i]] += y;
    }
    return z;
  }

 private:
  const Instance* inst_;
  std::vector<OdSubgraph> subs_;
  std::vector<NodeIndex> stations_;
  LinearProgram lp_;
  double big_m_ = 1.0;
  std::vector<int> x_col_;
  std::vector<int> conv_row_;
  std::vector<int> cap_row_;
  std::vector<std::map<NodeIndex, int>> link_row_;
  std::vector<std::pair<int, LiftedCover>> lci_rows_;
  std::vector<std::vector<int>> lci_at_;
  std::set<std::pair<NodeIndex, std::vector<std::pair<int, int>>>> lci_registry_;
  std::vector<PathColumn> columns_;
  std::vector<int> rejection_;
  std::vector<std::vector<int>> by_pair_;
  std::vector<std::set<std::vector<NodeIndex>>> known_;
};

inline PfMaster build_rmp(const Instance& inst) { return PfMaster(inst, inst.subgraphs()); }

// Node costs of every pair's pricing problem from row multipliers `y`.
// With `clamp`, multipliers of <= rows are cut at the sign they must have.
inline std::vector<std::vector<double>> pricing_costs(const PfMaster& rmp,
                                                     const std::vector<double>& y,
                                                     const std::vector<std::vector<char>>& excluded,
                                                     bool clamp) {
  const auto& inst = rmp.instance();
  const auto& subs = rmp.subgraphs();
  auto sign = [&](double v) { return clamp ? std::max(0.0, v) : v; };
  std::vector<std::vector<double>> cost(subs.size());
  for (std::size_t q = 0; q < subs.size(); ++q) {
    const auto& sub = subs[q];
    cost[q].assign(sub.node_count(), 0.0);
    const double f = inst.pairs[q].demand;
    for (std::int32_t lv = 0; lv < sub.node_count(); ++lv) {
      if (!sub.is_station(lv)) continue;
      if (excluded[q][lv]) {
        cost[q][lv] = kInfinity;
        continue;
      }
      const NodeIndex v = sub.global(lv);
      double c = f * sign(-y[rmp.cap_row(v)]);
      if (auto r = rmp.link_row(static_cast<int>(q), v)) c += sign(-y[*r]);
      cost[q][lv] = c;
    }
  }
  for (const auto& [row, lci] : rmp.lci_rows()) {
    const double lambda = sign(-y[row]);
    if (lambda == 0.0) continue;
    auto charge = [&](int q, int a) {
      if (auto lv = subs[q].local(lci.station); lv && !excluded[q][*lv]) {
        cost[q][*lv] += a * lambda;
      }
    };
    for (int q : lci.cover) charge(q, 1);
    for (auto [q, a] : lci.lifted) charge(q, a);
  }
  return cost;
}

struct PricingRound {
  int added = 0;
  bool exact_for_all = true;
  std::vector<double> best_reduced_cost;  // per pair, valid if exact_for_all
};

// One pricing round: LARAC first, exact CSP where LARAC finds nothing.
// Adds at most one column per pair.
inline PricingRound price_columns(PfMaster& rmp, const std::vector<double>& y,
                                  const std::vector<std::vector<char>>& excluded,
                                  const std::vector<std::vector<char>>& arc_allowed,
                                  bool use_larac, DijkstraCounter* counter = nullptr) {
  const auto cost = pricing_costs(rmp, y, excluded, true);
  const auto& subs = rmp.subgraphs();
  PricingRound round;
  round.best_reduced_cost.assign(subs.size(), kInfinity);
  auto true_rc = [&](int q, const CostedPath& p) {
    double rc = 0.0;
    for (auto [row, a] : rmp.entries(q, p.nodes)) rc -= y[row] * a;
    return rc;
  };
  auto try_add = [&](int q, const CostedPath& p) {
    if (true_rc(q, p) >= -kReducedCostTolerance || rmp.has_path(q, p.nodes)) return false;
    rmp.add_path(q, p);
    ++round.added;
    return true;
  };
  for (std::size_t qi = 0; qi < subs.size(); ++qi) {
    const int q = static_cast<int>(qi);
    const auto& sub = subs[q];
    if (sub.empty()) continue;
    const double sigma = y[rmp.conv_row(q)];
    if (use_larac) {
      auto p = csp_larac(sub, cost[q], sub.time_bound(), arc_allowed[q], counter);
      if (p && p->cost - sigma < -kReducedCostTolerance && try_add(q, *p)) {
        round.exact_for_all = false;
        continue;
      }
    }
    auto p = csp_exact(sub, cost[q], sub.time_bound(), arc_allowed[q]);
    if (!p) continue;
    round.best_reduced_cost[q] = p->cost - sigma;
    if (p->cost - sigma < -kReducedCostTolerance) try_add(q, *p);
  }
  return round;
}

// Lazy strong linking rows violated by the current solution.
inline std::vector<std::pair<int, NodeIndex>> pf_separate_strong_linking(const PfMaster& rmp) {
  std::vector<std::pair<int, NodeIndex>> out;
  const auto z = rmp.implied_z();
  for (std::size_t q = 0; q < z.size(); ++q) {
    for (NodeIndex v : rmp.stations()) {
      if (z[q][v] > rmp.lp().value(rmp.x_col(v)) + kCutViolationTolerance &&
          !rmp.link_row(static_cast<int>(q), v)) {
        out.emplace_back(static_cast<int>(q), v);
      }
    }
  }
  return out;
}

inline std::vector<LiftedCover> pf_separate_lci(const PfMaster& rmp) {
  std::vector<LiftedCover> out;
  const auto& inst = rmp.instance();
  const auto& subs = rmp.subgraphs();
  const auto z = rmp.implied_z();
  const std::size_t nq = subs.size();
  std::vector<double> demand(nq);
  for (std::size_t q = 0; q < nq; ++q) demand[q] = inst.pairs[q].demand;
  std::vector<double> zq(nq, 0.0);
  for (NodeIndex v : rmp.stations()) {
    const double kappa = inst.capacity[v];
    if (!std::isfinite(kappa)) continue;
    std::vector<int> pairs;
    for (std::size_t q = 0; q < nq; ++q) {
      zq[q] = 0.0;
      if (!subs[q].local(v) || demand[q] > kappa) continue;
      pairs.push_back(static_cast<int>(q));
      zq[q] = z[q][v];
    }
    const double xbar = rmp.lp().value(rmp.x_col(v));
    if (auto lci = separate_lci(v, pairs, zq, demand, kappa, xbar)) out.push_back(*lci);
  }
  return out;
}

// Splits the out-arcs of the first node where P and P' part ways.
// Returns (A1, A2) with P's arc in A1 and P''s arc in A2.
inline std::pair<std::vector<std::int32_t>, std::vector<std::int32_t>> partition_divergence(
    const OdSubgraph& sub, const PathColumn& p, const PathColumn& p2,
    const std::vector<char>& arc_allowed) {
  std::size_t i = 0;
  while (i < p.arcs.size() && i < p2.arcs.size() && p.arcs[i] == p2.arcs[i]) ++i;
  if (i == p.arcs.size() || i == p2.arcs.size()) {
    throw std::logic_error("partition_divergence: paths do not diverge");
  }
  const std::int32_t a1 = p.arcs[i];
  const std::int32_t a2 = p2.arcs[i];
  const std::int32_t v = sub.arc(a1).tail;
  std::vector<std::int32_t> first{a1};
  std::vector<std::int32_t> second{a2};
  std::vector<std::int32_t> rest;
  for (std::int32_t a : sub.out_arcs(v)) {
    if (a != a1 && a != a2 && (arc_allowed.empty() || arc_allowed[a])) rest.push_back(a);
  }
  std::sort(rest.begin(), rest.end());
  for (std::int32_t a : rest) (first.size() <= second.size() ? first : second).push_back(a);
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  return {first, second};
}

class PfPolicy {
 public:
  using Node = PfNode;

  PfPolicy(const Instance& inst, SolverConfig config)
      : inst_(inst), config_(std::move(config)), rmp_(build_rmp(inst)) {
    const auto& subs = rmp_.subgraphs();
    excluded_.resize(subs.size());
    arc_allowed_.resize(subs.size());
    for (std::size_t q = 0; q < subs.size(); ++q) {
      excluded_[q].assign(subs[q].node_count(), 0);
      arc_allowed_[q].assign(subs[q].arc_count(), 1);
    }
  }

  [[nodiscard]] PfMaster& master() { return rmp_; }

  void enter(const Node& node) {
    auto& lp = rmp_.lp();
    const auto& subs = rmp_.subgraphs();
    for (NodeIndex v : rmp_.stations()) lp.set_bounds(rmp_.x_col(v), 0.0, 1.0);
    for (const auto& f : node.x_fixings) lp.set_bounds(f.col, f.lower, f.upper);
    for (std::size_t q = 0; q < subs.size(); ++q) {
      std::fill(arc_allowed_[q].begin(), arc_allowed_[q].end(), 1);
    }
    for (auto [q, a] : node.forbidden) arc_allowed_[q][a] = 0;
    for (std::size_t q = 0; q < subs.size(); ++q) {
      const double f = inst_.pairs[q].demand;
      for (std::int32_t lv = 0; lv < subs[q].node_count(); ++lv) {
        if (!subs[q].is_station(lv)) continue;
        const NodeIndex v = subs[q].global(lv);
        excluded_[q][lv] = f > inst_.capacity[v] || lp.upper(rmp_.x_col(v)) <= 0.0;
      }
    }
    for (const auto& c : rmp_.columns()) {
      if (c.rejection) {
        lp.set_bounds(c.col, 0.0, kInfinity);
        continue;
      }
      const bool blocked = std::any_of(c.arcs.begin(), c.arcs.end(), [&](std::int32_t a) {
        return !arc_allowed_[c.pair][a];
      });
      lp.set_bounds(c.col, 0.0, blocked ? 0.0 : kInfinity);
    }
    for (int q : node.no_rejection) lp.set_bounds(rmp_.rejection(q).col, 0.0, 0.0);
  }

  Relaxation solve_relaxation(const NodeContext& ctx) {
    auto& lp = rmp_.lp();
    const bool may_stop = config_.early_termination && inst_.integral_costs();
    bool forced = false;
    double lag_best = -kInfinity;
    const std::optional<double> parent =
        ctx.root() ? std::nullopt : std::optional<double>(ctx.parent_bound);
    for (;;) {
      const auto status = lp.solve();
      detail::check_lp(status);
      if (status == LpStatus::infeasible) {
        const auto round = price_columns(rmp_, lp.duals(), excluded_, arc_allowed_, config_.larac,
                                         &counter_);
        if (round.added == 0) return {false, kInfinity};
        continue;
      }
      const double z = lp.objective();
      const auto y = lp.duals();
      const auto round = price_columns(rmp_, y, excluded_, arc_allowed_, config_.larac, &counter_);
      double lag = -kInfinity;
      if (round.exact_for_all) {
        lag = lagrangian_bound(z, round.best_reduced_cost);
        if (config_.hooks.on_lagrangian) config_.hooks.on_lagrangian(ctx.number, lag);
        lag_best = std::max(lag_best, lag);
      }
      if (round.added == 0) {
        if (config_.hooks.on_converged) report_converged(ctx, z, y);
        return {true, z};
      }
      if (may_stop && !forced &&
          pricing_termination(z, lag, ctx.global_bound, parent, true)) {
        const double bound = std::max(ctx.parent_bound, lag_best);
        if (!rmp_integral()) return {true, bound};
        if (std::ceil(bound - kBoundTolerance) >= ctx.incumbent - kBoundTolerance) {
          return {true, bound};
        }
        forced = true;
      }
    }
  }

  int separate(const NodeContext& ctx, int round) {
    if (!ctx.root() && round >= 1) return 0;
    int added = 0;
    for (auto [q, v] : pf_separate_strong_linking(rmp_)) added += rmp_.add_link(q, v);
    if (config_.lci) {
      for (const auto& lci : pf_separate_lci(rmp_)) {
        if (rmp_.add_lci(lci)) {
          ++added;
          if (config_.hooks.on_lci) config_.hooks.on_lci(lci);
        }
      }
    }
    return added;
  }

  std::optional<Solution> heuristic(const NodeContext&) {
    if (!config_.heuristic) return std::nullopt;
    const auto& subs = rmp_.subgraphs();
    const auto z = rmp_.implied_z();
    std::vector<std::vector<double>> local(subs.size());
    for (std::size_t q = 0; q < subs.size(); ++q) {
      local[q].assign(subs[q].node_count(), 0.0);
      for (std::int32_t lv = 0; lv < subs[q].node_count(); ++lv) {
        local[q][lv] = z[q][subs[q].global(lv)];
      }
    }
    HeuristicStats stats;
    auto sol = primal_heuristic_csp(inst_, subs, local, &stats);
    if (config_.hooks.on_heuristic) config_.hooks.on_heuristic(sol, stats);
    return sol;
  }

  std::optional<Solution> integral_solution(const NodeContext&) {
    if (!rmp_integral()) return std::nullopt;
    const auto& lp = rmp_.lp();
    std::vector<std::vector<NodeIndex>> routes(rmp_.subgraphs().size());
    for (const auto& c : rmp_.columns()) {
      if (lp.value(c.col) < 0.5) continue;
      if (c.rejection) return std::nullopt;
      routes[c.pair] = c.nodes;
    }
    return make_solution(inst_, std::move(routes));
  }

  std::vector<Node> branch(const NodeContext&, const Node& node) {
    const auto& lp = rmp_.lp();
    std::vector<double> xs;
    for (NodeIndex v : rmp_.stations()) xs.push_back(lp.value(rmp_.x_col(v)));
    if (auto i = most_fractional(xs)) {
      const int col = rmp_.x_col(rmp_.stations()[*i]);
      Node up = node;
      up.x_fixings.push_back({col, 1.0, 1.0});
      Node down = node;
      down.x_fixings.push_back({col, 0.0, 0.0});
      return {std::move(up), std::move(down)};
    }
    const auto& subs = rmp_.subgraphs();
    int pick = -1;
    for (std::size_t q = 0; q < subs.size(); ++q) {
      bool split = false;
      for (int k : rmp_.pair_columns(static_cast<int>(q))) {
        split |= !detail::near_integral(lp.value(rmp_.columns()[k].col));
      }
      split |= !detail::near_integral(lp.value(rmp_.rejection(static_cast<int>(q)).col));
      if (split && (pick < 0 || inst_.pairs[q].demand > inst_.pairs[pick].demand)) {
        pick = static_cast<int>(q);
      }
    }
    if (pick < 0) return {};
    std::vector<int> fractional;
    for (int k : rmp_.pair_columns(pick)) {
      const double v = lp.value(rmp_.columns()[k].col);
      if (v > kIntegralityTolerance && !detail::near_integral(v)) fractional.push_back(k);
    }
    std::stable_sort(fractional.begin(), fractional.end(), [&](int a, int b) {
      return lp.value(rmp_.columns()[a].col) > lp.value(rmp_.columns()[b].col);
    });
    if (fractional.size() < 2) {
      Node child = node;
      child.no_rejection.push_back(pick);
      return {std::move(child)};
    }
    const auto [a1, a2] = partition_divergence(subs[pick], rmp_.columns()[fractional[0]],
                                               rmp_.columns()[fractional[1]], arc_allowed_[pick]);
    Node left = node;
    for (std::int32_t a : a1) left.forbidden.emplace_back(pick, a);
    Node right = node;
    for (std::int32_t a : a2) right.forbidden.emplace_back(pick, a);
    return {std::move(left), std::move(right)};
  }

  bool verify(const Solution& sol) { return verify_solution(inst_, sol).ok(); }
  [[nodiscard]] bool integral_objective() const { return inst_.integral_costs(); }
  [[nodiscard]] double initial_cutoff() const { return rmp_.big_m(); }
  [[nodiscard]] std::uint64_t dijkstra_calls() const { return counter_.value(); }

 private:
  bool rmp_integral() const {
    const auto& lp = rmp_.lp();
    for (NodeIndex v : rmp_.stations()) {
      if (!detail::near_integral(lp.value(rmp_.x_col(v)))) return false;
    }
    for (const auto& c : rmp_.columns()) {
      if (!detail::near_integral(lp.value(c.col))) return false;
    }
    return true;
  }

  void report_converged(const NodeContext& ctx, double z, const std::vector<double>& y) {
    ConvergedPricing report;
    report.node = ctx.number;
    report.objective = z;
    const auto cost = pricing_costs(rmp_, y, excluded_, false);
    for (std::size_t q = 0; q < cost.size(); ++q) {
      report.pairs.push_back({static_cast<int>(q), y[rmp_.conv_row(static_cast<int>(q))], cost[q],
                              arc_allowed_[q]});
    }
    config_.hooks.on_converged(report);
  }

  const Instance& inst_;
  SolverConfig config_;
  PfMaster rmp_;
  std::vector<std::vector<char>> excluded_;
  std::vector<std::vector<char>> arc_allowed_;
  DijkstraCounter counter_;
};

inline SolveResult solve_pf(const Instance& inst, const SolverConfig& config = {}) {
  if (auto r = detail::trivial_result(inst)) return *r;
  PfPolicy policy(inst, config);
  return bnb_run(policy, PfNode{}, config.limits);
}

}  // namespace refuel

#endif  // REFUEL_PATH_SOLVER_HPP_
