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

// Best-bound branch and bound driven by a policy object. The policy owns
// the relaxation (LP, pricing, separation) and the branching rule; the
// kernel owns the tree, the incumbent and the limits.
//
// Policy requirements (P::Node is the per-node restriction set):
//   void enter(const P::Node&);
//   Relaxation solve_relaxation(const NodeContext&);
//   int separate(const NodeContext&, int round);     // rows added
//   std::optional<Solution> heuristic(const NodeContext&);
//   std::optional<Solution> integral_solution(const NodeContext&);
//   std::vector<P::Node> branch(const NodeContext&, const P::Node&);
//   bool verify(const Solution&);
//   bool integral_objective() const;
//   double initial_cutoff() const;
//   std::uint64_t dijkstra_calls() const;

#ifndef REFUEL_BNB_HPP_
#define REFUEL_BNB_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "refuel/network.hpp"

namespace refuel {

enum class SolveStatus { optimal, infeasible, limit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::limit: return "limit";
  }
  return "unknown";
}

struct BnbLimits {
  double time_limit_s = std::numeric_limits<double>::infinity();
  std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();
};

struct SolveResult {
  SolveStatus status = SolveStatus::infeasible;
  double objective = kInfinity;  // incumbent value
  double best_bound = -kInfinity;
  double gap = kInfinity;        // (UB - LB) / UB
  std::int64_t nodes = 0;
  double wall_time_s = 0.0;
  std::uint64_t dijkstra_calls = 0;
  std::optional<Solution> solution;
};

struct NodeContext {
  std::int64_t number = 0;  // 1-based processing order
  int depth = 0;
  double parent_bound = -kInfinity;
  double global_bound = -kInfinity;
  double incumbent = kInfinity;

  [[nodiscard]] bool root() const { return number == 1; }
};

struct Relaxation {
  bool feasible = false;
  double bound = -kInfinity;  // valid lower bound for the node
};

inline constexpr double kBoundTolerance = 1e-6;
inline constexpr int kHeuristicNodeInterval = 10;

inline double relative_gap(double ub, double lb) {
  if (!std::isfinite(ub)) return kInfinity;
  if (!std::isfinite(lb)) return kInfinity;
  const double diff = std::max(0.0, ub - lb);
  if (diff <= kBoundTolerance) return 0.0;
  return std::abs(ub) > 0.0 ? diff / std::abs(ub) : kInfinity;
}

template <class Policy>
class BranchAndBound {
 public:
  using Node = typename Policy::Node;

  BranchAndBound(Policy& policy, BnbLimits limits) : policy_(policy), limits_(limits) {}

  SolveResult run(Node root) {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    cutoff_ = policy_.initial_cutoff();
    push(std::move(root), -kInfinity, 0);
    bool hit_limit = false;
    while (!open_.empty()) {
      if (processed_ >= limits_.node_limit || elapsed() >= limits_.time_limit_s) {
        hit_limit = true;
        break;
      }
      Entry e = open_.top();
      open_.pop();
      if (prunable(e.bound)) continue;
      Node node = std::move(nodes_[e.slot]);
      process(std::move(node), e.bound, e.depth);
    }
    SolveResult result;
    result.nodes = processed_;
    result.wall_time_s = elapsed();
    result.dijkstra_calls = policy_.dijkstra_calls();
    result.objective = incumbent_value_;
    result.solution = incumbent_;
    if (incumbent_) {
      update_global_bound();
      result.best_bound = hit_limit ? std::min(global_bound_, incumbent_value_) : incumbent_value_;
      result.gap = relative_gap(incumbent_value_, result.best_bound);
      result.status = hit_limit ? SolveStatus::limit : SolveStatus::optimal;
      result.solution->gap = result.gap;
    } else {
      update_global_bound();
      result.best_bound = global_bound_;
      result.status = hit_limit ? SolveStatus::limit : SolveStatus::infeasible;
    }
    if (result.status == SolveStatus::optimal) result.gap = 0.0;
    return result;
  }

 private:
  struct Entry {
    double bound;
    int depth;
    std::int64_t seq;
    std::size_t slot;
  };
  struct Worse {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.seq > b.seq;
    }
  };

  double round_bound(double bound) const {
    if (policy_.integral_objective() && std::isfinite(bound)) {
      return std::ceil(bound - kBoundTolerance);
    }
    return bound;
  }

  bool prunable(double bound) const {
    const double limit = std::min(incumbent_value_, cutoff_);
    return std::isfinite(limit) && bound >= limit - kBoundTolerance;
  }

  void push(Node node, double bound, int depth) {
    nodes_.push_back(std::move(node));
    open_.push({bound, depth, seq_++, nodes_.size() - 1});
  }

  void update_global_bound() {
    double lb = open_.empty() ? incumbent_value_ : open_.top().bound;
    if (current_bound_) lb = std::min(lb, *current_bound_);
    if (!std::isfinite(lb) && !incumbent_) return;
    if (lb > global_bound_) global_bound_ = lb;
  }

  void offer(std::optional<Solution> sol) {
    if (!sol || !policy_.verify(*sol)) return;
    if (sol->objective < incumbent_value_ - kBoundTolerance) {
      incumbent_value_ = sol->objective;
      incumbent_ = std::move(sol);
    }
  }

  void process(Node node, double parent_bound, int depth) {
    ++processed_;
    NodeContext ctx;
    ctx.number = processed_;
    ctx.depth = depth;
    ctx.parent_bound = parent_bound;
    current_bound_ = parent_bound;
    update_global_bound();
    ctx.global_bound = global_bound_;
    ctx.incumbent = incumbent_value_;
    policy_.enter(node);
    Relaxation rel = policy_.solve_relaxation(ctx);
    auto node_bound = [&](const Relaxation& r) {
      return round_bound(std::max(parent_bound, r.bound));
    };
    if (!rel.feasible) {
      current_bound_.reset();
      return;
    }
    double bound = node_bound(rel);
    for (int round = 0;; ++round) {
      if (prunable(bound)) {
        current_bound_.reset();
        return;
      }
      if (ctx.root() || (processed_ % kHeuristicNodeInterval == 0 && round == 0)) {
        ctx.incumbent = incumbent_value_;
        offer(policy_.heuristic(ctx));
      }
      ctx.incumbent = incumbent_value_;
      if (policy_.separate(ctx, round) == 0) break;
      rel = policy_.solve_relaxation(ctx);
      if (!rel.feasible) {
        current_bound_.reset();
        return;
      }
      bound = std::max(bound, node_bound(rel));
    }
    if (prunable(bound)) {
      current_bound_.reset();
      return;
    }
    if (auto sol = policy_.integral_solution(ctx)) {
      offer(std::move(sol));
      current_bound_.reset();
      return;
    }
    auto children = policy_.branch(ctx, node);
    current_bound_.reset();
    for (auto& child : children) push(std::move(child), bound, depth + 1);
  }

  Policy& policy_;
  BnbLimits limits_;
  std::priority_queue<Entry, std::vector<Entry>, Worse> open_;
  std::vector<Node> nodes_;
  std::int64_t seq_ = 0;
  std::int64_t processed_ = 0;
  double cutoff_ = kInfinity;
  double incumbent_value_ = kInfinity;
  std::optional<Solution> incumbent_;
  double global_bound_ = -kInfinity;
  std::optional<double> current_bound_;
};

template <class Policy>
SolveResult bnb_run(Policy& policy, typename Policy::Node root, BnbLimits limits = {}) {
  return BranchAndBound<Policy>(policy, limits).run(std::move(root));
}

// Most fractional value (|v - 0.5| minimal, ties to the lower index) among
// candidates whose value is not within the integrality tolerance.
inline std::optional<std::size_t> most_fractional(const std::vector<double>& values,
                                                  double tolerance = 1e-6) {
  std::optional<std::size_t> best;
  double best_dist = kInfinity;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (std::abs(v - std::round(v)) <= tolerance) continue;
    const double dist = std::abs(v - 0.5);
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

}  // namespace refuel

#endif  // REFUEL_BNB_HPP_
