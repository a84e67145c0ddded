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

// Bounded-variable primal revised simplex with an explicit dense basis
// inverse. Every row i reads a_i x + s_i = b_i with a slack s_i bounded by
// the row sense, so any basis (including the all-slack one) is a valid start
// and a composite phase 1 restores feasibility after rows, columns or bounds
// change. Row duals are y = dz/db, hence y >= 0 on >= rows of a minimization.

#ifndef REFUEL_LP_HPP_
#define REFUEL_LP_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace refuel {

enum class RowSense { le, ge, eq };

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit, numerical_failure };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
    case LpStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

struct LpTolerances {
  double feasibility = 1e-7;
  double optimality = 1e-7;
  double pivot = 1e-9;
};

inline constexpr double kIntegralityTolerance = 1e-6;

using LpEntry = std::pair<int, double>;  // (row or column index, coefficient)

enum class BasisStatus : std::uint8_t { basic, at_lower, at_upper, at_zero };

struct LpBasis {
  std::vector<BasisStatus> columns;
  std::vector<BasisStatus> rows;  // status of each row's slack
};

class LinearProgram {
 public:
  explicit LinearProgram(LpTolerances tol = {}) : tol_(tol) {}

  [[nodiscard]] int num_rows() const { return static_cast<int>(rhs_.size()); }
  [[nodiscard]] int num_cols() const { return static_cast<int>(col_var_.size()); }
  [[nodiscard]] const LpTolerances& tolerances() const { return tol_; }

  // New column starts nonbasic at its finite bound nearest zero. Entries
  // reference existing rows.
  int add_column(double objective, double lower, double upper,
                 std::span<const LpEntry> entries = {}) {
    check_bounds(lower, upper);
    const int var = new_var(objective, lower, upper);
    for (auto [row, coef] : entries) {
      if (row < 0 || row >= num_rows()) throw std::out_of_range("add_column: bad row");
      if (coef != 0.0) col_[var].emplace_back(row, coef);
    }
    col_var_.push_back(var);
    dirty_ = true;
    return num_cols() - 1;
  }

  // New row becomes basic through its slack; the basis inverse is extended
  // in place.
  int add_row(RowSense sense, double rhs, std::span<const LpEntry> entries) {
    const int row = num_rows();
    std::vector<double> basic_coef(head_.size(), 0.0);
    for (auto [col, coef] : entries) {
      if (col < 0 || col >= num_cols()) throw std::out_of_range("add_row: bad column");
      if (coef == 0.0) continue;
      const int var = col_var_[col];
      col_[var].emplace_back(row, coef);
      if (pos_[var] >= 0) basic_coef[pos_[var]] += coef;
    }
    double lo = 0.0;
    double hi = 0.0;
    if (sense == RowSense::le) hi = kInf;
    if (sense == RowSense::ge) lo = -kInf;
    const int slack = new_var(0.0, lo, hi);
    col_[slack].emplace_back(row, 1.0);
    rhs_.push_back(rhs);
    sense_.push_back(sense);
    row_var_.push_back(slack);
    duals_.push_back(0.0);
    if (factored_) {
      // [B 0; r 1]^-1 = [B^-1 0; -r B^-1 1]
      const std::size_t m = head_.size();
      std::vector<double> next((m + 1) * (m + 1), 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        std::copy_n(&binv_[i * m], m, &next[i * (m + 1)]);
      }
      for (std::size_t k = 0; k < m; ++k) {
        double v = 0.0;
        for (std::size_t r = 0; r < m; ++r) v -= basic_coef[r] * binv_[r * m + k];
        next[m * (m + 1) + k] = v;
      }
      next[m * (m + 1) + m] = 1.0;
      binv_ = std::move(next);
    }
    head_.push_back(slack);
    pos_[slack] = static_cast<int>(head_.size()) - 1;
    status_[slack] = BasisStatus::basic;
    dirty_ = true;
    return row;
  }

  void set_bounds(int col, double lower, double upper) {
    check_bounds(lower, upper);
    const int var = col_var_.at(col);
    lb_[var] = lower;
    ub_[var] = upper;
    if (pos_[var] < 0) place_nonbasic(var);
    dirty_ = true;
  }

  void set_objective(int col, double c) { cost_[col_var_.at(col)] = c; }

  [[nodiscard]] double lower(int col) const { return lb_[col_var_[col]]; }
  [[nodiscard]] double upper(int col) const { return ub_[col_var_[col]]; }
  [[nodiscard]] double objective_coef(int col) const { return cost_[col_var_[col]]; }
  [[nodiscard]] RowSense sense(int row) const { return sense_[row]; }
  [[nodiscard]] double rhs(int row) const { return rhs_[row]; }
  [[nodiscard]] std::span<const LpEntry> column(int col) const {
    return col_[col_var_[col]];
  }

  LpStatus solve(std::int64_t max_iterations = -1) {
    if (max_iterations < 0) {
      max_iterations = 20000 + 200 * static_cast<std::int64_t>(num_rows() + num_cols());
    }
    status_code_ = run(max_iterations);
    return status_code_;
  }

  [[nodiscard]] LpStatus status() const { return status_code_; }
  [[nodiscard]] double objective() const { return objective_; }
  [[nodiscard]] double value(int col) const { return x_[col_var_[col]]; }
  [[nodiscard]] std::vector<double> primal() const {
    std::vector<double> out(num_cols());
    for (int j = 0; j < num_cols(); ++j) out[j] = x_[col_var_[j]];
    return out;
  }
  // Row duals at optimality; after an infeasible solve these hold the
  // phase 1 multipliers: a column a helps restore feasibility when raised
  // from its lower bound iff dot(y, a) > 0.
  [[nodiscard]] double dual(int row) const { return duals_[row]; }
  [[nodiscard]] const std::vector<double>& duals() const { return duals_; }
  [[nodiscard]] double reduced_cost(int col) const {
    const int var = col_var_[col];
    double d = cost_[var];
    for (auto [row, coef] : col_[var]) d -= duals_[row] * coef;
    return d;
  }
  [[nodiscard]] double row_activity(int row) const {
    return rhs_[row] - x_[row_var_[row]];
  }
  [[nodiscard]] bool is_basic(int col) const { return pos_[col_var_[col]] >= 0; }
  [[nodiscard]] std::int64_t iterations() const { return iterations_; }

  [[nodiscard]] LpBasis basis() const {
    LpBasis b;
    for (int j = 0; j < num_cols(); ++j) b.columns.push_back(status_[col_var_[j]]);
    for (int i = 0; i < num_rows(); ++i) b.rows.push_back(status_[row_var_[i]]);
    return b;
  }

  void set_basis(const LpBasis& b) {
    if (static_cast<int>(b.columns.size()) != num_cols() ||
        static_cast<int>(b.rows.size()) != num_rows()) {
      throw std::invalid_argument("set_basis: size mismatch");
    }
    std::vector<int> head;
    auto apply = [&](int var, BasisStatus s) {
      status_[var] = s;
      if (s == BasisStatus::basic) {
        head.push_back(var);
      } else {
        pos_[var] = -1;
        place_nonbasic(var, s);
      }
    };
    for (int j = 0; j < num_cols(); ++j) apply(col_var_[j], b.columns[j]);
    for (int i = 0; i < num_rows(); ++i) apply(row_var_[i], b.rows[i]);
    if (static_cast<int>(head.size()) != num_rows()) {
      throw std::invalid_argument("set_basis: basic count differs from row count");
    }
    head_ = std::move(head);
    for (std::size_t p = 0; p < head_.size(); ++p) pos_[head_[p]] = static_cast<int>(p);
    factored_ = false;
    dirty_ = true;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  static constexpr int kRefactorInterval = 200;

  static void check_bounds(double lower, double upper) {
    if (std::isnan(lower) || std::isnan(upper) || lower > upper ||
        lower == kInf || upper == -kInf) {
      throw std::invalid_argument("invalid bounds: lower > upper");
    }
  }

  int new_var(double cost, double lower, double upper) {
    const int var = static_cast<int>(cost_.size());
    cost_.push_back(cost);
    lb_.push_back(lower);
    ub_.push_back(upper);
    col_.emplace_back();
    x_.push_back(0.0);
    pos_.push_back(-1);
    status_.push_back(BasisStatus::at_zero);
    place_nonbasic(var);
    return var;
  }

  void place_nonbasic(int var, BasisStatus hint = BasisStatus::at_zero) {
    const bool lo = std::isfinite(lb_[var]);
    const bool hi = std::isfinite(ub_[var]);
    BasisStatus s;
    if (hint == BasisStatus::at_upper && hi) {
      s = BasisStatus::at_upper;
    } else if (hint == BasisStatus::at_lower && lo) {
      s = BasisStatus::at_lower;
    } else if (lo && hi) {
      s = std::abs(ub_[var]) < std::abs(lb_[var]) ? BasisStatus::at_upper
                                                   : BasisStatus::at_lower;
      if (hint == BasisStatus::at_zero && status_[var] == BasisStatus::at_upper) {
        s = BasisStatus::at_upper;  // keep the side chosen before a bound change
      }
    } else if (lo) {
      s = BasisStatus::at_lower;
    } else if (hi) {
      s = BasisStatus::at_upper;
    } else {
      s = BasisStatus::at_zero;
    }
    status_[var] = s;
    x_[var] = s == BasisStatus::at_lower ? lb_[var]
              : s == BasisStatus::at_upper ? ub_[var]
                                           : 0.0;
  }

  [[nodiscard]] std::size_t m() const { return head_.size(); }

  // Gauss-Jordan inversion of the basis matrix; falls back to the slack
  // basis if it is singular.
  void refactor() {
    const std::size_t n = m();
    std::vector<double> a(n * n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
      for (auto [row, coef] : col_[head_[p]]) a[row * n + p] = coef;
    }
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
    // Row operations turn a into the identity; inv accumulates B^-1 with
    // rows indexed by basis position after the final permutation.
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    bool singular = false;
    for (std::size_t k = 0; k < n && !singular; ++k) {
      std::size_t best = k;
      double best_abs = 0.0;
      for (std::size_t r = k; r < n; ++r) {
        const double v = std::abs(a[r * n + k]);
        if (v > best_abs) {
          best_abs = v;
          best = r;
        }
      }
      if (best_abs < 1e-11) {
        singular = true;
        break;
      }
      if (best != k) {
        for (std::size_t c = 0; c < n; ++c) {
          std::swap(a[k * n + c], a[best * n + c]);
          std::swap(inv[k * n + c], inv[best * n + c]);
        }
      }
      const double piv = a[k * n + k];
      for (std::size_t c = 0; c < n; ++c) {
        a[k * n + c] /= piv;
        inv[k * n + c] /= piv;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == k) continue;
        const double f = a[r * n + k];
        if (f == 0.0) continue;
        for (std::size_t c = 0; c < n; ++c) {
          a[r * n + c] -= f * a[k * n + c];
          inv[r * n + c] -= f * inv[k * n + c];
        }
      }
    }
    if (singular) {
      reset_to_slack_basis();
      return;
    }
    // After elimination row k of inv corresponds to basis position k.
    binv_ = std::move(inv);
    factored_ = true;
    pivots_since_refactor_ = 0;
  }

  void reset_to_slack_basis() {
    for (int var : head_) {
      pos_[var] = -1;
      place_nonbasic(var);
    }
    head_.clear();
    for (int var : row_var_) {
      head_.push_back(var);
      pos_[var] = static_cast<int>(head_.size()) - 1;
      status_[var] = BasisStatus::basic;
    }
    const std::size_t n = m();
    binv_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) binv_[i * n + i] = 1.0;
    factored_ = true;
    pivots_since_refactor_ = 0;
  }

  // x_B = B^-1 (b - N x_N)
  void recompute_basic_values() {
    const std::size_t n = m();
    std::vector<double> r(rhs_.begin(), rhs_.end());
    for (std::size_t var = 0; var < cost_.size(); ++var) {
      if (pos_[var] >= 0 || x_[var] == 0.0) continue;
      for (auto [row, coef] : col_[var]) r[row] -= coef * x_[var];
    }
    for (std::size_t p = 0; p < n; ++p) {
      double v = 0.0;
      const double* bp = &binv_[p * n];
      for (std::size_t i = 0; i < n; ++i) v += bp[i] * r[i];
      x_[head_[p]] = v;
    }
    dirty_ = false;
  }

  std::vector<double> ftran(int var) const {
    const std::size_t n = m();
    std::vector<double> alpha(n, 0.0);
    for (auto [row, coef] : col_[var]) {
      for (std::size_t p = 0; p < n; ++p) alpha[p] += binv_[p * n + row] * coef;
    }
    return alpha;
  }

  std::vector<double> btran(const std::vector<double>& cb) const {
    const std::size_t n = m();
    std::vector<double> y(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
      if (cb[p] == 0.0) continue;
      const double* bp = &binv_[p * n];
      for (std::size_t i = 0; i < n; ++i) y[i] += cb[p] * bp[i];
    }
    return y;
  }

  void pivot(std::size_t p, const std::vector<double>& alpha) {
    const std::size_t n = m();
    double* bp = &binv_[p * n];
    const double inv = 1.0 / alpha[p];
    for (std::size_t i = 0; i < n; ++i) bp[i] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == p || alpha[r] == 0.0) continue;
      double* br = &binv_[r * n];
      const double f = alpha[r];
      for (std::size_t i = 0; i < n; ++i) br[i] -= f * bp[i];
    }
    ++pivots_since_refactor_;
  }

  [[nodiscard]] int infeasibility_sign(int var) const {
    if (x_[var] < lb_[var] - tol_.feasibility) return -1;
    if (x_[var] > ub_[var] + tol_.feasibility) return 1;
    return 0;
  }

  LpStatus run(std::int64_t max_iterations) {
    const std::size_t n = m();
    if (!factored_ || binv_.size() != n * n) refactor();
    recompute_basic_values();
    std::int64_t degenerate_streak = 0;
    bool bland = false;
    const std::int64_t bland_after = 10 * static_cast<std::int64_t>(num_rows() + num_cols());
    for (std::int64_t iter = 0;; ++iter) {
      if (iter >= max_iterations) return finish(LpStatus::iteration_limit, false);
      if (pivots_since_refactor_ >= kRefactorInterval) {
        refactor();
        recompute_basic_values();
      }
      std::vector<double> cb(n, 0.0);
      bool phase1 = false;
      for (std::size_t p = 0; p < n; ++p) {
        const int s = infeasibility_sign(head_[p]);
        if (s != 0) phase1 = true;
        cb[p] = s;
      }
      if (!phase1) {
        for (std::size_t p = 0; p < n; ++p) cb[p] = cost_[head_[p]];
      }
      const std::vector<double> y = btran(cb);

      // pricing
      int enter = -1;
      int direction = 0;
      double best = 0.0;
      double enter_d = 0.0;
      for (std::size_t var = 0; var < cost_.size(); ++var) {
        if (pos_[var] >= 0 || lb_[var] == ub_[var]) continue;
        double d = phase1 ? 0.0 : cost_[var];
        for (auto [row, coef] : col_[var]) d -= y[row] * coef;
        int dir = 0;
        const BasisStatus s = status_[var];
        if (d < -tol_.optimality && s != BasisStatus::at_upper) dir = 1;
        if (d > tol_.optimality && s != BasisStatus::at_lower) dir = -1;
        if (dir == 0) continue;
        if (bland) {
          enter = static_cast<int>(var);
          direction = dir;
          enter_d = d;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          enter = static_cast<int>(var);
          direction = dir;
          enter_d = d;
        }
      }
      if (enter < 0) {
        // Confirm with freshly computed basic values before declaring.
        recompute_basic_values();
        bool still_feasible = true;
        for (std::size_t p = 0; p < n; ++p) {
          if (infeasibility_sign(head_[p]) != 0) still_feasible = false;
        }
        if (phase1) {
          if (still_feasible) continue;
          duals_ = y;
          return finish(LpStatus::infeasible, false);
        }
        if (!still_feasible) continue;
        duals_ = y;
        return finish(LpStatus::optimal, true);
      }

      const std::vector<double> alpha = ftran(enter);
      // rate of change of basic p per unit step: -direction * alpha[p]
      double hard_limit = kInf;
      int leave = -1;  // basis position, or -2 for a bound flip
      bool leave_at_upper = false;
      if (std::isfinite(lb_[enter]) && std::isfinite(ub_[enter])) {
        hard_limit = ub_[enter] - lb_[enter];
        leave = -2;
      }
      // Harris pass 1 over feasible basics (and far bounds of infeasible ones)
      double relaxed = hard_limit;
      for (std::size_t p = 0; p < n; ++p) {
        if (std::abs(alpha[p]) <= tol_.pivot) continue;
        const int var = head_[p];
        const double rate = -direction * alpha[p];
        const int inf = infeasibility_sign(var);
        if (rate < 0 && inf >= 0 && std::isfinite(lb_[var])) {
          const double bound = inf > 0 ? lb_[var] : lb_[var] - tol_.feasibility;
          relaxed = std::min(relaxed, (x_[var] - bound) / -rate);
        } else if (rate > 0 && inf <= 0 && std::isfinite(ub_[var])) {
          const double bound = inf < 0 ? ub_[var] : ub_[var] + tol_.feasibility;
          relaxed = std::min(relaxed, (bound - x_[var]) / rate);
        }
      }
      // Harris pass 2: largest pivot among candidates within the relaxed step
      double step = hard_limit;
      double best_pivot = 0.0;
      for (std::size_t p = 0; p < n; ++p) {
        if (std::abs(alpha[p]) <= tol_.pivot) continue;
        const int var = head_[p];
        const double rate = -direction * alpha[p];
        const int inf = infeasibility_sign(var);
        double lim = kInf;
        bool at_upper = false;
        if (rate < 0 && inf >= 0 && std::isfinite(lb_[var])) {
          lim = (x_[var] - lb_[var]) / -rate;
        } else if (rate > 0 && inf <= 0 && std::isfinite(ub_[var])) {
          lim = (ub_[var] - x_[var]) / rate;
          at_upper = true;
        } else {
          continue;
        }
        if (lim <= relaxed && std::abs(alpha[p]) > best_pivot) {
          best_pivot = std::abs(alpha[p]);
          step = std::max(lim, 0.0);
          leave = static_cast<int>(p);
          leave_at_upper = at_upper;
        }
      }
      if (leave == -2 && hard_limit <= relaxed) step = hard_limit;

      if (phase1) {
        // Breakpoints where an infeasible basic reaches its violated bound.
        struct Breakpoint {
          double t;
          double slope;
          std::size_t p;
          bool upper;
        };
        std::vector<Breakpoint> points;
        for (std::size_t p = 0; p < n; ++p) {
          if (std::abs(alpha[p]) <= tol_.pivot) continue;
          const int var = head_[p];
          const double rate = -direction * alpha[p];
          const int inf = infeasibility_sign(var);
          if (inf < 0 && rate > 0) {
            points.push_back({(lb_[var] - x_[var]) / rate, rate, p, false});
          } else if (inf > 0 && rate < 0) {
            points.push_back({(x_[var] - ub_[var]) / -rate, -rate, p, true});
          }
        }
        std::stable_sort(points.begin(), points.end(),
                         [](const Breakpoint& a, const Breakpoint& b) { return a.t < b.t; });
        double slope = direction * enter_d;
        for (const auto& bp : points) {
          if (bp.t > step) break;
          slope += bp.slope;
          if (slope >= -tol_.optimality) {
            step = std::max(bp.t, 0.0);
            leave = static_cast<int>(bp.p);
            leave_at_upper = bp.upper;
            break;
          }
        }
        if (!std::isfinite(step)) {
          if (points.empty()) return finish(LpStatus::numerical_failure, false);
          const auto& bp = points.back();
          step = bp.t;
          leave = static_cast<int>(bp.p);
          leave_at_upper = bp.upper;
        }
      }

      if (leave == -1 || !std::isfinite(step)) {
        if (phase1) return finish(LpStatus::numerical_failure, false);
        return finish(LpStatus::unbounded, false);
      }

      ++iterations_;
      if (step <= 1e-12) {
        if (++degenerate_streak > bland_after) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }

      x_[enter] += direction * step;
      for (std::size_t p = 0; p < n; ++p) {
        if (alpha[p] != 0.0) x_[head_[p]] -= direction * alpha[p] * step;
      }
      if (leave == -2) {
        status_[enter] = direction > 0 ? BasisStatus::at_upper : BasisStatus::at_lower;
        x_[enter] = direction > 0 ? ub_[enter] : lb_[enter];
        continue;
      }
      const auto p = static_cast<std::size_t>(leave);
      const int out = head_[p];
      pos_[out] = -1;
      status_[out] = leave_at_upper ? BasisStatus::at_upper : BasisStatus::at_lower;
      x_[out] = leave_at_upper ? ub_[out] : lb_[out];
      pivot(p, alpha);
      head_[p] = enter;
      pos_[enter] = static_cast<int>(p);
      status_[enter] = BasisStatus::basic;
    }
  }

  LpStatus finish(LpStatus s, bool optimal) {
    objective_ = 0.0;
    for (std::size_t var = 0; var < cost_.size(); ++var) objective_ += cost_[var] * x_[var];
    if (!optimal && s != LpStatus::infeasible) {
      std::fill(duals_.begin(), duals_.end(), 0.0);
    }
    if (optimal) {
      // snap basic values that drifted within tolerance
      for (int var : head_) {
        if (x_[var] < lb_[var]) x_[var] = lb_[var];
        if (x_[var] > ub_[var]) x_[var] = ub_[var];
      }
      objective_ = 0.0;
      for (std::size_t var = 0; var < cost_.size(); ++var) {
        objective_ += cost_[var] * x_[var];
      }
    }
    return s;
  }

  LpTolerances tol_;
  // per variable (structural columns and row slacks)
  std::vector<double> cost_;
  std::vector<double> lb_;
  std::vector<double> ub_;
  std::vector<std::vector<LpEntry>> col_;
  std::vector<double> x_;
  std::vector<int> pos_;
  std::vector<BasisStatus> status_;
  // per row
  std::vector<double> rhs_;
  std::vector<RowSense> sense_;
  std::vector<int> row_var_;
  std::vector<double> duals_;
  std::vector<int> col_var_;

  std::vector<int> head_;
  std::vector<double> binv_;  // row p holds row p of B^-1
  bool factored_ = true;
  bool dirty_ = true;
  int pivots_since_refactor_ = 0;
  std::int64_t iterations_ = 0;
  LpStatus status_code_ = LpStatus::numerical_failure;
  double objective_ = 0.0;
};

// Plain model description for one-shot solves.
struct LpColumn {
  double objective = 0.0;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

struct LpRow {
  std::vector<LpEntry> entries;  // (column, coefficient)
  RowSense sense = RowSense::le;
  double rhs = 0.0;
};

struct LpModel {
  std::vector<LpColumn> columns;
  std::vector<LpRow> rows;

  int add_column(double objective, double lower, double upper) {
    columns.push_back({objective, lower, upper});
    return static_cast<int>(columns.size()) - 1;
  }
  int add_row(std::vector<LpEntry> entries, RowSense sense, double rhs) {
    rows.push_back({std::move(entries), sense, rhs});
    return static_cast<int>(rows.size()) - 1;
  }
};

struct LpSolution {
  LpStatus status = LpStatus::numerical_failure;
  std::vector<double> primal;
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  double objective = 0.0;
  LpBasis basis;
};

inline LinearProgram load_model(const LpModel& model, LpTolerances tol = {}) {
  LinearProgram lp(tol);
  for (const auto& c : model.columns) lp.add_column(c.objective, c.lower, c.upper);
  for (const auto& r : model.rows) lp.add_row(r.sense, r.rhs, r.entries);
  return lp;
}

inline LpSolution lp_solve(const LpModel& model, const LpBasis* warm = nullptr,
                           LpTolerances tol = {}) {
  LinearProgram lp = load_model(model, tol);
  if (warm) lp.set_basis(*warm);
  LpSolution sol;
  sol.status = lp.solve();
  sol.objective = lp.objective();
  sol.primal = lp.primal();
  sol.duals = lp.duals();
  for (int j = 0; j < lp.num_cols(); ++j) sol.reduced_costs.push_back(lp.reduced_cost(j));
  sol.basis = lp.basis();
  return sol;
}

}  // namespace refuel

#endif  // REFUEL_LP_HPP_
