#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "qpricing/error.hpp"

namespace qpricing {

/// Feasibility/optimality tolerance of the simplex solver.
inline constexpr double kLpTol = 1e-9;

struct LpConstraint {
  std::vector<double> coeffs;  // coeffs . x <= bound
  double bound = 0.0;
};

/// maximize objective . x  subject to  constraints, x >= 0, and optional
/// per-variable upper bounds (empty vector or +inf entries mean none).
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LpConstraint> constraints;
  std::vector<double> upper_bounds;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective_value = 0.0;
};

/// Thrown when lazy separation exceeds its cut budget; carries the last LP
/// solution seen.
class SeparationError : public ContractError {
 public:
  SeparationError(const std::string& what, LpSolution last_)
      : ContractError(what), last(std::move(last_)) {}
  LpSolution last;
};

namespace detail {

// Dense two-phase tableau simplex, Bland's rule for anti-cycling.
// Column layout: [0, n) structural, [n, n+m) slacks, [n+m, ...) artificials.
class Simplex {
 public:
  Simplex(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
          const std::vector<double>& c)
      : n_(static_cast<int>(c.size())), m_(static_cast<int>(b.size())), c_(c) {
    std::vector<int> art_rows;
    for (int i = 0; i < m_; ++i)
      if (b[static_cast<size_t>(i)] < 0.0) art_rows.push_back(i);
    num_art_ = static_cast<int>(art_rows.size());
    cols_ = n_ + m_ + num_art_;
    tableau_.assign(static_cast<size_t>(m_), std::vector<double>(static_cast<size_t>(cols_) + 1, 0.0));
    basis_.assign(static_cast<size_t>(m_), -1);
    active_.assign(static_cast<size_t>(m_), true);
    int art = 0;
    for (int i = 0; i < m_; ++i) {
      auto& row = tableau_[static_cast<size_t>(i)];
      double sign = b[static_cast<size_t>(i)] < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < n_; ++j) row[static_cast<size_t>(j)] = sign * A[static_cast<size_t>(i)][static_cast<size_t>(j)];
      row[static_cast<size_t>(n_ + i)] = sign;
      row[static_cast<size_t>(cols_)] = sign * b[static_cast<size_t>(i)];
      if (sign < 0.0) {
        int col = n_ + m_ + art++;
        row[static_cast<size_t>(col)] = 1.0;
        basis_[static_cast<size_t>(i)] = col;
      } else {
        basis_[static_cast<size_t>(i)] = n_ + i;
      }
    }
  }

  LpSolution run() {
    if (num_art_ > 0) {
      // Phase 1: maximize -(sum of artificials).
      std::vector<double> obj(static_cast<size_t>(cols_) + 1, 0.0);
      for (int i = 0; i < m_; ++i) {
        if (basis_[static_cast<size_t>(i)] < n_ + m_) continue;
        const auto& row = tableau_[static_cast<size_t>(i)];
        for (int j = 0; j <= cols_; ++j) obj[static_cast<size_t>(j)] += row[static_cast<size_t>(j)];
      }
      for (int j = n_ + m_; j < cols_; ++j) obj[static_cast<size_t>(j)] -= 1.0;
      if (!optimize(obj, cols_)) throw ContractError("simplex: phase 1 unbounded");
      if (obj[static_cast<size_t>(cols_)] > kLpTol) return {LpStatus::Infeasible, {}, 0.0};
      evict_artificials();
    }
    std::vector<double> obj(static_cast<size_t>(cols_) + 1, 0.0);
    for (int j = 0; j < n_; ++j) obj[static_cast<size_t>(j)] = c_[static_cast<size_t>(j)];
    // Express the objective over the current basis.
    for (int i = 0; i < m_; ++i) {
      if (!active_[static_cast<size_t>(i)]) continue;
      double factor = basis_[static_cast<size_t>(i)] < n_ ? obj[static_cast<size_t>(basis_[static_cast<size_t>(i)])] : 0.0;
      if (factor == 0.0) continue;
      const auto& row = tableau_[static_cast<size_t>(i)];
      for (int j = 0; j <= cols_; ++j) obj[static_cast<size_t>(j)] -= factor * row[static_cast<size_t>(j)];
    }
    if (!optimize(obj, n_ + m_)) return {LpStatus::Unbounded, {}, 0.0};
    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.x.assign(static_cast<size_t>(n_), 0.0);
    for (int i = 0; i < m_; ++i) {
      if (!active_[static_cast<size_t>(i)]) continue;
      int col = basis_[static_cast<size_t>(i)];
      if (col < n_) sol.x[static_cast<size_t>(col)] = std::max(0.0, tableau_[static_cast<size_t>(i)][static_cast<size_t>(cols_)]);
    }
    for (int j = 0; j < n_; ++j) sol.objective_value += c_[static_cast<size_t>(j)] * sol.x[static_cast<size_t>(j)];
    return sol;
  }

 private:
  // Bland pivoting on `obj` (a reduced-cost row updated in place), entering
  // columns restricted to [0, allowed_cols). Returns false on unbounded.
  bool optimize(std::vector<double>& obj, int allowed_cols) {
    const long long cap = 50000 + 200LL * (m_ + cols_);
    for (long long iter = 0; iter < cap; ++iter) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (obj[static_cast<size_t>(j)] > kLpTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (!active_[static_cast<size_t>(i)]) continue;
        double a = tableau_[static_cast<size_t>(i)][static_cast<size_t>(enter)];
        if (a <= kLpTol) continue;
        double ratio = tableau_[static_cast<size_t>(i)][static_cast<size_t>(cols_)] / a;
        if (leave < 0 || ratio < best_ratio - kLpTol ||
            (ratio < best_ratio + kLpTol && basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter, obj);
    }
    throw ContractError("simplex failed to converge within the iteration cap");
  }

  void pivot(int row, int col, std::vector<double>& obj) {
    auto& r = tableau_[static_cast<size_t>(row)];
    double inv = 1.0 / r[static_cast<size_t>(col)];
    for (int j = 0; j <= cols_; ++j) r[static_cast<size_t>(j)] *= inv;
    r[static_cast<size_t>(col)] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == row || !active_[static_cast<size_t>(i)]) continue;
      eliminate(tableau_[static_cast<size_t>(i)], r, col);
    }
    eliminate(obj, r, col);
    basis_[static_cast<size_t>(row)] = col;
  }

  void eliminate(std::vector<double>& target, const std::vector<double>& pivot_row, int col) {
    double factor = target[static_cast<size_t>(col)];
    if (factor == 0.0) return;
    for (int j = 0; j <= cols_; ++j) target[static_cast<size_t>(j)] -= factor * pivot_row[static_cast<size_t>(j)];
    target[static_cast<size_t>(col)] = 0.0;
  }

  // After phase 1, pivot basic artificials onto non-artificial columns;
  // rows where that is impossible are redundant and get deactivated.
  void evict_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<size_t>(i)] < n_ + m_) continue;
      const auto& row = tableau_[static_cast<size_t>(i)];
      int col = -1;
      for (int j = 0; j < n_ + m_; ++j) {
        if (std::fabs(row[static_cast<size_t>(j)]) > kLpTol) {
          col = j;
          break;
        }
      }
      if (col < 0) {
        active_[static_cast<size_t>(i)] = false;
        continue;
      }
      std::vector<double> dummy(static_cast<size_t>(cols_) + 1, 0.0);
      pivot(i, col, dummy);
    }
  }

  int n_;
  int m_;
  int num_art_ = 0;
  int cols_ = 0;
  std::vector<double> c_;
  std::vector<std::vector<double>> tableau_;
  std::vector<int> basis_;
  std::vector<bool> active_;
};

inline void check_program(const LinearProgram& lp) {
  if (lp.num_vars < 0) throw ValidationError("LP has negative variable count");
  if (static_cast<int>(lp.objective.size()) != lp.num_vars)
    throw ValidationError("LP objective length does not match num_vars");
  for (const LpConstraint& c : lp.constraints) {
    if (static_cast<int>(c.coeffs.size()) != lp.num_vars)
      throw ValidationError("LP constraint length does not match num_vars");
    if (!std::isfinite(c.bound)) throw ValidationError("LP constraint bound must be finite");
  }
  if (!lp.upper_bounds.empty() && static_cast<int>(lp.upper_bounds.size()) != lp.num_vars)
    throw ValidationError("LP upper bound length does not match num_vars");
}

}  // namespace detail

/// Deterministic optimum of a small dense LP.
inline LpSolution solve(const LinearProgram& lp) {
  detail::check_program(lp);
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  A.reserve(lp.constraints.size() + lp.upper_bounds.size());
  for (const LpConstraint& c : lp.constraints) {
    A.push_back(c.coeffs);
    b.push_back(c.bound);
  }
  for (int j = 0; j < static_cast<int>(lp.upper_bounds.size()); ++j) {
    double u = lp.upper_bounds[static_cast<size_t>(j)];
    if (!std::isfinite(u)) continue;
    std::vector<double> row(static_cast<size_t>(lp.num_vars), 0.0);
    row[static_cast<size_t>(j)] = 1.0;
    A.push_back(std::move(row));
    b.push_back(u);
  }
  detail::Simplex simplex(A, b, lp.objective);
  return simplex.run();
}

using SeparationOracle = std::function<std::optional<LpConstraint>(const std::vector<double>&)>;

/// Cutting-plane driver: solve, ask the oracle for a violated constraint,
/// add it, repeat. Returns once the oracle reports none. Throws
/// SeparationError after max_cuts generated constraints.
inline LpSolution solve_lazy(LinearProgram lp, const SeparationOracle& separate, int max_cuts) {
  detail::check_program(lp);
  int cuts = 0;
  for (;;) {
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal) return sol;
    std::optional<LpConstraint> violated = separate(sol.x);
    if (!violated) return sol;
    if (cuts >= max_cuts)
      throw SeparationError("non-convergent separation: cut budget of " +
                                std::to_string(max_cuts) + " exceeded",
                            std::move(sol));
    lp.constraints.push_back(std::move(*violated));
    ++cuts;
  }
}

}  // namespace qpricing
