// Copyright 2026 The kbeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact feasibility of linear systems over the rationals.
//
// Phase one of the primal simplex method on a dense tableau, with Bland's
// smallest-index rule so that no basis repeats. All arithmetic is Rational,
// so a reported witness satisfies every constraint with no tolerance.

#ifndef KBEQ_LP_HPP
#define KBEQ_LP_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kbeq/rational.hpp"

namespace kbeq {

enum class Relation { kLessEq, kEq, kGreaterEq };

struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::kLessEq;
  Rational bound;
};

class LinearSystem {
 public:
  explicit LinearSystem(std::size_t vars, bool nonnegative = true)
      : vars_(vars), nonneg_(vars, nonnegative) {}

  std::size_t num_vars() const { return vars_; }
  const std::vector<LinearConstraint>& constraints() const { return rows_; }
  bool nonnegative(std::size_t j) const { return nonneg_[j]; }
  void set_nonnegative(std::size_t j, bool flag) { nonneg_.at(j) = flag; }

  void add(std::vector<Rational> coeffs, Relation rel, Rational bound) {
    if (coeffs.size() != vars_)
      throw std::invalid_argument("constraint length does not match variable count");
    rows_.push_back({std::move(coeffs), rel, std::move(bound)});
  }

  /// Exact check of a candidate point against every constraint and sign flag.
  bool satisfied_by(const std::vector<Rational>& x) const {
    if (x.size() != vars_) return false;
    for (std::size_t j = 0; j < vars_; ++j)
      if (nonneg_[j] && x[j].sign() < 0) return false;
    for (const auto& row : rows_) {
      Rational lhs;
      for (std::size_t j = 0; j < vars_; ++j)
        if (!row.coeffs[j].is_zero()) lhs += row.coeffs[j] * x[j];
      switch (row.rel) {
        case Relation::kLessEq: if (lhs > row.bound) return false; break;
        case Relation::kEq: if (lhs != row.bound) return false; break;
        case Relation::kGreaterEq: if (lhs < row.bound) return false; break;
      }
    }
    return true;
  }

 private:
  std::size_t vars_;
  std::vector<bool> nonneg_;
  std::vector<LinearConstraint> rows_;
};

/// A point satisfying `sys` exactly, or nullopt when the system is infeasible.
inline std::optional<std::vector<Rational>> lp_feasible(const LinearSystem& sys) {
  const std::size_t n = sys.num_vars();
  const auto& rows = sys.constraints();
  const std::size_t m = rows.size();

  // Column layout: one column per nonnegative variable, two (x+ and x-) per
  // free variable, then one slack/surplus per inequality, then artificials.
  std::vector<std::size_t> plus(n), minus(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    plus[j] = cols++;
    if (!sys.nonnegative(j)) minus[j] = cols++;
  }
  std::vector<std::size_t> slack(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (rows[i].rel != Relation::kEq) slack[i] = cols++;

  // Flip rows so every right-hand side is nonnegative.
  std::vector<int> flip(m, 1);
  std::vector<Relation> rel(m);
  for (std::size_t i = 0; i < m; ++i) {
    rel[i] = rows[i].rel;
    if (rows[i].bound.sign() < 0) {
      flip[i] = -1;
      if (rel[i] == Relation::kLessEq) rel[i] = Relation::kGreaterEq;
      else if (rel[i] == Relation::kGreaterEq) rel[i] = Relation::kLessEq;
    }
  }
  std::vector<std::size_t> art(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (rel[i] != Relation::kLessEq) art[i] = cols++;

  // Tableau rows 0..m-1 are constraints, last column is the rhs.
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational f(flip[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = rows[i].coeffs[j];
      if (a.is_zero()) continue;
      t[i][plus[j]] = a * f;
      if (minus[j] != SIZE_MAX) t[i][minus[j]] = -(a * f);
    }
    if (slack[i] != SIZE_MAX)
      t[i][slack[i]] = Rational(rel[i] == Relation::kLessEq ? 1 : -1);
    if (art[i] != SIZE_MAX) {
      t[i][art[i]] = Rational(1);
      basis[i] = art[i];
    } else {
      basis[i] = slack[i];
    }
    t[i][cols] = rows[i].bound * f;
  }

  // Reduced costs for minimizing the sum of artificials.
  std::vector<bool> is_art(cols, false);
  for (std::size_t i = 0; i < m; ++i)
    if (art[i] != SIZE_MAX) is_art[art[i]] = true;
  std::vector<Rational> cost(cols + 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (art[i] == SIZE_MAX) continue;
    for (std::size_t j = 0; j <= cols; ++j)
      if (!is_art[j]) cost[j] -= t[i][j];
  }

  for (;;) {
    std::size_t enter = SIZE_MAX;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cost[j].sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter == SIZE_MAX) break;
    std::size_t leave = SIZE_MAX;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == SIZE_MAX || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase one is bounded below by zero, so an entering column always has a
    // positive pivot candidate.
    if (leave == SIZE_MAX) throw std::logic_error("lp_feasible: unbounded phase one");

    Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (!t[leave][j].is_zero()) t[i][j] -= f * t[leave][j];
    }
    if (!cost[enter].is_zero()) {
      Rational f = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (!t[leave][j].is_zero()) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  // cost[cols] holds minus the phase-one objective.
  if (!cost[cols].is_zero()) return std::nullopt;

  std::vector<Rational> col_value(cols);
  for (std::size_t i = 0; i < m; ++i) col_value[basis[i]] = t[i][cols];
  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = col_value[plus[j]];
    if (minus[j] != SIZE_MAX) x[j] -= col_value[minus[j]];
  }
  if (!sys.satisfied_by(x)) throw std::logic_error("lp_feasible: witness check failed");
  return x;
}

}  // namespace kbeq

#endif  // KBEQ_LP_HPP
