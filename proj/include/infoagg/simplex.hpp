// Copyright 2026 The infoagg Authors
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

#ifndef INFOAGG_SIMPLEX_H_
#define INFOAGG_SIMPLEX_H_

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "infoagg/rational.hpp"

namespace infoagg {

// maximize c.x  subject to  A x <= b, x >= 0, over exact rationals.
struct LpResult {
  bool feasible = false;
  bool bounded = false;
  std::vector<Rational> x;  // a deterministic optimal vertex when solved
  Rational value;
};

namespace internal {

// Dense two-phase tableau simplex. Bland's rule everywhere (lowest eligible
// column enters, ratio ties broken by lowest basic variable), which makes the
// run deterministic and cycle-free on degenerate bases.
class SimplexTableau {
 public:
  SimplexTableau(const std::vector<std::vector<Rational>>& a,
                 const std::vector<Rational>& b, const std::vector<Rational>& c)
      : num_x_(c.size()), num_rows_(a.size()) {
    for (std::size_t r = 0; r < num_rows_; ++r)
      if (a[r].size() != num_x_) throw std::logic_error("lp: ragged matrix");
    if (b.size() != num_rows_) throw std::logic_error("lp: rhs length");

    // Columns: x (num_x_), one slack per row, one artificial per negative-rhs
    // row. Rows with b < 0 are negated so every starting rhs is nonnegative.
    std::size_t artificial = 0;
    for (const auto& v : b)
      if (v < 0) ++artificial;
    num_cols_ = num_x_ + num_rows_ + artificial;
    rows_.assign(num_rows_, std::vector<Rational>(num_cols_ + 1, Rational(0)));
    basis_.assign(num_rows_, 0);

    std::size_t next_artificial = num_x_ + num_rows_;
    for (std::size_t r = 0; r < num_rows_; ++r) {
      const bool flip = b[r] < 0;
      for (std::size_t j = 0; j < num_x_; ++j)
        rows_[r][j] = flip ? -a[r][j] : a[r][j];
      rows_[r][num_x_ + r] = flip ? Rational(-1) : Rational(1);
      rows_[r][num_cols_] = flip ? -b[r] : b[r];
      if (flip) {
        rows_[r][next_artificial] = 1;
        basis_[r] = static_cast<long long>(next_artificial++);
        artificials_.push_back(r);
      } else {
        basis_[r] = static_cast<long long>(num_x_ + r);
      }
    }
    first_artificial_ = num_x_ + num_rows_;
  }

  // Returns false when the constraints are infeasible.
  bool phase_one() {
    if (artificials_.empty()) return true;
    // Objective: maximize -(sum of artificials), expressed over the nonbasic
    // columns of the artificial rows.
    obj_.assign(num_cols_, Rational(0));
    obj_const_ = 0;
    for (std::size_t r : artificials_) {
      for (std::size_t j = 0; j < num_cols_; ++j) obj_[j] += rows_[r][j];
      obj_const_ -= rows_[r][num_cols_];
    }
    for (std::size_t j = first_artificial_; j < num_cols_; ++j) obj_[j] = 0;
    run(/*allow_artificial_entering=*/false);
    if (obj_const_ != 0) return false;

    // Pivot lingering zero-valued artificials out of the basis; an all-zero
    // row is redundant and can stay (its artificial never re-enters).
    for (std::size_t r = 0; r < num_rows_; ++r) {
      if (static_cast<std::size_t>(basis_[r]) < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (rows_[r][j] != 0) {
          pivot(r, j);
          break;
        }
      }
    }
    return true;
  }

  // Phase two for the real objective; returns false when unbounded.
  bool phase_two(const std::vector<Rational>& c) {
    obj_.assign(num_cols_, Rational(0));
    obj_const_ = 0;
    for (std::size_t j = 0; j < num_x_; ++j) obj_[j] = c[j];
    for (std::size_t r = 0; r < num_rows_; ++r) {
      const std::size_t bj = static_cast<std::size_t>(basis_[r]);
      if (obj_[bj] == 0) continue;
      const Rational coef = obj_[bj];
      for (std::size_t j = 0; j < num_cols_; ++j) obj_[j] -= coef * rows_[r][j];
      obj_const_ += coef * rows_[r][num_cols_];
      obj_[bj] = 0;
    }
    return run(/*allow_artificial_entering=*/false);
  }

  Rational objective_value() const { return obj_const_; }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(num_x_, Rational(0));
    for (std::size_t r = 0; r < num_rows_; ++r) {
      const std::size_t bj = static_cast<std::size_t>(basis_[r]);
      if (bj < num_x_) x[bj] = rows_[r][num_cols_];
    }
    return x;
  }

 private:
  bool run(bool allow_artificial_entering) {
    const std::size_t col_limit =
        allow_artificial_entering ? num_cols_ : first_artificial_;
    for (;;) {
      std::size_t entering = num_cols_;
      for (std::size_t j = 0; j < col_limit; ++j) {
        if (obj_[j] > 0) {
          entering = j;
          break;
        }
      }
      if (entering == num_cols_) return true;  // optimal

      std::size_t leaving = num_rows_;
      Rational best_ratio;
      for (std::size_t r = 0; r < num_rows_; ++r) {
        if (rows_[r][entering] <= 0) continue;
        Rational ratio = rows_[r][num_cols_] / rows_[r][entering];
        if (leaving == num_rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (leaving == num_rows_) return false;  // unbounded direction
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = rows_[row][col];
    for (auto& v : rows_[row]) v /= inv;
    for (std::size_t r = 0; r < num_rows_; ++r) {
      if (r == row || rows_[r][col] == 0) continue;
      const Rational factor = rows_[r][col];
      for (std::size_t j = 0; j <= num_cols_; ++j)
        rows_[r][j] -= factor * rows_[row][j];
    }
    if (obj_[col] != 0) {
      const Rational factor = obj_[col];
      for (std::size_t j = 0; j < num_cols_; ++j)
        obj_[j] -= factor * rows_[row][j];
      obj_const_ += factor * rows_[row][num_cols_];
    }
    basis_[row] = static_cast<long long>(col);
  }

  std::size_t num_x_;
  std::size_t num_rows_;
  std::size_t num_cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<long long> basis_;
  std::vector<std::size_t> artificials_;
  std::vector<Rational> obj_;
  Rational obj_const_;
};

}  // namespace internal

inline LpResult solve_lp_max(const std::vector<std::vector<Rational>>& a,
                             const std::vector<Rational>& b,
                             const std::vector<Rational>& c) {
  internal::SimplexTableau tableau(a, b, c);
  LpResult res;
  if (!tableau.phase_one()) return res;  // infeasible
  res.feasible = true;
  if (!tableau.phase_two(c)) return res;  // unbounded
  res.bounded = true;
  res.value = tableau.objective_value();
  res.x = tableau.solution();
  return res;
}

}  // namespace infoagg

#endif  // INFOAGG_SIMPLEX_H_
