// Copyright 2026 The opalg Authors
//
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

#include "opalg/lp.hpp"

#include <limits>

#include "opalg/error.hpp"

namespace opalg::lp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Tableau {
 public:
  // rows_[i] has `cols_ + 1` entries, the last being the right-hand side.
  // cost_ holds reduced costs with the negated objective value at cols_.
  Tableau(QMat rows, std::vector<std::size_t> basis, std::size_t cols)
      : rows_(std::move(rows)), basis_(std::move(basis)), cols_(cols) {}

  void set_cost(const QVec& c) {
    cost_ = zeros(cols_ + 1);
    for (std::size_t j = 0; j < cols_; ++j) cost_[j] = c[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) cost_[j] -= cb * rows_[i][j];
    }
  }

  // Returns false when the objective is unbounded below. Columns whose
  // `allowed` flag is false never enter the basis.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed[j] && cost_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rational ratio = rows_[i][cols_] / rows_[i][enter];
        if (leave == kNone || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / rows_[r][c];
    for (auto& x : rows_[r]) x *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      Rational f = rows_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j) rows_[i][j] -= f * rows_[r][j];
    }
    if (cost_[c] != 0) {
      Rational f = cost_[c];
      for (std::size_t j = 0; j <= cols_; ++j) cost_[j] -= f * rows_[r][j];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  QMat& rows() { return rows_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const QVec& cost() const { return cost_; }
  std::size_t cols() const { return cols_; }

  QVec primal(std::size_t n) const {
    QVec x = zeros(n);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < n) x[basis_[i]] = rows_[i][cols_];
    }
    return x;
  }

 private:
  QMat rows_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
  QVec cost_;
};

Result solve(const QMat& a, const QVec& b, const std::optional<QVec>& c) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? (c ? c->size() : 0) : a[0].size();
  if (b.size() != m) throw Error(ErrorCode::DimensionMismatch, "lp: rhs length");
  for (const auto& row : a) {
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "lp: ragged matrix");
  }
  if (c && c->size() != n) throw Error(ErrorCode::DimensionMismatch, "lp: cost length");

  // Phase 1: artificial variable per row, rows sign-normalized so b >= 0.
  std::vector<int> sign(m, 1);
  QMat rows(m, zeros(n + m + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    sign[i] = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = sign[i] * a[i][j];
    rows[i][n + i] = 1;
    rows[i][n + m] = sign[i] * b[i];
    basis[i] = n + i;
  }
  Tableau t(std::move(rows), std::move(basis), n + m);
  QVec phase1 = zeros(n + m);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;
  t.set_cost(phase1);
  t.optimize(std::vector<bool>(n + m, true));

  Result result;
  Rational infeasibility = -t.cost()[n + m];
  if (infeasibility > 0) {
    result.status = Status::Infeasible;
    result.farkas = zeros(m);
    for (std::size_t i = 0; i < m; ++i) {
      Rational y = 1 - t.cost()[n + i];
      result.farkas[i] = -sign[i] * y;
    }
    return result;
  }

  // Drive remaining artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < t.rows().size();) {
    if (t.basis()[i] < n) {
      ++i;
      continue;
    }
    std::size_t col = kNone;
    for (std::size_t j = 0; j < n; ++j) {
      if (t.rows()[i][j] != 0) {
        col = j;
        break;
      }
    }
    if (col == kNone) {
      t.drop_row(i);
    } else {
      t.pivot(i, col);
      ++i;
    }
  }

  std::vector<bool> allowed(n + m, false);
  for (std::size_t j = 0; j < n; ++j) allowed[j] = true;
  QVec cost = zeros(n + m);
  if (c) {
    for (std::size_t j = 0; j < n; ++j) cost[j] = (*c)[j];
  }
  t.set_cost(cost);
  if (!t.optimize(allowed)) {
    result.status = Status::Unbounded;
    return result;
  }
  result.status = Status::Optimal;
  result.x = t.primal(n);
  result.value = -t.cost()[n + m];
  return result;
}

}  // namespace

Result minimize(const QMat& a, const QVec& b, const QVec& c) { return solve(a, b, c); }

Result feasible(const QMat& a, const QVec& b) { return solve(a, b, std::nullopt); }

}  // namespace opalg::lp
