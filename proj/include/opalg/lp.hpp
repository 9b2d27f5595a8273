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

#pragma once

// Exact rational linear programming in standard form
//   minimize c^T x  subject to  A x = b, x >= 0
// by the two-phase tableau simplex method with Bland's anti-cycling rule.

#include <optional>

#include "opalg/rational.hpp"

namespace opalg::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  QVec x;          // primal solution when Optimal
  Rational value;  // objective value when Optimal
  /// When Infeasible: y with y^T A >= 0 componentwise and y^T b < 0.
  QVec farkas;
};

Result minimize(const QMat& a, const QVec& b, const QVec& c);

/// Feasibility of {A x = b, x >= 0}; on failure `farkas` is populated.
Result feasible(const QMat& a, const QVec& b);

}  // namespace opalg::lp
