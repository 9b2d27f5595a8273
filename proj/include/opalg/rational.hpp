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

// Exact rational scalars and dense rational linear algebra.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace opalg {

using Rational = mpq_class;
using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;  // row-major

/// Parses "p/q", "p", or "-p/q". The result is canonicalized; throws
/// Error(ParseError) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

QVec zeros(std::size_t n);
QVec unit_vector(std::size_t n, std::size_t i);
Rational dot(const QVec& a, const QVec& b);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const Rational& s, const QVec& a);
bool is_zero(const QVec& a);

/// Positive rescaling to the unique primitive integer vector on the same ray.
QVec primitive(const QVec& a);

QMat transpose(const QMat& m);
QVec mat_vec(const QMat& m, const QVec& x);

std::size_t rank(QMat m);

/// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
QMat nullspace(const QMat& m, std::size_t cols);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& m);

/// Solves m x = b exactly if m is square and invertible.
bool solve_square(QMat m, QVec b, QVec& x);

}  // namespace opalg
