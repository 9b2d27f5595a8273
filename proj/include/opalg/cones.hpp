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

// Polyhedral convex cones over the rationals. Cones are given by generators
// (V-representation); the dual cone is computed exactly by the double
// description method. A linear effect algebra is the order interval [0, u]
// of such a cone, and its full state set is the slice {f in K* : f(u) = 1}.

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "opalg/error.hpp"
#include "opalg/rational.hpp"

namespace opalg {

inline constexpr std::size_t kExactDimCap = 8;
inline constexpr std::size_t kGeneratorCap = 64;
inline constexpr std::size_t kAmbientDimCap = 16;

class PolyCone {
 public:
  /// Generators are rescaled to primitive integer vectors; zero vectors and
  /// duplicate rays are dropped. First occurrence order is kept.
  PolyCone(std::size_t ambient_dim, const std::vector<QVec>& generators);

  std::size_t dim() const { return dim_; }
  const std::vector<QVec>& generators() const { return gens_; }

  static PolyCone orthant(std::size_t dim);

 private:
  std::size_t dim_;
  std::vector<QVec> gens_;
};

struct Regularity {
  bool convex = true;  // structural for V-represented cones
  bool closed = true;  // structural for finitely generated cones
  bool generating = false;
  bool pointed = false;
  /// Nonzero x with x and -x in the cone, when not pointed.
  std::optional<QVec> line_witness;
};

Regularity check_regularity(const PolyCone& c);

struct Membership {
  bool member = false;
  /// Nonnegative coefficients over the generators when a member.
  QVec coefficients;
  /// h with <h, g> >= 0 for all generators g and <h, x> < 0 otherwise.
  QVec certificate;
};

Membership membership(const PolyCone& c, const QVec& x);

/// y in K* iff <g, y> >= 0 for every generator g. Any dimension.
bool in_dual(const PolyCone& c, const QVec& y);

/// Result of the double description method for {y : A y >= 0}.
struct ExtremeRays {
  std::vector<QVec> lineality;  // basis of the largest contained subspace
  std::vector<QVec> rays;       // extreme rays of the pointed part, sorted
};

/// Exact double description; rows of `a` are the constraint normals.
ExtremeRays extreme_rays(const QMat& a, std::size_t dim);

/// Generators of the dual cone (extreme rays plus +/- a lineality basis).
/// Throws DimensionCap beyond kExactDimCap or kGeneratorCap.
PolyCone dual_cone(const PolyCone& c);

/// Setwise equality by mutual generator membership.
bool cones_equal(const PolyCone& a, const PolyCone& b);

bool is_self_dual(const PolyCone& c);

/// The interval [0, u] of a cone.
class LinearEffectAlgebra {
 public:
  /// Throws NotAnEffect when u is not in the cone or is zero.
  LinearEffectAlgebra(PolyCone cone, QVec unit);

  const PolyCone& cone() const { return cone_; }
  const QVec& unit() const { return unit_; }

  /// 0 <= x <= u in the cone order.
  bool contains(const QVec& x) const;

 private:
  PolyCone cone_;
  QVec unit_;
};

/// y - x in the cone.
bool cone_leq(const PolyCone& c, const QVec& x, const QVec& y);

struct StatePolytope {
  std::vector<QVec> vertices;  // sorted lexicographically
  QVec unit;
};

/// Vertices of K* sliced at f(u) = 1. Throws UnboundedSlice when some dual
/// direction vanishes on u (u not interior).
StatePolytope state_polytope(const LinearEffectAlgebra& lea);

/// e1 <= e2 iff every state gives e1 at most the value it gives e2.
bool probabilistic_leq(const std::vector<QVec>& states, const QVec& e1, const QVec& e2);

inline constexpr std::size_t kFaceVertexCap = 12;
inline constexpr std::size_t kFaceDimCap = 6;

struct FaceLattice {
  std::vector<QVec> vertices;
  /// Faces as vertex bitmasks, ordered by size then mask value.
  std::vector<std::uint32_t> faces;

  bool is_face(std::uint32_t mask) const;
  /// Pairs (i, j) of face indices with faces[i] covered by faces[j].
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  /// Vertex indices forming singleton faces.
  std::vector<std::size_t> extreme_points() const;
};

/// Exposed faces of conv(vertices), found by an exact supporting-hyperplane
/// feasibility problem per vertex subset. Throws SizeCapExceeded.
FaceLattice face_lattice(const std::vector<QVec>& vertices);
FaceLattice face_lattice_serial(const std::vector<QVec>& vertices);

/// A bounded instance of the convex-axiom model for [0, u].
struct LinearIntervalModel {
  using Element = QVec;
  const LinearEffectAlgebra& lea;

  std::optional<QVec> oplus(const QVec& a, const QVec& b) const;
  std::optional<QVec> scale(const Rational& s, const QVec& a) const;
  bool equal(const QVec& a, const QVec& b) const { return a == b; }
};

inline double as_double(double v) { return v; }
inline double as_double(const Rational& q) { return q.get_d(); }

struct Reciprocity {
  bool holds = true;
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

/// Checks chi_i(e_j) == chi_j(e_i) for all pairs, where tests[i] is the test
/// assigned to states[i] and pairing(state, effect) evaluates a state.
template <class State, class Test, class Pairing>
Reciprocity reciprocity_check(const std::vector<State>& states, const std::vector<Test>& tests,
                              Pairing&& pairing, double tol) {
  if (states.size() != tests.size()) {
    throw Error(ErrorCode::LengthMismatch, "states and tests differ in length");
  }
  Reciprocity r;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      const double a = as_double(pairing(states[i], tests[j]));
      const double b = as_double(pairing(states[j], tests[i]));
      if (std::abs(a - b) > tol) {
        r.holds = false;
        r.violation = std::make_pair(i, j);
        return r;
      }
    }
  return r;
}

}  // namespace opalg
