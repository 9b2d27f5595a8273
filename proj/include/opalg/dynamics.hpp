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

// State-side (Schrodinger) and effect-side (Heisenberg) dynamics on an
// effect-algebra theory, purity preservation under reversible maps, and
// distinguishability over a finite measurement family.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "opalg/composites.hpp"

namespace opalg {

/// A linear map on states. Rational carriers act by `matrix` on state
/// coordinate columns; quantum carriers by a CP map on density matrices.
struct AffineStateMap {
  QMat matrix;
  std::optional<CPMap> channel;

  static AffineStateMap rational(QMat m) { return AffineStateMap{std::move(m), std::nullopt}; }
  static AffineStateMap quantum(CPMap c) { return AffineStateMap{{}, std::move(c)}; }
  bool is_quantum() const { return channel.has_value(); }
};

/// The effect-side map gamma with (sigma omega)(a) = omega(gamma a).
struct EAEndomorphism {
  QMat matrix;                     // rational carriers: transpose of sigma
  std::vector<CMat> adjoint_kraus;  // quantum carriers: K_i^dag
  std::size_t dim = 0;

  QVec apply(const QVec& a) const { return mat_vec(matrix, a); }
  CMat apply(const CMat& e) const;
  HermOp apply(const HermOp& e) const;
};

struct SchrodingerReport {
  bool pass = true;
  std::size_t generators_checked = 0;
  std::size_t affinity_checked = 0;
  /// Index of the escaping generator (rational) or sample (quantum).
  std::optional<std::size_t> witness_index;
  /// Image of that generator, which lies outside the state set.
  std::optional<QVec> witness_rational;
  std::optional<HermOp> witness_quantum;
  std::string note;
};

/// State-set preservation on the generators of the theory's state set (the
/// listed vertices for rational carriers, listed plus sampled pure states for
/// quantum carriers) and affinity on seeded convex pairs.
SchrodingerReport check_schrodinger(const AffineStateMap& sigma, const EATheory& theory,
                                    std::size_t trials = 20, double tol = kTol);
/// Throws StateEscapesSet when check_schrodinger fails.
SchrodingerReport require_schrodinger(const AffineStateMap& sigma, const EATheory& theory,
                                      std::size_t trials = 20, double tol = kTol);

struct HeisenbergResult {
  bool representable = false;
  std::optional<EAEndomorphism> gamma;
  /// An effect a of the theory with gamma a outside the effect interval.
  std::optional<QVec> witness_rational;
  std::optional<HermOp> witness_quantum;
  std::optional<HermOp> witness_image;
  std::size_t effects_checked = 0;
  std::string note;
};

/// Adjoint of sigma under the state/effect pairing, accepted when it fixes the
/// unit and keeps the effect interval. Throws NonSeparatingStates when the
/// theory's states do not pin the adjoint down.
HeisenbergResult heisenberg_representable(const AffineStateMap& sigma, const EATheory& theory,
                                          double tol = kTol);

/// max |tr(sigma(rho) E) - tr(rho gamma(E))| over seeded random states and effects.
double adjoint_defect(const AffineStateMap& sigma, const EAEndomorphism& gamma, std::size_t pairs,
                      Rng& rng);

struct PurityReport {
  bool pure_preserved = true;
  bool inverse_verified = false;
  std::size_t checked = 0;
  double min_purity = 1;
  std::optional<std::size_t> witness_index;
};

/// Images of extreme states must be extreme: vertices for rational carriers,
/// tr rho^2 = 1 for quantum ones. When `inverse` is given both compositions
/// must be the identity, else InverseInvalid.
PurityReport check_pure_to_pure(const AffineStateMap& sigma, const EATheory& theory,
                                const std::optional<AffineStateMap>& inverse,
                                std::size_t samples = 100, double tol = kTol);

using QuantumMeasurement = std::vector<HermOp>;
using ClassicalDistance = std::function<double(const std::vector<double>&, const std::vector<double>&)>;

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

struct Distinguishability {
  double value = 0;
  std::size_t argmax = 0;
};

/// max over the family of the classical distance between outcome
/// distributions. Throws NotAResolution for a member not summing to I (or
/// holding a non-effect), LengthMismatch for an empty family.
Distinguishability distinguishability(const DensityState& omega, const DensityState& rho,
                                      const std::vector<QuantumMeasurement>& family,
                                      const ClassicalDistance& base = total_variation,
                                      double tol = kTol);
Distinguishability distinguishability_serial(const DensityState& omega, const DensityState& rho,
                                             const std::vector<QuantumMeasurement>& family,
                                             const ClassicalDistance& base = total_variation,
                                             double tol = kTol);
/// Exact total variation over rational effect families summing to `unit`.
Rational distinguishability(const QVec& omega, const QVec& rho,
                            const std::vector<std::vector<QVec>>& family, const QVec& unit);

/// 1/2 |rho - sigma|_1.
double trace_distance(const DensityState& a, const DensityState& b);

QuantumMeasurement computational_basis(std::size_t d);
QuantumMeasurement random_projective_measurement(std::size_t d, Rng& rng);

struct ContractionReport {
  bool pass = false;
  double d_after = 0;
  double d_before = 0;
};

/// D(sigma omega, sigma rho; F) <= D(omega, rho; F + gamma*(F)).
ContractionReport contraction_check(const AffineStateMap& sigma, const EAEndomorphism& gamma,
                                    const DensityState& omega, const DensityState& rho,
                                    const std::vector<QuantumMeasurement>& family, double tol = kTol);

DensityState apply_channel(const CPMap& c, const DensityState& rho);

}  // namespace opalg
