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

// Bipartite structure: product effects, separability, testability of states
// by separable effects, and influence-freedom of bipartite probability tables.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opalg/cones.hpp"
#include "opalg/phenomenology.hpp"
#include "opalg/quantum.hpp"

namespace opalg {

/// Kronecker product of two effects. Throws NotAnEffect.
HermOp product_effect(const HermOp& a, const HermOp& b, double tol = kTol);
CVec product_vector(const CVec& psi, const CVec& chi);

/// Transpose on the second factor. Throws DimensionUnsupported unless
/// x.dim() == d_a * d_b.
HermOp partial_transpose(const HermOp& x, std::size_t d_a, std::size_t d_b);

struct SeparabilityVerdict {
  bool separable = false;
  /// PSD and PPT decide membership exactly when d_a * d_b <= 6; above that
  /// the verdict is only a necessary condition.
  bool exact = false;
  double min_eigenvalue = 0;
  double min_pt_eigenvalue = 0;
};

/// Membership in the separable cone (as_effect adds X <= I).
SeparabilityVerdict separability(const HermOp& x, std::size_t d_a, std::size_t d_b,
                                 bool as_effect, double tol = kTol);
bool is_separable_2x2(const HermOp& x, bool as_effect, double tol = kTol);

struct ProductOverlap {
  double value = 0;
  CVec psi;
  CVec chi;
  std::size_t restart = 0;
};

inline constexpr std::size_t kDefaultRestarts = 32;

/// max <psi chi| X |psi chi> over unit product vectors by alternating top
/// eigenvectors from `restarts` seeded random starts. Ties go to the lowest
/// restart index. Throws NotPSD.
ProductOverlap max_product_overlap(const HermOp& x, std::size_t d_a, std::size_t d_b,
                                   std::size_t restarts = kDefaultRestarts,
                                   std::uint64_t seed = 1, double tol = kTol);
ProductOverlap max_product_overlap_serial(const HermOp& x, std::size_t d_a, std::size_t d_b,
                                          std::size_t restarts = kDefaultRestarts,
                                          std::uint64_t seed = 1, double tol = kTol);

enum class Carrier { Quantum, Separable, Linear };

/// How "other" states are drawn when certifying that a test is unique.
enum class StateSampler { None, AllQuantum, PureProducts };

/// An effect structure with a designated state set. Quantum: d_a is the
/// dimension and d_b = 1. Separable: effects in the separable interval of
/// d_a x d_b. Linear: the interval [0, u] of a polyhedral cone, with states
/// given as functionals.
struct EATheory {
  Carrier carrier = Carrier::Quantum;
  std::size_t d_a = 2;
  std::size_t d_b = 1;
  std::vector<DensityState> states;
  StateSampler sampler = StateSampler::None;
  std::size_t samples = 500;
  std::uint64_t seed = 1;

  std::optional<LinearEffectAlgebra> lea;
  std::vector<QVec> linear_states;

  std::size_t dim() const { return d_a * d_b; }
  std::size_t size() const {
    return carrier == Carrier::Linear ? linear_states.size() : states.size();
  }
};

struct TestCertificate {
  std::optional<HermOp> effect;
  QVec linear_effect;
  std::size_t state = 0;
  /// Value of the tested state on the effect.
  double value = 0;
  /// Largest value of any other listed or sampled state on the effect.
  double margin = 0;
  std::size_t others_checked = 0;
};

struct TestSearch {
  std::optional<TestCertificate> certificate;
  /// Best value reached by any admissible effect (for the separable carrier
  /// the maximal product overlap).
  double best_value = 0;
  std::string note;
};

/// Throws StateNotInTheory for an index outside the listed states.
TestSearch find_test(const EATheory& theory, std::size_t state, double tol = 1e-6);
/// Locates `omega` among the listed states first.
TestSearch find_test(const EATheory& theory, const DensityState& omega, double tol = 1e-6);

struct TestabilityReport {
  bool pass = false;
  std::vector<TestSearch> per_state;
  std::optional<std::size_t> first_failure;
};

TestabilityReport check_axiom_testability(const EATheory& theory, double tol = 1e-6);

/// p[state][i][j][a][b] for A-choice i, B-choice j, outcomes a and b.
struct BipartiteTable {
  std::size_t a_choices = 0;
  std::size_t b_choices = 0;
  std::size_t a_outcomes = 0;
  std::size_t b_outcomes = 0;
  std::vector<std::vector<std::vector<std::vector<std::vector<Rational>>>>> p;
};

/// Throws MalformedLabeling on ragged shapes, NormalizationViolation when a
/// joint distribution is not a probability distribution.
void validate(const BipartiteTable& t);

/// Reads measurements named "i|j" with outcomes "a|b" (choices and outcome
/// labels are arbitrary tokens). Throws MalformedLabeling.
BipartiteTable bipartite_from_theory(const PhenoTheory& theory);

struct SignallingWitness {
  std::size_t state = 0;
  char side = 'A';  // the party whose marginal moves
  std::size_t choice = 0;
  std::size_t outcome = 0;
  std::size_t other_choice = 0;
  std::size_t other_choice_alt = 0;
  Rational p_first;
  Rational p_second;
};

struct InfluenceVerdict {
  bool influence_free = true;
  std::optional<SignallingWitness> witness;
};

InfluenceVerdict influence_free(const BipartiteTable& t);

}  // namespace opalg
