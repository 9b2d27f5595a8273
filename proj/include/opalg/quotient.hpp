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

// Quotient of a phenomenological theory by probabilistic equivalence: two
// events are identified when every generating state gives them the same
// probability. The classes ("effects") carry a partial sum inherited from
// disjoint unions inside single measurements, which yields a weak effect
// algebra. Completion saturates the sum table until strong associativity holds.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opalg/phenomenology.hpp"
#include "opalg/table.hpp"

namespace opalg {

inline constexpr std::size_t kDefaultEffectCap = 2048;

struct Effect {
  std::size_t id = 0;
  /// Probability under each generating state, in state order.
  QVec signature;
  /// Events realizing this effect; empty for elements adjoined by completion.
  std::vector<Event> witnesses;
};

using EffectTriple = std::array<std::size_t, 3>;

class WeakEffectAlgebra {
 public:
  WeakEffectAlgebra(PhenoTheory theory, std::vector<Effect> effects, PartialTable oplus,
                    std::vector<std::size_t> orthosupplement, std::size_t unit,
                    std::size_t zero);

  const PhenoTheory& theory() const { return theory_; }
  const std::vector<Effect>& effects() const { return effects_; }
  std::size_t size() const { return effects_.size(); }
  const PartialTable& oplus() const { return oplus_; }
  std::optional<std::size_t> sum(std::size_t x, std::size_t y) const { return oplus_.get(x, y); }
  std::size_t orthosupplement(std::size_t x) const { return ortho_.at(x); }
  const std::vector<std::size_t>& orthosupplements() const { return ortho_; }
  std::size_t unit() const { return unit_; }
  std::size_t zero() const { return zero_; }

  /// Effect containing the event; throws UnknownEvent.
  std::size_t effect_of(const Event& e) const;
  /// Effect with the given signature, if any.
  std::optional<std::size_t> find_signature(const QVec& signature) const;

  /// The induced state of generating state s, as a value per effect.
  QVec induced_state(std::size_t s) const;

  bool is_orthoalgebra() const;

 private:
  PhenoTheory theory_;
  std::vector<Effect> effects_;
  PartialTable oplus_;
  std::vector<std::size_t> ortho_;
  std::size_t unit_;
  std::size_t zero_;
  std::map<QVec, std::size_t> by_signature_;
};

/// Builds the effect classes of all events of all measurements together with
/// the witnessed partial sum. Effect ids follow the first occurrence in
/// (measurement, event bitmask) order, so the empty event is always id 0.
WeakEffectAlgebra build_wea(const PhenoTheory& theory,
                            std::size_t effect_cap = kDefaultEffectCap);

struct StrongAssociativity {
  bool holds = true;
  /// First violating (x, y, z) in lexicographic id order.
  std::optional<EffectTriple> counterexample;
};

StrongAssociativity check_strong_associativity(const WeakEffectAlgebra& wea);

/// Every violating triple, lexicographically ordered.
std::vector<EffectTriple> strong_associativity_violations(const WeakEffectAlgebra& wea);

/// One step of completion: `lhs` and `rhs` became summable with result `result`.
struct ForcedSum {
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  std::size_t result = 0;
  bool adjoined = false;  // result was created by this step
  std::string reason;
};

struct CompletionResult {
  WeakEffectAlgebra algebra;
  std::vector<Effect> adjoined;
  bool is_effect_algebra = false;
  std::vector<ForcedSum> trace;
  /// Present when the fixpoint still fails strong associativity.
  std::optional<EffectTriple> failure_trace;
};

/// Saturates the sum table: whenever (x + y) + z exists but the other
/// bracketing does not, the missing sums are imposed, adjoining elements keyed
/// by their forced signature. Adjoined elements also receive orthosupplements.
/// Throws NonSeparatingCollision if a forced sum contradicts an existing entry.
CompletionResult complete_wea(const WeakEffectAlgebra& wea,
                              std::size_t element_cap = kDefaultEffectCap);

}  // namespace opalg
