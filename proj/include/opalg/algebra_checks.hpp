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

// Axiom verifiers for explicitly tabulated finite structures: partial abelian
// semigroups, (weak) effect algebras, orthoalgebras, operation algebras and
// their convex variants. Scans run in a fixed order so a failing verdict
// always carries the lexicographically smallest counterexample.

#include <concepts>
#include <optional>
#include <string>
#include <vector>

#include "opalg/rational.hpp"
#include "opalg/table.hpp"

namespace opalg {

struct FinitePAS {
  std::vector<std::string> names;
  PartialTable oplus;
  std::size_t zero = 0;

  std::size_t size() const { return names.size(); }
};

/// Operation-algebra candidate: a PAS plus a total sequential product.
struct FiniteOA {
  FinitePAS pas;
  PartialTable product;
  std::size_t one = 0;
};

struct AxiomVerdict {
  std::string axiom;
  std::string anchor;
  bool pass = true;
  /// Element ids (or sample indices for sampled structures) of a witness.
  std::vector<std::size_t> counterexample;
  std::string note;
};

struct AxiomReport {
  std::vector<AxiomVerdict> verdicts;
  /// Filled by check_effect_algebra when EA3 holds.
  std::optional<std::vector<std::size_t>> orthosupplement;
  /// Filled by check_operation_algebra.
  std::optional<std::vector<std::size_t>> top_set;

  bool all_pass() const;
  /// Verdict by axiom name; throws std::out_of_range if absent.
  const AxiomVerdict& at(const std::string& axiom) const;
  bool passes(const std::string& axiom) const { return at(axiom).pass; }
};

/// Throws MalformedTable on size mismatches or out-of-range entries.
void validate(const FinitePAS& p);
void validate(const FiniteOA& o);

/// x <= y iff x + z = y for some z.
bool less_equal(const FinitePAS& p, std::size_t x, std::size_t y);
/// The z with y + z = x, if any (unique when the PAS is cancellative).
std::optional<std::size_t> ominus(const FinitePAS& p, std::size_t x, std::size_t y);

AxiomReport check_pas_properties(const FinitePAS& p);
AxiomReport check_effect_algebra(const FinitePAS& p, std::size_t one);
AxiomReport check_operation_algebra(const FiniteOA& o);

/// Top set {t : a + t defined implies a = 0}.
std::vector<std::size_t> top_set(const FinitePAS& p);

/// Default scalar grid {k/8 : 0 <= k <= 8}.
std::vector<Rational> default_grid();

/// A structure with a partial sum and a [0,1] scalar action. `scale` may
/// return nullopt for scalars it does not represent (checks needing those
/// scalars are skipped); for scalars on the checked grid it must succeed.
template <class M>
concept ConvexModel = requires(const M& m, const typename M::Element& a, const Rational& s) {
  { m.oplus(a, a) } -> std::same_as<std::optional<typename M::Element>>;
  { m.scale(s, a) } -> std::same_as<std::optional<typename M::Element>>;
  { m.equal(a, a) } -> std::same_as<bool>;
};

template <class M>
concept ConvexProductModel = ConvexModel<M> && requires(const M& m, const typename M::Element& a) {
  { m.product(a, a) } -> std::same_as<typename M::Element>;
};

/// Verdicts for C1-C4 (and COA15 when the model has a product) over the
/// sample elements and scalar grid. Throws GridEmpty.
template <ConvexModel M>
AxiomReport check_convex_axioms(const M& model, const std::vector<typename M::Element>& samples,
                                const std::vector<Rational>& grid);

/// Finite table with scalar action tabulated on a grid.
struct TableConvexModel {
  using Element = std::size_t;

  FinitePAS pas;
  std::vector<Rational> grid;
  /// scale_table[g][a] = grid[g] * a, or PartialTable::kUndefined.
  std::vector<std::vector<std::int32_t>> scale_table;
  std::optional<PartialTable> product_table;

  std::optional<Element> oplus(Element a, Element b) const { return pas.oplus.get(a, b); }
  std::optional<Element> scale(const Rational& s, Element a) const;
  bool equal(Element a, Element b) const { return a == b; }
};

AxiomReport check_convex_table(const TableConvexModel& model);

}  // namespace opalg

#include "opalg/detail/convex_checks.hpp"
