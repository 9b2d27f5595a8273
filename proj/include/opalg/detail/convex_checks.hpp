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

// Template body of check_convex_axioms; included from algebra_checks.hpp.

#include <string>

#include "opalg/error.hpp"

namespace opalg {

namespace detail {

inline std::string scalar_note(const char* what, const Rational& a) {
  return std::string(what) + " alpha=" + to_string(a);
}

inline std::string scalar_note(const char* what, const Rational& a, const Rational& b) {
  return std::string(what) + " alpha=" + to_string(a) + " beta=" + to_string(b);
}

}  // namespace detail

template <ConvexModel M>
AxiomReport check_convex_axioms(const M& model, const std::vector<typename M::Element>& samples,
                                const std::vector<Rational>& grid) {
  if (grid.empty()) throw Error(ErrorCode::GridEmpty, "scalar grid is empty");
  AxiomReport report;
  const std::size_t n = samples.size();
  const std::size_t g = grid.size();

  AxiomVerdict total{"scalar_action_total", "convex/C0", true, {}, ""};
  for (std::size_t i = 0; i < g && total.pass; ++i)
    for (std::size_t a = 0; a < n && total.pass; ++a)
      if (!model.scale(grid[i], samples[a])) {
        total.pass = false;
        total.counterexample = {a};
        total.note = detail::scalar_note("undefined", grid[i]);
      }
  report.verdicts.push_back(total);

  AxiomVerdict c1{"C1", "convex/C1", true, {}, ""};
  std::size_t c1_skipped = 0;
  for (std::size_t i = 0; i < g && c1.pass; ++i)
    for (std::size_t j = 0; j < g && c1.pass; ++j) {
      const Rational ab = grid[i] * grid[j];
      for (std::size_t a = 0; a < n && c1.pass; ++a) {
        auto direct = model.scale(ab, samples[a]);
        auto inner = model.scale(grid[j], samples[a]);
        if (!direct || !inner) {
          ++c1_skipped;
          continue;
        }
        auto outer = model.scale(grid[i], *inner);
        if (!outer || !model.equal(*outer, *direct)) {
          c1.pass = false;
          c1.counterexample = {a};
          c1.note = detail::scalar_note("alpha(beta a) != (alpha beta) a", grid[i], grid[j]);
        }
      }
    }
  if (c1.pass && c1_skipped) {
    c1.note = std::to_string(c1_skipped) + " cases skipped: product scalar not representable";
  }
  report.verdicts.push_back(c1);

  AxiomVerdict c2{"C2", "convex/C2", true, {}, ""};
  for (std::size_t i = 0; i < g && c2.pass; ++i)
    for (std::size_t j = 0; j < g && c2.pass; ++j) {
      const Rational s = grid[i] + grid[j];
      if (s > 1) continue;
      for (std::size_t a = 0; a < n && c2.pass; ++a) {
        auto lhs_a = model.scale(grid[i], samples[a]);
        auto lhs_b = model.scale(grid[j], samples[a]);
        auto rhs = model.scale(s, samples[a]);
        if (!lhs_a || !lhs_b || !rhs) continue;
        auto sum = model.oplus(*lhs_a, *lhs_b);
        if (!sum || !model.equal(*sum, *rhs)) {
          c2.pass = false;
          c2.counterexample = {a};
          c2.note = detail::scalar_note(sum ? "alpha a + beta a != (alpha+beta) a"
                                            : "alpha a + beta a undefined",
                                        grid[i], grid[j]);
        }
      }
    }
  report.verdicts.push_back(c2);

  AxiomVerdict c3{"C3", "convex/C3", true, {}, ""};
  for (std::size_t a = 0; a < n && c3.pass; ++a)
    for (std::size_t b = 0; b < n && c3.pass; ++b) {
      auto ab = model.oplus(samples[a], samples[b]);
      if (!ab) continue;
      for (std::size_t i = 0; i < g && c3.pass; ++i) {
        auto lhs = model.scale(grid[i], *ab);
        auto sa = model.scale(grid[i], samples[a]);
        auto sb = model.scale(grid[i], samples[b]);
        if (!lhs || !sa || !sb) continue;
        auto rhs = model.oplus(*sa, *sb);
        if (!rhs || !model.equal(*lhs, *rhs)) {
          c3.pass = false;
          c3.counterexample = {a, b};
          c3.note = detail::scalar_note(rhs ? "alpha(a+b) != alpha a + alpha b"
                                            : "alpha a + alpha b undefined",
                                        grid[i]);
        }
      }
    }
  report.verdicts.push_back(c3);

  AxiomVerdict c4{"C4", "convex/C4", true, {}, ""};
  for (std::size_t a = 0; a < n && c4.pass; ++a) {
    auto one_a = model.scale(Rational(1), samples[a]);
    if (!one_a || !model.equal(*one_a, samples[a])) {
      c4.pass = false;
      c4.counterexample = {a};
      c4.note = "1a != a";
    }
  }
  report.verdicts.push_back(c4);

  if constexpr (ConvexProductModel<M>) {
    AxiomVerdict coa{"COA15", "convex-operation/COA15", true, {}, ""};
    for (std::size_t a = 0; a < n && coa.pass; ++a)
      for (std::size_t b = 0; b < n && coa.pass; ++b)
        for (std::size_t i = 0; i < g && coa.pass; ++i) {
          auto sa = model.scale(grid[i], samples[a]);
          auto sb = model.scale(grid[i], samples[b]);
          auto sab = model.scale(grid[i], model.product(samples[a], samples[b]));
          if (!sa || !sb || !sab) continue;
          auto left = model.product(*sa, samples[b]);
          auto right = model.product(samples[a], *sb);
          if (!model.equal(left, *sab) || !model.equal(right, *sab)) {
            coa.pass = false;
            coa.counterexample = {a, b};
            coa.note = detail::scalar_note("(alpha a)b, alpha(ab), a(alpha b) differ", grid[i]);
          }
        }
    report.verdicts.push_back(coa);
  }
  return report;
}

}  // namespace opalg
