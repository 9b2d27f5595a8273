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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

#include "opalg/lp.hpp"
#include "opalg/phenomenology.hpp"
#include "opalg/rational.hpp"

using namespace opalg;
using opalg::testing::code_of;
using opalg::testing::q;
using opalg::testing::qv;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(code_of([] { parse_rational("1/0"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_rational("abc"); }) == ErrorCode::ParseError);
}

TEST_CASE("primitive integer rescaling") {
  QVec v{q("1/2"), q("-3/4"), q("0")};
  CHECK(primitive(v) == qv({2, -3, 0}));
  CHECK(primitive(qv({4, 6})) == qv({2, 3}));
}

TEST_CASE("rank and nullspace agree with the rank-nullity count") {
  QMat m{qv({1, 2, 3}), qv({2, 4, 6}), qv({0, 1, 1})};
  CHECK(rank(m) == 2);
  const auto ns = nullspace(m, 3);
  REQUIRE(ns.size() == 1);
  CHECK(is_zero(mat_vec(m, ns[0])));
  CHECK_FALSE(is_zero(ns[0]));
}

TEST_CASE("solve_square returns the unique solution") {
  QMat a{qv({2, 1}), qv({1, 3})};
  QVec x;
  REQUIRE(solve_square(a, qv({3, 5}), x));
  CHECK(mat_vec(a, x) == qv({3, 5}));
  QMat singular{qv({1, 1}), qv({2, 2})};
  CHECK_FALSE(solve_square(singular, qv({1, 0}), x));
}

TEST_CASE("simplex finds the exact optimum") {
  // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6, all >= 0
  QMat a{qv({1, 2, 1, 0}), qv({3, 1, 0, 1})};
  const auto r = lp::minimize(a, qv({4, 6}), qv({-1, -1, 0, 0}));
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.value == Rational(-14, 5));
  CHECK(mat_vec(a, r.x) == qv({4, 6}));
}

TEST_CASE("infeasible systems carry a Farkas certificate") {
  // x + y = -1 with x, y >= 0
  QMat a{qv({1, 1})};
  QVec b = qv({-1});
  const auto r = lp::feasible(a, b);
  REQUIRE(r.status == lp::Status::Infeasible);
  REQUIRE(r.farkas.size() == 1);
  const auto ya = mat_vec(transpose(a), r.farkas);
  for (const auto& v : ya) CHECK(v >= 0);
  CHECK(dot(r.farkas, b) < 0);
}

TEST_CASE("unbounded objectives are reported") {
  QMat a{qv({1, -1})};
  const auto r = lp::minimize(a, qv({0}), qv({-1, 0}));
  CHECK(r.status == lp::Status::Unbounded);
}

namespace {

RawTheory weak_assoc_single_state() {
  RawTheory raw;
  raw.measurements = {{"M", {"a", "b", "f"}}, {"N", {"c", "d", "g"}}};
  raw.states = {{{"a", q("1/4")}, {"b", q("1/4")}, {"f", q("1/2")},
                 {"c", q("1/2")}, {"d", q("1/4")}, {"g", q("1/4")}}};
  return raw;
}

}  // namespace

TEST_CASE("validation accepts well-formed theories") {
  CHECK_NOTHROW(PhenoTheory::validate(weak_assoc_single_state()));
  RawTheory one;
  one.measurements = {{"M", {"x"}}};
  one.states = {{{"x", q("1")}}};
  CHECK(PhenoTheory::validate(one).num_states() == 1);
}

TEST_CASE("validation diagnostics") {
  auto raw = weak_assoc_single_state();
  raw.states[0]["a"] = q("1/2");
  CHECK(code_of([&] { PhenoTheory::validate(raw); }) == ErrorCode::NormalizationViolation);

  raw = weak_assoc_single_state();
  raw.measurements[1].outcomes[0] = "a";
  CHECK(code_of([&] { PhenoTheory::validate(raw); }) == ErrorCode::DisjointnessViolation);

  raw = weak_assoc_single_state();
  raw.measurements.push_back({"E", {}});
  CHECK(code_of([&] { PhenoTheory::validate(raw); }) == ErrorCode::EmptyMeasurement);

  raw = weak_assoc_single_state();
  raw.states.clear();
  CHECK_THROWS_AS(PhenoTheory::validate(raw), Error);

  RawTheory big;
  Measurement m{"M", {}};
  StateTable s;
  for (int i = 0; i < 17; ++i) {
    m.outcomes.push_back("o" + std::to_string(i));
    s[m.outcomes.back()] = i == 0 ? q("1") : q("0");
  }
  big.measurements = {m};
  big.states = {s};
  CHECK(code_of([&] { PhenoTheory::validate(big); }) == ErrorCode::SizeCapExceeded);
}

TEST_CASE("event probabilities") {
  const auto t = PhenoTheory::validate(weak_assoc_single_state());
  CHECK(event_probability(t, 0, t.event("M", {"a", "b"})) == q("1/2"));
  CHECK(event_probability(t, 0, t.event("M", {"a", "b"})) == event_probability(t, 0, t.event("N", {"c"})));
  CHECK(event_probability(t, 0, t.empty_event(0)) == 0);
  CHECK(event_probability(t, 0, t.full_event(1)) == 1);
  CHECK(code_of([&] { t.event("M", {"c"}); }) == ErrorCode::MeasurementMismatch);
  CHECK(code_of([&] { t.event("M", {"zz"}); }) == ErrorCode::UnknownEvent);
}

TEST_CASE("event lattice operations") {
  const auto t = PhenoTheory::validate(weak_assoc_single_state());
  const auto a = t.event("M", {"a"});
  const auto b = t.event("M", {"b"});
  CHECK(event_join(t, a, b) == t.event("M", {"a", "b"}));
  CHECK(event_meet(t, t.event("M", {"a", "b"}), t.event("M", {"b", "f"})) == b);
  CHECK(event_complement(t, a) == t.event("M", {"b", "f"}));
  CHECK(code_of([&] { event_join(t, a, t.event("N", {"c"})); }) == ErrorCode::MeasurementMismatch);
}

TEST_CASE("probability is additive over disjoint events in every state") {
  const auto t = opalg::testing::load_theory("weak_assoc.json");
  for (std::size_t s = 0; s < t.num_states(); ++s)
    for (std::size_t m = 0; m < t.num_measurements(); ++m) {
      const auto n = t.measurement_size(m);
      for (std::uint32_t x = 0; x < (1u << n); ++x)
        for (std::uint32_t y = 0; y < (1u << n); ++y) {
          if (x & y) continue;
          const Event ex{m, x}, ey{m, y};
          CHECK(event_probability(t, s, event_join(t, ex, ey)) ==
                event_probability(t, s, ex) + event_probability(t, s, ey));
        }
    }
}
