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

#include <algorithm>
#include <set>

#include "opalg/algebra_checks.hpp"
#include "opalg/kernels.hpp"
#include "opalg/quotient.hpp"

using namespace opalg;
using opalg::testing::load_theory;
using opalg::testing::q;

namespace {

QVec signature_of(const PhenoTheory& t, const Event& e) {
  QVec sig;
  for (std::size_t s = 0; s < t.num_states(); ++s) sig.push_back(event_probability(t, s, e));
  return sig;
}

// Brute-force oracle: every event of every measurement with its signature.
std::vector<std::pair<Event, QVec>> all_events(const PhenoTheory& t) {
  std::vector<std::pair<Event, QVec>> out;
  for (std::size_t m = 0; m < t.num_measurements(); ++m)
    for (std::uint32_t x = 0; x < (1u << t.measurement_size(m)); ++x) {
      const Event e{m, x};
      out.emplace_back(e, signature_of(t, e));
    }
  return out;
}

FinitePAS as_pas(const WeakEffectAlgebra& w) {
  FinitePAS p{{}, w.oplus(), w.zero()};
  for (const auto& e : w.effects()) p.names.push_back(std::to_string(e.id));
  return p;
}

void check_quotient_axioms(const WeakEffectAlgebra& w) {
  const auto r = check_effect_algebra(as_pas(w), w.unit());
  CHECK(r.passes("EA1"));
  CHECK(r.passes("weak_associativity"));
  CHECK(r.passes("EA3"));
  CHECK(r.passes("EA4"));
  CHECK(r.passes("unit_complement_is_zero"));
  CHECK(w.orthosupplement(w.unit()) == w.zero());
}

void check_against_oracle(const PhenoTheory& t, const WeakEffectAlgebra& w) {
  const auto events = all_events(t);
  std::set<QVec> classes;
  for (const auto& [e, sig] : events) classes.insert(sig);
  REQUIRE(w.size() == classes.size());

  std::set<QVec> seen;
  for (const auto& eff : w.effects()) {
    CHECK(seen.insert(eff.signature).second);
    for (const auto& v : eff.signature) CHECK((v >= 0 && v <= 1));
    for (const auto& ev : eff.witnesses) CHECK(signature_of(t, ev) == eff.signature);
  }

  // x + y is defined iff some disjoint pair inside one measurement realizes it.
  PartialTable expected(w.size());
  for (const auto& [e1, s1] : events)
    for (const auto& [e2, s2] : events) {
      if (e1.measurement != e2.measurement || (e1.outcomes & e2.outcomes)) continue;
      const auto x = *w.find_signature(s1);
      const auto y = *w.find_signature(s2);
      const auto z = *w.find_signature(add(s1, s2));
      if (expected.defined(x, y)) CHECK(expected.at(x, y) == static_cast<std::int32_t>(z));
      expected.set(x, y, static_cast<std::int32_t>(z));
    }
  CHECK(expected == w.oplus());

  for (std::size_t s = 0; s < t.num_states(); ++s) {
    const auto omega = w.induced_state(s);
    CHECK(omega[w.unit()] == 1);
    for (std::size_t x = 0; x < w.size(); ++x)
      for (std::size_t y = 0; y < w.size(); ++y)
        if (auto z = w.sum(x, y)) CHECK(omega[*z] == omega[x] + omega[y]);
  }
}

}  // namespace

TEST_CASE("quotient of the two-measurement theory matches the brute-force oracle") {
  const auto t = load_theory("weak_assoc.json");
  const auto w = build_wea(t);
  check_against_oracle(t, w);
  check_quotient_axioms(w);
  CHECK(check_effect_algebra(as_pas(w), w.unit()).passes("EA2") == false);
}

TEST_CASE("the two-measurement theory violates strong associativity") {
  const auto t = load_theory("weak_assoc.json");
  const auto w = build_wea(t);
  const auto a = w.effect_of(t.event("M", {"a"}));
  const auto b = w.effect_of(t.event("M", {"b"}));
  const auto c = w.effect_of(t.event("N", {"c"}));
  const auto d = w.effect_of(t.event("N", {"d"}));
  REQUIRE(w.sum(a, b));
  CHECK(*w.sum(a, b) == c);
  CHECK(w.sum(c, d).has_value());
  CHECK_FALSE(w.sum(b, d).has_value());

  const auto sa = check_strong_associativity(w);
  CHECK_FALSE(sa.holds);
  REQUIRE(sa.counterexample);
  auto triple = *sa.counterexample;
  std::sort(triple.begin(), triple.end());
  std::array<std::size_t, 3> want{a, b, d};
  std::sort(want.begin(), want.end());
  CHECK(triple == want);
}

TEST_CASE("adding the third measurement defines b + d but not a + (b + d)") {
  const auto t = load_theory("weak_assoc_extended.json");
  const auto w = build_wea(t);
  check_against_oracle(t, w);
  const auto a = w.effect_of(t.event("M", {"a"}));
  const auto b = w.effect_of(t.event("M", {"b"}));
  const auto d = w.effect_of(t.event("N", {"d"}));
  const auto h = w.effect_of(t.event("O", {"h1", "h2"}));
  REQUIRE(w.sum(b, d));
  CHECK(*w.sum(b, d) == h);
  CHECK_FALSE(w.sum(a, h).has_value());
  CHECK(w.sum(*w.sum(a, b), d).has_value());
}

TEST_CASE("single-measurement theories are strongly associative") {
  RawTheory raw;
  raw.measurements = {{"M", {"x", "y", "z"}}};
  raw.states = {{{"x", q("1/7")}, {"y", q("2/7")}, {"z", q("4/7")}}};
  const auto w = build_wea(PhenoTheory::validate(raw));
  CHECK(w.size() == 8);
  CHECK(check_strong_associativity(w).holds);
  const auto c = complete_wea(w);
  CHECK(c.adjoined.empty());
  CHECK(c.is_effect_algebra);
  CHECK(c.algebra.size() == w.size());
}

TEST_CASE("completion of the two-measurement theory") {
  const auto t = load_theory("weak_assoc.json");
  const auto w = build_wea(t);
  const auto c = complete_wea(w);
  CHECK_FALSE(c.adjoined.empty());
  CHECK(c.is_effect_algebra);
  CHECK_FALSE(c.failure_trace.has_value());
  CHECK(strong_associativity_violations(c.algebra).empty());

  const auto b = w.effects()[w.effect_of(t.event("M", {"b"}))].signature;
  const auto d = w.effects()[w.effect_of(t.event("N", {"d"}))].signature;
  const auto bd = c.algebra.find_signature(add(b, d));
  REQUIRE(bd);
  CHECK(c.algebra.effects()[*bd].witnesses.empty());

  const auto r = check_effect_algebra(as_pas(c.algebra), c.algebra.unit());
  CHECK(r.passes("EA2"));
  CHECK(r.passes("EA3"));
}

TEST_CASE("completion with the third measurement defines the missing triple sum") {
  const auto t = load_theory("weak_assoc_extended.json");
  const auto w = build_wea(t);
  const auto c = complete_wea(w);
  CHECK(c.is_effect_algebra);
  const auto sig = [&](const char* m, std::vector<std::string> o) {
    return w.effects()[w.effect_of(t.event(m, o))].signature;
  };
  const auto a = w.effect_of(t.event("M", {"a"}));
  const auto h = w.effect_of(t.event("O", {"h1", "h2"}));
  CHECK_FALSE(w.sum(a, h).has_value());
  // a + (b + d) has the signature of {c, d}, which the quotient already holds.
  const auto abd = add(sig("M", {"a"}), add(sig("M", {"b"}), sig("N", {"d"})));
  const auto cd = w.effect_of(t.event("N", {"c", "d"}));
  CHECK(w.find_signature(abd) == cd);
  REQUIRE(c.algebra.sum(a, h).has_value());
  CHECK(*c.algebra.sum(a, h) == cd);
  bool traced = false;
  for (const auto& step : c.trace)
    traced = traced || (((step.lhs == a && step.rhs == h) || (step.lhs == h && step.rhs == a)) &&
                        step.result == cd);
  CHECK(traced);
  CHECK(strong_associativity_violations(c.algebra).empty());
}

TEST_CASE("strong associativity scan: serial and parallel kernels agree") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const auto w = build_wea(opalg::testing::random_theory(rng));
    CHECK(kernels::strong_assoc_scan_serial(w.oplus()) == kernels::strong_assoc_scan_parallel(w.oplus()));
  }
  const auto w = build_wea(load_theory("weak_assoc.json"));
  const auto s = kernels::strong_assoc_scan_serial(w.oplus());
  REQUIRE(s);
  CHECK(s == kernels::strong_assoc_scan_parallel(w.oplus()));
  const auto all_s = kernels::all_triples_serial(w.size(), [&](auto x, auto y, auto z) {
    return kernels::strong_assoc_fails(w.oplus(), x, y, z);
  });
  const auto all_p = kernels::all_triples_parallel(w.size(), [&](auto x, auto y, auto z) {
    return kernels::strong_assoc_fails(w.oplus(), x, y, z);
  });
  CHECK(all_s == all_p);
  CHECK(all_s.front() == *s);
}

TEST_CASE("random theories quotient to weak effect algebras") {
  std::mt19937_64 rng(2026);
  for (int i = 0; i < 50; ++i) {
    const auto t = opalg::testing::random_theory(rng);
    const auto w = build_wea(t);
    check_against_oracle(t, w);
    check_quotient_axioms(w);
    const auto c = complete_wea(w);
    if (c.is_effect_algebra) CHECK(strong_associativity_violations(c.algebra).empty());
  }
}

TEST_CASE("effect cap is enforced") {
  const auto t = load_theory("weak_assoc.json");
  CHECK(opalg::testing::code_of([&] { build_wea(t, 4); }) == ErrorCode::SizeCapExceeded);
}
