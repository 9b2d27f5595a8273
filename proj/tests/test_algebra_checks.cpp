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

#include "opalg/algebra_checks.hpp"

using namespace opalg;
using opalg::testing::code_of;
using opalg::testing::data_path;

namespace {

// Chain {0, 1/n, ..., 1} with k/n + j/n defined when k + j <= n.
FinitePAS chain(std::size_t n) {
  FinitePAS p;
  p.oplus = PartialTable(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    p.names.push_back(std::to_string(k) + "/" + std::to_string(n));
    for (std::size_t j = 0; k + j <= n; ++j) p.oplus.set(k, j, static_cast<std::int32_t>(k + j));
  }
  return p;
}

// Subsets of {1,2,3} under disjoint union.
FinitePAS boolean3() {
  FinitePAS p;
  p.oplus = PartialTable(8);
  for (std::uint32_t x = 0; x < 8; ++x) {
    p.names.push_back(std::to_string(x));
    for (std::uint32_t y = 0; y < 8; ++y)
      if (!(x & y)) p.oplus.set(x, y, static_cast<std::int32_t>(x | y));
  }
  return p;
}

// Functions {1,2,3} -> {0,1/2,1} in base-3 digit order, pointwise sum when <= 1.
FinitePAS fuzzy3() {
  FinitePAS p;
  p.oplus = PartialTable(27);
  const char* digit[] = {"0", "1/2", "1"};
  for (int x = 0; x < 27; ++x) {
    const int xs[] = {x / 9, (x / 3) % 3, x % 3};
    p.names.push_back(std::string(digit[xs[0]]) + "," + digit[xs[1]] + "," + digit[xs[2]]);
    for (int y = 0; y < 27; ++y) {
      const int ys[] = {y / 9, (y / 3) % 3, y % 3};
      bool ok = true;
      int z = 0;
      for (int i = 0; i < 3; ++i) {
        ok = ok && xs[i] + ys[i] <= 2;
        z = z * 3 + xs[i] + ys[i];
      }
      if (ok) p.oplus.set(x, y, z);
    }
  }
  return p;
}

}  // namespace

TEST_CASE("three-element interval is an effect algebra but not an orthoalgebra") {
  const auto p = chain(2);
  const auto pas = check_pas_properties(p);
  CHECK(pas.all_pass());
  const auto ea = check_effect_algebra(p, 2);
  for (const char* ax : {"EA1", "EA2", "EA3", "EA4", "unit_complement_is_zero"}) CHECK(ea.passes(ax));
  CHECK_FALSE(ea.passes("orthoalgebra"));
  CHECK(ea.at("orthoalgebra").counterexample == std::vector<std::size_t>{1});
  REQUIRE(ea.orthosupplement);
  CHECK(*ea.orthosupplement == std::vector<std::size_t>{2, 1, 0});
}

TEST_CASE("Boolean subsets form an orthoalgebra") {
  const auto r = check_effect_algebra(boolean3(), 7);
  CHECK(r.all_pass());
  CHECK(r.passes("orthoalgebra"));
}

TEST_CASE("fuzzy-set grid: table on disk matches the hand-built one") {
  const auto disk = io::pas_from_json(io::load_json(data_path("fuzzy3.json")));
  const auto built = fuzzy3();
  CHECK(disk.names == built.names);
  CHECK(disk.oplus == built.oplus);
  CHECK(disk.zero == built.zero);
}

TEST_CASE("fuzzy-set grid is an effect algebra with constant one-half as the orthoalgebra witness") {
  const auto p = fuzzy3();
  const auto r = check_effect_algebra(p, 26);
  for (const char* ax : {"EA1", "EA2", "weak_associativity", "EA3", "EA4", "unit_complement_is_zero"})
    CHECK(r.passes(ax));
  REQUIRE_FALSE(r.passes("orthoalgebra"));
  const auto& w = r.at("orthoalgebra").counterexample;
  REQUIRE(w.size() == 1);
  CHECK(p.names[w[0]] == "1/2,1/2,1/2");
  CHECK(p.oplus.at(w[0], w[0]) == 26);
}

TEST_CASE("constructed cancellativity violation") {
  // x + y = x + z = w with y != z
  FinitePAS p;
  p.names = {"0", "x", "y", "z", "w"};
  p.oplus = PartialTable(5);
  for (std::size_t a = 0; a < 5; ++a) p.oplus.set_symmetric(0, a, static_cast<std::int32_t>(a));
  p.oplus.set_symmetric(1, 2, 4);
  p.oplus.set_symmetric(1, 3, 4);
  const auto r = check_pas_properties(p);
  CHECK_FALSE(r.passes("cancellativity"));
  const auto& c = r.at("cancellativity").counterexample;
  REQUIRE(c.size() == 3);
  CHECK(p.oplus.at(c[0], c[1]) == p.oplus.at(c[0], c[2]));
  CHECK(c[1] != c[2]);
}

TEST_CASE("non-commutative table is rejected") {
  const auto p = io::pas_from_json(io::load_json(data_path("broken_pas.json")));
  const auto r = check_pas_properties(p);
  CHECK_FALSE(r.passes("strong_commutativity"));
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("two-measurement style table: weak but not strong associativity") {
  // 0, a, b, d, ab, abd with a+b and (a+b)+d defined but b+d not
  FinitePAS p;
  p.names = {"0", "a", "b", "d", "ab", "abd"};
  p.oplus = PartialTable(6);
  for (std::size_t a = 0; a < 6; ++a) p.oplus.set_symmetric(0, a, static_cast<std::int32_t>(a));
  p.oplus.set_symmetric(1, 2, 4);
  p.oplus.set_symmetric(4, 3, 5);
  const auto r = check_pas_properties(p);
  CHECK_FALSE(r.passes("strong_associativity"));
  CHECK(r.passes("weak_associativity"));
}

TEST_CASE("derived order is a partial order and ominus inverts the sum") {
  for (const auto& p : {chain(4), boolean3(), fuzzy3()}) {
    const auto r = check_pas_properties(p);
    REQUIRE(r.passes("cancellativity"));
    REQUIRE(r.passes("positivity"));
    CHECK(r.passes("partial_order"));
    for (std::size_t x = 0; x < p.size(); ++x) {
      CHECK(less_equal(p, x, x));
      for (std::size_t y = 0; y < p.size(); ++y) {
        if (x != y && less_equal(p, x, y)) CHECK_FALSE(less_equal(p, y, x));
        if (auto z = ominus(p, x, y)) CHECK(p.oplus.at(y, *z) == static_cast<std::int32_t>(x));
        CHECK(ominus(p, x, y).has_value() == less_equal(p, y, x));
      }
    }
  }
}

namespace {

FiniteOA toy_oa() {
  // {0, p, 1}: p + p undefined, product is the meet of the chain 0 < p < 1
  FiniteOA o;
  o.pas.names = {"0", "p", "1"};
  o.pas.oplus = PartialTable(3);
  for (std::size_t a = 0; a < 3; ++a) o.pas.oplus.set_symmetric(0, a, static_cast<std::int32_t>(a));
  o.product = PartialTable(3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) o.product.set(a, b, static_cast<std::int32_t>(std::min(a, b)));
  o.one = 2;
  return o;
}

}  // namespace

TEST_CASE("toy operation algebra: per-axiom report") {
  const auto r = check_operation_algebra(toy_oa());
  for (const char* ax : {"OA1", "OA2", "OA3", "OA4", "OA5", "OA6", "OA7", "OA8_right", "OA8_left",
                         "OA9", "OA10"})
    CHECK_MESSAGE(r.passes(ax), ax);
  REQUIRE(r.top_set);
  CHECK(*r.top_set == std::vector<std::size_t>{1, 2});
}

TEST_CASE("top set is an antichain containing one") {
  const auto o = toy_oa();
  const auto t = top_set(o.pas);
  CHECK(std::find(t.begin(), t.end(), o.one) != t.end());
  for (auto x : t)
    for (auto y : t)
      if (x != y) CHECK_FALSE(less_equal(o.pas, x, y));
}

TEST_CASE("a product with nonzero 0c fails OA7 with witness c") {
  auto o = toy_oa();
  o.product.set(0, 1, 1);
  const auto r = check_operation_algebra(o);
  CHECK_FALSE(r.passes("OA7"));
  CHECK(r.at("OA7").counterexample == std::vector<std::size_t>{1});
}

TEST_CASE("malformed tables are rejected") {
  auto o = toy_oa();
  o.product.set(1, 1, PartialTable::kUndefined);
  CHECK(code_of([&] { check_operation_algebra(o); }) == ErrorCode::MalformedTable);
  FinitePAS p = chain(2);
  p.oplus.set(1, 0, 7);
  CHECK(code_of([&] { check_pas_properties(p); }) == ErrorCode::MalformedTable);
}

namespace {

TableConvexModel chain_model(std::size_t n, std::vector<Rational> grid) {
  TableConvexModel m{chain(n), grid, {}, std::nullopt};
  for (const auto& s : grid) {
    std::vector<std::int32_t> row;
    for (std::size_t k = 0; k <= n; ++k) {
      Rational v = s * Rational(static_cast<long>(k));
      v.canonicalize();
      row.push_back(v.get_den() == 1 ? static_cast<std::int32_t>(v.get_num().get_si())
                                     : PartialTable::kUndefined);
    }
    m.scale_table.push_back(row);
  }
  return m;
}

}  // namespace

TEST_CASE("convex axioms on a rational chain") {
  const auto m = chain_model(4, {Rational(0), Rational(1, 2), Rational(1)});
  const auto r = check_convex_table(m);
  CHECK_FALSE(r.passes("scalar_action_total"));
  for (const char* ax : {"C1", "C2", "C3", "C4"}) CHECK_MESSAGE(r.passes(ax), ax);
}

TEST_CASE("identity scalar must act trivially") {
  auto m = chain_model(4, {Rational(0), Rational(1)});
  m.scale_table[1][3] = 2;
  const auto r = check_convex_table(m);
  CHECK_FALSE(r.passes("C4"));
  CHECK(r.at("C4").counterexample == std::vector<std::size_t>{3});
  CHECK(code_of([] { check_convex_axioms(chain_model(2, {}), {0}, {}); }) == ErrorCode::GridEmpty);
}

TEST_CASE("default grid is the eighths") {
  const auto g = default_grid();
  REQUIRE(g.size() == 9);
  CHECK(g[4] == Rational(1, 2));
  CHECK(g.back() == 1);
}
