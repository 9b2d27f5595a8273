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

#include "opalg/algebra_checks.hpp"

#include <algorithm>
#include <stdexcept>

#include "opalg/error.hpp"
#include "opalg/kernels.hpp"

namespace opalg {

namespace {

using kernels::Triple;

AxiomVerdict verdict(std::string axiom, std::string anchor) {
  return AxiomVerdict{std::move(axiom), std::move(anchor), true, {}, ""};
}

void fail(AxiomVerdict& v, std::vector<std::size_t> witness, std::string note = "") {
  v.pass = false;
  v.counterexample = std::move(witness);
  v.note = std::move(note);
}

void fail_triple(AxiomVerdict& v, const Triple& t, std::string note = "") {
  fail(v, std::vector<std::size_t>{t[0], t[1], t[2]}, std::move(note));
}

void check_table(const PartialTable& t, std::size_t n, const char* what) {
  if (t.size() != n) {
    throw Error(ErrorCode::MalformedTable, std::string(what) + " table has wrong size");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto v = t.at(x, y);
      if (v != PartialTable::kUndefined && (v < 0 || static_cast<std::size_t>(v) >= n)) {
        throw Error(ErrorCode::MalformedTable, std::string(what) + " entry out of range");
      }
    }
}

AxiomVerdict zero_law(const FinitePAS& p) {
  auto v = verdict("zero", "pas/zero");
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p.oplus.at(a, p.zero) != static_cast<std::int32_t>(a) ||
        p.oplus.at(p.zero, a) != static_cast<std::int32_t>(a)) {
      fail(v, {a}, "a + 0 != a");
      break;
    }
  }
  return v;
}

AxiomVerdict strong_commutativity(const PartialTable& t, std::string name, std::string anchor) {
  auto v = verdict(std::move(name), std::move(anchor));
  for (std::size_t x = 0; x < t.size() && v.pass; ++x)
    for (std::size_t y = x + 1; y < t.size() && v.pass; ++y)
      if (t.at(x, y) != t.at(y, x)) fail(v, {x, y}, "x + y and y + x differ");
  return v;
}

AxiomVerdict strong_associativity(const PartialTable& t, std::string name, std::string anchor) {
  auto v = verdict(std::move(name), std::move(anchor));
  if (auto hit = kernels::strong_assoc_scan_parallel(t)) {
    fail_triple(v, *hit, "one bracketing of (x+y)+z, x+(y+z) is defined but not the other, or they differ");
  }
  return v;
}

AxiomVerdict weak_associativity(const PartialTable& t) {
  auto v = verdict("weak_associativity", "weak-effect-algebra/WEA2");
  auto hit = kernels::first_triple_parallel(
      t.size(), [&](auto x, auto y, auto z) { return kernels::weak_assoc_fails(t, x, y, z); });
  if (hit) fail_triple(v, *hit, "both bracketings defined and unequal");
  return v;
}

AxiomVerdict cancellativity(const FinitePAS& p, std::string anchor) {
  auto v = verdict("cancellativity", std::move(anchor));
  auto hit = kernels::first_triple_parallel(p.size(), [&](auto x, auto y, auto z) {
    return y != z && p.oplus.defined(x, y) && p.oplus.at(x, y) == p.oplus.at(x, z);
  });
  if (hit) fail_triple(v, *hit, "x + y = x + z with y != z");
  return v;
}

AxiomVerdict positivity(const FinitePAS& p, std::string anchor) {
  auto v = verdict("positivity", std::move(anchor));
  for (std::size_t a = 0; a < p.size() && v.pass; ++a)
    for (std::size_t b = 0; b < p.size() && v.pass; ++b)
      if (p.oplus.at(a, b) == static_cast<std::int32_t>(p.zero) && (a != p.zero || b != p.zero))
        fail(v, {a, b}, "a + b = 0 with a or b nonzero");
  return v;
}

AxiomVerdict partial_order(const FinitePAS& p) {
  auto v = verdict("partial_order", "pas/order");
  const std::size_t n = p.size();
  std::vector<char> le(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) le[x * n + y] = less_equal(p, x, y) ? 1 : 0;
  for (std::size_t x = 0; x < n && v.pass; ++x)
    if (!le[x * n + x]) fail(v, {x}, "not reflexive");
  for (std::size_t x = 0; x < n && v.pass; ++x)
    for (std::size_t y = 0; y < n && v.pass; ++y)
      if (x != y && le[x * n + y] && le[y * n + x]) fail(v, {x, y}, "not antisymmetric");
  if (v.pass) {
    auto hit = kernels::first_triple_serial(n, [&](auto x, auto y, auto z) {
      return le[x * n + y] && le[y * n + z] && !le[x * n + z];
    });
    if (hit) fail_triple(v, *hit, "not transitive");
  }
  return v;
}

}  // namespace

bool AxiomReport::all_pass() const {
  for (const auto& v : verdicts)
    if (!v.pass) return false;
  return true;
}

const AxiomVerdict& AxiomReport::at(const std::string& axiom) const {
  for (const auto& v : verdicts)
    if (v.axiom == axiom) return v;
  throw std::out_of_range("no verdict for axiom " + axiom);
}

void validate(const FinitePAS& p) {
  if (p.names.empty()) throw Error(ErrorCode::MalformedTable, "structure has no elements");
  if (p.zero >= p.size()) throw Error(ErrorCode::MalformedTable, "zero out of range");
  check_table(p.oplus, p.size(), "oplus");
}

void validate(const FiniteOA& o) {
  validate(o.pas);
  check_table(o.product, o.pas.size(), "product");
  if (o.one >= o.pas.size()) throw Error(ErrorCode::MalformedTable, "one out of range");
  for (std::size_t a = 0; a < o.pas.size(); ++a)
    for (std::size_t b = 0; b < o.pas.size(); ++b)
      if (!o.product.defined(a, b)) {
        throw Error(ErrorCode::MalformedTable, "product is not total at (" + o.pas.names[a] +
                                                   ", " + o.pas.names[b] + ")");
      }
}

bool less_equal(const FinitePAS& p, std::size_t x, std::size_t y) {
  for (std::size_t z = 0; z < p.size(); ++z)
    if (p.oplus.at(x, z) == static_cast<std::int32_t>(y)) return true;
  return false;
}

std::optional<std::size_t> ominus(const FinitePAS& p, std::size_t x, std::size_t y) {
  for (std::size_t z = 0; z < p.size(); ++z)
    if (p.oplus.at(y, z) == static_cast<std::int32_t>(x)) return z;
  return std::nullopt;
}

std::vector<std::size_t> top_set(const FinitePAS& p) {
  std::vector<std::size_t> top;
  for (std::size_t t = 0; t < p.size(); ++t) {
    bool is_top = true;
    for (std::size_t a = 0; a < p.size() && is_top; ++a)
      if (a != p.zero && p.oplus.defined(a, t)) is_top = false;
    if (is_top) top.push_back(t);
  }
  return top;
}

AxiomReport check_pas_properties(const FinitePAS& p) {
  validate(p);
  AxiomReport r;
  r.verdicts.push_back(zero_law(p));
  r.verdicts.push_back(strong_commutativity(p.oplus, "strong_commutativity", "pas/commutativity"));
  r.verdicts.push_back(strong_associativity(p.oplus, "strong_associativity", "pas/associativity"));
  r.verdicts.push_back(weak_associativity(p.oplus));
  r.verdicts.push_back(cancellativity(p, "pas/cancellativity"));
  r.verdicts.push_back(positivity(p, "pas/positivity"));
  r.verdicts.push_back(partial_order(p));
  return r;
}

AxiomReport check_effect_algebra(const FinitePAS& p, std::size_t one) {
  validate(p);
  if (one >= p.size()) throw Error(ErrorCode::MalformedTable, "unit out of range");
  AxiomReport r;
  const std::size_t n = p.size();
  const auto unit = static_cast<std::int32_t>(one);

  r.verdicts.push_back(strong_commutativity(p.oplus, "EA1", "effect-algebra/EA1"));
  r.verdicts.push_back(strong_associativity(p.oplus, "EA2", "effect-algebra/EA2"));
  r.verdicts.push_back(weak_associativity(p.oplus));

  auto ea3 = verdict("EA3", "effect-algebra/EA3");
  std::vector<std::size_t> ortho(n, n);
  for (std::size_t a = 0; a < n && ea3.pass; ++a) {
    std::size_t count = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (p.oplus.at(a, b) == unit) {
        if (count == 0) ortho[a] = b;
        ++count;
      }
    }
    if (count != 1) {
      fail(ea3, {a}, count == 0 ? "no b with a + b = 1" : "more than one b with a + b = 1");
    }
  }
  r.verdicts.push_back(ea3);
  if (ea3.pass) r.orthosupplement = ortho;

  auto ea4 = verdict("EA4", "effect-algebra/EA4");
  if (ea3.pass) {
    const std::size_t one_prime = ortho[one];
    for (std::size_t a = 0; a < n && ea4.pass; ++a)
      if (p.oplus.defined(a, one) && a != one_prime) fail(ea4, {a}, "a + 1 defined for a != 1'");
  } else {
    for (std::size_t a = 0; a < n && ea4.pass; ++a)
      if (p.oplus.defined(a, one) && a != p.zero) fail(ea4, {a}, "a + 1 defined for a != 0");
  }
  r.verdicts.push_back(ea4);

  auto zero_is = verdict("unit_complement_is_zero", "effect-algebra/zero");
  if (!ea3.pass) {
    zero_is.pass = false;
    zero_is.note = "orthosupplement undefined";
  } else if (ortho[one] != p.zero) {
    fail(zero_is, {ortho[one]}, "1' differs from the declared zero");
  }
  r.verdicts.push_back(zero_is);

  auto ortho_v = verdict("orthoalgebra", "orthoalgebra/OA");
  // Report a maximal offender: it dominates every other offender it is
  // comparable with, so it is the most informative single witness.
  std::vector<std::size_t> offenders;
  for (std::size_t x = 0; x < n; ++x)
    if (x != p.zero && p.oplus.defined(x, x)) offenders.push_back(x);
  for (auto x : offenders) {
    bool dominated = false;
    for (auto y : offenders)
      if (y != x && less_equal(p, x, y) && !less_equal(p, y, x)) dominated = true;
    if (!dominated) {
      fail(ortho_v, {x}, "x + x defined for x != 0 (" + std::to_string(offenders.size()) +
                             " such elements)");
      break;
    }
  }
  r.verdicts.push_back(ortho_v);
  return r;
}

AxiomReport check_operation_algebra(const FiniteOA& o) {
  validate(o);
  const FinitePAS& p = o.pas;
  const PartialTable& prod = o.product;
  const std::size_t n = p.size();
  const auto zero = static_cast<std::int32_t>(p.zero);
  AxiomReport r;

  r.verdicts.push_back(strong_associativity(p.oplus, "OA1", "operation-algebra/OA1"));
  r.verdicts.push_back(strong_commutativity(p.oplus, "OA2", "operation-algebra/OA2"));
  auto oa3 = cancellativity(p, "operation-algebra/OA3");
  oa3.axiom = "OA3";
  r.verdicts.push_back(oa3);
  auto oa4 = positivity(p, "operation-algebra/OA4");
  oa4.axiom = "OA4";
  r.verdicts.push_back(oa4);
  auto zero_v = zero_law(p);
  zero_v.anchor = "operation-algebra/zero";
  r.verdicts.push_back(zero_v);

  auto oa5 = verdict("OA5", "operation-algebra/OA5");
  if (auto hit = kernels::first_triple_parallel(n, [&](auto a, auto b, auto c) {
        return prod.left_assoc(a, b, c) != prod.right_assoc(a, b, c);
      }))
    fail_triple(oa5, *hit, "(ab)c != a(bc)");
  r.verdicts.push_back(oa5);

  auto oa6 = verdict("OA6", "operation-algebra/OA6");
  for (std::size_t a = 0; a < n && oa6.pass; ++a) {
    const auto self = static_cast<std::int32_t>(a);
    if (prod.at(o.one, a) != self || prod.at(a, o.one) != self) fail(oa6, {a}, "1a or a1 != a");
  }
  r.verdicts.push_back(oa6);

  auto oa7 = verdict("OA7", "operation-algebra/OA7");
  for (std::size_t c = 0; c < n && oa7.pass; ++c)
    if (prod.at(p.zero, c) != zero || prod.at(c, p.zero) != zero) fail(oa7, {c}, "0c or c0 != 0");
  r.verdicts.push_back(oa7);

  // (a + b)c = ac + bc
  auto oa8r = verdict("OA8_right", "operation-algebra/OA8");
  if (auto hit = kernels::first_triple_parallel(n, [&](auto a, auto b, auto c) {
        auto ab = p.oplus.at(a, b);
        if (ab == PartialTable::kUndefined) return false;
        auto lhs = prod.at(static_cast<std::size_t>(ab), c);
        auto rhs = p.oplus.at(static_cast<std::size_t>(prod.at(a, c)),
                              static_cast<std::size_t>(prod.at(b, c)));
        return lhs != rhs;
      }))
    fail_triple(oa8r, *hit, "(a+b)c != ac + bc");
  r.verdicts.push_back(oa8r);

  // a(b + c) = ab + ac
  auto oa8l = verdict("OA8_left", "operation-algebra/OA8");
  if (auto hit = kernels::first_triple_parallel(n, [&](auto a, auto b, auto c) {
        auto bc = p.oplus.at(b, c);
        if (bc == PartialTable::kUndefined) return false;
        auto lhs = prod.at(a, static_cast<std::size_t>(bc));
        auto rhs = p.oplus.at(static_cast<std::size_t>(prod.at(a, b)),
                              static_cast<std::size_t>(prod.at(a, c)));
        return lhs != rhs;
      }))
    fail_triple(oa8l, *hit, "a(b+c) != ab + ac");
  r.verdicts.push_back(oa8l);

  const auto top = top_set(p);
  r.top_set = top;
  auto oa9 = verdict("OA9", "operation-algebra/OA9");
  if (std::find(top.begin(), top.end(), o.one) == top.end()) fail(oa9, {o.one}, "1 not in T");
  r.verdicts.push_back(oa9);

  auto oa10 = verdict("OA10", "operation-algebra/OA10");
  auto order = partial_order(p);
  if (!order.pass) {
    fail(oa10, order.counterexample, "<= is not a partial order: " + order.note);
  } else if (n > 12) {
    oa10.note = "finite-trivial: every finite chain contains its maximum";
  } else {
    std::vector<char> le(n * n, 0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) le[x * n + y] = less_equal(p, x, y) ? 1 : 0;
    for (std::uint32_t mask = 1; mask < (1u << n) && oa10.pass; ++mask) {
      std::vector<std::size_t> chain;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) chain.push_back(i);
      bool is_chain = true;
      for (auto x : chain)
        for (auto y : chain)
          if (!le[x * n + y] && !le[y * n + x]) is_chain = false;
      if (!is_chain) continue;
      // least upper bound within the whole structure
      std::vector<std::size_t> upper;
      for (std::size_t s = 0; s < n; ++s) {
        bool ub = true;
        for (auto x : chain) ub = ub && le[x * n + s];
        if (ub) upper.push_back(s);
      }
      bool has_sup = false;
      for (auto s : upper) {
        bool least = true;
        for (auto t : upper) least = least && le[s * n + t];
        has_sup = has_sup || least;
      }
      if (!has_sup) fail(oa10, chain, "chain without a supremum");
    }
    if (oa10.pass) oa10.note = "exhaustive chain scan";
  }
  r.verdicts.push_back(oa10);
  return r;
}

std::vector<Rational> default_grid() {
  std::vector<Rational> g;
  for (int k = 0; k <= 8; ++k) g.emplace_back(k, 8);
  for (auto& q : g) q.canonicalize();
  return g;
}

std::optional<std::size_t> TableConvexModel::scale(const Rational& s, Element a) const {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] == s) {
      auto v = scale_table.at(i).at(a);
      if (v == PartialTable::kUndefined) return std::nullopt;
      return static_cast<std::size_t>(v);
    }
  }
  return std::nullopt;
}

namespace {

struct TableProductModel {
  using Element = std::size_t;
  const TableConvexModel& base;

  std::optional<Element> oplus(Element a, Element b) const { return base.oplus(a, b); }
  std::optional<Element> scale(const Rational& s, Element a) const { return base.scale(s, a); }
  bool equal(Element a, Element b) const { return a == b; }
  Element product(Element a, Element b) const {
    return static_cast<Element>(base.product_table->at(a, b));
  }
};

}  // namespace

AxiomReport check_convex_table(const TableConvexModel& model) {
  validate(model.pas);
  if (model.scale_table.size() != model.grid.size()) {
    throw Error(ErrorCode::MalformedTable, "scale table does not match the grid");
  }
  for (const auto& row : model.scale_table) {
    if (row.size() != model.pas.size()) throw Error(ErrorCode::MalformedTable, "scale row size");
    for (auto v : row)
      if (v != PartialTable::kUndefined && (v < 0 || static_cast<std::size_t>(v) >= row.size()))
        throw Error(ErrorCode::MalformedTable, "scale entry out of range");
  }
  std::vector<std::size_t> all(model.pas.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (model.product_table) {
    check_table(*model.product_table, model.pas.size(), "product");
    for (std::size_t a = 0; a < all.size(); ++a)
      for (std::size_t b = 0; b < all.size(); ++b)
        if (!model.product_table->defined(a, b))
          throw Error(ErrorCode::MalformedTable, "product is not total");
    return check_convex_axioms(TableProductModel{model}, all, model.grid);
  }
  return check_convex_axioms(model, all, model.grid);
}

}  // namespace opalg
