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
#include <cmath>

#include "opalg/composites.hpp"

using namespace opalg;
using opalg::testing::code_of;
using opalg::testing::data_path;
using opalg::testing::q;

namespace {

CVec ket(std::size_t d, std::size_t i) {
  CVec v = CVec::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(i)) = 1;
  return v;
}

CVec bell() {
  CVec v = CVec::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  return v;
}

// Independent oracle: the largest squared Schmidt coefficient, from the
// singular values of the reshaped amplitude matrix.
double schmidt_top(const CVec& v, std::size_t da, std::size_t db) {
  CMat m(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(db));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v(static_cast<Eigen::Index>(i * db + j));
  const double s = Eigen::JacobiSVD<CMat>(m).singularValues()(0);
  return s * s / v.squaredNorm();
}

EATheory load_ea(const std::string& rel) { return io::ea_theory_from_json(io::load_json(data_path(rel))); }

}  // namespace

TEST_CASE("product effects") {
  CHECK(max_abs(product_effect(HermOp::identity(2), HermOp::identity(2)).mat() - CMat::Identity(4, 4)) == 0.0);
  const auto p = product_effect(HermOp::projector(ket(2, 0)), HermOp::projector(ket(2, 0)));
  const RVec ev = p.eigenvalues();
  CHECK(ev(3) == doctest::Approx(1.0));
  CHECK(std::abs(ev(2)) < 1e-12);

  Rng rng(1);
  const auto e = random_effect(3, rng);
  const RVec prod = product_effect(HermOp::identity(2) * 0.5, e).eigenvalues();
  const RVec base = e.eigenvalues();
  for (Eigen::Index i = 0; i < 3; ++i) {
    CHECK(prod(2 * i) == doctest::Approx(base(i) / 2).epsilon(1e-12));
    CHECK(prod(2 * i + 1) == doctest::Approx(base(i) / 2).epsilon(1e-12));
  }
  CHECK(code_of([] { product_effect(HermOp::identity(2) * 2.0, HermOp::identity(2)); }) == ErrorCode::NotAnEffect);
}

TEST_CASE("partial transpose of the Bell state") {
  const auto pt = partial_transpose(HermOp::projector(bell()), 2, 2);
  const RVec ev = pt.eigenvalues();
  CHECK(ev(0) == doctest::Approx(-0.5));
  for (Eigen::Index i = 1; i < 4; ++i) CHECK(ev(i) == doctest::Approx(0.5));
  CHECK(code_of([] { partial_transpose(HermOp::identity(4), 3, 2); }) == ErrorCode::DimensionUnsupported);
  CHECK(code_of([] { is_separable_2x2(HermOp::identity(9) * (1.0 / 9), false); }) == ErrorCode::DimensionUnsupported);
}

TEST_CASE("separability at two qubits") {
  CHECK_FALSE(is_separable_2x2(HermOp::projector(bell()), false));
  CHECK(is_separable_2x2(HermOp::projector(product_vector(ket(2, 0), ket(2, 0))), false));
  CHECK(is_separable_2x2(HermOp::identity(4) * 0.25, false));
  const auto v = separability(HermOp::projector(bell()), 2, 2, false);
  CHECK(v.exact);
  CHECK(v.min_pt_eigenvalue == doctest::Approx(-0.5));
  CHECK_FALSE(separability(HermOp::identity(8) * 0.125, 2, 4, false).exact);
  // As an effect, I - X must also be separable: I - Bell projector is.
  CHECK_FALSE(is_separable_2x2(HermOp::projector(bell()), true));
  CHECK(is_separable_2x2(HermOp::identity(4) - HermOp::projector(product_vector(ket(2, 0), ket(2, 1))), true));
}

TEST_CASE("maximal product overlap on standard inputs") {
  const auto b = max_product_overlap(HermOp::projector(bell()), 2, 2);
  CHECK(std::abs(b.value - 0.5) <= 1e-6);
  CHECK(std::abs(b.value - schmidt_top(bell(), 2, 2)) <= 1e-6);

  const auto p = max_product_overlap(HermOp::projector(product_vector(ket(2, 0), ket(2, 0))), 2, 2);
  CHECK(p.value == doctest::Approx(1.0));
  CHECK(std::norm(p.psi(0)) == doctest::Approx(1.0));
  CHECK(std::norm(p.chi(0)) == doctest::Approx(1.0));

  CHECK(max_product_overlap(HermOp::identity(4) * 0.25, 2, 2).value == doctest::Approx(0.25));
  CHECK(code_of([] { max_product_overlap(HermOp::identity(4) * -1.0, 2, 2); }) == ErrorCode::NotPSD);
}

TEST_CASE("product overlap matches the Schmidt oracle on random pure states") {
  Rng rng(17);
  for (auto [da, db] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 3}})
    for (int t = 0; t < 10; ++t) {
      const auto v = random_pure(da * db, rng);
      const auto r = max_product_overlap(HermOp::projector(v), da, db);
      CHECK(std::abs(r.value - schmidt_top(v, da, db)) <= 1e-6);
    }
}

TEST_CASE("product overlap is invariant under local unitaries") {
  Rng rng(18);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_psd(4, rng);
    const CMat u = haar_unitary(2, rng);
    const CMat w = haar_unitary(2, rng);
    CMat uw(4, 4);
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j) uw.block(2 * i, 2 * j, 2, 2) = u(i, j) * w;
    const auto y = HermOp::hermitian_part(uw * x.mat() * uw.adjoint());
    CHECK(std::abs(max_product_overlap(x, 2, 2).value - max_product_overlap(y, 2, 2).value) <= 1e-8);
  }
}

TEST_CASE("product overlap: serial and parallel restarts agree") {
  Rng rng(19);
  for (int t = 0; t < 5; ++t) {
    const auto x = random_psd(6, rng);
    const auto a = max_product_overlap(x, 2, 3, 16, 5);
    const auto b = max_product_overlap_serial(x, 2, 3, 16, 5);
    CHECK(a.value == b.value);
    CHECK(a.restart == b.restart);
    CHECK(max_abs(a.psi - b.psi) == 0.0);
  }
}

TEST_CASE("tests for states of a separable-effect theory") {
  EATheory th;
  th.carrier = Carrier::Separable;
  th.d_a = th.d_b = 2;
  th.states = {DensityState::pure(product_vector(ket(2, 0), ket(2, 0))), DensityState::pure(bell()),
               DensityState::maximally_mixed(4)};
  th.sampler = StateSampler::AllQuantum;
  th.samples = 500;

  const auto prod = find_test(th, 0);
  REQUIRE(prod.certificate);
  const auto& cert = *prod.certificate;
  REQUIRE(cert.effect);
  CHECK(max_abs(cert.effect->mat() - HermOp::projector(product_vector(ket(2, 0), ket(2, 0))).mat()) < 1e-6);
  CHECK(cert.value >= 1 - 1e-6);
  CHECK(cert.margin < 1 - 1e-6);
  CHECK(cert.others_checked >= 502);

  const auto ent = find_test(th, 1);
  CHECK_FALSE(ent.certificate);
  CHECK(std::abs(ent.best_value - 0.5) <= 1e-6);

  CHECK_FALSE(find_test(th, 2).certificate);
  CHECK(code_of([&] { find_test(th, 7); }) == ErrorCode::StateNotInTheory);
}

TEST_CASE("mixtures are never testable") {
  EATheory th;
  th.carrier = Carrier::Quantum;
  th.d_a = 2;
  th.d_b = 1;
  const auto s0 = DensityState::pure(ket(2, 0));
  const auto s1 = DensityState::pure(ket(2, 1));
  th.states = {s0, s1};
  for (double lambda : {0.1, 0.5, 0.9}) th.states.emplace_back(s0.op() * lambda + s1.op() * (1 - lambda));
  for (std::size_t k = 2; k < th.states.size(); ++k) {
    CHECK_FALSE(find_test(th, k).certificate);
    CHECK_FALSE(find_test(th, th.states[k]).certificate);
  }
  CHECK(find_test(th, 0).certificate);
}

TEST_CASE("axiom testability on the shipped theories") {
  const auto qubit = check_axiom_testability(load_ea("quantum/testability_qubit.json"));
  CHECK(qubit.pass);
  for (const auto& s : qubit.per_state) {
    REQUIRE(s.certificate);
    CHECK(s.certificate->margin < 1 - 1e-6);
  }

  const auto full = check_axiom_testability(load_ea("quantum/testability_sep_full.json"));
  CHECK_FALSE(full.pass);
  REQUIRE(full.first_failure);
  CHECK(*full.first_failure == 1);

  const auto products = check_axiom_testability(load_ea("quantum/testability_sep_products.json"));
  CHECK(products.pass);
}

TEST_CASE("linear carrier tests are vertices of the state polytope") {
  EATheory th;
  th.carrier = Carrier::Linear;
  th.lea.emplace(PolyCone::orthant(3), QVec{Rational(1), Rational(1), Rational(1)});
  th.linear_states = {QVec{Rational(1), Rational(0), Rational(0)}, QVec{Rational(0), Rational(1), Rational(0)},
                      QVec{Rational(1, 2), Rational(1, 2), Rational(0)}};
  const auto v = find_test(th, 0);
  REQUIRE(v.certificate);
  const auto& e = v.certificate->linear_effect;
  CHECK(th.lea->contains(e));
  CHECK(dot(e, th.linear_states[0]) == 1);
  CHECK(dot(e, th.linear_states[1]) < 1);
  CHECK(dot(e, th.linear_states[2]) < 1);
  CHECK_FALSE(find_test(th, 2).certificate);
}

namespace {

BipartiteTable local_table(const std::vector<std::vector<Rational>>& pa,
                           const std::vector<std::vector<Rational>>& pb) {
  BipartiteTable t;
  t.a_choices = pa.size();
  t.b_choices = pb.size();
  t.a_outcomes = pa[0].size();
  t.b_outcomes = pb[0].size();
  t.p.resize(1);
  t.p[0].resize(t.a_choices);
  for (std::size_t i = 0; i < t.a_choices; ++i) {
    t.p[0][i].resize(t.b_choices);
    for (std::size_t j = 0; j < t.b_choices; ++j) {
      t.p[0][i][j].assign(t.a_outcomes, std::vector<Rational>(t.b_outcomes));
      for (std::size_t a = 0; a < t.a_outcomes; ++a)
        for (std::size_t b = 0; b < t.b_outcomes; ++b) t.p[0][i][j][a][b] = pa[i][a] * pb[j][b];
    }
  }
  return t;
}

}  // namespace

TEST_CASE("influence freedom") {
  const auto pr = io::bipartite_from_json(io::load_json(data_path("prbox.json")));
  // Marginals of the standard table computed by hand are all one half.
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t a = 0; a < 2; ++a) CHECK(pr.p[0][i][j][a][0] + pr.p[0][i][j][a][1] == q("1/2"));
  CHECK(influence_free(pr).influence_free);

  const auto sig = io::bipartite_from_json(io::load_json(data_path("signalling.json")));
  const auto v = influence_free(sig);
  CHECK_FALSE(v.influence_free);
  REQUIRE(v.witness);
  CHECK(v.witness->p_first != v.witness->p_second);

  const auto prod = local_table({{q("1/3"), q("2/3")}, {q("1"), q("0")}},
                                {{q("1/4"), q("3/4")}, {q("1/2"), q("1/2")}, {q("0"), q("1")}});
  CHECK(influence_free(prod).influence_free);

  auto broken = prod;
  broken.p[0][0][0][0][0] += 1;
  CHECK(code_of([&] { validate(broken); }) == ErrorCode::NormalizationViolation);
}

TEST_CASE("bipartite tables from labeled theories") {
  RawTheory raw;
  for (const char* i : {"0", "1"})
    for (const char* j : {"0", "1"}) {
      Measurement m{std::string(i) + "|" + j, {}};
      for (const char* a : {"0", "1"})
        for (const char* b : {"0", "1"}) m.outcomes.push_back(m.name + ":" + a + "|" + b);
      raw.measurements.push_back(m);
    }
  StateTable s;
  for (const auto& m : raw.measurements)
    for (const auto& o : m.outcomes) s[o] = q("1/4");
  raw.states = {s};
  const auto t = bipartite_from_theory(PhenoTheory::validate(raw));
  CHECK(t.a_choices == 2);
  CHECK(t.b_outcomes == 2);
  CHECK(influence_free(t).influence_free);

  raw.measurements[0].name = "bad";
  CHECK(code_of([&] { bipartite_from_theory(PhenoTheory::validate(raw)); }) == ErrorCode::MalformedLabeling);
}
