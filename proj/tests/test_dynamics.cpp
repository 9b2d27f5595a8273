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

#include <cmath>

#include "opalg/dynamics.hpp"

using namespace opalg;
using opalg::testing::code_of;
using opalg::testing::data_path;
using opalg::testing::q;

namespace {

EATheory load_ea(const std::string& rel) { return io::ea_theory_from_json(io::load_json(data_path(rel))); }
AffineStateMap load_map(const std::string& rel) {
  return io::state_map_from_json(io::load_json(data_path(rel)));
}
std::optional<AffineStateMap> load_inverse(const std::string& rel) {
  return io::inverse_from_json(io::load_json(data_path(rel)));
}

CVec ket(std::size_t i) {
  CVec v = CVec::Zero(2);
  v(static_cast<Eigen::Index>(i)) = 1;
  return v;
}

CVec plus() {
  CVec v(2);
  v << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  return v;
}

// Bloch-vector oracle for the qubit trace distance: |r - s| / 2.
double bloch_distance(const DensityState& a, const DensityState& b) {
  const CMat d = a.op().mat() - b.op().mat();
  const double x = 2 * d(0, 1).real();
  const double y = -2 * d(0, 1).imag();
  const double z = (d(0, 0) - d(1, 1)).real();
  return std::sqrt(x * x + y * y + z * z) / 2;
}

EATheory qubit_theory() {
  EATheory th;
  th.carrier = Carrier::Quantum;
  th.d_a = 2;
  th.d_b = 1;
  th.states = {DensityState::pure(ket(0)), DensityState::pure(ket(1)), DensityState::pure(plus())};
  th.sampler = StateSampler::AllQuantum;
  th.samples = 50;
  return th;
}

QMat identity3() {
  QMat m(3, QVec(3, Rational(0)));
  for (std::size_t i = 0; i < 3; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

TEST_CASE("classical state maps") {
  const auto simplex = load_ea("dynamics/simplex3.json");
  CHECK(check_schrodinger(load_map("dynamics/stochastic.json"), simplex).pass);
  CHECK(check_schrodinger(AffineStateMap::rational(identity3()), simplex).pass);

  const auto neg = check_schrodinger(load_map("dynamics/negative.json"), simplex);
  CHECK_FALSE(neg.pass);
  REQUIRE(neg.witness_index);
  CHECK(*neg.witness_index == 0);
  REQUIRE(neg.witness_rational);
  CHECK(*neg.witness_rational == QVec{q("3/2"), q("-1/2"), q("0")});
  CHECK(code_of([&] { require_schrodinger(load_map("dynamics/negative.json"), simplex); }) ==
        ErrorCode::StateEscapesSet);
}

TEST_CASE("quantum state maps preserve the state set") {
  Rng rng(3);
  const auto th = qubit_theory();
  for (int t = 0; t < 10; ++t) CHECK(check_schrodinger(AffineStateMap::quantum(random_channel(2, 2, rng)), th).pass);
  // With every two-qubit state allowed the entangling map is a valid state map ...
  CHECK(check_schrodinger(load_map("dynamics/cnot.json"), load_ea("dynamics/separable_theory.json")).pass);
  // ... but it sends product states outside the product set.
  auto products = load_ea("dynamics/separable_theory.json");
  products.sampler = StateSampler::PureProducts;
  products.states = {DensityState::pure(product_vector(plus(), ket(0)))};
  const auto r = check_schrodinger(load_map("dynamics/cnot.json"), products);
  CHECK_FALSE(r.pass);
  REQUIRE(r.witness_quantum);
  CHECK_FALSE(is_separable_2x2(*r.witness_quantum, false));
}

TEST_CASE("permutations are represented by the inverse permutation on effects") {
  const auto simplex = load_ea("dynamics/simplex3.json");
  const auto perm = load_map("dynamics/permutation.json");
  const auto h = heisenberg_representable(perm, simplex);
  REQUIRE(h.representable);
  REQUIRE(h.gamma);
  CHECK(h.gamma->matrix == transpose(perm.matrix));
  CHECK(h.gamma->matrix == load_inverse("dynamics/permutation.json")->matrix);
  // sigma(w)(a) = w(gamma a) on states and effects exactly.
  for (const auto& w : simplex.linear_states)
    for (std::size_t i = 0; i < 3; ++i) {
      const auto a = unit_vector(3, i);
      CHECK(dot(mat_vec(perm.matrix, w), a) == dot(w, h.gamma->apply(a)));
    }
}

TEST_CASE("channels are Heisenberg representable") {
  Rng rng(5);
  const auto th = qubit_theory();
  for (int t = 0; t < 20; ++t) {
    const auto sigma = AffineStateMap::quantum(random_channel(2, 3, rng));
    const auto h = heisenberg_representable(sigma, th);
    REQUIRE(h.representable);
    const CMat unit = h.gamma->apply(CMat(CMat::Identity(2, 2)));
    CHECK(max_abs(unit - CMat::Identity(2, 2)) <= 1e-9);
    CHECK(adjoint_defect(sigma, *h.gamma, 20, rng) <= 1e-9);
    const auto e = random_effect(2, rng);
    CHECK(is_effect(h.gamma->apply(e)));
  }
}

TEST_CASE("sub-normalized operations are not faithful") {
  const auto th = qubit_theory();
  const auto sigma = AffineStateMap::quantum(CPMap(2, {CMat::Identity(2, 2) * 0.5}));
  CHECK_FALSE(heisenberg_representable(sigma, th).representable);
}

TEST_CASE("entangling map on a separable-effect theory is not Heisenberg representable") {
  const auto th = load_ea("dynamics/separable_theory.json");
  const auto h = heisenberg_representable(load_map("dynamics/cnot.json"), th);
  CHECK_FALSE(h.representable);
  REQUIRE(h.witness_quantum);
  REQUIRE(h.witness_image);
  CHECK(is_separable_2x2(*h.witness_quantum, true));
  CHECK_FALSE(is_separable_2x2(*h.witness_image, true));
  // Independent check of the image: conjugate the witness by CNOT directly.
  CMat cnot = CMat::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  const CMat image = cnot.adjoint() * h.witness_quantum->mat() * cnot;
  CHECK(max_abs(image - h.witness_image->mat()) < 1e-12);
  CHECK(min_eigenvalue(partial_transpose(HermOp(image), 2, 2).mat()) < -1e-6);
}

TEST_CASE("unitaries map pure states to pure states") {
  Rng rng(6);
  const auto th = qubit_theory();
  for (int t = 0; t < 20; ++t) {
    const CMat u = haar_unitary(2, rng);
    const auto sigma = AffineStateMap::quantum(CPMap::unitary(u));
    const auto inv = AffineStateMap::quantum(CPMap::unitary(u.adjoint()));
    const auto r = check_pure_to_pure(sigma, th, inv, 20);
    CHECK(r.inverse_verified);
    CHECK(r.pure_preserved);
    CHECK(std::abs(r.min_purity - 1) <= 1e-9);
    // The composite with the inverse is the identity on every listed state.
    for (const auto& s : th.states) {
      const auto back = apply_channel(*inv.channel, apply_channel(*sigma.channel, s));
      CHECK(max_abs(back.op().mat() - s.op().mat()) <= 1e-9);
    }
  }
}

TEST_CASE("verified-inverse contract") {
  const auto th = qubit_theory();
  CHECK(code_of([&] {
          check_pure_to_pure(load_map("dynamics/depolarizing.json"), th, load_inverse("dynamics/depolarizing.json"));
        }) == ErrorCode::InverseInvalid);
  const auto had = check_pure_to_pure(load_map("dynamics/hadamard.json"), th, load_inverse("dynamics/hadamard.json"));
  CHECK(had.inverse_verified);
  CHECK(had.pure_preserved);

  // Without an inverse the depolarizing channel is reported, not rejected.
  const auto dep = check_pure_to_pure(load_map("dynamics/depolarizing.json"), th, std::nullopt);
  CHECK_FALSE(dep.pure_preserved);
  // Purity of the image of a pure state: (1 + (1-p)^2) / 2 at p = 1/2.
  CHECK(dep.min_purity == doctest::Approx(0.625));
}

TEST_CASE("permutations map vertices to vertices") {
  const auto simplex = load_ea("dynamics/simplex3.json");
  const auto r = check_pure_to_pure(load_map("dynamics/permutation.json"), simplex,
                                    load_inverse("dynamics/permutation.json"));
  CHECK(r.inverse_verified);
  CHECK(r.pure_preserved);
  CHECK_FALSE(check_pure_to_pure(load_map("dynamics/stochastic.json"), simplex, std::nullopt).pure_preserved);
}

TEST_CASE("distinguishability on standard pairs") {
  Rng rng(7);
  const auto zero = DensityState::pure(ket(0));
  const auto one = DensityState::pure(ket(1));
  const auto p = DensityState::pure(plus());
  std::vector<QuantumMeasurement> fam{computational_basis(2)};
  for (int t = 0; t < 5; ++t) fam.push_back(random_projective_measurement(2, rng));
  CHECK(distinguishability(zero, zero, fam).value == 0.0);
  CHECK(std::abs(distinguishability(zero, one, fam).value - 1) <= 1e-6);
  CHECK(distinguishability(zero, one, fam).argmax == 0);

  std::vector<QuantumMeasurement> random_family;
  for (int t = 0; t < 200; ++t) random_family.push_back(random_projective_measurement(2, rng));
  const double td = bloch_distance(zero, p);
  CHECK(td == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(trace_distance(zero, p) == doctest::Approx(td).epsilon(1e-12));
  const double d = distinguishability(zero, p, random_family).value;
  CHECK(d <= td + 1e-9);
  CHECK(td - d <= 0.01);
}

TEST_CASE("trace distance matches the Bloch oracle") {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_density(2, rng);
    const auto b = random_density(2, rng);
    CHECK(std::abs(trace_distance(a, b) - bloch_distance(a, b)) <= 1e-12);
  }
}

TEST_CASE("distinguishability is a pseudometric and monotone in the family") {
  Rng rng(9);
  std::vector<QuantumMeasurement> small, large;
  for (int t = 0; t < 10; ++t) small.push_back(random_projective_measurement(2, rng));
  large = small;
  for (int t = 0; t < 10; ++t) large.push_back(random_projective_measurement(2, rng));
  for (int t = 0; t < 20; ++t) {
    const auto a = random_density(2, rng);
    const auto b = random_density(2, rng);
    const auto c = random_density(2, rng);
    const double ab = distinguishability(a, b, small).value;
    CHECK(ab == distinguishability(b, a, small).value);
    CHECK(ab <= distinguishability(a, c, small).value + distinguishability(c, b, small).value + 1e-9);
    CHECK(ab <= distinguishability(a, b, large).value);
    CHECK(distinguishability(a, a, small).value == 0.0);
  }
}

TEST_CASE("distinguishability: serial and parallel family sweeps agree") {
  Rng rng(10);
  std::vector<QuantumMeasurement> fam;
  for (int t = 0; t < 64; ++t) fam.push_back(random_projective_measurement(3, rng));
  fam.push_back(fam[5]);
  for (int t = 0; t < 5; ++t) {
    const auto a = random_density(3, rng);
    const auto b = random_density(3, rng);
    const auto x = distinguishability(a, b, fam);
    const auto y = distinguishability_serial(a, b, fam);
    CHECK(x.value == y.value);
    CHECK(x.argmax == y.argmax);
  }
}

TEST_CASE("measurements must resolve the identity") {
  const auto zero = DensityState::pure(ket(0));
  const std::vector<QuantumMeasurement> bad{{HermOp::projector(ket(0))}};
  CHECK(code_of([&] { distinguishability(zero, zero, bad); }) == ErrorCode::NotAResolution);
}

TEST_CASE("contraction under channels") {
  const auto zero = DensityState::pure(ket(0));
  const auto one = DensityState::pure(ket(1));
  const auto th = qubit_theory();
  const std::vector<QuantumMeasurement> z{computational_basis(2)};
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    const auto sigma = AffineStateMap::quantum(depolarizing(2, p));
    const auto gamma = *heisenberg_representable(sigma, th).gamma;
    const auto r = contraction_check(sigma, gamma, zero, one, z);
    CHECK(r.pass);
    CHECK(r.d_after == doctest::Approx(1 - p));
    CHECK(r.d_before == doctest::Approx(1.0));
  }
  const auto id = AffineStateMap::quantum(CPMap::identity(2));
  const auto r = contraction_check(id, *heisenberg_representable(id, th).gamma, zero, one, z);
  CHECK(r.d_after == r.d_before);

  Rng rng(11);
  std::vector<QuantumMeasurement> fam;
  for (int t = 0; t < 50; ++t) fam.push_back(random_projective_measurement(2, rng));
  for (int t = 0; t < 30; ++t) {
    const auto sigma = AffineStateMap::quantum(random_channel(2, 2, rng));
    const auto gamma = *heisenberg_representable(sigma, th).gamma;
    const auto c = contraction_check(sigma, gamma, random_density(2, rng), random_density(2, rng), fam);
    CHECK(c.pass);
    CHECK(c.d_after <= c.d_before + 1e-9);
  }
}

TEST_CASE("classical distinguishability is exact") {
  const QVec u{Rational(1), Rational(1), Rational(1)};
  std::vector<std::vector<QVec>> fam{{unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)}};
  const QVec a = unit_vector(3, 0);
  const QVec b{Rational(1, 2), Rational(1, 2), Rational(0)};
  CHECK(distinguishability(a, b, fam, u) == Rational(1, 2));
  CHECK(distinguishability(a, a, fam, u) == 0);
  CHECK(total_variation({1, 0}, {0, 1}) == 1.0);
}
