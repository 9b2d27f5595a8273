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

#include "opalg/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "opalg/kernels.hpp"
#include "opalg/lp.hpp"

namespace opalg {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

QMat mat_mul(const QMat& a, const QMat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat c(n, zeros(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

bool is_identity(const QMat& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

void check_square(const QMat& m, std::size_t n) {
  if (m.size() != n) throw Error(ErrorCode::DimensionMismatch, "map size differs from state dimension");
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "map is not square");
}

void check_rational(const AffineStateMap& s, const EATheory& th) {
  if (th.carrier != Carrier::Linear || !th.lea) {
    throw Error(ErrorCode::UnsupportedCarrier, "rational map needs a linear carrier");
  }
  check_square(s.matrix, th.lea->cone().dim());
}

void check_quantum(const AffineStateMap& s, const EATheory& th) {
  if (th.carrier == Carrier::Linear) {
    throw Error(ErrorCode::UnsupportedCarrier, "quantum map on a linear carrier");
  }
  if (s.channel->dim() != th.dim()) throw Error(ErrorCode::DimensionMismatch, "channel dimension");
}

bool in_hull(const std::vector<QVec>& pts, const QVec& x) {
  if (pts.empty()) return false;
  QMat a(x.size() + 1, zeros(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (std::size_t i = 0; i < x.size(); ++i) a[i][j] = pts[j][i];
    a[x.size()][j] = 1;
  }
  QVec b = x;
  b.push_back(1);
  return lp::feasible(a, b).status == lp::Status::Optimal;
}

/// Pure generators of the theory's state set: listed pure states, then
/// seeded samples (products when the state set is separable).
std::vector<DensityState> pure_generators(const EATheory& th, std::size_t samples, double tol) {
  std::vector<DensityState> out;
  for (const auto& s : th.states)
    if (std::abs(s.purity() - 1) <= tol) out.push_back(s);
  std::seed_seq seq{th.seed, std::uint64_t{0xd1a}};
  Rng rng(seq);
  for (std::size_t k = 0; k < samples; ++k) {
    if (th.sampler == StateSampler::PureProducts) {
      out.push_back(DensityState::pure(product_vector(random_pure(th.d_a, rng), random_pure(th.d_b, rng))));
    } else {
      out.push_back(DensityState::pure(random_pure(th.dim(), rng)));
    }
  }
  return out;
}

std::optional<DensityState> image_in_set(const CPMap& c, const DensityState& rho, const EATheory& th,
                                         double tol) {
  const HermOp img = HermOp::hermitian_part(c.apply(rho.op().mat()));
  if (std::abs(img.trace() - 1) > tol || img.eigenvalues().minCoeff() < -tol) return std::nullopt;
  if (th.sampler == StateSampler::PureProducts && !separability(img, th.d_a, th.d_b, false, tol).separable) {
    return std::nullopt;
  }
  return DensityState(img, tol);
}

/// Product projectors onto local basis and superposition vectors.
std::vector<HermOp> product_probe_effects(std::size_t d_a, std::size_t d_b, Rng& rng, std::size_t extra) {
  auto local = [](std::size_t d) {
    std::vector<CVec> v;
    for (std::size_t i = 0; i < d; ++i) v.push_back(CVec::Unit(idx(d), idx(i)));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        for (Complex ph : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
          CVec w = CVec::Unit(idx(d), idx(i)) + ph * CVec::Unit(idx(d), idx(j));
          v.push_back(w / w.norm());
        }
    return v;
  };
  std::vector<HermOp> out;
  for (const auto& a : local(d_a))
    for (const auto& b : local(d_b)) out.push_back(HermOp::projector(product_vector(a, b)));
  for (std::size_t k = 0; k < extra; ++k) {
    out.push_back(HermOp::projector(product_vector(random_pure(d_a, rng), random_pure(d_b, rng))));
  }
  return out;
}

bool separating_quantum(const EATheory& th) {
  if (th.sampler != StateSampler::None) return true;
  const std::size_t n = th.dim() * th.dim();
  Eigen::MatrixXd m(idx(n), idx(th.states.size()));
  for (std::size_t s = 0; s < th.states.size(); ++s) m.col(idx(s)) = herm_to_vec(th.states[s].op());
  return static_cast<std::size_t>(Eigen::FullPivLU<Eigen::MatrixXd>(m).rank()) == n;
}

void check_family(const std::vector<QuantumMeasurement>& family, std::size_t d, double tol) {
  if (family.empty()) throw Error(ErrorCode::NotAResolution, "empty measurement family");
  const CMat id = CMat::Identity(idx(d), idx(d));
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (family[k].empty()) throw Error(ErrorCode::NotAResolution, "measurement " + std::to_string(k) + " is empty");
    CMat sum = CMat::Zero(idx(d), idx(d));
    for (const auto& e : family[k]) {
      if (e.dim() != d) throw Error(ErrorCode::DimensionMismatch, "effect dimension in measurement " + std::to_string(k));
      if (!is_effect(e, tol)) {
        throw Error(ErrorCode::NotAResolution, "measurement " + std::to_string(k) + " holds a non-effect");
      }
      sum += e.mat();
    }
    const double dev = max_abs(sum - id);
    if (dev > tol) {
      throw Error(ErrorCode::NotAResolution, "measurement " + std::to_string(k) +
                                                 " sums to I with deviation " + std::to_string(dev));
    }
  }
}

std::vector<double> outcome_distribution(const DensityState& s, const QuantumMeasurement& m) {
  std::vector<double> p;
  for (const auto& e : m) p.push_back((s.op().mat() * e.mat()).trace().real());
  return p;
}

template <bool Parallel>
Distinguishability distinguish(const DensityState& omega, const DensityState& rho,
                               const std::vector<QuantumMeasurement>& family,
                               const ClassicalDistance& base, double tol) {
  if (omega.dim() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "state dimensions differ");
  check_family(family, omega.dim(), tol);
  auto each = [&](std::size_t k) {
    return base(outcome_distribution(omega, family[k]), outcome_distribution(rho, family[k]));
  };
  std::vector<double> v = Parallel ? kernels::map_parallel<double>(family.size(), each)
                                   : kernels::map_serial<double>(family.size(), each);
  const auto i = kernels::argmax_lowest(v, [](double x) { return x; });
  return Distinguishability{v[i], i};
}

}  // namespace

CMat EAEndomorphism::apply(const CMat& e) const {
  CMat y = CMat::Zero(e.rows(), e.cols());
  for (const auto& k : adjoint_kraus) y += k * e * k.adjoint();
  return y;
}

HermOp EAEndomorphism::apply(const HermOp& e) const { return HermOp::hermitian_part(apply(e.mat())); }

DensityState apply_channel(const CPMap& c, const DensityState& rho) {
  return DensityState(HermOp::hermitian_part(c.apply(rho.op().mat())));
}

SchrodingerReport check_schrodinger(const AffineStateMap& sigma, const EATheory& th,
                                    std::size_t trials, double tol) {
  SchrodingerReport r;
  std::seed_seq seq{th.seed, std::uint64_t{0x5c4}};
  Rng rng(seq);
  if (!sigma.is_quantum()) {
    check_rational(sigma, th);
    const auto& gens = th.linear_states;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      ++r.generators_checked;
      QVec img = mat_vec(sigma.matrix, gens[g]);
      if (!in_hull(gens, img)) {
        r.pass = false;
        r.witness_index = g;
        r.witness_rational = img;
        r.note = "image of generator " + std::to_string(g) + " leaves the state set";
        return r;
      }
    }
    std::uniform_int_distribution<std::size_t> pick(0, gens.empty() ? 0 : gens.size() - 1);
    std::uniform_int_distribution<int> num(0, 16);
    for (std::size_t t = 0; t < trials && !gens.empty(); ++t) {
      const Rational lam(num(rng), 16);
      const QVec& x = gens[pick(rng)];
      const QVec& y = gens[pick(rng)];
      const QVec lhs = mat_vec(sigma.matrix, add(scale(lam, x), scale(1 - lam, y)));
      const QVec rhs = add(scale(lam, mat_vec(sigma.matrix, x)), scale(1 - lam, mat_vec(sigma.matrix, y)));
      ++r.affinity_checked;
      if (lhs != rhs) {
        r.pass = false;
        r.note = "affinity fails";
        return r;
      }
    }
    return r;
  }

  check_quantum(sigma, th);
  const CPMap& c = *sigma.channel;
  const auto gens = pure_generators(th, trials, tol);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    ++r.generators_checked;
    if (!image_in_set(c, gens[g], th, tol)) {
      r.pass = false;
      r.witness_index = g;
      r.witness_quantum = HermOp::hermitian_part(c.apply(gens[g].op().mat()));
      r.note = "image of a pure generator leaves the state set";
      return r;
    }
  }
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t t = 0; t + 1 < gens.size() && t < trials; ++t) {
    const double lam = u(rng);
    const CMat mix = lam * gens[t].op().mat() + (1 - lam) * gens[t + 1].op().mat();
    const CMat lhs = c.apply(mix);
    const CMat rhs = lam * c.apply(gens[t].op().mat()) + (1 - lam) * c.apply(gens[t + 1].op().mat());
    ++r.affinity_checked;
    if (max_abs(lhs - rhs) > tol) {
      r.pass = false;
      r.note = "affinity fails";
      return r;
    }
  }
  return r;
}

SchrodingerReport require_schrodinger(const AffineStateMap& sigma, const EATheory& theory,
                                      std::size_t trials, double tol) {
  auto r = check_schrodinger(sigma, theory, trials, tol);
  if (!r.pass) throw Error(ErrorCode::StateEscapesSet, r.note);
  return r;
}

HeisenbergResult heisenberg_representable(const AffineStateMap& sigma, const EATheory& th, double tol) {
  HeisenbergResult out;
  if (!sigma.is_quantum()) {
    check_rational(sigma, th);
    const auto& lea = *th.lea;
    const std::size_t n = lea.cone().dim();
    if (rank(th.linear_states) != n) {
      throw Error(ErrorCode::NonSeparatingStates, "listed states do not span the dual space");
    }
    EAEndomorphism gamma;
    gamma.matrix = transpose(sigma.matrix);
    gamma.dim = n;
    if (gamma.apply(lea.unit()) != lea.unit()) {
      out.witness_rational = lea.unit();
      out.note = "adjoint does not fix the unit";
      return out;
    }
    for (const auto& g : lea.cone().generators()) {
      ++out.effects_checked;
      if (membership(lea.cone(), gamma.apply(g)).member) continue;
      QVec witness = g;
      try {
        Rational top = 0;
        for (const auto& v : state_polytope(lea).vertices) top = std::max(top, dot(v, g));
        if (top > 0) witness = scale(1 / top, g);
      } catch (const Error&) {
      }
      out.witness_rational = witness;
      out.note = "adjoint leaves the positive cone";
      return out;
    }
    out.representable = true;
    out.gamma = std::move(gamma);
    return out;
  }

  check_quantum(sigma, th);
  if (!separating_quantum(th)) {
    throw Error(ErrorCode::NonSeparatingStates, "listed states do not span the Hermitian operators");
  }
  const CPMap& c = *sigma.channel;
  EAEndomorphism gamma;
  gamma.dim = c.dim();
  for (const auto& k : c.kraus()) gamma.adjoint_kraus.push_back(k.adjoint());
  const HermOp id = HermOp::identity(c.dim());
  if (max_abs(gamma.apply(id.mat()) - id.mat()) > tol) {
    out.witness_quantum = id;
    out.witness_image = gamma.apply(id);
    out.note = "adjoint is not unital";
    return out;
  }
  std::seed_seq seq{th.seed, std::uint64_t{0x4e5}};
  Rng rng(seq);
  std::vector<HermOp> probes;
  if (th.carrier == Carrier::Separable) {
    probes = product_probe_effects(th.d_a, th.d_b, rng, 50);
  } else {
    for (std::size_t k = 0; k < 50; ++k) {
      probes.push_back(random_effect(c.dim(), rng));
      probes.push_back(HermOp::projector(random_pure(c.dim(), rng)));
    }
  }
  for (const auto& e : probes) {
    ++out.effects_checked;
    const HermOp img = gamma.apply(e);
    const bool ok = th.carrier == Carrier::Separable
                        ? separability(img, th.d_a, th.d_b, true, tol).separable
                        : is_effect(img, tol);
    if (!ok) {
      out.witness_quantum = e;
      out.witness_image = img;
      out.note = "adjoint pushes an effect out of the effect interval";
      return out;
    }
  }
  out.representable = true;
  out.gamma = std::move(gamma);
  return out;
}

double adjoint_defect(const AffineStateMap& sigma, const EAEndomorphism& gamma, std::size_t pairs, Rng& rng) {
  double worst = 0;
  if (!sigma.is_quantum()) {
    const std::size_t n = sigma.matrix.size();
    std::uniform_int_distribution<int> num(-8, 8);
    for (std::size_t t = 0; t < pairs; ++t) {
      QVec w(n), a(n);
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = num(rng);
        a[i] = num(rng);
      }
      const Rational gap = dot(mat_vec(sigma.matrix, w), a) - dot(w, gamma.apply(a));
      worst = std::max(worst, std::abs(gap.get_d()));
    }
    return worst;
  }
  const std::size_t d = sigma.channel->dim();
  for (std::size_t t = 0; t < pairs; ++t) {
    const DensityState rho = random_density(d, rng);
    const HermOp e = random_effect(d, rng);
    const double lhs = (sigma.channel->apply(rho.op().mat()) * e.mat()).trace().real();
    const double rhs = (rho.op().mat() * gamma.apply(e.mat())).trace().real();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

PurityReport check_pure_to_pure(const AffineStateMap& sigma, const EATheory& th,
                                const std::optional<AffineStateMap>& inverse, std::size_t samples,
                                double tol) {
  PurityReport r;
  if (inverse) {
    if (inverse->is_quantum() != sigma.is_quantum()) {
      throw Error(ErrorCode::InverseInvalid, "inverse acts on a different carrier");
    }
    if (sigma.is_quantum()) {
      const CPMap id = CPMap::identity(sigma.channel->dim());
      if (!op_compose(*sigma.channel, *inverse->channel).equals(id, tol) ||
          !op_compose(*inverse->channel, *sigma.channel).equals(id, tol)) {
        throw Error(ErrorCode::InverseInvalid, "composition with the supplied inverse is not the identity");
      }
    } else {
      if (!is_identity(mat_mul(sigma.matrix, inverse->matrix)) ||
          !is_identity(mat_mul(inverse->matrix, sigma.matrix))) {
        throw Error(ErrorCode::InverseInvalid, "composition with the supplied inverse is not the identity");
      }
    }
    r.inverse_verified = true;
  }

  if (!sigma.is_quantum()) {
    check_rational(sigma, th);
    for (std::size_t g = 0; g < th.linear_states.size(); ++g) {
      ++r.checked;
      const QVec img = mat_vec(sigma.matrix, th.linear_states[g]);
      if (std::find(th.linear_states.begin(), th.linear_states.end(), img) == th.linear_states.end()) {
        r.pure_preserved = false;
        r.min_purity = 0;
        if (!r.witness_index) r.witness_index = g;
      }
    }
    return r;
  }

  check_quantum(sigma, th);
  const auto gens = pure_generators(th, samples, tol);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    ++r.checked;
    const double p = apply_channel(*sigma.channel, gens[g]).purity();
    r.min_purity = std::min(r.min_purity, p);
    if (std::abs(p - 1) > tol && !r.witness_index) {
      r.pure_preserved = false;
      r.witness_index = g;
    }
  }
  return r;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw Error(ErrorCode::LengthMismatch, "distributions differ in length");
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s / 2;
}

Distinguishability distinguishability(const DensityState& omega, const DensityState& rho,
                                      const std::vector<QuantumMeasurement>& family,
                                      const ClassicalDistance& base, double tol) {
  return distinguish<true>(omega, rho, family, base, tol);
}

Distinguishability distinguishability_serial(const DensityState& omega, const DensityState& rho,
                                             const std::vector<QuantumMeasurement>& family,
                                             const ClassicalDistance& base, double tol) {
  return distinguish<false>(omega, rho, family, base, tol);
}

Rational distinguishability(const QVec& omega, const QVec& rho,
                            const std::vector<std::vector<QVec>>& family, const QVec& unit) {
  if (family.empty()) throw Error(ErrorCode::NotAResolution, "empty measurement family");
  Rational best = 0;
  for (std::size_t k = 0; k < family.size(); ++k) {
    QVec sum = zeros(unit.size());
    Rational tv = 0;
    for (const auto& e : family[k]) {
      if (e.size() != unit.size()) throw Error(ErrorCode::DimensionMismatch, "effect length");
      sum = add(sum, e);
      tv += abs(dot(omega, e) - dot(rho, e));
    }
    if (family[k].empty() || sum != unit) {
      throw Error(ErrorCode::NotAResolution, "measurement " + std::to_string(k) + " does not sum to the unit");
    }
    best = std::max(best, Rational(tv / 2));
  }
  return best;
}

double trace_distance(const DensityState& a, const DensityState& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "state dimensions differ");
  return (a.op() - b.op()).eigenvalues().cwiseAbs().sum() / 2;
}

QuantumMeasurement computational_basis(std::size_t d) {
  QuantumMeasurement m;
  for (std::size_t i = 0; i < d; ++i) m.push_back(HermOp::projector(CVec::Unit(idx(d), idx(i))));
  return m;
}

QuantumMeasurement random_projective_measurement(std::size_t d, Rng& rng) {
  const CMat u = haar_unitary(d, rng);
  QuantumMeasurement m;
  for (std::size_t i = 0; i < d; ++i) m.push_back(HermOp::projector(u.col(idx(i))));
  return m;
}

ContractionReport contraction_check(const AffineStateMap& sigma, const EAEndomorphism& gamma,
                                    const DensityState& omega, const DensityState& rho,
                                    const std::vector<QuantumMeasurement>& family, double tol) {
  if (!sigma.is_quantum()) throw Error(ErrorCode::UnsupportedCarrier, "contraction check needs a quantum map");
  ContractionReport r;
  const DensityState so = apply_channel(*sigma.channel, omega);
  const DensityState sr = apply_channel(*sigma.channel, rho);
  r.d_after = distinguishability(so, sr, family, total_variation, tol).value;
  std::vector<QuantumMeasurement> wider = family;
  for (const auto& m : family) {
    QuantumMeasurement pulled;
    for (const auto& e : m) pulled.push_back(gamma.apply(e));
    wider.push_back(std::move(pulled));
  }
  r.d_before = distinguishability(omega, rho, wider, total_variation, tol).value;
  r.pass = r.d_after <= r.d_before + tol;
  return r;
}

}  // namespace opalg
