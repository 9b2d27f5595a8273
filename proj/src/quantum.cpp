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

#include "opalg/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opalg {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

void check_herm_dim(std::size_t d) {
  if (d == 0 || d > kHermDimCap) {
    throw Error(ErrorCode::DimensionCap, "operator dimension " + std::to_string(d) +
                                             " outside [1, " + std::to_string(kHermDimCap) + "]");
  }
}

void check_map_dim(std::size_t d) {
  if (d == 0 || d > kMapDimCap) {
    throw Error(ErrorCode::DimensionCap, "map dimension " + std::to_string(d) + " outside [1, " +
                                             std::to_string(kMapDimCap) + "]");
  }
}

void same_dim(const CPMap& a, const CPMap& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "maps act on different dimensions");
}

Eigen::SelfAdjointEigenSolver<CMat> eig(const CMat& m) {
  return Eigen::SelfAdjointEigenSolver<CMat>(m);
}

CMat choi_from_kraus(std::size_t d, const std::vector<CMat>& kraus) {
  const auto n = idx(d);
  CMat c = CMat::Zero(n * n, n * n);
  CVec v(n * n);
  for (const auto& k : kraus) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index a = 0; a < n; ++a) v(i * n + a) = k(a, i);
    c += v * v.adjoint();
  }
  return c;
}

}  // namespace

double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double min_eigenvalue(const CMat& m) { return eig(m).eigenvalues().minCoeff(); }
double max_eigenvalue(const CMat& m) { return eig(m).eigenvalues().maxCoeff(); }

bool is_psd(const CMat& m, double tol) { return min_eigenvalue(m) >= -tol; }

HermOp::HermOp(const CMat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "operator is not square");
  check_herm_dim(static_cast<std::size_t>(m.rows()));
  if (max_abs(m - m.adjoint()) > kExactTol) {
    throw Error(ErrorCode::NotHermitian, "max |A - A^dag| exceeds 1e-12");
  }
  m_ = (m + m.adjoint()) / 2.0;
}

HermOp HermOp::hermitian_part(const CMat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "operator is not square");
  return HermOp((m + m.adjoint()) / 2.0);
}

HermOp HermOp::identity(std::size_t d) {
  check_herm_dim(d);
  return HermOp(CMat::Identity(idx(d), idx(d)));
}

HermOp HermOp::zero(std::size_t d) {
  check_herm_dim(d);
  return HermOp(CMat::Zero(idx(d), idx(d)));
}

HermOp HermOp::projector(const CVec& v) {
  const double n = v.norm();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "projector onto the zero vector");
  const CVec u = v / n;
  return HermOp(u * u.adjoint());
}

RVec HermOp::eigenvalues() const { return eig(m_).eigenvalues(); }

HermOp HermOp::operator+(const HermOp& o) const {
  if (o.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "operator sum");
  return HermOp(m_ + o.m_);
}

HermOp HermOp::operator-(const HermOp& o) const {
  if (o.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "operator difference");
  return HermOp(m_ - o.m_);
}

HermOp HermOp::operator*(double s) const { return HermOp(m_ * s); }

DensityState::DensityState(HermOp op, double tol) : op_(std::move(op)) {
  if (std::abs(op_.trace() - 1.0) > tol) throw Error(ErrorCode::NotAState, "trace differs from 1");
  if (op_.eigenvalues().minCoeff() < -tol) {
    throw Error(ErrorCode::NotAState, "negative eigenvalue");
  }
}

DensityState DensityState::pure(const CVec& psi) { return DensityState(HermOp::projector(psi)); }

DensityState DensityState::maximally_mixed(std::size_t d) {
  return DensityState(HermOp::identity(d) * (1.0 / static_cast<double>(d)));
}

double DensityState::purity() const { return (op_.mat() * op_.mat()).trace().real(); }

HermOp gell_mann_element(std::size_t d, std::size_t index) {
  check_herm_dim(d);
  if (index >= d * d) throw Error(ErrorCode::DimensionMismatch, "basis index out of range");
  const auto n = idx(d);
  CMat b = CMat::Zero(n, n);
  const double r2 = 1.0 / std::sqrt(2.0);
  if (index == 0) {
    b = CMat::Identity(n, n) / std::sqrt(static_cast<double>(d));
    return HermOp(b);
  }
  std::size_t k = 1;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = j + 1; l < n; ++l) {
      if (k == index) {
        b(j, l) = b(l, j) = r2;
        return HermOp(b);
      }
      if (k + 1 == index) {
        b(j, l) = Complex(0, -r2);
        b(l, j) = Complex(0, r2);
        return HermOp(b);
      }
      k += 2;
    }
  const auto l = static_cast<Eigen::Index>(index - k + 1);
  const double s = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
  for (Eigen::Index i = 0; i < l; ++i) b(i, i) = s;
  b(l, l) = -static_cast<double>(l) * s;
  return HermOp(b);
}

RVec herm_to_vec(const HermOp& a) {
  const std::size_t d = a.dim();
  RVec v(idx(d * d));
  for (std::size_t k = 0; k < d * d; ++k)
    v(idx(k)) = (gell_mann_element(d, k).mat() * a.mat()).trace().real();
  return v;
}

HermOp vec_to_herm(const RVec& v, std::size_t d) {
  check_herm_dim(d);
  if (static_cast<std::size_t>(v.size()) != d * d) {
    throw Error(ErrorCode::DimensionMismatch, "coordinate vector length is not d^2");
  }
  CMat m = CMat::Zero(idx(d), idx(d));
  for (std::size_t k = 0; k < d * d; ++k) m += v(idx(k)) * gell_mann_element(d, k).mat();
  return HermOp(m);
}

bool is_effect(const HermOp& a, double tol) {
  const RVec ev = a.eigenvalues();
  return ev.minCoeff() >= -tol && ev.maxCoeff() <= 1 + tol;
}

double born(const DensityState& rho, const HermOp& e, double tol) {
  if (rho.dim() != e.dim()) throw Error(ErrorCode::DimensionMismatch, "state and effect dimensions");
  if (!is_effect(e, tol)) throw Error(ErrorCode::NotAnEffect, "spectrum outside [0, 1]");
  const double p = (rho.op().mat() * e.mat()).trace().real();
  if (p < -tol || p > 1 + tol) throw Error(ErrorCode::ToleranceBreach, "probability outside [0, 1]");
  return std::clamp(p, 0.0, 1.0);
}

std::optional<HermOp> negative_eigenspace_witness(const HermOp& x, double tol) {
  auto es = eig(x.mat());
  const auto n = idx(x.dim());
  CMat p = CMat::Zero(n, n);
  bool any = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (es.eigenvalues()(i) < -tol) {
      const CVec v = es.eigenvectors().col(i);
      p += v * v.adjoint();
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return HermOp(p);
}

BcfrmVerdict bcfrm_check(const RVec& f, std::size_t trials, Rng& rng, double tol) {
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(f.size()))));
  if (d * d != static_cast<std::size_t>(f.size())) {
    throw Error(ErrorCode::DimensionMismatch, "functional length is not a square");
  }
  BcfrmVerdict out;
  out.reconstructed = vec_to_herm(f, d);
  const RVec ev = out.reconstructed.eigenvalues();
  out.min_eigenvalue = ev.minCoeff();
  out.trace = out.reconstructed.trace();

  if (std::abs(f.dot(herm_to_vec(HermOp::identity(d))) - 1.0) > tol) {
    out.failure = ErrorCode::NotNormalized;
    return out;
  }
  for (std::size_t t = 0; t < trials; ++t) {
    HermOp e = (t % 2) ? HermOp::projector(random_pure(d, rng)) : random_effect(d, rng);
    const double v = f.dot(herm_to_vec(e));
    if (v < -tol && !out.witness) {
      out.witness = e;
      out.witness_value = v;
    }
  }
  // The spectral witness is preferred: it is the most negative effect.
  if (auto w = negative_eigenspace_witness(out.reconstructed, tol)) {
    out.witness = *w;
    out.witness_value = f.dot(herm_to_vec(*w));
  }
  if (out.witness) {
    out.failure = ErrorCode::NegativeOnCone;
    return out;
  }
  if (out.min_eigenvalue < -tol || std::abs(out.trace - 1.0) > tol) {
    out.failure = ErrorCode::ReconstructionNotPSD;
    return out;
  }
  out.pass = true;
  return out;
}

BcfrmVerdict bcfrm_verify(const RVec& f, std::size_t trials, Rng& rng, double tol) {
  auto v = bcfrm_check(f, trials, rng, tol);
  if (v.failure) {
    std::string what = "functional is not a density matrix";
    if (*v.failure == ErrorCode::NotNormalized) what = "f(I) differs from 1";
    if (*v.failure == ErrorCode::NegativeOnCone) {
      what = "negative on an effect: value " + std::to_string(v.witness_value);
    }
    throw Error(*v.failure, what);
  }
  return v;
}

SelfDualityProbe psd_self_duality_probe(std::size_t d, std::size_t trials, Rng& rng, double tol) {
  check_herm_dim(d);
  SelfDualityProbe out;
  out.min_pair_trace = std::numeric_limits<double>::infinity();
  out.max_witness_trace = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    const HermOp x = random_psd(d, rng);
    const HermOp y = random_psd(d, rng);
    out.min_pair_trace = std::min(out.min_pair_trace, (x.mat() * y.mat()).trace().real());
    ++out.pairs;
  }
  for (std::size_t t = 0; t < trials; ++t) {
    HermOp x = random_hermitian(d, rng);
    const double lo = x.eigenvalues().minCoeff();
    if (lo >= 0) x = x - HermOp::identity(d) * (lo + 1.0);
    auto p = negative_eigenspace_witness(x, tol);
    const double v = p ? (x.mat() * p->mat()).trace().real()
                       : std::numeric_limits<double>::infinity();
    out.max_witness_trace = std::max(out.max_witness_trace, v);
    ++out.non_psd;
  }
  if (trials == 0) out.min_pair_trace = out.max_witness_trace = 0;
  out.pass = out.min_pair_trace >= -tol && (trials == 0 || out.max_witness_trace < 0);
  return out;
}

CPMap::CPMap(std::size_t dim, std::vector<CMat> kraus, double tol)
    : dim_(dim), kraus_(std::move(kraus)) {
  check_map_dim(dim);
  for (const auto& k : kraus_)
    if (k.rows() != idx(dim) || k.cols() != idx(dim)) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operator shape");
    }
  if (max_eigenvalue(kraus_sum()) > 1 + tol) {
    throw Error(ErrorCode::NotTraceNonincreasing, "sum of K^dag K exceeds the identity");
  }
  choi_ = choi_from_kraus(dim_, kraus_);
}

CPMap CPMap::from_choi(const CMat& choi, std::size_t dim, double tol) {
  check_map_dim(dim);
  const auto n = idx(dim);
  if (choi.rows() != n * n || choi.cols() != n * n) {
    throw Error(ErrorCode::DimensionMismatch, "Choi matrix shape");
  }
  if (max_abs(choi - choi.adjoint()) > tol) {
    throw Error(ErrorCode::NotCompletelyPositive, "Choi matrix is not Hermitian");
  }
  auto es = eig((choi + choi.adjoint()) / 2.0);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw Error(ErrorCode::NotCompletelyPositive, "Choi matrix has a negative eigenvalue");
  }
  std::vector<CMat> kraus;
  for (Eigen::Index e = 0; e < n * n; ++e) {
    const double lambda = es.eigenvalues()(e);
    if (lambda <= kExactTol) continue;
    CMat k(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index a = 0; a < n; ++a) k(a, i) = std::sqrt(lambda) * es.eigenvectors()(i * n + a, e);
    kraus.push_back(std::move(k));
  }
  return CPMap(dim, std::move(kraus), tol);
}

CPMap CPMap::identity(std::size_t d) {
  check_map_dim(d);
  return CPMap(d, {CMat::Identity(idx(d), idx(d))});
}

CPMap CPMap::zero(std::size_t d) { return CPMap(d, {}); }

CPMap CPMap::unitary(const CMat& u) {
  if (u.rows() != u.cols()) throw Error(ErrorCode::DimensionMismatch, "unitary is not square");
  return CPMap(static_cast<std::size_t>(u.rows()), {u});
}

CMat CPMap::kraus_sum() const {
  CMat s = CMat::Zero(idx(dim_), idx(dim_));
  for (const auto& k : kraus_) s += k.adjoint() * k;
  return s;
}

CMat CPMap::apply(const CMat& x) const {
  if (x.rows() != idx(dim_) || x.cols() != idx(dim_)) {
    throw Error(ErrorCode::DimensionMismatch, "map input shape");
  }
  CMat y = CMat::Zero(idx(dim_), idx(dim_));
  for (const auto& k : kraus_) y += k * x * k.adjoint();
  return y;
}

CMat CPMap::adjoint_apply(const CMat& e) const {
  if (e.rows() != idx(dim_) || e.cols() != idx(dim_)) {
    throw Error(ErrorCode::DimensionMismatch, "map input shape");
  }
  CMat y = CMat::Zero(idx(dim_), idx(dim_));
  for (const auto& k : kraus_) y += k.adjoint() * e * k;
  return y;
}

bool CPMap::equals(const CPMap& o, double tol) const {
  return dim_ == o.dim_ && max_abs(choi_ - o.choi_) <= tol;
}

std::optional<CPMap> op_oplus(const CPMap& a, const CPMap& b, double tol) {
  same_dim(a, b);
  std::vector<CMat> k = a.kraus();
  k.insert(k.end(), b.kraus().begin(), b.kraus().end());
  if (max_eigenvalue(a.kraus_sum() + b.kraus_sum()) > 1 + tol) return std::nullopt;
  return CPMap(a.dim(), std::move(k), tol);
}

CPMap op_compose(const CPMap& a, const CPMap& b, double tol) {
  same_dim(a, b);
  std::vector<CMat> k;
  for (const auto& x : a.kraus())
    for (const auto& y : b.kraus()) k.push_back(x * y);
  return CPMap(a.dim(), std::move(k), tol);
}

std::optional<CPMap> op_ominus(const CPMap& a, const CPMap& b, double tol) {
  same_dim(a, b);
  std::vector<bool> used(a.kraus().size(), false);
  bool submultiset = true;
  for (const auto& kb : b.kraus()) {
    bool found = false;
    for (std::size_t i = 0; i < a.kraus().size() && !found; ++i) {
      if (!used[i] && max_abs(a.kraus()[i] - kb) <= kExactTol) used[i] = found = true;
    }
    if (!found) {
      submultiset = false;
      break;
    }
  }
  if (submultiset) {
    std::vector<CMat> rest;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (!used[i]) rest.push_back(a.kraus()[i]);
    return CPMap(a.dim(), std::move(rest), tol);
  }
  const CMat diff = a.choi() - b.choi();
  if (!is_psd(diff, tol)) return std::nullopt;
  if (max_eigenvalue(a.kraus_sum() - b.kraus_sum()) > 1 + tol) return std::nullopt;
  return CPMap::from_choi(diff, a.dim(), tol);
}

bool top_set_membership(const CPMap& a, double tol) {
  const auto n = idx(a.dim());
  return max_abs(a.kraus_sum() - CMat::Identity(n, n)) <= tol;
}

CMat ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat m(idx(rows), idx(cols));
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(g(rng), g(rng)) * s;
  return m;
}

HermOp random_hermitian(std::size_t d, Rng& rng) {
  const CMat g = ginibre(d, d, rng);
  return HermOp((g + g.adjoint()) / 2.0);
}

HermOp random_psd(std::size_t d, Rng& rng) {
  const CMat g = ginibre(d, d, rng);
  const CMat p = g.adjoint() * g;
  return HermOp((p + p.adjoint()) / 2.0);
}

HermOp random_effect(std::size_t d, Rng& rng) {
  const HermOp p = random_psd(d, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return p * (u(rng) / p.eigenvalues().maxCoeff());
}

DensityState random_density(std::size_t d, Rng& rng) {
  const HermOp p = random_psd(d, rng);
  return DensityState(p * (1.0 / p.trace()));
}

CVec random_pure(std::size_t d, Rng& rng) {
  CVec v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

HermOp random_non_state(std::size_t d, Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::exponential_distribution<double> e(1.0);
  const double neg = u(rng);
  RVec lambda(idx(d));
  double total = 0;
  for (Eigen::Index i = 1; i < idx(d); ++i) total += (lambda(i) = e(rng));
  lambda *= (1.0 + neg) / total;
  lambda(0) = -neg;
  const CMat v = haar_unitary(d, rng);
  return HermOp::hermitian_part(v * lambda.cast<Complex>().asDiagonal() * v.adjoint());
}

CMat haar_unitary(std::size_t d, Rng& rng) {
  const CMat z = ginibre(d, d, rng);
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ() * CMat::Identity(idx(d), idx(d));
  const CMat r = qr.matrixQR();
  for (Eigen::Index j = 0; j < idx(d); ++j) {
    const Complex rjj = r(j, j);
    const double m = std::abs(rjj);
    if (m > 0) q.col(j) *= rjj / m;
  }
  return q;
}

CPMap random_channel(std::size_t d, std::size_t kraus_count, Rng& rng) {
  check_map_dim(d);
  if (kraus_count == 0) kraus_count = 1;
  const CMat u = haar_unitary(d * kraus_count, rng);
  std::vector<CMat> k;
  for (std::size_t i = 0; i < kraus_count; ++i) k.push_back(u.block(idx(i * d), 0, idx(d), idx(d)));
  return CPMap(d, std::move(k));
}

CPMap random_operation(std::size_t d, Rng& rng) {
  std::uniform_int_distribution<std::size_t> count(2, 4);
  CPMap c = random_channel(d, count(rng), rng);
  std::vector<CMat> k(c.kraus().begin(), c.kraus().end() - 1);
  return CPMap(d, std::move(k));
}

CPMap depolarizing(std::size_t d, double p) {
  check_map_dim(d);
  const auto n = idx(d);
  const double pi = std::acos(-1.0);
  const double d2 = static_cast<double>(d * d);
  CMat shift = CMat::Zero(n, n);
  CMat clock = CMat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    shift((j + 1) % n, j) = 1;
    clock(j, j) = std::polar(1.0, 2 * pi * static_cast<double>(j) / static_cast<double>(d));
  }
  std::vector<CMat> k;
  CMat xa = CMat::Identity(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    CMat w = xa;
    for (Eigen::Index b = 0; b < n; ++b) {
      const double weight = (a == 0 && b == 0) ? 1 - p + p / d2 : p / d2;
      k.push_back(std::sqrt(weight) * w);
      w = w * clock;
    }
    xa = shift * xa;
  }
  return CPMap(d, std::move(k));
}

CMat transpose_choi(std::size_t d) {
  return choi_of(d, [](const CMat& x) -> CMat { return x.transpose(); });
}

FiniteOA tabulate_operation_algebra(const std::vector<CPMap>& maps,
                                    const std::vector<std::string>& names, double tol) {
  if (maps.empty() || names.size() != maps.size()) {
    throw Error(ErrorCode::MalformedTable, "need one name per map");
  }
  const std::size_t n = maps.size();
  auto find = [&](const CPMap& m) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i)
      if (maps[i].equals(m, tol)) return i;
    return std::nullopt;
  };
  FiniteOA o;
  o.pas.names = names;
  o.pas.oplus.resize(n);
  o.product.resize(n);
  auto zero = find(CPMap::zero(maps[0].dim()));
  auto one = find(CPMap::identity(maps[0].dim()));
  if (!zero || !one) throw Error(ErrorCode::MalformedTable, "set lacks the zero or identity map");
  o.pas.zero = *zero;
  o.one = *one;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (auto s = op_oplus(maps[x], maps[y], tol)) {
        auto i = find(*s);
        if (!i) {
          throw Error(ErrorCode::MalformedTable, names[x] + " + " + names[y] + " leaves the set");
        }
        o.pas.oplus.set(x, y, static_cast<std::int32_t>(*i));
      }
      auto p = find(op_compose(maps[x], maps[y], tol));
      if (!p) throw Error(ErrorCode::MalformedTable, names[x] + " * " + names[y] + " leaves the set");
      o.product.set(x, y, static_cast<std::int32_t>(*p));
    }
  return o;
}

FiniteOA qubit_instrument_algebra() {
  CMat p0 = CMat::Zero(2, 2), p1 = CMat::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  return tabulate_operation_algebra(
      {CPMap::zero(2), CPMap(2, {p0}), CPMap(2, {p1}), CPMap(2, {p0, p1}), CPMap::identity(2)},
      {"0", "P0", "P1", "dephase", "id"});
}

std::optional<CPMap> CPMapModel::oplus(const CPMap& a, const CPMap& b) const {
  return op_oplus(a, b, tol);
}

std::optional<CPMap> CPMapModel::scale(const Rational& s, const CPMap& a) const {
  if (s < 0 || s > 1) return std::nullopt;
  const double r = std::sqrt(s.get_d());
  std::vector<CMat> k;
  for (const auto& x : a.kraus()) k.push_back(r * x);
  return CPMap(a.dim(), std::move(k), tol);
}

OperationSweep operation_algebra_sweep(std::size_t d, std::size_t trials, Rng& rng, double tol) {
  OperationSweep out;
  const CPMapModel half{tol};
  const CPMap zero = CPMap::zero(d);
  for (std::size_t t = 0; t < trials; ++t) {
    const CPMap a = *half.scale(Rational(1, 2), random_operation(d, rng));
    const CPMap b = *half.scale(Rational(1, 2), random_operation(d, rng));
    const CPMap c = random_operation(d, rng);
    out.maps += 3;
    const CPMap ab = *op_oplus(a, b, tol);

    out.oa7 = std::max({out.oa7, max_abs(op_compose(zero, a, tol).choi()),
                        max_abs(op_compose(a, zero, tol).choi())});

    const CPMap right = op_compose(ab, c, tol);
    if (auto r = op_oplus(op_compose(a, c, tol), op_compose(b, c, tol), tol)) {
      out.oa8_right = std::max(out.oa8_right, max_abs(right.choi() - r->choi()));
    } else {
      out.oa8_right = std::numeric_limits<double>::infinity();
    }
    const CPMap left = op_compose(c, ab, tol);
    if (auto l = op_oplus(op_compose(c, a, tol), op_compose(c, b, tol), tol)) {
      out.oa8_left = std::max(out.oa8_left, max_abs(left.choi() - l->choi()));
    } else {
      out.oa8_left = std::numeric_limits<double>::infinity();
    }

    // Rebuilding from the Choi matrix forces the spectral path of the difference.
    const CPMap rebuilt = CPMap::from_choi(ab.choi(), d, tol);
    if (auto diff = op_ominus(rebuilt, b, tol)) {
      out.cancellativity = std::max(out.cancellativity, max_abs(diff->choi() - a.choi()));
    } else {
      out.cancellativity = std::numeric_limits<double>::infinity();
    }

    const double tr_ab = ab.choi().trace().real();
    out.positivity = std::max({out.positivity, a.choi().trace().real() - tr_ab,
                               b.choi().trace().real() - tr_ab});
    out.positivity = std::max(out.positivity, max_abs(op_oplus(zero, zero, tol)->choi()));

    const CPMap cand = (t % 2) ? random_channel(d, 1 + t % 3, rng) : random_operation(d, rng);
    ++out.top_checked;
    const auto n = idx(d);
    Eigen::SelfAdjointEigenSolver<CMat> es(CMat::Identity(n, n) - cand.kraus_sum());
    const RVec gap = es.eigenvalues().cwiseMax(0.0);
    const CMat root = es.eigenvectors() * gap.cwiseSqrt().cast<Complex>().asDiagonal() *
                      es.eigenvectors().adjoint();
    const bool complement_nonzero = max_abs(root) > std::sqrt(tol);
    const bool summable = op_oplus(cand, CPMap(d, {root}, tol), tol).has_value();
    const bool top_by_definition = !(complement_nonzero && summable);
    if (top_by_definition != top_set_membership(cand, tol)) ++out.top_disagreements;
  }
  return out;
}

}  // namespace opalg
