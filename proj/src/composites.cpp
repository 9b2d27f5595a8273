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

#include "opalg/composites.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "opalg/kernels.hpp"
#include "opalg/lp.hpp"

namespace opalg {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

void check_split(std::size_t dim, std::size_t d_a, std::size_t d_b) {
  if (d_a == 0 || d_b == 0 || d_a * d_b != dim) {
    throw Error(ErrorCode::DimensionUnsupported,
                "operator of dimension " + std::to_string(dim) + " does not split as " +
                    std::to_string(d_a) + " x " + std::to_string(d_b));
  }
}

CVec top_eigenvector(const CMat& m, double& value) {
  Eigen::SelfAdjointEigenSolver<CMat> es((m + m.adjoint()) / 2.0);
  const auto last = es.eigenvalues().size() - 1;
  value = es.eigenvalues()(last);
  return es.eigenvectors().col(last);
}

ProductOverlap alternate(const CMat& x, std::size_t d_a, std::size_t d_b, std::uint64_t seed,
                         std::size_t restart) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(restart)};
  Rng rng(seq);
  const auto na = idx(d_a), nb = idx(d_b);
  CVec psi = random_pure(d_a, rng);
  CVec chi;
  double best = -1;
  for (int iter = 0; iter < 1000; ++iter) {
    CMat mb = CMat::Zero(nb, nb);
    for (Eigen::Index a = 0; a < na; ++a)
      for (Eigen::Index a2 = 0; a2 < na; ++a2)
        mb += std::conj(psi(a)) * psi(a2) * x.block(a * nb, a2 * nb, nb, nb);
    double v1 = 0;
    chi = top_eigenvector(mb, v1);
    CMat ma = CMat::Zero(na, na);
    for (Eigen::Index a = 0; a < na; ++a)
      for (Eigen::Index a2 = 0; a2 < na; ++a2)
        ma(a, a2) = chi.dot(x.block(a * nb, a2 * nb, nb, nb) * chi);
    double v2 = 0;
    psi = top_eigenvector(ma, v2);
    const bool settled = v2 - best < 1e-10;
    best = std::max(best, v2);
    if (settled) break;
  }
  return ProductOverlap{best, psi, chi, restart};
}

ProductOverlap reduce(std::vector<ProductOverlap> runs) {
  const auto i = kernels::argmax_lowest(runs, [](const ProductOverlap& r) { return r.value; });
  return runs[i];
}

void overlap_pre(const HermOp& x, std::size_t d_a, std::size_t d_b, double tol) {
  check_split(x.dim(), d_a, d_b);
  if (x.eigenvalues().minCoeff() < -tol) throw Error(ErrorCode::NotPSD, "operator has a negative eigenvalue");
}

std::vector<DensityState> sample_states(const EATheory& th) {
  std::vector<DensityState> out;
  if (th.sampler == StateSampler::None) return out;
  std::seed_seq seq{th.seed, std::uint64_t{0x7e57}};
  Rng rng(seq);
  for (std::size_t k = 0; k < th.samples; ++k) {
    if (th.sampler == StateSampler::PureProducts) {
      out.push_back(DensityState::pure(product_vector(random_pure(th.d_a, rng), random_pure(th.d_b, rng))));
    } else if (k % 2) {
      out.push_back(DensityState::pure(random_pure(th.dim(), rng)));
    } else {
      out.push_back(random_density(th.dim(), rng));
    }
  }
  return out;
}

TestSearch find_linear_test(const EATheory& th, std::size_t s) {
  const auto& lea = *th.lea;
  const auto& gens = lea.cone().generators();
  const std::size_t n = lea.cone().dim(), m = gens.size();
  const std::size_t k = th.linear_states.size() - 1;
  const std::size_t cols = 2 * m + 1 + k;
  QMat a;
  QVec b;
  for (std::size_t r = 0; r < n; ++r) {
    QVec row = zeros(cols);
    for (std::size_t g = 0; g < m; ++g) row[g] = row[m + g] = gens[g][r];
    a.push_back(std::move(row));
    b.push_back(lea.unit()[r]);
  }
  QVec norm = zeros(cols);
  for (std::size_t g = 0; g < m; ++g) norm[g] = dot(th.linear_states[s], gens[g]);
  a.push_back(std::move(norm));
  b.push_back(1);
  std::size_t slack = 2 * m + 1;
  for (std::size_t o = 0; o < th.linear_states.size(); ++o) {
    if (o == s) continue;
    QVec row = zeros(cols);
    for (std::size_t g = 0; g < m; ++g) row[g] = dot(th.linear_states[o], gens[g]);
    row[2 * m] = -1;
    row[slack++] = 1;
    a.push_back(std::move(row));
    b.push_back(0);
  }
  QVec c = zeros(cols);
  c[2 * m] = 1;
  TestSearch out;
  auto res = lp::minimize(a, b, c);
  if (res.status != lp::Status::Optimal) {
    out.note = "no effect in [0, u] takes the value 1 on this state";
    return out;
  }
  out.best_value = 1;
  if (res.value >= 1) {
    out.note = "every effect passing this state passes another listed state";
    return out;
  }
  TestCertificate cert;
  cert.linear_effect = zeros(n);
  for (std::size_t g = 0; g < m; ++g) cert.linear_effect = add(cert.linear_effect, scale(res.x[g], gens[g]));
  cert.state = s;
  cert.value = 1;
  cert.margin = res.value.get_d();
  cert.others_checked = k;
  out.certificate = std::move(cert);
  return out;
}

}  // namespace

CVec product_vector(const CVec& psi, const CVec& chi) {
  CVec v(psi.size() * chi.size());
  for (Eigen::Index a = 0; a < psi.size(); ++a) v.segment(a * chi.size(), chi.size()) = psi(a) * chi;
  return v;
}

HermOp product_effect(const HermOp& a, const HermOp& b, double tol) {
  if (!is_effect(a, tol) || !is_effect(b, tol)) throw Error(ErrorCode::NotAnEffect, "factor is not an effect");
  const auto na = idx(a.dim()), nb = idx(b.dim());
  CMat k(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j) k.block(i * nb, j * nb, nb, nb) = a.mat()(i, j) * b.mat();
  return HermOp(k);
}

HermOp partial_transpose(const HermOp& x, std::size_t d_a, std::size_t d_b) {
  check_split(x.dim(), d_a, d_b);
  const auto na = idx(d_a), nb = idx(d_b);
  CMat y(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j) y.block(i * nb, j * nb, nb, nb) = x.mat().block(i * nb, j * nb, nb, nb).transpose();
  return HermOp(y);
}

SeparabilityVerdict separability(const HermOp& x, std::size_t d_a, std::size_t d_b,
                                 bool as_effect, double tol) {
  check_split(x.dim(), d_a, d_b);
  SeparabilityVerdict v;
  v.exact = d_a * d_b <= 6;
  v.min_eigenvalue = x.eigenvalues().minCoeff();
  v.min_pt_eigenvalue = partial_transpose(x, d_a, d_b).eigenvalues().minCoeff();
  v.separable = v.min_eigenvalue >= -tol && v.min_pt_eigenvalue >= -tol;
  if (as_effect && v.separable) {
    const HermOp rest = HermOp::identity(x.dim()) - x;
    v.separable = rest.eigenvalues().minCoeff() >= -tol &&
                  partial_transpose(rest, d_a, d_b).eigenvalues().minCoeff() >= -tol;
  }
  return v;
}

bool is_separable_2x2(const HermOp& x, bool as_effect, double tol) {
  return separability(x, 2, 2, as_effect, tol).separable;
}

ProductOverlap max_product_overlap(const HermOp& x, std::size_t d_a, std::size_t d_b,
                                   std::size_t restarts, std::uint64_t seed, double tol) {
  overlap_pre(x, d_a, d_b, tol);
  restarts = std::max<std::size_t>(restarts, 1);
  return reduce(kernels::map_parallel<ProductOverlap>(
      restarts, [&](std::size_t r) { return alternate(x.mat(), d_a, d_b, seed, r); }));
}

ProductOverlap max_product_overlap_serial(const HermOp& x, std::size_t d_a, std::size_t d_b,
                                          std::size_t restarts, std::uint64_t seed, double tol) {
  overlap_pre(x, d_a, d_b, tol);
  restarts = std::max<std::size_t>(restarts, 1);
  return reduce(kernels::map_serial<ProductOverlap>(
      restarts, [&](std::size_t r) { return alternate(x.mat(), d_a, d_b, seed, r); }));
}

TestSearch find_test(const EATheory& th, std::size_t s, double tol) {
  if (s >= th.size()) throw Error(ErrorCode::StateNotInTheory, "state index " + std::to_string(s));
  if (th.carrier == Carrier::Linear) {
    if (!th.lea) throw Error(ErrorCode::UnsupportedCarrier, "linear carrier without a cone");
    return find_linear_test(th, s);
  }
  const DensityState& omega = th.states[s];
  if (omega.dim() != th.dim()) throw Error(ErrorCode::DimensionMismatch, "state dimension");
  TestSearch out;
  HermOp effect = HermOp::zero(th.dim());
  if (th.carrier == Carrier::Quantum) {
    Eigen::SelfAdjointEigenSolver<CMat> es(omega.op().mat());
    const auto last = es.eigenvalues().size() - 1;
    out.best_value = es.eigenvalues()(last);
    if (out.best_value < 1 - tol) {
      out.note = "mixed state: every state supported on its support passes the support projector";
      return out;
    }
    effect = HermOp::projector(es.eigenvectors().col(last));
  } else {
    auto o = max_product_overlap(omega.op(), th.d_a, th.d_b, kDefaultRestarts, th.seed);
    out.best_value = o.value;
    if (o.value < 1 - tol) {
      out.note = "no product vector reaches overlap 1";
      return out;
    }
    effect = HermOp::projector(product_vector(o.psi, o.chi));
  }

  TestCertificate cert;
  cert.state = s;
  cert.value = (omega.op().mat() * effect.mat()).trace().real();
  cert.margin = 0;
  auto consider = [&](const DensityState& other) {
    cert.margin = std::max(cert.margin, (other.op().mat() * effect.mat()).trace().real());
    ++cert.others_checked;
  };
  for (std::size_t o = 0; o < th.states.size(); ++o)
    if (o != s) consider(th.states[o]);
  for (const auto& other : sample_states(th)) {
    if (max_abs(other.op().mat() - omega.op().mat()) <= tol) continue;
    consider(other);
  }
  if (cert.margin >= 1 - tol) {
    out.note = "another state also passes the candidate test";
    return out;
  }
  cert.effect = std::move(effect);
  out.certificate = std::move(cert);
  return out;
}

TestSearch find_test(const EATheory& th, const DensityState& omega, double tol) {
  for (std::size_t s = 0; s < th.states.size(); ++s)
    if (th.states[s].dim() == omega.dim() &&
        max_abs(th.states[s].op().mat() - omega.op().mat()) <= kTol) {
      return find_test(th, s, tol);
    }
  throw Error(ErrorCode::StateNotInTheory, "state is not listed in the theory");
}

TestabilityReport check_axiom_testability(const EATheory& th, double tol) {
  TestabilityReport r;
  r.pass = true;
  for (std::size_t s = 0; s < th.size(); ++s) {
    r.per_state.push_back(find_test(th, s, tol));
    if (!r.per_state.back().certificate && r.pass) {
      r.pass = false;
      r.first_failure = s;
    }
  }
  return r;
}

void validate(const BipartiteTable& t) {
  if (!t.a_choices || !t.b_choices || !t.a_outcomes || !t.b_outcomes || t.p.empty()) {
    throw Error(ErrorCode::MalformedLabeling, "empty bipartite table");
  }
  for (const auto& st : t.p) {
    if (st.size() != t.a_choices) throw Error(ErrorCode::MalformedLabeling, "A-choice count");
    for (const auto& pi : st) {
      if (pi.size() != t.b_choices) throw Error(ErrorCode::MalformedLabeling, "B-choice count");
      for (const auto& pij : pi) {
        if (pij.size() != t.a_outcomes) throw Error(ErrorCode::MalformedLabeling, "A-outcome count");
        Rational total = 0;
        for (const auto& row : pij) {
          if (row.size() != t.b_outcomes) throw Error(ErrorCode::MalformedLabeling, "B-outcome count");
          for (const auto& v : row) {
            if (v < 0 || v > 1) throw Error(ErrorCode::NormalizationViolation, "probability outside [0, 1]");
            total += v;
          }
        }
        if (total != 1) throw Error(ErrorCode::NormalizationViolation, "joint distribution does not sum to 1");
      }
    }
  }
}

BipartiteTable bipartite_from_theory(const PhenoTheory& theory) {
  auto split = [](const std::string& s) -> std::pair<std::string, std::string> {
    const auto bar = s.find('|');
    if (bar == std::string::npos || bar == 0 || bar + 1 == s.size() ||
        s.find('|', bar + 1) != std::string::npos) {
      throw Error(ErrorCode::MalformedLabeling, "label '" + s + "' is not of the form x|y");
    }
    return {s.substr(0, bar), s.substr(bar + 1)};
  };
  auto intern = [](std::map<std::string, std::size_t>& m, const std::string& k) {
    return m.emplace(k, m.size()).first->second;
  };
  std::map<std::string, std::size_t> ai, bj, ao, bo;
  struct Cell { std::size_t m, i, j; std::vector<std::pair<std::size_t, std::size_t>> ab; };
  std::vector<Cell> cells;
  for (std::size_t m = 0; m < theory.num_measurements(); ++m) {
    const auto& meas = theory.measurements()[m];
    auto [i, j] = split(meas.name);
    Cell c{m, intern(ai, i), intern(bj, j), {}};
    for (const auto& o : meas.outcomes) {
      const auto colon = o.rfind(':');
      auto [a, b] = split(colon == std::string::npos ? o : o.substr(colon + 1));
      c.ab.emplace_back(intern(ao, a), intern(bo, b));
    }
    cells.push_back(std::move(c));
  }
  BipartiteTable t;
  t.a_choices = ai.size();
  t.b_choices = bj.size();
  t.a_outcomes = ao.size();
  t.b_outcomes = bo.size();
  if (cells.size() != t.a_choices * t.b_choices) {
    throw Error(ErrorCode::MalformedLabeling, "need exactly one measurement per choice pair");
  }
  std::vector<std::vector<bool>> seen(t.a_choices, std::vector<bool>(t.b_choices, false));
  for (const auto& c : cells) {
    if (seen[c.i][c.j]) throw Error(ErrorCode::MalformedLabeling, "repeated choice pair");
    seen[c.i][c.j] = true;
  }
  using Grid = std::vector<std::vector<Rational>>;
  t.p.assign(theory.num_states(),
             std::vector<std::vector<Grid>>(t.a_choices, std::vector<Grid>(t.b_choices, Grid(t.a_outcomes, std::vector<Rational>(t.b_outcomes, Rational(0))))));
  for (std::size_t s = 0; s < theory.num_states(); ++s)
    for (const auto& c : cells) {
      std::vector<std::vector<bool>> hit(t.a_outcomes, std::vector<bool>(t.b_outcomes, false));
      for (std::size_t k = 0; k < c.ab.size(); ++k) {
        auto [a, b] = c.ab[k];
        if (hit[a][b]) throw Error(ErrorCode::MalformedLabeling, "repeated outcome pair");
        hit[a][b] = true;
        t.p[s][c.i][c.j][a][b] = theory.value(s, c.m, k);
      }
    }
  return t;
}

InfluenceVerdict influence_free(const BipartiteTable& t) {
  validate(t);
  InfluenceVerdict v;
  for (std::size_t s = 0; s < t.p.size(); ++s) {
    const auto& p = t.p[s];
    for (std::size_t i = 0; i < t.a_choices; ++i)
      for (std::size_t a = 0; a < t.a_outcomes; ++a) {
        std::optional<Rational> first;
        for (std::size_t j = 0; j < t.b_choices; ++j) {
          Rational m = 0;
          for (std::size_t b = 0; b < t.b_outcomes; ++b) m += p[i][j][a][b];
          if (!first) {
            first = m;
          } else if (m != *first) {
            v.influence_free = false;
            v.witness = SignallingWitness{s, 'A', i, a, 0, j, *first, m};
            return v;
          }
        }
      }
    for (std::size_t j = 0; j < t.b_choices; ++j)
      for (std::size_t b = 0; b < t.b_outcomes; ++b) {
        std::optional<Rational> first;
        for (std::size_t i = 0; i < t.a_choices; ++i) {
          Rational m = 0;
          for (std::size_t a = 0; a < t.a_outcomes; ++a) m += p[i][j][a][b];
          if (!first) {
            first = m;
          } else if (m != *first) {
            v.influence_free = false;
            v.witness = SignallingWitness{s, 'B', j, b, 0, i, *first, m};
            return v;
          }
        }
      }
  }
  return v;
}

}  // namespace opalg
