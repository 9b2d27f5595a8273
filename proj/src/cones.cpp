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

#include "opalg/cones.hpp"

#include <algorithm>
#include <set>

#include "opalg/kernels.hpp"
#include "opalg/lp.hpp"

namespace opalg {

namespace {

QMat columns_as_matrix(const std::vector<QVec>& columns, std::size_t rows) {
  QMat m(rows, QVec(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = columns[j][i];
  return m;
}

std::vector<QVec> sorted_unique(std::vector<QVec> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct Ray {
  QVec z;
  std::vector<bool> active;  // per constraint row: a_i . z == 0
};

// Double description for the pointed cone {z : m z >= 0}, rank(m) == k.
std::vector<QVec> dd_pointed(const QMat& m, std::size_t k) {
  const std::size_t rows = m.size();
  std::vector<std::size_t> initial;
  QMat basis;
  for (std::size_t i = 0; i < rows && initial.size() < k; ++i) {
    basis.push_back(m[i]);
    if (rank(basis) == basis.size()) {
      initial.push_back(i);
    } else {
      basis.pop_back();
    }
  }
  if (initial.size() != k) {
    throw Error(ErrorCode::InternalInconsistency, "double description: rank deficiency");
  }

  std::vector<bool> processed(rows, false);
  for (auto i : initial) processed[i] = true;

  auto make_ray = [&](QVec z) {
    z = primitive(z);
    Ray r{z, std::vector<bool>(rows, false)};
    for (std::size_t i = 0; i < rows; ++i) r.active[i] = dot(m[i], z) == 0;
    return r;
  };

  std::vector<Ray> rays;
  for (std::size_t j = 0; j < k; ++j) {
    QVec z;
    if (!solve_square(basis, unit_vector(k, j), z)) {
      throw Error(ErrorCode::InternalInconsistency, "double description: singular start");
    }
    rays.push_back(make_ray(std::move(z)));
  }

  for (std::size_t row = 0; row < rows; ++row) {
    if (processed[row]) continue;
    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(m[row], rays[r].z);
      if (val[r] > 0) pos.push_back(r);
      if (val[r] < 0) neg.push_back(r);
      if (val[r] >= 0) next.push_back(rays[r]);
    }
    for (auto p : pos)
      for (auto n : neg) {
        QMat common;
        for (std::size_t i = 0; i < rows; ++i)
          if (processed[i] && rays[p].active[i] && rays[n].active[i]) common.push_back(m[i]);
        if (k < 2 || common.size() < k - 2 || rank(common) != k - 2) continue;
        QVec w = sub(scale(val[p], rays[n].z), scale(val[n], rays[p].z));
        next.push_back(make_ray(std::move(w)));
      }
    processed[row] = true;
    rays = std::move(next);
  }
  std::vector<QVec> out;
  for (auto& r : rays) out.push_back(std::move(r.z));
  return out;
}

}  // namespace

PolyCone::PolyCone(std::size_t ambient_dim, const std::vector<QVec>& generators)
    : dim_(ambient_dim) {
  if (ambient_dim == 0 || ambient_dim > kAmbientDimCap) {
    throw Error(ErrorCode::DimensionCap,
                "ambient dimension " + std::to_string(ambient_dim) + " outside [1, 16]");
  }
  std::set<QVec> seen;
  for (const auto& g : generators) {
    if (g.size() != ambient_dim) {
      throw Error(ErrorCode::DimensionMismatch, "generator length differs from ambient dimension");
    }
    if (is_zero(g)) continue;
    QVec p = primitive(g);
    if (seen.insert(p).second) gens_.push_back(std::move(p));
  }
}

PolyCone PolyCone::orthant(std::size_t dim) {
  std::vector<QVec> g;
  for (std::size_t i = 0; i < dim; ++i) g.push_back(unit_vector(dim, i));
  return PolyCone(dim, g);
}

Regularity check_regularity(const PolyCone& c) {
  Regularity r;
  r.generating = rank(c.generators()) == c.dim();
  const std::size_t m = c.generators().size();
  if (m == 0) {
    r.pointed = true;
    return r;
  }
  // Is there lambda >= 0, sum lambda = 1, G lambda = 0?
  QMat a = columns_as_matrix(c.generators(), c.dim());
  a.push_back(QVec(m, Rational(1)));
  QVec b = zeros(c.dim());
  b.push_back(1);
  auto res = lp::feasible(a, b);
  r.pointed = res.status != lp::Status::Optimal;
  if (!r.pointed) {
    for (std::size_t i = 0; i < m; ++i) {
      if (res.x[i] > 0) {
        r.line_witness = scale(res.x[i], c.generators()[i]);
        break;
      }
    }
  }
  return r;
}

Membership membership(const PolyCone& c, const QVec& x) {
  if (x.size() != c.dim()) throw Error(ErrorCode::DimensionMismatch, "membership query");
  Membership out;
  if (c.generators().empty()) {
    out.member = is_zero(x);
    if (!out.member) {
      out.certificate = scale(Rational(-1), x);
    }
    return out;
  }
  auto res = lp::feasible(columns_as_matrix(c.generators(), c.dim()), x);
  if (res.status == lp::Status::Optimal) {
    out.member = true;
    out.coefficients = res.x;
  } else {
    out.certificate = res.farkas;
  }
  return out;
}

bool in_dual(const PolyCone& c, const QVec& y) {
  if (y.size() != c.dim()) throw Error(ErrorCode::DimensionMismatch, "dual membership query");
  for (const auto& g : c.generators())
    if (dot(g, y) < 0) return false;
  return true;
}

ExtremeRays extreme_rays(const QMat& a, std::size_t dim) {
  for (const auto& row : a)
    if (row.size() != dim) throw Error(ErrorCode::DimensionMismatch, "constraint length");
  ExtremeRays out;
  for (auto& l : nullspace(a, dim)) out.lineality.push_back(primitive(l));

  QMat reduced = a;
  auto pivots = rref(reduced);
  const std::size_t k = pivots.size();
  if (k == 0) return out;
  QMat basis(reduced.begin(), reduced.begin() + static_cast<std::ptrdiff_t>(k));

  QMat m(a.size(), QVec(k));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) m[i][j] = dot(a[i], basis[j]);

  for (const auto& z : dd_pointed(m, k)) {
    QVec y = zeros(dim);
    for (std::size_t j = 0; j < k; ++j) y = add(y, scale(z[j], basis[j]));
    out.rays.push_back(primitive(y));
  }
  out.rays = sorted_unique(std::move(out.rays));
  return out;
}

PolyCone dual_cone(const PolyCone& c) {
  if (c.dim() > kExactDimCap || c.generators().size() > kGeneratorCap) {
    throw Error(ErrorCode::DimensionCap, "exact dual limited to dimension 8 and 64 generators");
  }
  auto er = extreme_rays(c.generators(), c.dim());
  std::vector<QVec> gens = er.rays;
  for (const auto& l : er.lineality) {
    gens.push_back(l);
    gens.push_back(scale(Rational(-1), l));
  }
  return PolyCone(c.dim(), gens);
}

bool cones_equal(const PolyCone& a, const PolyCone& b) {
  if (a.dim() != b.dim()) return false;
  for (const auto& g : a.generators())
    if (!membership(b, g).member) return false;
  for (const auto& g : b.generators())
    if (!membership(a, g).member) return false;
  return true;
}

bool is_self_dual(const PolyCone& c) { return cones_equal(c, dual_cone(c)); }

LinearEffectAlgebra::LinearEffectAlgebra(PolyCone cone, QVec unit)
    : cone_(std::move(cone)), unit_(std::move(unit)) {
  if (unit_.size() != cone_.dim()) throw Error(ErrorCode::DimensionMismatch, "unit length");
  if (is_zero(unit_) || !membership(cone_, unit_).member) {
    throw Error(ErrorCode::NotAnEffect, "unit must be a nonzero element of the cone");
  }
}

bool LinearEffectAlgebra::contains(const QVec& x) const {
  return membership(cone_, x).member && membership(cone_, sub(unit_, x)).member;
}

bool cone_leq(const PolyCone& c, const QVec& x, const QVec& y) {
  return membership(c, sub(y, x)).member;
}

StatePolytope state_polytope(const LinearEffectAlgebra& lea) {
  const auto& c = lea.cone();
  if (c.dim() > kExactDimCap || c.generators().size() > kGeneratorCap) {
    throw Error(ErrorCode::DimensionCap, "exact state polytope limited to dimension 8");
  }
  auto er = extreme_rays(c.generators(), c.dim());
  if (!er.lineality.empty()) {
    throw Error(ErrorCode::UnboundedSlice, "dual cone contains a line; unit is not interior");
  }
  StatePolytope sp;
  sp.unit = lea.unit();
  for (const auto& r : er.rays) {
    Rational v = dot(r, lea.unit());
    if (v == 0) {
      throw Error(ErrorCode::UnboundedSlice, "a dual extreme ray vanishes on the unit");
    }
    sp.vertices.push_back(scale(1 / v, r));
  }
  sp.vertices = sorted_unique(std::move(sp.vertices));
  return sp;
}

bool probabilistic_leq(const std::vector<QVec>& states, const QVec& e1, const QVec& e2) {
  for (const auto& f : states)
    if (dot(f, e1) > dot(f, e2)) return false;
  return true;
}

namespace {

bool exposed_face(const std::vector<QVec>& vertices, std::uint32_t mask) {
  const std::size_t n = vertices.size();
  const std::size_t d = vertices[0].size();
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < n; ++i)
    if (!(mask & (1u << i))) outside.push_back(i);
  const std::size_t cols = 2 * d + 2 + outside.size();
  QMat a(n, zeros(cols));
  QVec b = zeros(n);
  std::size_t slack = 2 * d + 2;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      a[i][k] = vertices[i][k];
      a[i][d + k] = -vertices[i][k];
    }
    a[i][2 * d] = -1;
    a[i][2 * d + 1] = 1;
    if (!(mask & (1u << i))) {
      a[i][slack++] = -1;
      b[i] = 1;
    }
  }
  return lp::feasible(a, b).status == lp::Status::Optimal;
}

void check_face_input(const std::vector<QVec>& vertices) {
  if (vertices.empty()) throw Error(ErrorCode::SizeCapExceeded, "no vertices");
  if (vertices.size() > kFaceVertexCap) {
    throw Error(ErrorCode::SizeCapExceeded, "face lattice limited to 12 vertices");
  }
  const auto d = vertices[0].size();
  if (d == 0 || d > kFaceDimCap) {
    throw Error(ErrorCode::SizeCapExceeded, "face lattice limited to dimension 6");
  }
  for (const auto& v : vertices)
    if (v.size() != d) throw Error(ErrorCode::DimensionMismatch, "vertex dimensions differ");
}

FaceLattice assemble(const std::vector<QVec>& vertices, const std::vector<char>& flags) {
  FaceLattice fl;
  fl.vertices = vertices;
  for (std::uint32_t mask = 0; mask < flags.size(); ++mask)
    if (flags[mask]) fl.faces.push_back(mask);
  std::stable_sort(fl.faces.begin(), fl.faces.end(), [](auto x, auto y) {
    return __builtin_popcount(x) < __builtin_popcount(y);
  });
  return fl;
}

}  // namespace

bool FaceLattice::is_face(std::uint32_t mask) const {
  return std::find(faces.begin(), faces.end(), mask) != faces.end();
}

std::vector<std::pair<std::size_t, std::size_t>> FaceLattice::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (std::size_t j = 0; j < faces.size(); ++j) {
      if (i == j || (faces[i] & ~faces[j]) || faces[i] == faces[j]) continue;
      bool direct = true;
      for (std::size_t k = 0; k < faces.size() && direct; ++k) {
        if (k == i || k == j) continue;
        const bool above_i = (faces[i] & ~faces[k]) == 0 && faces[i] != faces[k];
        const bool below_j = (faces[k] & ~faces[j]) == 0 && faces[k] != faces[j];
        if (above_i && below_j) direct = false;
      }
      if (direct) out.emplace_back(i, j);
    }
  return out;
}

std::vector<std::size_t> FaceLattice::extreme_points() const {
  std::vector<std::size_t> out;
  for (auto f : faces)
    if (__builtin_popcount(f) == 1) out.push_back(static_cast<std::size_t>(__builtin_ctz(f)));
  std::sort(out.begin(), out.end());
  return out;
}

FaceLattice face_lattice(const std::vector<QVec>& vertices) {
  check_face_input(vertices);
  const std::size_t subsets = std::size_t{1} << vertices.size();
  auto flags = kernels::map_parallel<char>(subsets, [&](std::size_t mask) {
    return static_cast<char>(exposed_face(vertices, static_cast<std::uint32_t>(mask)));
  });
  return assemble(vertices, flags);
}

FaceLattice face_lattice_serial(const std::vector<QVec>& vertices) {
  check_face_input(vertices);
  const std::size_t subsets = std::size_t{1} << vertices.size();
  auto flags = kernels::map_serial<char>(subsets, [&](std::size_t mask) {
    return static_cast<char>(exposed_face(vertices, static_cast<std::uint32_t>(mask)));
  });
  return assemble(vertices, flags);
}

std::optional<QVec> LinearIntervalModel::oplus(const QVec& a, const QVec& b) const {
  QVec s = add(a, b);
  if (!lea.contains(s)) return std::nullopt;
  return s;
}

std::optional<QVec> LinearIntervalModel::scale(const Rational& s, const QVec& a) const {
  if (s < 0 || s > 1) return std::nullopt;
  return opalg::scale(s, a);
}

}  // namespace opalg
