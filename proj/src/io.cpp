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

#include "opalg/io.hpp"

#include <fstream>
#include <sstream>

namespace opalg::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) bad(std::string("field '") + key + "' must be an array");
  return a;
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) bad(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  bad("complex entry must be a number or [re, im]");
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad(path + ": " + e.what());
  }
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("rational must be a \"p/q\" string or an integer");
}

QVec qvec_from_json(const Json& j) {
  if (!j.is_array()) bad("vector must be an array");
  QVec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

QMat qmat_from_json(const Json& j) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  QMat m;
  for (const auto& row : j) m.push_back(qvec_from_json(row));
  return m;
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const QVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

RawTheory raw_theory_from_json(const Json& j) {
  RawTheory raw;
  for (const auto& m : array_field(j, "measurements")) {
    Measurement meas;
    meas.name = string_of(field(m, "name"), "measurement name");
    for (const auto& o : array_field(m, "outcomes")) meas.outcomes.push_back(string_of(o, "outcome"));
    raw.measurements.push_back(std::move(meas));
  }
  for (const auto& s : array_field(j, "states")) {
    if (!s.is_object()) bad("state must be an object");
    StateTable t;
    for (const auto& [k, v] : s.items()) t[k] = rational_from_json(v);
    raw.states.push_back(std::move(t));
  }
  return raw;
}

PhenoTheory theory_from_json(const Json& j) { return PhenoTheory::validate(raw_theory_from_json(j)); }

Json to_json(const RawTheory& raw) {
  Json j = Json::object();
  Json ms = Json::array();
  for (const auto& m : raw.measurements) ms.push_back(Json{{"name", m.name}, {"outcomes", m.outcomes}});
  j["measurements"] = std::move(ms);
  Json ss = Json::array();
  for (const auto& s : raw.states) {
    Json t = Json::object();
    for (const auto& [k, v] : s) t[k] = to_string(v);
    ss.push_back(std::move(t));
  }
  j["states"] = std::move(ss);
  return j;
}

Json to_json(const WeakEffectAlgebra& wea) {
  Json j = Json::object();
  Json effects = Json::array();
  for (const auto& e : wea.effects()) {
    Json x = Json::object();
    x["id"] = e.id;
    x["signature"] = to_json(e.signature);
    Json w = Json::array();
    for (const auto& ev : e.witnesses) w.push_back(wea.theory().describe(ev));
    x["witnesses"] = std::move(w);
    effects.push_back(std::move(x));
  }
  j["effects"] = std::move(effects);
  Json table = Json::array();
  for (std::size_t x = 0; x < wea.size(); ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < wea.size(); ++y) {
      auto s = wea.sum(x, y);
      row.push_back(s ? Json(*s) : Json(nullptr));
    }
    table.push_back(std::move(row));
  }
  j["oplus"] = std::move(table);
  j["orthosupplement"] = wea.orthosupplements();
  j["unit"] = wea.unit();
  j["zero"] = wea.zero();
  const auto sa = check_strong_associativity(wea);
  j["flags"] = Json{{"weak_only", !sa.holds}, {"orthoalgebra", wea.is_orthoalgebra()}};
  j["strong_associativity"] = Json{
      {"holds", sa.holds},
      {"counterexample", sa.counterexample ? Json(*sa.counterexample) : Json(nullptr)}};
  return j;
}

Json to_json(const CompletionResult& c) {
  Json j = Json::object();
  j["is_effect_algebra"] = c.is_effect_algebra;
  Json adj = Json::array();
  for (const auto& e : c.adjoined) adj.push_back(Json{{"id", e.id}, {"signature", to_json(e.signature)}});
  j["adjoined"] = std::move(adj);
  Json trace = Json::array();
  for (const auto& f : c.trace) {
    trace.push_back(Json{{"lhs", f.lhs}, {"rhs", f.rhs}, {"result", f.result},
                         {"adjoined", f.adjoined}, {"reason", f.reason}});
  }
  j["trace"] = std::move(trace);
  j["failure_trace"] = c.failure_trace ? Json(*c.failure_trace) : Json(nullptr);
  j["algebra"] = to_json(c.algebra);
  return j;
}

FinitePAS pas_from_json(const Json& j) {
  FinitePAS p;
  for (const auto& e : array_field(j, "elements")) p.names.push_back(string_of(e, "element"));
  const std::size_t n = p.names.size();
  if (n == 0) bad("no elements");
  p.zero = element_from_json(p, j, "zero");
  p.oplus.resize(n);
  const Json& t = array_field(j, "oplus");
  if (t.size() != n) throw Error(ErrorCode::MalformedTable, "oplus must have one row per element");
  for (std::size_t x = 0; x < n; ++x) {
    if (!t[x].is_array() || t[x].size() != n) {
      throw Error(ErrorCode::MalformedTable, "oplus row " + std::to_string(x) + " has the wrong length");
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (t[x][y].is_null()) continue;
      const Json wrapped = Json{{"v", t[x][y]}};
      p.oplus.set(x, y, static_cast<std::int32_t>(element_from_json(p, wrapped, "v")));
    }
  }
  validate(p);
  return p;
}

std::size_t element_from_json(const FinitePAS& p, const Json& j, const char* key) {
  const std::string name = string_of(field(j, key), key);
  for (std::size_t i = 0; i < p.names.size(); ++i)
    if (p.names[i] == name) return i;
  throw Error(ErrorCode::MalformedTable, "unknown element '" + name + "'");
}

FiniteOA oa_from_json(const Json& j) {
  FiniteOA o;
  o.pas = pas_from_json(j);
  o.one = element_from_json(o.pas, j, "one");
  const std::size_t n = o.pas.size();
  o.product.resize(n);
  const Json& t = array_field(j, "product");
  if (t.size() != n) throw Error(ErrorCode::MalformedTable, "product must have one row per element");
  for (std::size_t x = 0; x < n; ++x) {
    if (!t[x].is_array() || t[x].size() != n) {
      throw Error(ErrorCode::MalformedTable, "product row " + std::to_string(x) + " has the wrong length");
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (t[x][y].is_null()) throw Error(ErrorCode::MalformedTable, "product must be total");
      const Json wrapped = Json{{"v", t[x][y]}};
      o.product.set(x, y, static_cast<std::int32_t>(element_from_json(o.pas, wrapped, "v")));
    }
  }
  validate(o);
  return o;
}

TableConvexModel convex_from_json(const Json& j) {
  TableConvexModel m;
  m.pas = pas_from_json(j);
  const std::size_t n = m.pas.size();
  m.grid = j.contains("grid") ? qvec_from_json(j.at("grid")) : default_grid();
  const Json& sc = field(j, "scale");
  if (!sc.is_object()) bad("scale must map scalars to element lists");
  m.scale_table.assign(m.grid.size(), std::vector<std::int32_t>(n, PartialTable::kUndefined));
  for (const auto& [alpha, images] : sc.items()) {
    const Rational a = parse_rational(alpha);
    std::size_t g = 0;
    while (g < m.grid.size() && m.grid[g] != a) ++g;
    if (g == m.grid.size()) throw Error(ErrorCode::MalformedTable, "scalar " + alpha + " is not on the grid");
    if (!images.is_array() || images.size() != n) {
      throw Error(ErrorCode::MalformedTable, "scale row for " + alpha + " has the wrong length");
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (images[x].is_null()) continue;
      const Json wrapped = Json{{"v", images[x]}};
      m.scale_table[g][x] = static_cast<std::int32_t>(element_from_json(m.pas, wrapped, "v"));
    }
  }
  if (j.contains("product")) {
    FiniteOA o = oa_from_json(j);
    m.product_table = o.product;
  }
  return m;
}

PolyCone cone_from_json(const Json& j) {
  const std::size_t dim = size_field(j, "dim");
  std::vector<QVec> gens;
  for (const auto& g : array_field(j, "generators")) gens.push_back(qvec_from_json(g));
  return PolyCone(dim, gens);
}

CMat cmat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  CMat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) bad("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

Json to_json(const CMat& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    a.push_back(std::move(row));
  }
  return a;
}

HermOp herm_from_json(const Json& j) { return HermOp(cmat_from_json(j)); }

DensityState state_from_json(const Json& j) {
  if (j.is_object() && j.contains("vector")) {
    const Json& v = j.at("vector");
    if (!v.is_array() || v.empty()) bad("state vector must be a non-empty array");
    CVec psi(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) psi(static_cast<Eigen::Index>(i)) = complex_from_json(v[i]);
    return DensityState::pure(psi);
  }
  return DensityState(herm_from_json(field(j, "matrix")));
}

CPMap cpmap_from_json(const Json& j) {
  const std::size_t d = size_field(j, "dim");
  std::vector<CMat> kraus;
  for (const auto& k : array_field(j, "kraus")) kraus.push_back(cmat_from_json(k));
  return CPMap(d, std::move(kraus));
}

Json to_json(const CPMap& c) {
  Json k = Json::array();
  for (const auto& m : c.kraus()) k.push_back(to_json(m));
  return Json{{"dim", c.dim()}, {"kraus", std::move(k)}};
}

BipartiteTable bipartite_from_json(const Json& j) {
  BipartiteTable t;
  t.a_choices = size_field(j, "a_choices");
  t.b_choices = size_field(j, "b_choices");
  const Json& o = array_field(j, "outcomes");
  if (o.size() != 2 || !o[0].is_number_unsigned() || !o[1].is_number_unsigned()) {
    throw Error(ErrorCode::MalformedLabeling, "outcomes must be [n_a, n_b]");
  }
  t.a_outcomes = o[0].get<std::size_t>();
  t.b_outcomes = o[1].get<std::size_t>();
  const Json& p = array_field(j, "p");
  auto depth = [](const Json& x) {
    int d = 0;
    const Json* cur = &x;
    while (cur->is_array() && !cur->empty()) {
      ++d;
      cur = &(*cur)[0];
    }
    return d;
  };
  auto table = [&](const Json& x) {
    std::vector<std::vector<std::vector<std::vector<Rational>>>> s;
    for (const auto& pi : x) {
      std::vector<std::vector<std::vector<Rational>>> row;
      if (!pi.is_array()) throw Error(ErrorCode::MalformedLabeling, "ragged table");
      for (const auto& pij : pi) {
        std::vector<std::vector<Rational>> grid;
        if (!pij.is_array()) throw Error(ErrorCode::MalformedLabeling, "ragged table");
        for (const auto& pa : pij) grid.push_back(qvec_from_json(pa));
        row.push_back(std::move(grid));
      }
      s.push_back(std::move(row));
    }
    return s;
  };
  const int d = depth(p);
  if (d == 4) {
    t.p.push_back(table(p));
  } else if (d == 5) {
    for (const auto& s : p) t.p.push_back(table(s));
  } else {
    throw Error(ErrorCode::MalformedLabeling, "p must be nested [i][j][a][b] (optionally per state)");
  }
  validate(t);
  return t;
}

EATheory ea_theory_from_json(const Json& j) {
  EATheory th;
  const std::string carrier = string_of(field(j, "carrier"), "carrier");
  if (carrier == "quantum") {
    th.carrier = Carrier::Quantum;
  } else if (carrier == "separable") {
    th.carrier = Carrier::Separable;
  } else if (carrier == "linear") {
    th.carrier = Carrier::Linear;
  } else {
    throw Error(ErrorCode::UnsupportedCarrier, "carrier '" + carrier + "'");
  }
  if (j.contains("seed")) th.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("samples")) th.samples = j.at("samples").get<std::size_t>();
  if (j.contains("sampler")) {
    const std::string s = string_of(j.at("sampler"), "sampler");
    if (s == "none") {
      th.sampler = StateSampler::None;
    } else if (s == "all") {
      th.sampler = StateSampler::AllQuantum;
    } else if (s == "products") {
      th.sampler = StateSampler::PureProducts;
    } else {
      bad("sampler must be none, all or products");
    }
  }
  if (th.carrier == Carrier::Linear) {
    th.lea.emplace(cone_from_json(field(j, "cone")), qvec_from_json(field(j, "unit")));
    for (const auto& s : array_field(j, "states")) th.linear_states.push_back(qvec_from_json(s));
    th.d_a = th.lea->cone().dim();
    th.d_b = 1;
    return th;
  }
  const Json& dims = array_field(j, "dims");
  if (dims.empty() || dims.size() > 2) bad("dims must be [d] or [d_a, d_b]");
  th.d_a = dims[0].get<std::size_t>();
  th.d_b = dims.size() == 2 ? dims[1].get<std::size_t>() : 1;
  if (th.carrier == Carrier::Separable && dims.size() != 2) bad("separable carrier needs two dims");
  if (j.contains("states"))
    for (const auto& s : array_field(j, "states")) th.states.push_back(state_from_json(s));
  return th;
}

AffineStateMap state_map_from_json(const Json& j) {
  const std::string kind = string_of(field(j, "kind"), "kind");
  if (kind == "rational") return AffineStateMap::rational(qmat_from_json(field(j, "matrix")));
  if (kind == "channel") return AffineStateMap::quantum(cpmap_from_json(j));
  bad("map kind must be rational or channel");
}

std::optional<AffineStateMap> inverse_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("inverse")) return std::nullopt;
  return state_map_from_json(j.at("inverse"));
}

std::vector<QuantumMeasurement> family_from_json(const Json& j) {
  std::vector<QuantumMeasurement> f;
  for (const auto& m : array_field(j, "measurements")) {
    if (!m.is_array()) bad("measurement must be an array of effects");
    QuantumMeasurement meas;
    for (const auto& e : m) meas.push_back(herm_from_json(e));
    f.push_back(std::move(meas));
  }
  return f;
}

}  // namespace opalg::io
