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

#pragma once

// JSON file formats. Rationals are "p/q" strings (integers allowed), complex
// matrix entries are [re, im] pairs (plain numbers allowed for real entries).
// Every reader throws Error(ParseError) on structural problems; semantic
// validation errors keep their own codes.

#include <optional>
#include <string>
#include <vector>

#include "opalg/dynamics.hpp"
#include "opalg/quotient.hpp"
#include "opalg/report.hpp"

namespace opalg::io {

Json load_json(const std::string& path);

Rational rational_from_json(const Json& j);
QVec qvec_from_json(const Json& j);
QMat qmat_from_json(const Json& j);
Json to_json(const Rational& q);
Json to_json(const QVec& v);

/// {"measurements": [{"name", "outcomes"}], "states": [{outcome: value}]}
RawTheory raw_theory_from_json(const Json& j);
PhenoTheory theory_from_json(const Json& j);
Json to_json(const RawTheory& raw);

Json to_json(const WeakEffectAlgebra& wea);
Json to_json(const CompletionResult& c);

/// {"elements": [...], "zero": name, "one": name, "oplus": n x n names or
/// null, "product": n x n names, "grid": [...], "scale": {alpha: [names]}}
FinitePAS pas_from_json(const Json& j);
std::size_t element_from_json(const FinitePAS& p, const Json& j, const char* key);
FiniteOA oa_from_json(const Json& j);
TableConvexModel convex_from_json(const Json& j);

/// {"dim": n, "generators": [[...], ...]}
PolyCone cone_from_json(const Json& j);

CMat cmat_from_json(const Json& j);
Json to_json(const CMat& m);
HermOp herm_from_json(const Json& j);
/// {"matrix": ...} or {"vector": [...]} for a pure state.
DensityState state_from_json(const Json& j);
/// {"dim": d, "kraus": [matrix, ...]}
CPMap cpmap_from_json(const Json& j);
Json to_json(const CPMap& c);

/// {"a_choices", "b_choices", "outcomes": [n_a, n_b], "p": [i][j][a][b] or a
/// list of such tables, one per state}
BipartiteTable bipartite_from_json(const Json& j);

/// {"carrier": "quantum" | "separable" | "linear", "dims": [d_a, d_b],
///  "states": [...], "sampler": "none" | "all" | "products", "samples",
///  "seed", "cone": {...}, "unit": [...]}
EATheory ea_theory_from_json(const Json& j);

/// {"kind": "rational", "matrix": [[...]]} or {"kind": "channel", "dim",
/// "kraus"}; an optional "inverse" holds another map.
AffineStateMap state_map_from_json(const Json& j);
std::optional<AffineStateMap> inverse_from_json(const Json& j);

/// {"measurements": [[effect matrix, ...], ...]}
std::vector<QuantumMeasurement> family_from_json(const Json& j);

}  // namespace opalg::io
