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

// Fixed registry of report anchors. Every report line names one of these;
// data/anchors.txt mirrors the list and a test keeps the two in sync.

#include <array>
#include <string_view>

namespace opalg {

inline constexpr std::array<std::string_view, 57> kAnchors = {
    "phenomenology/validation",
    "quotient/effects",
    "quotient/well-defined-sum",
    "quotient/separating-states",
    "quotient/strong-associativity",
    "quotient/orthoalgebra",
    "quotient/completion",
    "pas/zero",
    "pas/commutativity",
    "pas/associativity",
    "pas/cancellativity",
    "pas/positivity",
    "pas/order",
    "weak-effect-algebra/WEA2",
    "effect-algebra/EA1",
    "effect-algebra/EA2",
    "effect-algebra/EA3",
    "effect-algebra/EA4",
    "effect-algebra/zero",
    "orthoalgebra/OA",
    "operation-algebra/OA1",
    "operation-algebra/OA2",
    "operation-algebra/OA3",
    "operation-algebra/OA4",
    "operation-algebra/zero",
    "operation-algebra/OA5",
    "operation-algebra/OA6",
    "operation-algebra/OA7",
    "operation-algebra/OA8",
    "operation-algebra/OA9",
    "operation-algebra/OA10",
    "convex/C0",
    "convex/C1",
    "convex/C2",
    "convex/C3",
    "convex/C4",
    "convex-operation/COA15",
    "cones/regularity",
    "cones/dual",
    "cones/self-duality",
    "cones/state-slice",
    "cones/faces",
    "cones/reciprocity",
    "quantum/dual-cone-states",
    "quantum/psd-self-duality",
    "quantum/operation-algebra",
    "quantum/top-set",
    "composites/separability",
    "composites/product-overlap",
    "composites/testability",
    "composites/influence-freedom",
    "dynamics/schrodinger",
    "dynamics/heisenberg",
    "dynamics/pure-to-pure",
    "dynamics/distinguishability",
    "dynamics/contraction",
    "report/empty",
};

constexpr bool is_registered_anchor(std::string_view a) {
  for (auto x : kAnchors)
    if (x == a) return true;
  return false;
}

}  // namespace opalg
