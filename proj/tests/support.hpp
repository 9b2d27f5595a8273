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

// Shared fixtures for the test binaries.

#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "opalg/error.hpp"
#include "opalg/io.hpp"
#include "opalg/phenomenology.hpp"

namespace opalg::testing {

inline std::string data_path(const std::string& rel) { return std::string(OPALG_DATA_DIR) + "/" + rel; }

inline PhenoTheory load_theory(const std::string& rel) {
  return io::theory_from_json(io::load_json(data_path(rel)));
}

inline Rational q(const char* text) { return parse_rational(text); }

inline QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected opalg::Error");
  return ErrorCode::InternalInconsistency;
}

// Small random theory: up to 3 measurements of up to 4 outcomes and up to
// 4 states with small-denominator rational entries.
inline PhenoTheory random_theory(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3), size(1, 4), states(1, 4), weight(0, 3);
  RawTheory raw;
  const int nm = count(rng);
  for (int m = 0; m < nm; ++m) {
    Measurement meas{"M" + std::to_string(m), {}};
    const int n = size(rng);
    for (int k = 0; k < n; ++k) meas.outcomes.push_back("m" + std::to_string(m) + "o" + std::to_string(k));
    raw.measurements.push_back(meas);
  }
  const int ns = states(rng);
  for (int s = 0; s < ns; ++s) {
    StateTable table;
    for (const auto& meas : raw.measurements) {
      std::vector<int> w(meas.outcomes.size());
      int total = 0;
      while (total == 0) {
        total = 0;
        for (auto& x : w) total += (x = weight(rng));
      }
      for (std::size_t k = 0; k < w.size(); ++k) {
        Rational r(w[k], total);
        r.canonicalize();
        table[meas.outcomes[k]] = r;
      }
    }
    raw.states.push_back(table);
  }
  return PhenoTheory::validate(raw);
}

}  // namespace opalg::testing
