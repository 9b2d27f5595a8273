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

// Data-parallel scan kernels. Every kernel has a serial reference next to
// its OpenMP version; both return identical results (the lexicographically
// smallest hit, or the lowest-index best), so tests can compare them directly
// and callers can pick either.

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "opalg/table.hpp"

namespace opalg::kernels {

using Triple = std::array<std::size_t, 3>;

/// First (x, y, z) in lexicographic order with pred(x, y, z) true.
template <class Pred>
std::optional<Triple> first_triple_serial(std::size_t n, Pred&& pred) {
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (pred(x, y, z)) return Triple{x, y, z};
  return std::nullopt;
}

template <class Pred>
std::optional<Triple> first_triple_parallel(std::size_t n, Pred&& pred) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> hit_y(n, kNone), hit_z(n, kNone);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t xi = 0; xi < count; ++xi) {
    const auto x = static_cast<std::size_t>(xi);
    bool found = false;
    for (std::size_t y = 0; y < n && !found; ++y)
      for (std::size_t z = 0; z < n && !found; ++z)
        if (pred(x, y, z)) {
          hit_y[x] = y;
          hit_z[x] = z;
          found = true;
        }
  }
  for (std::size_t x = 0; x < n; ++x)
    if (hit_y[x] != kNone) return Triple{x, hit_y[x], hit_z[x]};
  return std::nullopt;
}

/// All (x, y, z) with pred true, in lexicographic order.
template <class Pred>
std::vector<Triple> all_triples_serial(std::size_t n, Pred&& pred) {
  std::vector<Triple> out;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (pred(x, y, z)) out.push_back({x, y, z});
  return out;
}

template <class Pred>
std::vector<Triple> all_triples_parallel(std::size_t n, Pred&& pred) {
  std::vector<std::vector<Triple>> per_x(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t xi = 0; xi < count; ++xi) {
    const auto x = static_cast<std::size_t>(xi);
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (pred(x, y, z)) per_x[x].push_back({x, y, z});
  }
  std::vector<Triple> out;
  for (auto& v : per_x) out.insert(out.end(), v.begin(), v.end());
  return out;
}

/// Strong associativity failure: exactly one bracketing is defined, or both
/// are and they differ.
inline bool strong_assoc_fails(const PartialTable& t, std::size_t x, std::size_t y,
                               std::size_t z) {
  return t.left_assoc(x, y, z) != t.right_assoc(x, y, z);
}

/// Weak associativity failure: both bracketings defined and unequal.
inline bool weak_assoc_fails(const PartialTable& t, std::size_t x, std::size_t y,
                             std::size_t z) {
  auto l = t.left_assoc(x, y, z);
  auto r = t.right_assoc(x, y, z);
  return l != PartialTable::kUndefined && r != PartialTable::kUndefined && l != r;
}

inline std::optional<Triple> strong_assoc_scan_serial(const PartialTable& t) {
  return first_triple_serial(t.size(), [&](auto x, auto y, auto z) {
    return strong_assoc_fails(t, x, y, z);
  });
}

inline std::optional<Triple> strong_assoc_scan_parallel(const PartialTable& t) {
  return first_triple_parallel(t.size(), [&](auto x, auto y, auto z) {
    return strong_assoc_fails(t, x, y, z);
  });
}

/// results[i] = fn(i) for i < trials.
template <class T, class Fn>
std::vector<T> map_serial(std::size_t trials, Fn&& fn) {
  std::vector<T> out(trials);
  for (std::size_t i = 0; i < trials; ++i) out[i] = fn(i);
  return out;
}

template <class T, class Fn>
std::vector<T> map_parallel(std::size_t trials, Fn&& fn) {
  std::vector<T> out(trials);
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = fn(k);
  }
  return out;
}

/// Index of the maximum score, ties broken by the lowest index.
template <class T, class Score>
std::size_t argmax_lowest(const std::vector<T>& values, Score&& score) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (score(values[i]) > score(values[best])) best = i;
  return best;
}

}  // namespace opalg::kernels
