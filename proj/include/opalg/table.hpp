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

#include <cstdint>
#include <optional>
#include <vector>

namespace opalg {

/// Dense table of a partial binary operation on {0, ..., n-1}.
class PartialTable {
 public:
  static constexpr std::int32_t kUndefined = -1;

  PartialTable() = default;
  explicit PartialTable(std::size_t n) : n_(n), cells_(n * n, kUndefined) {}

  std::size_t size() const { return n_; }

  std::int32_t at(std::size_t x, std::size_t y) const { return cells_[x * n_ + y]; }
  bool defined(std::size_t x, std::size_t y) const { return at(x, y) != kUndefined; }
  std::optional<std::size_t> get(std::size_t x, std::size_t y) const {
    auto v = at(x, y);
    if (v == kUndefined) return std::nullopt;
    return static_cast<std::size_t>(v);
  }

  void set(std::size_t x, std::size_t y, std::int32_t v) { cells_[x * n_ + y] = v; }
  void set_symmetric(std::size_t x, std::size_t y, std::int32_t v) {
    set(x, y, v);
    set(y, x, v);
  }

  /// Grows to m >= n elements; new cells are undefined.
  void resize(std::size_t m);

  /// Entry of (x op y) op z, or undefined.
  std::int32_t left_assoc(std::size_t x, std::size_t y, std::size_t z) const {
    auto xy = at(x, y);
    return xy == kUndefined ? kUndefined : at(static_cast<std::size_t>(xy), z);
  }
  /// Entry of x op (y op z), or undefined.
  std::int32_t right_assoc(std::size_t x, std::size_t y, std::size_t z) const {
    auto yz = at(y, z);
    return yz == kUndefined ? kUndefined : at(x, static_cast<std::size_t>(yz));
  }

  friend bool operator==(const PartialTable&, const PartialTable&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int32_t> cells_;
};

inline void PartialTable::resize(std::size_t m) {
  if (m <= n_) return;
  std::vector<std::int32_t> cells(m * m, kUndefined);
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y) cells[x * m + y] = cells_[x * n_ + y];
  n_ = m;
  cells_ = std::move(cells);
}

}  // namespace opalg
