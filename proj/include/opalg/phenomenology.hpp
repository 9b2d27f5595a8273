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

// Phenomenological theories: finitely many disjoint measurements, each with a
// finite outcome set, and a finite generating list of exact rational states.
// Events are subsets of one measurement's outcomes (the Boolean algebra of
// that measurement).

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "opalg/rational.hpp"

namespace opalg {

inline constexpr std::size_t kDefaultMeasurementCap = 16;

struct Measurement {
  std::string name;
  std::vector<std::string> outcomes;
};

/// Outcome identifier -> probability. Validation checks totals per measurement.
using StateTable = std::map<std::string, Rational>;

/// Unvalidated theory as read from the external file format.
struct RawTheory {
  std::vector<Measurement> measurements;
  std::vector<StateTable> states;
};

/// A subset of one measurement's outcomes, encoded as a bitmask over the
/// outcome positions of that measurement.
struct Event {
  std::size_t measurement = 0;
  std::uint32_t outcomes = 0;

  friend bool operator==(const Event&, const Event&) = default;
  friend auto operator<=>(const Event&, const Event&) = default;
};

class PhenoTheory {
 public:
  /// Enforces disjointness, non-empty measurements, the size cap and exact
  /// normalization of every state on every measurement.
  static PhenoTheory validate(const RawTheory& raw,
                              std::size_t measurement_cap = kDefaultMeasurementCap);

  const std::vector<Measurement>& measurements() const { return measurements_; }
  std::size_t num_measurements() const { return measurements_.size(); }
  std::size_t num_states() const { return values_.size(); }
  std::size_t measurement_size(std::size_t m) const { return measurements_.at(m).outcomes.size(); }

  /// Probability of a single outcome (measurement m, position k) in state s.
  const Rational& value(std::size_t s, std::size_t m, std::size_t k) const {
    return values_[s][m][k];
  }

  /// (measurement, position) of an outcome identifier; throws UnknownEvent.
  std::pair<std::size_t, std::size_t> locate(const std::string& outcome) const;

  /// Builds an event from outcome identifiers, all of which must belong to
  /// measurement `m` (looked up by name).
  Event event(const std::string& measurement_name,
              const std::vector<std::string>& outcomes) const;
  Event empty_event(std::size_t m) const { return Event{m, 0}; }
  Event full_event(std::size_t m) const;

  /// Human readable "{a,b}" rendering.
  std::string describe(const Event& e) const;
  std::vector<std::string> outcome_names(const Event& e) const;

  RawTheory to_raw() const;

 private:
  std::vector<Measurement> measurements_;
  // values_[state][measurement][position]
  std::vector<std::vector<std::vector<Rational>>> values_;
  std::map<std::string, std::pair<std::size_t, std::size_t>> index_;
};

/// Sum of the state's values over the event's outcomes.
Rational event_probability(const PhenoTheory& theory, std::size_t state_index,
                           const Event& event);

Event event_join(const PhenoTheory& theory, const Event& x, const Event& y);
Event event_meet(const PhenoTheory& theory, const Event& x, const Event& y);
Event event_complement(const PhenoTheory& theory, const Event& x);

}  // namespace opalg
