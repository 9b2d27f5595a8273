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

#include "opalg/phenomenology.hpp"

#include <set>

#include "opalg/error.hpp"

namespace opalg {

namespace {

void check_event(const PhenoTheory& theory, const Event& e) {
  if (e.measurement >= theory.num_measurements()) {
    throw Error(ErrorCode::UnknownEvent,
                "measurement index " + std::to_string(e.measurement) + " out of range");
  }
  const auto size = theory.measurement_size(e.measurement);
  if (size < 32 && (e.outcomes >> size) != 0) {
    throw Error(ErrorCode::UnknownEvent, "event mentions outcomes outside its measurement");
  }
}

}  // namespace

PhenoTheory PhenoTheory::validate(const RawTheory& raw, std::size_t measurement_cap) {
  PhenoTheory t;
  if (raw.measurements.empty()) {
    throw Error(ErrorCode::EmptyMeasurement, "theory has no measurements");
  }
  for (std::size_t m = 0; m < raw.measurements.size(); ++m) {
    const auto& meas = raw.measurements[m];
    if (meas.outcomes.empty()) {
      throw Error(ErrorCode::EmptyMeasurement, "measurement '" + meas.name + "' is empty");
    }
    if (meas.outcomes.size() > measurement_cap || meas.outcomes.size() > 31) {
      throw Error(ErrorCode::SizeCapExceeded,
                  "measurement '" + meas.name + "' has " +
                      std::to_string(meas.outcomes.size()) + " outcomes (cap " +
                      std::to_string(measurement_cap) + ")");
    }
    for (std::size_t k = 0; k < meas.outcomes.size(); ++k) {
      auto [it, inserted] = t.index_.emplace(meas.outcomes[k], std::make_pair(m, k));
      if (!inserted) {
        throw Error(ErrorCode::DisjointnessViolation,
                    "outcome '" + meas.outcomes[k] + "' appears in more than one place");
      }
    }
  }
  if (raw.states.empty()) {
    throw Error(ErrorCode::NormalizationViolation, "theory has no states");
  }
  t.measurements_ = raw.measurements;
  for (std::size_t s = 0; s < raw.states.size(); ++s) {
    const auto& table = raw.states[s];
    for (const auto& [name, _] : table) {
      if (!t.index_.count(name)) {
        throw Error(ErrorCode::UnknownEvent,
                    "state " + std::to_string(s) + " assigns a value to unknown outcome '" +
                        name + "'");
      }
    }
    std::vector<std::vector<Rational>> per_meas(raw.measurements.size());
    for (std::size_t m = 0; m < raw.measurements.size(); ++m) {
      Rational total = 0;
      for (const auto& outcome : raw.measurements[m].outcomes) {
        auto it = table.find(outcome);
        if (it == table.end()) {
          throw Error(ErrorCode::NormalizationViolation,
                      "state " + std::to_string(s) + " gives no value for outcome '" +
                          outcome + "'");
        }
        if (it->second < 0 || it->second > 1) {
          throw Error(ErrorCode::NormalizationViolation,
                      "state " + std::to_string(s) + " value " + to_string(it->second) +
                          " for '" + outcome + "' lies outside [0,1]");
        }
        per_meas[m].push_back(it->second);
        total += it->second;
      }
      if (total != 1) {
        throw Error(ErrorCode::NormalizationViolation,
                    "state " + std::to_string(s) + " sums to " + to_string(total) +
                        " on measurement '" + raw.measurements[m].name + "'");
      }
    }
    t.values_.push_back(std::move(per_meas));
  }
  return t;
}

std::pair<std::size_t, std::size_t> PhenoTheory::locate(const std::string& outcome) const {
  auto it = index_.find(outcome);
  if (it == index_.end()) throw Error(ErrorCode::UnknownEvent, "unknown outcome '" + outcome + "'");
  return it->second;
}

Event PhenoTheory::event(const std::string& measurement_name,
                         const std::vector<std::string>& outcomes) const {
  std::size_t m = 0;
  while (m < measurements_.size() && measurements_[m].name != measurement_name) ++m;
  if (m == measurements_.size()) {
    throw Error(ErrorCode::UnknownEvent, "unknown measurement '" + measurement_name + "'");
  }
  Event e{m, 0};
  for (const auto& o : outcomes) {
    auto [mm, k] = locate(o);
    if (mm != m) {
      throw Error(ErrorCode::MeasurementMismatch,
                  "outcome '" + o + "' does not belong to '" + measurement_name + "'");
    }
    e.outcomes |= (1u << k);
  }
  return e;
}

Event PhenoTheory::full_event(std::size_t m) const {
  const auto n = measurement_size(m);
  return Event{m, n == 32 ? ~0u : ((1u << n) - 1u)};
}

std::vector<std::string> PhenoTheory::outcome_names(const Event& e) const {
  check_event(*this, e);
  std::vector<std::string> names;
  const auto& outs = measurements_[e.measurement].outcomes;
  for (std::size_t k = 0; k < outs.size(); ++k) {
    if (e.outcomes & (1u << k)) names.push_back(outs[k]);
  }
  return names;
}

std::string PhenoTheory::describe(const Event& e) const {
  std::string s = measurements_.at(e.measurement).name + ":{";
  bool first = true;
  for (const auto& n : outcome_names(e)) {
    if (!first) s += ",";
    s += n;
    first = false;
  }
  return s + "}";
}

RawTheory PhenoTheory::to_raw() const {
  RawTheory raw;
  raw.measurements = measurements_;
  for (const auto& per_meas : values_) {
    StateTable table;
    for (std::size_t m = 0; m < measurements_.size(); ++m)
      for (std::size_t k = 0; k < per_meas[m].size(); ++k)
        table[measurements_[m].outcomes[k]] = per_meas[m][k];
    raw.states.push_back(std::move(table));
  }
  return raw;
}

Rational event_probability(const PhenoTheory& theory, std::size_t state_index,
                           const Event& event) {
  check_event(theory, event);
  if (state_index >= theory.num_states()) {
    throw Error(ErrorCode::UnknownState, "state index " + std::to_string(state_index));
  }
  Rational p = 0;
  const auto n = theory.measurement_size(event.measurement);
  for (std::size_t k = 0; k < n; ++k) {
    if (event.outcomes & (1u << k)) p += theory.value(state_index, event.measurement, k);
  }
  return p;
}

Event event_join(const PhenoTheory& theory, const Event& x, const Event& y) {
  check_event(theory, x);
  check_event(theory, y);
  if (x.measurement != y.measurement) {
    throw Error(ErrorCode::MeasurementMismatch, "join across measurements");
  }
  return Event{x.measurement, x.outcomes | y.outcomes};
}

Event event_meet(const PhenoTheory& theory, const Event& x, const Event& y) {
  check_event(theory, x);
  check_event(theory, y);
  if (x.measurement != y.measurement) {
    throw Error(ErrorCode::MeasurementMismatch, "meet across measurements");
  }
  return Event{x.measurement, x.outcomes & y.outcomes};
}

Event event_complement(const PhenoTheory& theory, const Event& x) {
  check_event(theory, x);
  return Event{x.measurement, theory.full_event(x.measurement).outcomes & ~x.outcomes};
}

}  // namespace opalg
