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

// Report assembly and rendering. Field order is fixed so JSON output is
// byte-stable for a given input and seed.

#include <string>
#include <vector>

#include <json.hpp>

#include "opalg/algebra_checks.hpp"

namespace opalg {

using Json = nlohmann::ordered_json;

struct Check {
  std::string name;
  std::string anchor;
  bool pass = true;
  Json detail;
};

struct Report {
  std::string command;
  std::vector<Check> checks;
  Json data = Json::object();

  /// Throws InternalInconsistency for an anchor outside the registry.
  void add(std::string name, std::string anchor, bool pass, Json detail = Json::object());
  void add(const AxiomReport& axioms);
  bool all_pass() const;
};

Json to_json(const Report& r);
std::string render_json(const Report& r);
/// One line per check: status, anchor, name, compact detail.
std::string render_text(const Report& r);

}  // namespace opalg
