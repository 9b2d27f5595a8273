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

#include "opalg/report.hpp"

#include <sstream>

#include "opalg/anchors.hpp"
#include "opalg/error.hpp"

namespace opalg {

void Report::add(std::string name, std::string anchor, bool pass, Json detail) {
  if (!is_registered_anchor(anchor)) {
    throw Error(ErrorCode::InternalInconsistency, "unregistered anchor " + anchor);
  }
  checks.push_back(Check{std::move(name), std::move(anchor), pass, std::move(detail)});
}

void Report::add(const AxiomReport& axioms) {
  for (const auto& v : axioms.verdicts) {
    Json d = Json::object();
    if (!v.pass) d["counterexample"] = v.counterexample;
    if (!v.note.empty()) d["note"] = v.note;
    add(v.axiom, v.anchor, v.pass, std::move(d));
  }
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json to_json(const Report& r) {
  Json j = Json::object();
  j["command"] = r.command;
  j["pass"] = r.all_pass();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json x = Json::object();
    x["check"] = c.name;
    x["anchor"] = c.anchor;
    x["pass"] = c.pass;
    x["detail"] = c.detail.is_null() ? Json::object() : c.detail;
    checks.push_back(std::move(x));
  }
  j["checks"] = std::move(checks);
  j["data"] = r.data;
  return j;
}

std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << r.command << ": " << (r.all_pass() ? "pass" : "FAIL") << "\n";
  for (const auto& c : r.checks) {
    out << (c.pass ? "  PASS  " : "  FAIL  ") << c.anchor << "  " << c.name;
    if (!c.detail.is_null() && !c.detail.empty()) out << "  " << c.detail.dump();
    out << "\n";
  }
  return out.str();
}

}  // namespace opalg
