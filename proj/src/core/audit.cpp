// Copyright 2026 The GroundPilot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/audit.hpp"

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/timeutil.hpp"

namespace groundpilot {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json verdict_to_json(const GuardVerdict& v) {
  ordered_json out;
  out["decision"] = v.decision == GuardDecision::kBlock ? "BLOCK" : "ALLOW";
  out["categories"] = ordered_json::array();
  for (GuardCategory c : v.categories) out["categories"].push_back(to_string(c));
  out["matched_rules"] = v.matched_rules;
  return out;
}

GuardVerdict verdict_from_json(const json& v) {
  GuardVerdict out;
  out.decision = v.value("decision", "ALLOW") == std::string("BLOCK")
                     ? GuardDecision::kBlock
                     : GuardDecision::kAllow;
  if (v.contains("categories")) {
    for (const json& c : v["categories"]) {
      out.categories.insert(guard_category_from_string(c.get<std::string>()));
    }
  }
  if (v.contains("matched_rules")) {
    for (const json& r : v["matched_rules"]) {
      out.matched_rules.push_back(r.get<std::string>());
    }
  }
  return out;
}

}  // namespace

const char* to_string(ModelPath p) {
  return p == ModelPath::kExternal ? "EXTERNAL" : "INTERNAL";
}

std::string AuditRecord::to_json_line() const {
  ordered_json rec;
  rec["request_id"] = request_id;
  rec["component_id"] = component_id;
  if (model_path) {
    rec["model_path"] = to_string(*model_path);
  } else {
    rec["model_path"] = nullptr;
  }
  rec["guard_input_verdict"] =
      guard_input_verdict ? verdict_to_json(*guard_input_verdict)
                          : ordered_json(nullptr);
  rec["guard_output_verdict"] =
      guard_output_verdict ? verdict_to_json(*guard_output_verdict)
                           : ordered_json(nullptr);
  rec["evidence_ids"] = evidence_ids;
  rec["latency_ms"] = latency_ms;
  rec["fallback_used"] = fallback_used;
  rec["received_at"] = format_timestamp(received_at_ms / 1000);
  rec["error"] = error.empty() ? ordered_json(nullptr) : ordered_json(error);
  return rec.dump();
}

AuditRecord AuditRecord::from_json_line(const std::string& line) {
  json rec;
  try {
    rec = json::parse(line);
  } catch (const json::exception& e) {
    throw_error(ErrorCode::kParse,
                std::string("bad audit record line: ") + e.what());
  }
  AuditRecord out;
  out.request_id = rec.value("request_id", "");
  out.component_id = rec.value("component_id", "");
  if (rec.contains("model_path") && rec["model_path"].is_string()) {
    out.model_path = rec["model_path"].get<std::string>() == "EXTERNAL"
                         ? ModelPath::kExternal
                         : ModelPath::kInternal;
  }
  if (rec.contains("guard_input_verdict") &&
      rec["guard_input_verdict"].is_object()) {
    out.guard_input_verdict = verdict_from_json(rec["guard_input_verdict"]);
  }
  if (rec.contains("guard_output_verdict") &&
      rec["guard_output_verdict"].is_object()) {
    out.guard_output_verdict = verdict_from_json(rec["guard_output_verdict"]);
  }
  if (rec.contains("evidence_ids")) {
    for (const json& id : rec["evidence_ids"]) {
      out.evidence_ids.push_back(id.get<std::string>());
    }
  }
  out.latency_ms = rec.value("latency_ms", std::int64_t{0});
  out.fallback_used = rec.value("fallback_used", false);
  if (rec.contains("received_at") && rec["received_at"].is_string()) {
    out.received_at_ms =
        parse_timestamp(rec["received_at"].get<std::string>()) * 1000;
  }
  if (rec.contains("error") && rec["error"].is_string()) {
    out.error = rec["error"].get<std::string>();
  }
  return out;
}

AuditLog::AuditLog(const std::string& path) {
  file_.open(path, std::ios::app);
  if (!file_) {
    throw_error(ErrorCode::kIo, "cannot open audit log '" + path + "'");
  }
  to_file_ = true;
}

void AuditLog::append(const AuditRecord& record) {
  std::string line = record.to_json_line();
  std::lock_guard lock(mutex_);
  lines_.push_back(line);
  if (to_file_) {
    file_ << line << "\n";
    file_.flush();
  }
}

std::size_t AuditLog::count() const {
  std::lock_guard lock(mutex_);
  return lines_.size();
}

std::vector<std::string> AuditLog::lines() const {
  std::lock_guard lock(mutex_);
  return lines_;
}

std::vector<AuditRecord> AuditLog::records() const {
  std::vector<std::string> snapshot = lines();
  std::vector<AuditRecord> out;
  out.reserve(snapshot.size());
  for (const std::string& line : snapshot) {
    out.push_back(AuditRecord::from_json_line(line));
  }
  return out;
}

}  // namespace groundpilot
