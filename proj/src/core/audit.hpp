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

#pragma once

#include <cstdint>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "core/guard.hpp"

namespace groundpilot {

enum class ModelPath { kInternal, kExternal };
const char* to_string(ModelPath p);

// One line of the append-only audit trail; written for every invocation,
// completed, rejected, or failed.
struct AuditRecord {
  std::string request_id;
  std::string component_id;
  std::optional<ModelPath> model_path;  // absent when generation never ran
  std::optional<GuardVerdict> guard_input_verdict;
  std::optional<GuardVerdict> guard_output_verdict;
  std::vector<std::string> evidence_ids;
  std::int64_t latency_ms = 0;
  bool fallback_used = false;
  std::int64_t received_at_ms = 0;
  std::string error;  // empty on success paths

  // Deterministic JSON line (schema in docs/formats.md).
  std::string to_json_line() const;
  static AuditRecord from_json_line(const std::string& line);
};

// Append-only JSONL sink with serialized appends. Keeps records in memory
// for recomputation; optionally mirrors to a file, flushed per record.
class AuditLog {
 public:
  AuditLog() = default;
  explicit AuditLog(const std::string& path);

  void append(const AuditRecord& record);
  std::size_t count() const;
  std::vector<std::string> lines() const;
  std::vector<AuditRecord> records() const;

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> lines_;
  std::ofstream file_;
  bool to_file_ = false;
};

}  // namespace groundpilot
