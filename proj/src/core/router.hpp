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

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "core/audit.hpp"
#include "core/clock.hpp"
#include "core/error.hpp"
#include "core/grounding.hpp"
#include "core/guard.hpp"
#include "core/registry.hpp"
#include "core/retrieval.hpp"

namespace groundpilot {

// Routing is a pure function of component sensitivity and policy. There is
// no runtime prompt inspection anywhere on this path.
struct RoutingPolicy {
  // Operational kill-switch: false forces every component internal.
  bool allow_external = true;
};

// PII components always take the internal path; NON_PII may go external
// when the policy allows it.
ModelPath select_path(const ComponentSpec& component,
                      const RoutingPolicy& policy);

struct RoutedRequest {
  std::string request_id;  // empty -> assigned by the router
  std::string user_id;
  std::string component_id;
  std::string query_text;
};

struct GenerationContext {
  std::string component_id;
  std::string query;
  std::string evidence_block;
  std::vector<EvidencePassage> passages;
};

class GenerationAdapter {
 public:
  virtual ~GenerationAdapter() = default;
  virtual ModelPath path() const = 0;
  // Deterministic for fixed context; must be safe for concurrent calls.
  virtual std::string generate(const GenerationContext& context) const = 0;
};

// Everything the EXTERNAL path receives, byte for byte. The zero-egress
// property is asserted against this transcript.
class EgressTranscript {
 public:
  void record(const std::string& bytes);
  std::vector<std::string> entries() const;
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> entries_;
};

// Reference generators: evidence slotted into fixed sentence frames, one
// cited sentence per passage. No model anywhere.
class TemplateAdapter final : public GenerationAdapter {
 public:
  // transcript may be null; the external adapter always gets one.
  TemplateAdapter(ModelPath path, std::shared_ptr<EgressTranscript> transcript);

  ModelPath path() const override { return path_; }
  std::string generate(const GenerationContext& context) const override;

  static std::string serialize_context(const GenerationContext& context);

 private:
  ModelPath path_;
  std::shared_ptr<EgressTranscript> transcript_;
};

// Canned copy served instead of model output.
const std::string& no_evidence_template();
const std::string& adapter_failure_template();

struct RetrievalParams {
  std::size_t k_sparse = 10;
  std::size_t k_dense = 10;
  std::size_t k_fused = 5;
  std::size_t max_evidence_chars = 1600;
};

struct InvokeResult {
  bool ok = true;                  // false only for error-path results
  ErrorCode error_code = ErrorCode::kInternal;
  std::string error_message;
  std::string request_id;
  std::string response_text;       // served text, reference tokens included
  bool fallback_used = false;
  std::optional<ModelPath> model_path;
  std::vector<std::string> evidence_ids;
  std::optional<GroundingReport> grounding;  // absent on fallback/error
};

// Deterministic invocation pipeline, fixed order:
//   input guard -> retrieval -> generation on the selected path ->
//   grounding validation -> output guard.
// Any guard rejection serves a fallback template; an audit record is written
// on every call, error paths included. Retrieval is scoped to the invoked
// component's own modules.
class Router {
 public:
  struct Deps {
    ManifestPtr manifest;
    std::shared_ptr<const Guard> guard;
    std::shared_ptr<IndexStore> index;
    Ontology ontology;
    std::shared_ptr<GenerationAdapter> internal_adapter;
    std::shared_ptr<GenerationAdapter> external_adapter;
    std::shared_ptr<Clock> clock;
    std::shared_ptr<AuditLog> audit;
    RoutingPolicy policy;
    RetrievalParams retrieval;
  };

  explicit Router(Deps deps);

  InvokeResult invoke(const RoutedRequest& request);

  // Pipeline-order instrumentation; also surfaced on /metrics.
  std::uint64_t retrieval_calls() const { return retrieval_calls_.load(); }
  std::uint64_t generation_calls() const { return generation_calls_.load(); }

  const Deps& deps() const { return deps_; }

 private:
  std::string next_request_id();

  Deps deps_;
  std::atomic<std::uint64_t> retrieval_calls_{0};
  std::atomic<std::uint64_t> generation_calls_{0};
  std::atomic<std::uint64_t> request_counter_{0};
};

}  // namespace groundpilot
