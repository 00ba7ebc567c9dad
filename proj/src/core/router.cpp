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

#include "core/router.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "core/text.hpp"
#include "core/timeutil.hpp"

namespace groundpilot {

ModelPath select_path(const ComponentSpec& component,
                      const RoutingPolicy& policy) {
  if (component.sensitivity == Sensitivity::kPii) return ModelPath::kInternal;
  return policy.allow_external ? ModelPath::kExternal : ModelPath::kInternal;
}

void EgressTranscript::record(const std::string& bytes) {
  std::lock_guard lock(mutex_);
  entries_.push_back(bytes);
}

std::vector<std::string> EgressTranscript::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

std::size_t EgressTranscript::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

TemplateAdapter::TemplateAdapter(ModelPath path,
                                 std::shared_ptr<EgressTranscript> transcript)
    : path_(path), transcript_(std::move(transcript)) {}

std::string TemplateAdapter::serialize_context(const GenerationContext& ctx) {
  nlohmann::ordered_json doc;
  doc["component_id"] = ctx.component_id;
  doc["query"] = ctx.query;
  doc["evidence_block"] = ctx.evidence_block;
  doc["passages"] = nlohmann::ordered_json::array();
  for (const EvidencePassage& p : ctx.passages) {
    doc["passages"].push_back({{"id", p.doc_id},
                               {"source_module", p.source_module},
                               {"text", p.passage_text}});
  }
  return doc.dump();
}

std::string TemplateAdapter::generate(const GenerationContext& ctx) const {
  if (transcript_) transcript_->record(serialize_context(ctx));
  // One cited sentence per passage: the passage's first sentence re-framed
  // with its reference token before the terminal period.
  std::string out;
  for (const EvidencePassage& p : ctx.passages) {
    std::vector<Sentence> sentences = segment_sentences(p.passage_text);
    std::string lead = sentences.empty() ? p.passage_text : sentences[0].text;
    while (!lead.empty() &&
           (lead.back() == '.' || lead.back() == '!' || lead.back() == '?')) {
      lead.pop_back();
    }
    if (!out.empty()) out.push_back(' ');
    out += lead;
    out.push_back(' ');
    out += make_ref_token(p.doc_id);
    out.push_back('.');
  }
  return out;
}

const std::string& no_evidence_template() {
  static const std::string kText =
      "I couldn't find supporting enterprise data for that request, so I "
      "can't provide a grounded answer.";
  return kText;
}

const std::string& adapter_failure_template() {
  static const std::string kText =
      "This insight is temporarily unavailable. Please try again shortly.";
  return kText;
}

Router::Router(Deps deps) : deps_(std::move(deps)) {
  if (!deps_.manifest || !deps_.guard || !deps_.index ||
      !deps_.internal_adapter || !deps_.external_adapter || !deps_.clock ||
      !deps_.audit) {
    throw_error(ErrorCode::kInvalidArgument,
                "router requires manifest, guard, index, both adapters, "
                "clock, and audit sink");
  }
}

std::string Router::next_request_id() {
  std::uint64_t n = ++request_counter_;
  std::string digits = std::to_string(n);
  if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
  return "req-" + digits;
}

InvokeResult Router::invoke(const RoutedRequest& request) {
  const std::int64_t t0 = deps_.clock->now_ms();

  InvokeResult result;
  result.request_id =
      request.request_id.empty() ? next_request_id() : request.request_id;

  AuditRecord audit;
  audit.request_id = result.request_id;
  audit.component_id = request.component_id;
  audit.received_at_ms = t0;

  auto finish = [&]() {
    audit.latency_ms = deps_.clock->now_ms() - t0;
    audit.fallback_used = result.fallback_used;
    audit.model_path = result.model_path;
    audit.evidence_ids = result.evidence_ids;
    deps_.audit->append(audit);
  };

  if (!deps_.manifest->has_component(request.component_id)) {
    result.ok = false;
    result.error_code = ErrorCode::kNotFound;
    result.error_message = "unknown component '" + request.component_id + "'";
    audit.error = result.error_message;
    finish();
    return result;
  }
  const ComponentSpec& component =
      deps_.manifest->component(request.component_id);

  GuardVerdict input_verdict =
      deps_.guard->screen(request.query_text, GuardDirection::kInput);
  audit.guard_input_verdict = input_verdict;
  if (input_verdict.decision == GuardDecision::kBlock) {
    result.response_text = fallback_for(input_verdict);
    result.fallback_used = true;
    finish();
    return result;
  }

  // Retrieval, scoped to the component's own modules.
  retrieval_calls_.fetch_add(1);
  std::set<std::string> module_scope(component.module_ids.begin(),
                                     component.module_ids.end());
  ExpandedQuery expanded =
      expand_query(request.query_text, deps_.ontology,
                   epoch_to_date(deps_.clock->now_ms() / 1000));
  auto generation = deps_.index->snapshot();
  std::vector<EvidencePassage> passages = generation->search_evidence(
      expanded, deps_.index->embedder(), deps_.retrieval.k_sparse,
      deps_.retrieval.k_dense, deps_.retrieval.k_fused, &module_scope);

  if (passages.empty()) {
    result.response_text = no_evidence_template();
    result.fallback_used = true;
    finish();
    return result;
  }

  for (const EvidencePassage& p : passages) {
    result.evidence_ids.push_back(p.doc_id);
  }

  ModelPath path = select_path(component, deps_.policy);
  GenerationAdapter& adapter = path == ModelPath::kExternal
                                   ? *deps_.external_adapter
                                   : *deps_.internal_adapter;
  GenerationContext ctx;
  ctx.component_id = component.id;
  ctx.query = request.query_text;
  ctx.evidence_block =
      build_evidence_template(passages, deps_.retrieval.max_evidence_chars);
  ctx.passages = passages;

  generation_calls_.fetch_add(1);
  std::string generated;
  try {
    generated = adapter.generate(ctx);
    result.model_path = path;
  } catch (const std::exception& e) {
    audit.error = std::string("adapter failure: ") + e.what();
    result.model_path = path;
    result.response_text = adapter_failure_template();
    result.fallback_used = true;
    finish();
    return result;
  }

  std::set<std::string> evidence_set(result.evidence_ids.begin(),
                                     result.evidence_ids.end());
  GroundingReport grounding = validate_grounding(generated, evidence_set);

  GuardVerdict output_verdict =
      deps_.guard->screen(generated, GuardDirection::kOutput);
  audit.guard_output_verdict = output_verdict;
  if (output_verdict.decision == GuardDecision::kBlock) {
    result.response_text = fallback_for(output_verdict);
    result.fallback_used = true;
    finish();
    return result;
  }

  result.response_text = generated;
  result.grounding = grounding;
  finish();
  return result;
}

}  // namespace groundpilot
