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

#include <set>
#include <string>
#include <vector>

namespace groundpilot {

struct GroundingReport {
  std::size_t total_sentences = 0;
  std::size_t grounded_sentences = 0;
  // grounded / total; 1.0 for zero-sentence text (vacuous truth).
  double groundedness = 1.0;
  std::vector<std::string> unresolved_tokens;  // ids not in the evidence set
  std::vector<std::size_t> ungrounded_sentence_indices;
  // True iff no ungrounded sentences and no unresolved tokens.
  bool passed = true;
};

// Sentence-level citation check: a sentence is grounded iff it carries at
// least one [ref:<id>] whose id is in evidence_ids. Sentences are the spans
// produced by segment_sentences(). Single-pass: validation flags, it never
// triggers regeneration.
GroundingReport validate_grounding(const std::string& text,
                                   const std::set<std::string>& evidence_ids);

// Display form: [ref:...] tokens removed, doubled whitespace collapsed.
std::string strip_tokens(const std::string& text);

}  // namespace groundpilot
