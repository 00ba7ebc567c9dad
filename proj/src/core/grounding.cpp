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

#include "core/grounding.hpp"

#include <algorithm>

#include "core/text.hpp"

namespace groundpilot {

GroundingReport validate_grounding(const std::string& text,
                                   const std::set<std::string>& evidence_ids) {
  GroundingReport report;
  std::vector<Sentence> sentences = segment_sentences(text);
  report.total_sentences = sentences.size();

  std::set<std::string> unresolved;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    bool grounded = false;
    for (const RefToken& tok : find_ref_tokens(sentences[i].text)) {
      if (evidence_ids.count(tok.id)) {
        grounded = true;
      } else {
        unresolved.insert(tok.id);
      }
    }
    if (grounded) {
      ++report.grounded_sentences;
    } else {
      report.ungrounded_sentence_indices.push_back(i);
    }
  }
  // Tokens outside any counted sentence (e.g. in word-less spans) are still
  // checked for resolvability.
  for (const RefToken& tok : find_ref_tokens(text)) {
    if (!evidence_ids.count(tok.id)) unresolved.insert(tok.id);
  }
  report.unresolved_tokens.assign(unresolved.begin(), unresolved.end());

  report.groundedness =
      report.total_sentences == 0
          ? 1.0
          : double(report.grounded_sentences) / double(report.total_sentences);
  report.passed = report.ungrounded_sentence_indices.empty() &&
                  report.unresolved_tokens.empty();
  return report;
}

std::string strip_tokens(const std::string& text) {
  return strip_ref_tokens(text);
}

}  // namespace groundpilot
