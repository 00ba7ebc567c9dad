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

#include <memory>
#include <regex>
#include <set>
#include <string>
#include <vector>

namespace groundpilot {

enum class GuardCategory { kToxicity, kPrivacyPii, kPromptInjection, kPolicyOther };
enum class GuardDirection { kInput, kOutput, kBoth };
enum class GuardDecision { kAllow, kBlock };

const char* to_string(GuardCategory c);
const char* to_string(GuardDirection d);
GuardCategory guard_category_from_string(const std::string& s);
GuardDirection guard_direction_from_string(const std::string& s);

struct GuardVerdict {
  GuardDecision decision = GuardDecision::kAllow;
  std::set<GuardCategory> categories;       // non-empty iff BLOCK
  std::vector<std::string> matched_rules;   // every rule that fired
};

// Pattern dialect (documented in docs/formats.md): pattern_type is either
// "substring" (ASCII-case-insensitive literal) or "regex" (ECMAScript,
// case-insensitive). Rules are immutable after load.
struct GuardRule {
  std::string id;
  GuardCategory category = GuardCategory::kPolicyOther;
  std::string pattern;
  std::string pattern_type = "substring";
  GuardDirection direction = GuardDirection::kBoth;
};

// Classifier slot: the rule engine below is the reference implementation;
// any external classifier can stand behind the same interface.
class Guard {
 public:
  virtual ~Guard() = default;
  // direction must be kInput or kOutput. Pure: same text, same verdict.
  virtual GuardVerdict screen(const std::string& text,
                              GuardDirection direction) const = 0;
};

class RuleGuard final : public Guard {
 public:
  explicit RuleGuard(std::vector<GuardRule> rules);

  // Loads {"rules": [...]} from the documented JSON format.
  static std::shared_ptr<RuleGuard> from_file(const std::string& path);
  // Built-in financial-compliance rule set.
  static std::shared_ptr<RuleGuard> with_default_rules();
  static std::vector<GuardRule> default_rules();

  GuardVerdict screen(const std::string& text,
                      GuardDirection direction) const override;

  const std::vector<GuardRule>& rules() const { return rules_; }

 private:
  struct CompiledRule {
    GuardRule rule;
    std::regex regex;              // valid when pattern_type == "regex"
    std::string lowered_pattern;   // valid when pattern_type == "substring"
  };
  std::vector<CompiledRule> compiled_;
  std::vector<GuardRule> rules_;
};

struct LabeledSample {
  std::string text;
  bool gold_positive = false;
};

std::vector<LabeledSample> load_labeled_samples(const std::string& path);

struct F1Report {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// BLOCK counts as a positive prediction. Zero-denominator conventions:
// precision is 1.0 when TP+FP==0 and TP+FN==0, else 0.0 when TP+FP==0;
// recall mirrors with the roles of FP and FN swapped; f1 is 0 when both are 0.
F1Report evaluate_f1(const Guard& guard,
                     const std::vector<LabeledSample>& samples,
                     GuardDirection direction);

// Fallback template for the highest-priority category present:
// privacy_pii > prompt_injection > toxicity > policy_other.
// Throws Error(kInvalidArgument) on an ALLOW verdict.
const std::string& fallback_for(const GuardVerdict& verdict);

}  // namespace groundpilot
