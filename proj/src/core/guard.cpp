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

#include "core/guard.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <nlohmann/json.hpp>

#include "core/error.hpp"

namespace groundpilot {

namespace {

using nlohmann::json;

std::string ascii_lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

}  // namespace

const char* to_string(GuardCategory c) {
  switch (c) {
    case GuardCategory::kToxicity: return "toxicity";
    case GuardCategory::kPrivacyPii: return "privacy_pii";
    case GuardCategory::kPromptInjection: return "prompt_injection";
    case GuardCategory::kPolicyOther: return "policy_other";
  }
  return "policy_other";
}

const char* to_string(GuardDirection d) {
  switch (d) {
    case GuardDirection::kInput: return "input";
    case GuardDirection::kOutput: return "output";
    case GuardDirection::kBoth: return "both";
  }
  return "both";
}

GuardCategory guard_category_from_string(const std::string& s) {
  if (s == "toxicity") return GuardCategory::kToxicity;
  if (s == "privacy_pii") return GuardCategory::kPrivacyPii;
  if (s == "prompt_injection") return GuardCategory::kPromptInjection;
  if (s == "policy_other") return GuardCategory::kPolicyOther;
  throw_error(ErrorCode::kParse, "unknown guard category '" + s + "'");
}

GuardDirection guard_direction_from_string(const std::string& s) {
  if (s == "input") return GuardDirection::kInput;
  if (s == "output") return GuardDirection::kOutput;
  if (s == "both") return GuardDirection::kBoth;
  throw_error(ErrorCode::kParse, "unknown guard direction '" + s + "'");
}

RuleGuard::RuleGuard(std::vector<GuardRule> rules) : rules_(std::move(rules)) {
  std::set<std::string> seen;
  for (const GuardRule& rule : rules_) {
    if (rule.id.empty() || !seen.insert(rule.id).second) {
      throw_error(ErrorCode::kValidation,
                  "guard rule ids must be unique and non-empty ('" + rule.id +
                      "')");
    }
    CompiledRule compiled;
    compiled.rule = rule;
    if (rule.pattern_type == "regex") {
      try {
        compiled.regex = std::regex(rule.pattern, std::regex_constants::ECMAScript |
                                                      std::regex_constants::icase);
      } catch (const std::regex_error& e) {
        throw_error(ErrorCode::kValidation, "guard rule '" + rule.id +
                                                "': pattern does not compile: " +
                                                e.what());
      }
    } else if (rule.pattern_type == "substring") {
      if (rule.pattern.empty()) {
        throw_error(ErrorCode::kValidation,
                    "guard rule '" + rule.id + "': empty substring pattern");
      }
      compiled.lowered_pattern = ascii_lower(rule.pattern);
    } else {
      throw_error(ErrorCode::kValidation,
                  "guard rule '" + rule.id + "': unknown pattern_type '" +
                      rule.pattern_type + "'");
    }
    compiled_.push_back(std::move(compiled));
  }
}

GuardVerdict RuleGuard::screen(const std::string& text,
                               GuardDirection direction) const {
  if (direction == GuardDirection::kBoth) {
    throw_error(ErrorCode::kInvalidArgument,
                "screen() direction must be input or output");
  }
  GuardVerdict verdict;
  std::string lowered;  // lazily built for substring rules
  for (const CompiledRule& compiled : compiled_) {
    const GuardRule& rule = compiled.rule;
    if (rule.direction != GuardDirection::kBoth &&
        rule.direction != direction) {
      continue;
    }
    bool fired = false;
    if (rule.pattern_type == "regex") {
      fired = std::regex_search(text, compiled.regex);
    } else {
      if (lowered.empty() && !text.empty()) lowered = ascii_lower(text);
      fired = lowered.find(compiled.lowered_pattern) != std::string::npos;
    }
    if (fired) {
      verdict.categories.insert(rule.category);
      verdict.matched_rules.push_back(rule.id);
    }
  }
  verdict.decision = verdict.categories.empty() ? GuardDecision::kAllow
                                                : GuardDecision::kBlock;
  return verdict;
}

std::shared_ptr<RuleGuard> RuleGuard::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw_error(ErrorCode::kIo, "cannot open guard rules file '" + path + "'");
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw_error(ErrorCode::kParse,
                "guard rules '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("rules") || !doc["rules"].is_array()) {
    throw_error(ErrorCode::kParse, "guard rules: expected {\"rules\": [...]}");
  }
  std::vector<GuardRule> rules;
  for (const json& r : doc["rules"]) {
    GuardRule rule;
    rule.id = r.value("id", "");
    rule.category = guard_category_from_string(r.value("category", ""));
    rule.pattern = r.value("pattern", "");
    rule.pattern_type = r.value("pattern_type", "substring");
    rule.direction = guard_direction_from_string(r.value("direction", "both"));
    rules.push_back(std::move(rule));
  }
  return std::make_shared<RuleGuard>(std::move(rules));
}

std::vector<GuardRule> RuleGuard::default_rules() {
  auto rule = [](const char* id, GuardCategory cat, const char* pattern,
                 const char* type, GuardDirection dir) {
    GuardRule r;
    r.id = id;
    r.category = cat;
    r.pattern = pattern;
    r.pattern_type = type;
    r.direction = dir;
    return r;
  };
  return {
      // Korean resident registration numbers: 13 digits, plain or hyphenated.
      rule("pii.rrn_digits", GuardCategory::kPrivacyPii,
           R"((?:^|[^0-9])[0-9]{13}(?![0-9]))", "regex", GuardDirection::kBoth),
      rule("pii.rrn_hyphen", GuardCategory::kPrivacyPii,
           R"([0-9]{6}-[0-9]{7})", "regex", GuardDirection::kBoth),
      rule("pii.ssn_hyphen", GuardCategory::kPrivacyPii,
           R"([0-9]{3}-[0-9]{2}-[0-9]{4})", "regex", GuardDirection::kBoth),
      rule("pii.rrn_phrase", GuardCategory::kPrivacyPii,
           "\xEC\xA3\xBC\xEB\xAF\xBC\xEB\x93\xB1\xEB\xA1\x9D\xEB\xB2\x88\xED\x98\xB8",
           "substring", GuardDirection::kBoth),  // 주민등록번호
      rule("pii.ssn_phrase", GuardCategory::kPrivacyPii,
           "social security number", "substring", GuardDirection::kBoth),
      rule("inj.ignore_previous", GuardCategory::kPromptInjection,
           R"(ignore\s+(all\s+)?previous\s+instructions)", "regex",
           GuardDirection::kInput),
      rule("inj.disregard", GuardCategory::kPromptInjection,
           R"(disregard\s+(all\s+)?(your|prior|previous)\s+(instructions|rules))",
           "regex", GuardDirection::kInput),
      rule("inj.system_prompt", GuardCategory::kPromptInjection,
           "reveal your system prompt", "substring", GuardDirection::kInput),
      rule("inj.jailbreak", GuardCategory::kPromptInjection, "jailbreak",
           "substring", GuardDirection::kInput),
      rule("tox.idiot", GuardCategory::kToxicity, "idiot", "substring",
           GuardDirection::kBoth),
      rule("tox.moron", GuardCategory::kToxicity, "moron", "substring",
           GuardDirection::kBoth),
      rule("tox.hell", GuardCategory::kToxicity, "go to hell", "substring",
           GuardDirection::kBoth),
      rule("policy.guaranteed", GuardCategory::kPolicyOther,
           R"(guaranteed\s+(profit|return)s?)", "regex", GuardDirection::kBoth),
      rule("policy.insider", GuardCategory::kPolicyOther, "insider tip",
           "substring", GuardDirection::kBoth),
      rule("policy.insider_info", GuardCategory::kPolicyOther,
           "insider information", "substring", GuardDirection::kBoth),
  };
}

std::shared_ptr<RuleGuard> RuleGuard::with_default_rules() {
  return std::make_shared<RuleGuard>(default_rules());
}

std::vector<LabeledSample> load_labeled_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw_error(ErrorCode::kIo, "cannot open samples file '" + path + "'");
  }
  std::vector<LabeledSample> samples;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      throw_error(ErrorCode::kParse, path + ":" + std::to_string(lineno) +
                                         ": bad JSONL record: " + e.what());
    }
    LabeledSample s;
    s.text = doc.value("text", "");
    if (s.text.empty()) {
      throw_error(ErrorCode::kValidation,
                  path + ":" + std::to_string(lineno) + ": empty text");
    }
    if (!doc.contains("gold_positive") || !doc["gold_positive"].is_boolean()) {
      throw_error(ErrorCode::kParse, path + ":" + std::to_string(lineno) +
                                         ": missing boolean gold_positive");
    }
    s.gold_positive = doc["gold_positive"].get<bool>();
    samples.push_back(std::move(s));
  }
  return samples;
}

F1Report evaluate_f1(const Guard& guard,
                     const std::vector<LabeledSample>& samples,
                     GuardDirection direction) {
  if (samples.empty()) {
    throw_error(ErrorCode::kInvalidArgument, "evaluate_f1: empty sample list");
  }
  F1Report report;
  for (const LabeledSample& s : samples) {
    bool predicted =
        guard.screen(s.text, direction).decision == GuardDecision::kBlock;
    if (predicted && s.gold_positive) ++report.tp;
    else if (predicted && !s.gold_positive) ++report.fp;
    else if (!predicted && s.gold_positive) ++report.fn;
    else ++report.tn;
  }
  const std::size_t pred_pos = report.tp + report.fp;
  const std::size_t gold_pos = report.tp + report.fn;
  if (pred_pos == 0) {
    report.precision = (gold_pos == 0) ? 1.0 : 0.0;
  } else {
    report.precision = double(report.tp) / double(pred_pos);
  }
  if (gold_pos == 0) {
    report.recall = (pred_pos == 0) ? 1.0 : 0.0;
  } else {
    report.recall = double(report.tp) / double(gold_pos);
  }
  report.f1 = (report.precision + report.recall == 0.0)
                  ? 0.0
                  : 2.0 * report.precision * report.recall /
                        (report.precision + report.recall);
  return report;
}

const std::string& fallback_for(const GuardVerdict& verdict) {
  if (verdict.decision != GuardDecision::kBlock) {
    throw_error(ErrorCode::kInvalidArgument,
                "fallback_for requires a BLOCK verdict");
  }
  static const std::string kPrivacy =
      "I can't help with requests involving personal identifying "
      "information. For account-specific matters, please use the secure "
      "in-app support channel.";
  static const std::string kInjection =
      "I can't follow that instruction. Let me know what financial topic I "
      "can help you explore.";
  static const std::string kToxicity =
      "I can't engage with that phrasing. I'm happy to help with your "
      "investment questions.";
  static const std::string kPolicy =
      "I can't provide that. This service offers informational market "
      "insights only, not individual investment advice.";
  if (verdict.categories.count(GuardCategory::kPrivacyPii)) return kPrivacy;
  if (verdict.categories.count(GuardCategory::kPromptInjection))
    return kInjection;
  if (verdict.categories.count(GuardCategory::kToxicity)) return kToxicity;
  return kPolicy;
}

}  // namespace groundpilot
