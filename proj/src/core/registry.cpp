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

#include "core/registry.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/text.hpp"

namespace groundpilot {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string require_string(const json& obj, const char* key,
                           const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    throw_error(ErrorCode::kParse,
                where + ": missing or non-string field '" + key + "'");
  }
  return obj[key].get<std::string>();
}

void require_identifier(const std::string& id, const std::string& where) {
  if (!is_valid_ref_id(id)) {
    throw_error(ErrorCode::kValidation,
                where + ": identifier '" + id +
                    "' must match [A-Za-z0-9._-]+");
  }
}

ModuleKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "retrieval") return ModuleKind::kRetrieval;
  if (s == "analysis") return ModuleKind::kAnalysis;
  if (s == "summarization") return ModuleKind::kSummarization;
  if (s == "evidence-packaging") return ModuleKind::kEvidencePackaging;
  throw_error(ErrorCode::kParse, where + ": unknown module kind '" + s + "'");
}

ComponentCategory parse_category(const std::string& s,
                                 const std::string& where) {
  if (s == "informational") return ComponentCategory::kInformational;
  if (s == "personal_asset") return ComponentCategory::kPersonalAsset;
  throw_error(ErrorCode::kParse, where + ": unknown category '" + s + "'");
}

}  // namespace

const char* to_string(Sensitivity s) {
  return s == Sensitivity::kPii ? "PII" : "NON_PII";
}

const char* to_string(ModuleKind k) {
  switch (k) {
    case ModuleKind::kRetrieval: return "retrieval";
    case ModuleKind::kAnalysis: return "analysis";
    case ModuleKind::kSummarization: return "summarization";
    case ModuleKind::kEvidencePackaging: return "evidence-packaging";
  }
  return "retrieval";
}

const char* to_string(ComponentCategory c) {
  return c == ComponentCategory::kPersonalAsset ? "personal_asset"
                                                : "informational";
}

std::shared_ptr<const Manifest> Manifest::from_json(const nlohmann::json& doc,
                                                    bool strict) {
  if (!doc.is_object()) {
    throw_error(ErrorCode::kParse, "manifest root must be a JSON object");
  }
  for (const char* key : {"sources", "modules", "components"}) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      throw_error(ErrorCode::kParse,
                  std::string("manifest: missing '") + key + "' array");
    }
  }

  auto manifest = std::shared_ptr<Manifest>(new Manifest());

  for (const json& src : doc["sources"]) {
    std::string name = require_string(src, "name", "source");
    if (name.empty()) {
      throw_error(ErrorCode::kValidation, "source: empty name");
    }
    bool personal = src.value("personal", false);
    if (!manifest->sources_.emplace(name, personal).second) {
      throw_error(ErrorCode::kValidation, "duplicate source name '" + name + "'");
    }
  }

  for (const json& mod : doc["modules"]) {
    ModuleSpec spec;
    spec.id = require_string(mod, "id", "module");
    require_identifier(spec.id, "module");
    spec.kind = parse_kind(require_string(mod, "kind", "module " + spec.id),
                           "module " + spec.id);
    if (mod.contains("data_sources")) {
      if (!mod["data_sources"].is_array()) {
        throw_error(ErrorCode::kParse,
                    "module " + spec.id + ": data_sources must be an array");
      }
      for (const json& ref : mod["data_sources"]) {
        if (!ref.is_string()) {
          throw_error(ErrorCode::kParse,
                      "module " + spec.id + ": data_sources entries are names");
        }
        std::string name = ref.get<std::string>();
        auto it = manifest->sources_.find(name);
        if (it == manifest->sources_.end()) {
          throw_error(ErrorCode::kValidation,
                      "module " + spec.id + ": data source '" + name +
                          "' not in the source catalog");
        }
        spec.data_sources.push_back(DataSourceRef{name, it->second});
      }
    }
    spec.sensitivity = Sensitivity::kNonPii;
    for (const DataSourceRef& ref : spec.data_sources) {
      if (ref.personal) spec.sensitivity = Sensitivity::kPii;
    }
    std::string id = spec.id;
    if (!manifest->modules_.emplace(id, std::move(spec)).second) {
      throw_error(ErrorCode::kValidation, "duplicate module id '" + id + "'");
    }
  }

  for (const json& comp : doc["components"]) {
    ComponentSpec spec;
    spec.id = require_string(comp, "id", "component");
    require_identifier(spec.id, "component");
    spec.intent_label = comp.value("intent_label", spec.id);
    spec.category =
        parse_category(require_string(comp, "category", "component " + spec.id),
                       "component " + spec.id);
    if (!comp.contains("module_ids") || !comp["module_ids"].is_array() ||
        comp["module_ids"].empty()) {
      throw_error(ErrorCode::kValidation,
                  "component " + spec.id + ": module_ids must be non-empty");
    }
    for (const json& mid : comp["module_ids"]) {
      if (!mid.is_string()) {
        throw_error(ErrorCode::kParse,
                    "component " + spec.id + ": module_ids entries are ids");
      }
      std::string module_id = mid.get<std::string>();
      auto it = manifest->modules_.find(module_id);
      if (it == manifest->modules_.end()) {
        throw_error(ErrorCode::kValidation,
                    "component " + spec.id + ": dangling module reference '" +
                        module_id + "'");
      }
      if (it->second.sensitivity == Sensitivity::kPii) {
        spec.sensitivity = Sensitivity::kPii;
      }
      spec.module_ids.push_back(std::move(module_id));
    }
    std::string id = spec.id;
    if (!manifest->components_.emplace(id, std::move(spec)).second) {
      throw_error(ErrorCode::kValidation, "duplicate component id '" + id + "'");
    }
  }

  if (strict) {
    if (manifest->components_.size() != kStrictComponentCount) {
      throw_error(ErrorCode::kValidation,
                  "strict manifest must contain exactly 20 components, got " +
                      std::to_string(manifest->components_.size()));
    }
    if (manifest->modules_.size() != kStrictModuleCount) {
      throw_error(ErrorCode::kValidation,
                  "strict manifest must contain exactly 48 modules, got " +
                      std::to_string(manifest->modules_.size()));
    }
    if (manifest->personal_asset_count() != kStrictPersonalAssetCount) {
      throw_error(
          ErrorCode::kValidation,
          "strict manifest must contain exactly 2 personal_asset components, "
          "got " +
              std::to_string(manifest->personal_asset_count()));
    }
  }

  manifest->content_hash_ = fnv1a64(manifest->canonical_json());
  return manifest;
}

std::shared_ptr<const Manifest> Manifest::load_file(const std::string& path,
                                                    bool strict) {
  std::ifstream in(path);
  if (!in) {
    throw_error(ErrorCode::kIo, "cannot open manifest file '" + path + "'");
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw_error(ErrorCode::kParse,
                "manifest '" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(doc, strict);
}

const ComponentSpec& Manifest::component(const std::string& id) const {
  auto it = components_.find(id);
  if (it == components_.end()) {
    throw_error(ErrorCode::kNotFound, "unknown component '" + id + "'");
  }
  return it->second;
}

const ModuleSpec& Manifest::module(const std::string& id) const {
  auto it = modules_.find(id);
  if (it == modules_.end()) {
    throw_error(ErrorCode::kNotFound, "unknown module '" + id + "'");
  }
  return it->second;
}

bool Manifest::has_component(const std::string& id) const {
  return components_.count(id) != 0;
}

bool Manifest::has_module(const std::string& id) const {
  return modules_.count(id) != 0;
}

std::size_t Manifest::personal_asset_count() const {
  std::size_t n = 0;
  for (const auto& [id, comp] : components_) {
    if (comp.category == ComponentCategory::kPersonalAsset) ++n;
  }
  return n;
}

std::string Manifest::canonical_json() const {
  ordered_json doc;
  doc["sources"] = ordered_json::array();
  for (const auto& [name, personal] : sources_) {
    doc["sources"].push_back({{"name", name}, {"personal", personal}});
  }
  doc["modules"] = ordered_json::array();
  for (const auto& [id, mod] : modules_) {
    ordered_json m;
    m["id"] = id;
    m["kind"] = to_string(mod.kind);
    m["data_sources"] = ordered_json::array();
    for (const DataSourceRef& ref : mod.data_sources) {
      m["data_sources"].push_back(ref.name);
    }
    m["sensitivity"] = to_string(mod.sensitivity);
    doc["modules"].push_back(std::move(m));
  }
  doc["components"] = ordered_json::array();
  for (const auto& [id, comp] : components_) {
    ordered_json c;
    c["id"] = id;
    c["intent_label"] = comp.intent_label;
    c["category"] = to_string(comp.category);
    c["module_ids"] = comp.module_ids;
    c["sensitivity"] = to_string(comp.sensitivity);
    doc["components"].push_back(std::move(c));
  }
  return doc.dump();
}

}  // namespace groundpilot
