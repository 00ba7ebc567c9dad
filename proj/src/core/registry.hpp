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
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace groundpilot {

enum class Sensitivity { kNonPii, kPii };
enum class ModuleKind { kRetrieval, kAnalysis, kSummarization, kEvidencePackaging };
enum class ComponentCategory { kInformational, kPersonalAsset };

const char* to_string(Sensitivity s);
const char* to_string(ModuleKind k);
const char* to_string(ComponentCategory c);

struct DataSourceRef {
  std::string name;
  bool personal = false;
};

struct ModuleSpec {
  std::string id;
  ModuleKind kind = ModuleKind::kRetrieval;
  std::vector<DataSourceRef> data_sources;
  // Derived: PII iff at least one data source is tagged personal.
  Sensitivity sensitivity = Sensitivity::kNonPii;
};

struct ComponentSpec {
  std::string id;
  std::string intent_label;
  ComponentCategory category = ComponentCategory::kInformational;
  std::vector<std::string> module_ids;
  // Derived: PII iff any referenced module is PII.
  Sensitivity sensitivity = Sensitivity::kNonPii;
};

// Production manifests carry the full component/module hierarchy; relaxed
// mode admits arbitrarily small manifests for tests.
inline constexpr std::size_t kStrictComponentCount = 20;
inline constexpr std::size_t kStrictModuleCount = 48;
inline constexpr std::size_t kStrictPersonalAssetCount = 2;

// Immutable once constructed. Shared read-only between threads; reloads
// construct a fresh Manifest and swap the shared_ptr.
class Manifest {
 public:
  // Parses and validates the documented JSON format (see
  // schemas/manifest.schema.json). Throws Error on parse or validation
  // failure; with strict=true additionally enforces the 20/48/2 counts.
  static std::shared_ptr<const Manifest> from_json(const nlohmann::json& doc,
                                                   bool strict);
  static std::shared_ptr<const Manifest> load_file(const std::string& path,
                                                   bool strict);

  const ComponentSpec& component(const std::string& id) const;  // kNotFound
  const ModuleSpec& module(const std::string& id) const;        // kNotFound
  bool has_component(const std::string& id) const;
  bool has_module(const std::string& id) const;

  const std::map<std::string, ComponentSpec>& components() const {
    return components_;
  }
  const std::map<std::string, ModuleSpec>& modules() const { return modules_; }
  const std::map<std::string, bool>& sources() const { return sources_; }

  std::size_t personal_asset_count() const;

  // Hash of the canonical serialization; constant for the manifest lifetime.
  std::uint64_t content_hash() const { return content_hash_; }
  std::string canonical_json() const;

 private:
  Manifest() = default;

  std::map<std::string, ComponentSpec> components_;
  std::map<std::string, ModuleSpec> modules_;
  std::map<std::string, bool> sources_;  // name -> personal flag
  std::uint64_t content_hash_ = 0;
};

using ManifestPtr = std::shared_ptr<const Manifest>;

}  // namespace groundpilot
