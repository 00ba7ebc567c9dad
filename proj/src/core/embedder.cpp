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

#include "core/embedder.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/text.hpp"

namespace groundpilot {

HashingEmbedder::HashingEmbedder(int dimension) : dimension_(dimension) {
  if (dimension <= 0) {
    throw_error(ErrorCode::kInvalidArgument,
                "embedder dimension must be positive");
  }
}

std::vector<double> HashingEmbedder::embed(const std::string& text) const {
  std::vector<double> v(dimension_, 0.0);
  std::vector<std::string> tokens = tokenize(text);

  auto add_feature = [&](const std::string& feature) {
    std::uint64_t h = fnv1a64(feature);
    std::size_t bucket = h % static_cast<std::uint64_t>(dimension_);
    // Second independent hash decides the sign, keeping bucket collisions
    // from systematically inflating the same direction.
    double sign = (fnv1a64(feature, 0x9e3779b97f4a7c15ull) & 1) ? 1.0 : -1.0;
    v[bucket] += sign;
  };

  for (const std::string& tok : tokens) add_feature("u:" + tok);
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    add_feature("b:" + tokens[i] + "\x1f" + tokens[i + 1]);
  }

  double norm_sq = 0.0;
  for (double x : v) norm_sq += x * x;
  if (norm_sq == 0.0) {
    v[0] = 1.0;
    return v;
  }
  double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : v) x *= inv;
  return v;
}

std::shared_ptr<const Embedder> default_embedder() {
  return std::make_shared<HashingEmbedder>(64);
}

}  // namespace groundpilot
