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
#include <string>
#include <vector>

namespace groundpilot {

// Embedding model slot. The production system plugs a finance-domain neural
// model here; the reference implementation below keeps the dense path fully
// deterministic without one. embed() must return an L2-normalized vector
// (norm within 1e-6 of 1) and be a pure function of the text.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual int dimension() const = 0;
  virtual std::vector<double> embed(const std::string& text) const = 0;
};

// Feature hashing of token unigrams and bigrams into signed buckets,
// L2-normalized. Text with no tokens maps to the first basis vector so the
// output is always unit norm.
class HashingEmbedder final : public Embedder {
 public:
  explicit HashingEmbedder(int dimension = 64);

  int dimension() const override { return dimension_; }
  std::vector<double> embed(const std::string& text) const override;

 private:
  int dimension_;
};

std::shared_ptr<const Embedder> default_embedder();

}  // namespace groundpilot
