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
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/embedder.hpp"
#include "core/timeutil.hpp"

namespace groundpilot {

struct Document {
  std::string doc_id;         // [A-Za-z0-9._-]+, unique per generation
  std::string source_module;  // must resolve in the manifest
  std::string text;
  std::int64_t published_at = 0;  // epoch seconds UTC
  std::map<std::string, std::string> metadata;
};

// Inclusive date range in UTC.
struct TimeWindow {
  CivilDate start;
  CivilDate end;
};

struct ExpandedQuery {
  std::string original;
  std::vector<std::string> expansion_terms;  // deduplicated, sorted
  std::optional<TimeWindow> time_window;
};

// term -> synonym/hypernym list; keys must tokenize to a single token.
using Ontology = std::map<std::string, std::vector<std::string>>;
Ontology load_ontology(const std::string& path);

// Ontology lookup over the query's tokens plus temporal normalization of the
// relative-date phrases in the documented phrase table (English and Korean).
// Unmatched queries pass through unchanged.
ExpandedQuery expand_query(const std::string& query, const Ontology& ontology,
                           const CivilDate& reference_date);

struct ScoredDoc {
  std::string id;  // retrieval unit id (doc_id, or doc_id.<n> for chunks)
  double score = 0.0;
};

struct EvidencePassage {
  std::string doc_id;  // citable retrieval unit id
  std::string passage_text;
  double sparse_score = 0.0;  // 0 when absent from that list
  double dense_score = 0.0;   // cosine in [-1, 1]; 0 when absent
  int fused_rank = 0;         // 1..k without gaps
  double fused_score = 0.0;
  std::string source_module;  // provenance, used by the egress checks
};

// Reciprocal-rank fusion: fused_score(d) = sum over lists containing d of
// 1 / (rrf_k + rank). Descending fused_score, ties by ascending id; ranks
// assigned 1..min(k, |union|). Inputs must be internally deduplicated.
std::vector<EvidencePassage> reciprocal_rank_fuse(
    const std::vector<ScoredDoc>& sparse, const std::vector<ScoredDoc>& dense,
    std::size_t k, double rrf_k = 60.0);

// Deterministic context block handed to the generation adapters. One entry
// per passage in fused_rank order:
//   [E<rank>] <sentences> [ref:<id>]\n
// Passage text is cut at sentence boundaries so the block fits max_chars;
// the first entry is always emitted (hard-truncated if even its first
// sentence exceeds the budget) and always keeps its reference token.
std::string build_evidence_template(const std::vector<EvidencePassage>& passages,
                                    std::size_t max_chars);

// One immutable, searchable snapshot of the corpus. Documents longer than
// kMaxPassageChars are indexed as sentence-bounded chunks.
class IndexGeneration {
 public:
  static constexpr std::size_t kMaxPassageChars = 1000;

  static std::shared_ptr<const IndexGeneration> build(
      const std::map<std::string, Document>& docs, const Embedder& embedder,
      std::uint64_t generation);

  // BM25 (k1=1.2, b=0.75, idf = ln(1 + (N-df+0.5)/(df+0.5))) over the
  // deduplicated union of query and expansion tokens. Only units containing
  // at least one query term are candidates. Ties by ascending unit id.
  std::vector<ScoredDoc> sparse_search(
      const ExpandedQuery& query, std::size_t k,
      const std::set<std::string>* module_filter = nullptr) const;

  // Exact top-k by cosine. The query text is the original query plus the
  // expansion terms. Ties by ascending unit id. Throws on dimension mismatch.
  std::vector<ScoredDoc> dense_search(
      const ExpandedQuery& query, const Embedder& embedder, std::size_t k,
      const std::set<std::string>* module_filter = nullptr) const;

  // Full hybrid pass: sparse + dense + fusion, materialized passages.
  std::vector<EvidencePassage> search_evidence(
      const ExpandedQuery& query, const Embedder& embedder,
      std::size_t k_sparse, std::size_t k_dense, std::size_t k_fused,
      const std::set<std::string>* module_filter = nullptr) const;

  std::vector<EvidencePassage> materialize(std::vector<EvidencePassage> fused) const;

  std::uint64_t generation() const { return generation_; }
  std::size_t doc_count() const { return doc_count_; }
  std::size_t unit_count() const { return units_.size(); }
  bool has_unit(const std::string& unit_id) const;
  const std::string& unit_text(const std::string& unit_id) const;
  const std::string& unit_source_module(const std::string& unit_id) const;
  int vector_dimension() const { return dimension_; }

 private:
  IndexGeneration() = default;

  struct Unit {
    std::string unit_id;
    std::string doc_id;
    std::string source_module;
    std::string text;
    std::int64_t published_at = 0;
    std::size_t token_count = 0;
    std::vector<double> vector;
  };

  bool unit_passes(const Unit& unit, const std::optional<TimeWindow>& window,
                   const std::set<std::string>* module_filter) const;
  const Unit& unit_at(const std::string& unit_id) const;

  std::uint64_t generation_ = 0;
  std::size_t doc_count_ = 0;
  int dimension_ = 0;
  double avg_token_count_ = 0.0;
  std::vector<Unit> units_;                      // sorted by unit_id
  std::map<std::string, std::size_t> unit_index_;
  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>>
      postings_;  // term -> (unit position, term frequency)
};

// Generational store: readers take a snapshot and are unaffected by a
// concurrent refresh; refresh builds a new generation off to the side and
// swaps it in atomically.
class IndexStore {
 public:
  explicit IndexStore(std::shared_ptr<const Embedder> embedder);

  std::shared_ptr<const IndexGeneration> snapshot() const;

  // Upserts the batch by doc_id and publishes a new generation (counter +1
  // even for an empty batch). Throws on duplicate doc_id within the batch or
  // invalid ids.
  std::uint64_t refresh(const std::vector<Document>& batch);

  const Embedder& embedder() const { return *embedder_; }
  std::shared_ptr<const Embedder> embedder_ptr() const { return embedder_; }

 private:
  std::shared_ptr<const Embedder> embedder_;
  mutable std::mutex mutex_;
  std::map<std::string, Document> docs_;
  std::shared_ptr<const IndexGeneration> current_;
};

std::vector<Document> load_corpus_jsonl(const std::string& path);
void append_corpus_jsonl(const std::string& path,
                         const std::vector<Document>& docs);

}  // namespace groundpilot
