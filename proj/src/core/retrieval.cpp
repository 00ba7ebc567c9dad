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

#include "core/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/text.hpp"

namespace groundpilot {

namespace {

using nlohmann::json;

constexpr double kBm25K1 = 1.2;
constexpr double kBm25B = 0.75;

std::string ascii_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

TimeWindow day_window(const CivilDate& d) { return {d, d}; }

TimeWindow week_of(const CivilDate& r, int week_delta) {
  CivilDate start = add_days(first_day_of_week(r), 7 * week_delta);
  return {start, add_days(start, 6)};
}

TimeWindow month_of(const CivilDate& r, int month_delta) {
  CivilDate probe = r;
  if (month_delta != 0) {
    int m = probe.month - 1 + month_delta;
    int y = probe.year + (m < 0 ? (m - 11) / 12 : m / 12);
    m = ((m % 12) + 12) % 12;
    probe = CivilDate{y, m + 1, 1};
  }
  return {first_day_of_month(probe), last_day_of_month(probe)};
}

TimeWindow quarter_of(const CivilDate& r, int quarter_delta) {
  CivilDate probe = r;
  if (quarter_delta != 0) {
    int qm = ((probe.month - 1) / 3) * 3;  // 0-based first month of quarter
    int m = qm + 3 * quarter_delta;
    int y = probe.year + (m < 0 ? (m - 11) / 12 : m / 12);
    m = ((m % 12) + 12) % 12;
    probe = CivilDate{y, m + 1, 1};
  }
  return {first_day_of_quarter(probe), last_day_of_quarter(probe)};
}

TimeWindow year_of(const CivilDate& r, int year_delta) {
  int y = r.year + year_delta;
  return {CivilDate{y, 1, 1}, CivilDate{y, 12, 31}};
}

// Phrase table, documented in docs/formats.md. First match in table order
// wins; one window per query.
std::optional<TimeWindow> resolve_temporal(const std::string& query,
                                           const CivilDate& reference) {
  const std::string lowered = ascii_lower(query);
  struct Entry {
    const char* phrase;
    TimeWindow window;
  };
  const Entry entries[] = {
      {"yesterday", day_window(add_days(reference, -1))},
      {"어제", day_window(add_days(reference, -1))},
      {"today", day_window(reference)},
      {"오늘", day_window(reference)},
      {"last week", week_of(reference, -1)},
      {"지난주", week_of(reference, -1)},
      {"지난 주", week_of(reference, -1)},
      {"this week", week_of(reference, 0)},
      {"이번주", week_of(reference, 0)},
      {"이번 주", week_of(reference, 0)},
      {"last month", month_of(reference, -1)},
      {"지난달", month_of(reference, -1)},
      {"지난 달", month_of(reference, -1)},
      {"this month", month_of(reference, 0)},
      {"이번달", month_of(reference, 0)},
      {"이번 달", month_of(reference, 0)},
      {"last quarter", quarter_of(reference, -1)},
      {"지난 분기", quarter_of(reference, -1)},
      {"지난분기", quarter_of(reference, -1)},
      {"this quarter", quarter_of(reference, 0)},
      {"이번 분기", quarter_of(reference, 0)},
      {"이번분기", quarter_of(reference, 0)},
      {"last year", year_of(reference, -1)},
      {"작년", year_of(reference, -1)},
      {"this year", year_of(reference, 0)},
      {"올해", year_of(reference, 0)},
  };
  for (const Entry& e : entries) {
    if (lowered.find(e.phrase) != std::string::npos) return e.window;
  }
  return std::nullopt;
}

bool date_in_window(std::int64_t published_at, const TimeWindow& w) {
  CivilDate d = epoch_to_date(published_at);
  return !(d < w.start) && !(w.end < d);
}

}  // namespace

Ontology load_ontology(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw_error(ErrorCode::kIo, "cannot open ontology file '" + path + "'");
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw_error(ErrorCode::kParse,
                "ontology '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) {
    throw_error(ErrorCode::kParse, "ontology must be a JSON object");
  }
  Ontology ontology;
  for (const auto& [term, value] : doc.items()) {
    std::vector<std::string> key_tokens = tokenize(term);
    if (key_tokens.size() != 1) {
      throw_error(ErrorCode::kValidation,
                  "ontology keys must be single tokens: '" + term + "'");
    }
    if (!value.is_array()) {
      throw_error(ErrorCode::kParse,
                  "ontology entry '" + term + "' must be an array");
    }
    std::vector<std::string> expansions;
    for (const json& syn : value) {
      if (!syn.is_string()) {
        throw_error(ErrorCode::kParse,
                    "ontology entry '" + term + "' has a non-string value");
      }
      expansions.push_back(syn.get<std::string>());
    }
    ontology[key_tokens[0]] = std::move(expansions);
  }
  return ontology;
}

ExpandedQuery expand_query(const std::string& query, const Ontology& ontology,
                           const CivilDate& reference_date) {
  ExpandedQuery out;
  out.original = query;

  std::set<std::string> expansion;
  for (const std::string& token : tokenize(query)) {
    auto it = ontology.find(token);
    if (it == ontology.end()) continue;
    for (const std::string& term : it->second) expansion.insert(term);
  }
  out.expansion_terms.assign(expansion.begin(), expansion.end());

  out.time_window = resolve_temporal(query, reference_date);
  return out;
}

std::vector<EvidencePassage> reciprocal_rank_fuse(
    const std::vector<ScoredDoc>& sparse, const std::vector<ScoredDoc>& dense,
    std::size_t k, double rrf_k) {
  struct Acc {
    double fused = 0.0;
    double sparse_score = 0.0;
    double dense_score = 0.0;
  };
  std::map<std::string, Acc> acc;
  for (std::size_t i = 0; i < sparse.size(); ++i) {
    Acc& a = acc[sparse[i].id];
    a.fused += 1.0 / (rrf_k + double(i + 1));
    a.sparse_score = sparse[i].score;
  }
  for (std::size_t i = 0; i < dense.size(); ++i) {
    Acc& a = acc[dense[i].id];
    a.fused += 1.0 / (rrf_k + double(i + 1));
    a.dense_score = dense[i].score;
  }

  std::vector<EvidencePassage> out;
  out.reserve(acc.size());
  for (const auto& [id, a] : acc) {
    EvidencePassage p;
    p.doc_id = id;
    p.sparse_score = a.sparse_score;
    p.dense_score = a.dense_score;
    p.fused_score = a.fused;
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(),
            [](const EvidencePassage& a, const EvidencePassage& b) {
              if (a.fused_score != b.fused_score)
                return a.fused_score > b.fused_score;
              return a.doc_id < b.doc_id;
            });
  if (out.size() > k) out.resize(k);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].fused_rank = int(i + 1);
  }
  return out;
}

std::string build_evidence_template(const std::vector<EvidencePassage>& passages,
                                    std::size_t max_chars) {
  if (passages.empty()) {
    throw_error(ErrorCode::kInvalidArgument,
                "build_evidence_template: empty passage list");
  }
  std::vector<const EvidencePassage*> ordered;
  ordered.reserve(passages.size());
  for (const EvidencePassage& p : passages) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(),
            [](const EvidencePassage* a, const EvidencePassage* b) {
              return a->fused_rank < b->fused_rank;
            });

  std::string block;
  for (std::size_t idx = 0; idx < ordered.size(); ++idx) {
    const EvidencePassage& p = *ordered[idx];
    std::string prefix = "[E" + std::to_string(idx + 1) + "] ";
    std::string token = make_ref_token(p.doc_id);
    // prefix + text + ' ' + token + '\n'
    std::size_t overhead = prefix.size() + 1 + token.size() + 1;
    std::size_t remaining = max_chars > block.size() ? max_chars - block.size() : 0;

    std::string text;
    std::size_t budget = remaining > overhead ? remaining - overhead : 0;
    for (const Sentence& s : segment_sentences(p.passage_text)) {
      std::size_t extra = text.empty() ? s.text.size() : s.text.size() + 1;
      if (text.size() + extra > budget) break;
      if (!text.empty()) text.push_back(' ');
      text += s.text;
    }
    if (text.empty()) {
      if (idx > 0) break;  // later entries must fit whole sentences
      // First entry always ships, hard-truncated, token intact.
      std::vector<Sentence> sentences = segment_sentences(p.passage_text);
      std::string first =
          sentences.empty() ? std::string() : sentences.front().text;
      text = first.substr(0, budget);
    }
    block += prefix;
    block += text;
    block.push_back(' ');
    block += token;
    block.push_back('\n');
  }
  return block;
}

std::shared_ptr<const IndexGeneration> IndexGeneration::build(
    const std::map<std::string, Document>& docs, const Embedder& embedder,
    std::uint64_t generation) {
  auto gen = std::shared_ptr<IndexGeneration>(new IndexGeneration());
  gen->generation_ = generation;
  gen->doc_count_ = docs.size();
  gen->dimension_ = embedder.dimension();

  for (const auto& [doc_id, doc] : docs) {
    std::vector<std::string> pieces;
    if (doc.text.size() <= kMaxPassageChars) {
      pieces.push_back(doc.text);
    } else {
      pieces = chunk_by_sentences(doc.text, kMaxPassageChars);
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      Unit unit;
      unit.doc_id = doc_id;
      unit.unit_id =
          pieces.size() == 1 ? doc_id : doc_id + "." + std::to_string(i);
      unit.source_module = doc.source_module;
      unit.text = pieces[i];
      unit.published_at = doc.published_at;
      gen->units_.push_back(std::move(unit));
    }
  }
  std::sort(gen->units_.begin(), gen->units_.end(),
            [](const Unit& a, const Unit& b) { return a.unit_id < b.unit_id; });

  double total_tokens = 0.0;
  for (std::size_t pos = 0; pos < gen->units_.size(); ++pos) {
    Unit& unit = gen->units_[pos];
    if (!gen->unit_index_.emplace(unit.unit_id, pos).second) {
      throw_error(ErrorCode::kValidation,
                  "retrieval unit id collision: '" + unit.unit_id + "'");
    }
    std::map<std::string, std::size_t> tf;
    for (const std::string& tok : tokenize(unit.text)) ++tf[tok];
    for (const auto& [term, count] : tf) {
      gen->postings_[term].emplace_back(pos, count);
      unit.token_count += count;
    }
    total_tokens += double(unit.token_count);
    unit.vector = embedder.embed(unit.text);
  }
  gen->avg_token_count_ =
      gen->units_.empty() ? 0.0 : total_tokens / double(gen->units_.size());
  return gen;
}

bool IndexGeneration::unit_passes(
    const Unit& unit, const std::optional<TimeWindow>& window,
    const std::set<std::string>* module_filter) const {
  if (window && !date_in_window(unit.published_at, *window)) return false;
  if (module_filter && module_filter->count(unit.source_module) == 0)
    return false;
  return true;
}

std::vector<ScoredDoc> IndexGeneration::sparse_search(
    const ExpandedQuery& query, std::size_t k,
    const std::set<std::string>* module_filter) const {
  if (k == 0) return {};
  // Deduplicated union of query tokens and expansion-term tokens.
  std::set<std::string> terms;
  for (const std::string& t : tokenize(query.original)) terms.insert(t);
  for (const std::string& e : query.expansion_terms) {
    for (const std::string& t : tokenize(e)) terms.insert(t);
  }

  const double n_units = double(units_.size());
  std::map<std::size_t, double> scores;  // unit position -> score
  for (const std::string& term : terms) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    double df = double(it->second.size());
    double idf = std::log(1.0 + (n_units - df + 0.5) / (df + 0.5));
    for (const auto& [pos, tf] : it->second) {
      const Unit& unit = units_[pos];
      if (!unit_passes(unit, query.time_window, module_filter)) continue;
      double len_norm =
          kBm25K1 * (1.0 - kBm25B +
                     kBm25B * double(unit.token_count) /
                         (avg_token_count_ > 0 ? avg_token_count_ : 1.0));
      scores[pos] += idf * (double(tf) * (kBm25K1 + 1.0)) / (double(tf) + len_norm);
    }
  }

  std::vector<ScoredDoc> ranked;
  ranked.reserve(scores.size());
  for (const auto& [pos, score] : scores) {
    ranked.push_back(ScoredDoc{units_[pos].unit_id, score});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const ScoredDoc& a, const ScoredDoc& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.id < b.id;
            });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

std::vector<ScoredDoc> IndexGeneration::dense_search(
    const ExpandedQuery& query, const Embedder& embedder, std::size_t k,
    const std::set<std::string>* module_filter) const {
  if (embedder.dimension() != dimension_) {
    throw_error(ErrorCode::kInvalidArgument,
                "dense_search: embedder dimension " +
                    std::to_string(embedder.dimension()) +
                    " does not match index dimension " +
                    std::to_string(dimension_));
  }
  if (k == 0) return {};
  std::string query_text = query.original;
  for (const std::string& term : query.expansion_terms) {
    query_text.push_back(' ');
    query_text += term;
  }
  std::vector<double> q = embedder.embed(query_text);

  std::vector<ScoredDoc> ranked;
  for (const Unit& unit : units_) {
    if (!unit_passes(unit, query.time_window, module_filter)) continue;
    double dot = 0.0;
    for (int i = 0; i < dimension_; ++i) dot += q[i] * unit.vector[i];
    ranked.push_back(ScoredDoc{unit.unit_id, dot});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const ScoredDoc& a, const ScoredDoc& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.id < b.id;
            });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

std::vector<EvidencePassage> IndexGeneration::materialize(
    std::vector<EvidencePassage> fused) const {
  for (EvidencePassage& p : fused) {
    const Unit& unit = unit_at(p.doc_id);
    p.passage_text = unit.text;
    p.source_module = unit.source_module;
  }
  return fused;
}

std::vector<EvidencePassage> IndexGeneration::search_evidence(
    const ExpandedQuery& query, const Embedder& embedder, std::size_t k_sparse,
    std::size_t k_dense, std::size_t k_fused,
    const std::set<std::string>* module_filter) const {
  std::vector<ScoredDoc> sparse = sparse_search(query, k_sparse, module_filter);
  std::vector<ScoredDoc> dense =
      dense_search(query, embedder, k_dense, module_filter);
  return materialize(reciprocal_rank_fuse(sparse, dense, k_fused));
}

bool IndexGeneration::has_unit(const std::string& unit_id) const {
  return unit_index_.count(unit_id) != 0;
}

const IndexGeneration::Unit& IndexGeneration::unit_at(
    const std::string& unit_id) const {
  auto it = unit_index_.find(unit_id);
  if (it == unit_index_.end()) {
    throw_error(ErrorCode::kNotFound,
                "unknown retrieval unit '" + unit_id + "'");
  }
  return units_[it->second];
}

const std::string& IndexGeneration::unit_text(const std::string& unit_id) const {
  return unit_at(unit_id).text;
}

const std::string& IndexGeneration::unit_source_module(
    const std::string& unit_id) const {
  return unit_at(unit_id).source_module;
}

IndexStore::IndexStore(std::shared_ptr<const Embedder> embedder)
    : embedder_(std::move(embedder)) {
  current_ = IndexGeneration::build({}, *embedder_, 0);
}

std::shared_ptr<const IndexGeneration> IndexStore::snapshot() const {
  std::lock_guard lock(mutex_);
  return current_;
}

std::uint64_t IndexStore::refresh(const std::vector<Document>& batch) {
  std::set<std::string> batch_ids;
  for (const Document& doc : batch) {
    if (!is_valid_ref_id(doc.doc_id)) {
      throw_error(ErrorCode::kValidation,
                  "doc_id '" + doc.doc_id + "' must match [A-Za-z0-9._-]+");
    }
    if (!batch_ids.insert(doc.doc_id).second) {
      throw_error(ErrorCode::kValidation,
                  "duplicate doc_id in refresh batch: '" + doc.doc_id + "'");
    }
  }
  std::map<std::string, Document> docs;
  std::uint64_t next_generation;
  {
    std::lock_guard lock(mutex_);
    docs = docs_;
    next_generation = current_->generation() + 1;
  }
  for (const Document& doc : batch) docs[doc.doc_id] = doc;
  // Built outside the lock; concurrent readers keep the old generation.
  auto next = IndexGeneration::build(docs, *embedder_, next_generation);
  {
    std::lock_guard lock(mutex_);
    docs_ = std::move(docs);
    current_ = next;
  }
  return next_generation;
}

std::vector<Document> load_corpus_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw_error(ErrorCode::kIo, "cannot open corpus file '" + path + "'");
  }
  std::vector<Document> docs;
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
    Document d;
    d.doc_id = doc.value("doc_id", "");
    d.source_module = doc.value("source_module", "");
    d.text = doc.value("text", "");
    if (d.doc_id.empty() || d.source_module.empty()) {
      throw_error(ErrorCode::kValidation,
                  path + ":" + std::to_string(lineno) +
                      ": doc_id and source_module are required");
    }
    if (doc.contains("published_at")) {
      if (doc["published_at"].is_string()) {
        d.published_at = parse_timestamp(doc["published_at"].get<std::string>());
      } else if (doc["published_at"].is_number()) {
        d.published_at = doc["published_at"].get<std::int64_t>();
      } else {
        throw_error(ErrorCode::kParse,
                    path + ":" + std::to_string(lineno) +
                        ": published_at must be a timestamp");
      }
    }
    if (doc.contains("metadata") && doc["metadata"].is_object()) {
      for (const auto& [key, value] : doc["metadata"].items()) {
        d.metadata[key] = value.is_string() ? value.get<std::string>()
                                            : value.dump();
      }
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

void append_corpus_jsonl(const std::string& path,
                         const std::vector<Document>& docs) {
  std::ofstream out(path, std::ios::app);
  if (!out) {
    throw_error(ErrorCode::kIo, "cannot open corpus file for append: '" + path + "'");
  }
  for (const Document& d : docs) {
    nlohmann::ordered_json rec;
    rec["doc_id"] = d.doc_id;
    rec["source_module"] = d.source_module;
    rec["text"] = d.text;
    rec["published_at"] = format_timestamp(d.published_at);
    if (!d.metadata.empty()) rec["metadata"] = d.metadata;
    out << rec.dump() << "\n";
  }
  out.flush();
  if (!out) {
    throw_error(ErrorCode::kIo, "failed writing corpus file '" + path + "'");
  }
}

}  // namespace groundpilot
