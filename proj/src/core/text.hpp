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
#include <string>
#include <string_view>
#include <vector>

namespace groundpilot {

// Tokenization rule used by the sparse index, the ontology matcher, and the
// reference embedder: a token is a maximal run of ASCII alphanumerics
// (lowercased) or of non-ASCII bytes (Korean text passes through untouched).
// Everything else separates tokens.
std::vector<std::string> tokenize(std::string_view text);

// Reference token grammar, bit-exact: "[ref:" + [A-Za-z0-9._-]+ + "]".
struct RefToken {
  std::string id;
  std::size_t begin = 0;  // byte offset of '['
  std::size_t end = 0;    // byte offset one past ']'
};

bool is_valid_ref_id(std::string_view id);
std::vector<RefToken> find_ref_tokens(std::string_view text);
inline std::string make_ref_token(std::string_view id) {
  return "[ref:" + std::string(id) + "]";
}

// Sentence segmentation, shared by the grounding validator, the evidence
// template builder, and passage chunking:
//   - '\n' always ends a sentence;
//   - '.', '!', '?' end a sentence when followed by whitespace or
//     end-of-text (so "3.5%" does not split);
//   - whitespace and [ref:...] tokens immediately after a boundary attach to
//     the sentence just closed;
//   - spans containing no word character outside ref tokens are not
//     sentences.
struct Sentence {
  std::string text;        // trimmed span, attached tokens included
  std::size_t begin = 0;   // byte offsets into the original text
  std::size_t end = 0;
};

std::vector<Sentence> segment_sentences(std::string_view text);

// Removes every [ref:...] token together with the whitespace run immediately
// before it, collapses remaining doubled blanks, trims the ends. Idempotent.
std::string strip_ref_tokens(std::string_view text);

// Greedy sentence packing: splits text into chunks of at most max_chars,
// cutting only at sentence boundaries; a single sentence longer than
// max_chars is hard-cut into max_chars pieces.
std::vector<std::string> chunk_by_sentences(std::string_view text,
                                            std::size_t max_chars);

// FNV-1a 64-bit, used for content hashes and the feature-hashing embedder.
std::uint64_t fnv1a64(std::string_view data,
                      std::uint64_t seed = 1469598103934665603ull);

std::string to_hex(std::uint64_t value, int digits = 16);

}  // namespace groundpilot
