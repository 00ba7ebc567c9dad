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

#include "core/text.hpp"

#include <cctype>

namespace groundpilot {

namespace {

bool is_ascii_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

bool is_word_byte(unsigned char c) { return is_ascii_alnum(c) || c >= 0x80; }

bool is_blank(unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool is_space_like(unsigned char c) { return is_blank(c) || c == '\n'; }

bool is_ref_id_char(unsigned char c) {
  return is_ascii_alnum(c) || c == '.' || c == '_' || c == '-';
}

// Matches a ref token starting exactly at `pos`; returns end offset or 0.
std::size_t match_ref_token(std::string_view text, std::size_t pos) {
  static constexpr std::string_view kPrefix = "[ref:";
  if (text.size() - pos < kPrefix.size() + 2) return 0;
  if (text.substr(pos, kPrefix.size()) != kPrefix) return 0;
  std::size_t i = pos + kPrefix.size();
  std::size_t id_begin = i;
  while (i < text.size() && is_ref_id_char(text[i])) ++i;
  if (i == id_begin || i >= text.size() || text[i] != ']') return 0;
  return i + 1;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      current.push_back(
          static_cast<char>(c < 0x80 ? std::tolower(c) : c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

bool is_valid_ref_id(std::string_view id) {
  if (id.empty()) return false;
  for (unsigned char c : id) {
    if (!is_ref_id_char(c)) return false;
  }
  return true;
}

std::vector<RefToken> find_ref_tokens(std::string_view text) {
  std::vector<RefToken> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '[') {
      ++pos;
      continue;
    }
    std::size_t end = match_ref_token(text, pos);
    if (end == 0) {
      ++pos;
      continue;
    }
    RefToken tok;
    tok.begin = pos;
    tok.end = end;
    tok.id = std::string(text.substr(pos + 5, end - pos - 6));
    tokens.push_back(std::move(tok));
    pos = end;
  }
  return tokens;
}

namespace {

bool span_has_word(std::string_view text, std::size_t begin, std::size_t end) {
  std::size_t i = begin;
  while (i < end) {
    std::size_t tok_end = match_ref_token(text, i);
    if (tok_end != 0 && tok_end <= end) {
      i = tok_end;
      continue;
    }
    if (is_word_byte(static_cast<unsigned char>(text[i]))) return true;
    ++i;
  }
  return false;
}

std::string trimmed_span(std::string_view text, std::size_t begin,
                         std::size_t end) {
  while (begin < end && is_space_like(static_cast<unsigned char>(text[begin])))
    ++begin;
  while (end > begin &&
         is_space_like(static_cast<unsigned char>(text[end - 1])))
    --end;
  return std::string(text.substr(begin, end - begin));
}

}  // namespace

std::vector<Sentence> segment_sentences(std::string_view text) {
  std::vector<Sentence> sentences;
  std::size_t start = 0;
  std::size_t pos = 0;
  auto close_sentence = [&](std::size_t boundary_end) {
    // Attach any whitespace + ref tokens that immediately follow.
    std::size_t i = boundary_end;
    while (true) {
      std::size_t j = i;
      while (j < text.size() && is_blank(static_cast<unsigned char>(text[j])))
        ++j;
      std::size_t tok_end = j < text.size() ? match_ref_token(text, j) : 0;
      if (tok_end == 0) break;
      i = tok_end;
    }
    if (span_has_word(text, start, i)) {
      Sentence s;
      s.begin = start;
      s.end = i;
      s.text = trimmed_span(text, start, i);
      sentences.push_back(std::move(s));
    }
    start = i;
    pos = i;
  };

  while (pos < text.size()) {
    // Skip over ref tokens; an id may contain '.' which must not split.
    std::size_t tok_end = match_ref_token(text, pos);
    if (tok_end != 0) {
      pos = tok_end;
      continue;
    }
    char c = text[pos];
    if (c == '\n') {
      close_sentence(pos + 1);
      continue;
    }
    if (c == '.' || c == '!' || c == '?') {
      bool at_end = pos + 1 == text.size();
      bool before_space =
          !at_end && is_space_like(static_cast<unsigned char>(text[pos + 1]));
      if (at_end || before_space) {
        close_sentence(pos + 1);
        continue;
      }
    }
    ++pos;
  }
  if (start < text.size()) close_sentence(text.size());
  return sentences;
}

std::string strip_ref_tokens(std::string_view text) {
  std::string no_tokens;
  no_tokens.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t tok_end = match_ref_token(text, pos);
    if (tok_end != 0) {
      // Drop the blank run immediately before the token as well.
      while (!no_tokens.empty() &&
             is_blank(static_cast<unsigned char>(no_tokens.back()))) {
        no_tokens.pop_back();
      }
      pos = tok_end;
      continue;
    }
    no_tokens.push_back(text[pos]);
    ++pos;
  }

  std::string out;
  out.reserve(no_tokens.size());
  for (char ch : no_tokens) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (is_space_like(c)) {
      char normalized = (c == '\n') ? '\n' : ' ';
      if (!out.empty() && (out.back() == ' ' || out.back() == '\n')) {
        if (normalized == '\n' && out.back() == ' ') out.back() = '\n';
        continue;
      }
      if (out.empty()) continue;  // trim leading whitespace
      out.push_back(normalized);
      continue;
    }
    out.push_back(ch);
  }
  while (!out.empty() && (out.back() == ' ' || out.back() == '\n'))
    out.pop_back();
  return out;
}

std::vector<std::string> chunk_by_sentences(std::string_view text,
                                            std::size_t max_chars) {
  std::vector<std::string> chunks;
  if (max_chars == 0) return chunks;
  std::vector<Sentence> sentences = segment_sentences(text);
  std::string current;
  auto flush = [&]() {
    if (!current.empty()) {
      chunks.push_back(current);
      current.clear();
    }
  };
  for (const Sentence& s : sentences) {
    if (s.text.size() > max_chars) {
      flush();
      for (std::size_t off = 0; off < s.text.size(); off += max_chars) {
        chunks.push_back(s.text.substr(off, max_chars));
      }
      continue;
    }
    std::size_t extra = current.empty() ? s.text.size() : s.text.size() + 1;
    if (current.size() + extra > max_chars) flush();
    if (!current.empty()) current.push_back(' ');
    current += s.text;
  }
  flush();
  return chunks;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex(std::uint64_t value, int digits) {
  static const char* kHex = "0123456789abcdef";
  std::string out(digits, '0');
  for (int i = digits - 1; i >= 0; --i) {
    out[i] = kHex[value & 0xf];
    value >>= 4;
  }
  return out;
}

}  // namespace groundpilot
