// Copyright 2026 The legisfeat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tokenization and normalization shared by every extractor.
//
// A token is a maximal run of non-whitespace bytes. Punctuation is ASCII
// punctuation plus the common typographic quotes and dashes that transcript
// tooling emits as UTF-8 (U+2013, U+2014, U+2018, U+2019, U+201C, U+201D).
// Everything else, including other non-ASCII bytes, is word material.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace legisfeat {

struct Token {
  std::string_view text;
  std::size_t offset = 0;  // byte offset into the source text
};

/// Half-open range [begin, end) of token positions.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool contains(std::size_t pos) const { return pos >= begin && pos < end; }
  bool overlaps(const TokenSpan &o) const { return begin < o.end && o.begin < end; }

  friend bool operator==(const TokenSpan &, const TokenSpan &) = default;
};

namespace text_detail {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_ascii_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= 33 && u <= 47) || (u >= 58 && u <= 64) || (u >= 91 && u <= 96) ||
         (u >= 123 && u <= 126);
}

// Length of the typographic punctuation sequence starting at s[i], or 0.
inline std::size_t typographic_punct_len(std::string_view s, std::size_t i) {
  if (i + 3 > s.size()) return 0;
  if (static_cast<unsigned char>(s[i]) != 0xE2 || static_cast<unsigned char>(s[i + 1]) != 0x80)
    return 0;
  switch (static_cast<unsigned char>(s[i + 2])) {
    case 0x93: case 0x94: case 0x98: case 0x99: case 0x9C: case 0x9D:
      return 3;
    default:
      return 0;
  }
}

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace text_detail

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text_detail::is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !text_detail::is_space(text[i])) ++i;
    if (i > start) out.push_back({text.substr(start, i - start), start});
  }
  return out;
}

/// Lowercases ASCII and removes every punctuation character. Whitespace is
/// left in place.
inline std::string strip_punct_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (std::size_t n = text_detail::typographic_punct_len(s, i)) {
      i += n;
      continue;
    }
    char c = s[i++];
    if (text_detail::is_ascii_punct(c)) continue;
    out.push_back(text_detail::ascii_lower(c));
  }
  return out;
}

/// Normalized form of a single token: lowercase, punctuation removed.
/// Empty for punctuation-only tokens.
inline std::string normalize_token(std::string_view tok) { return strip_punct_lower(tok); }

inline bool is_punctuation_only(std::string_view tok) { return normalize_token(tok).empty(); }

/// Number of whitespace-delimited tokens that carry at least one
/// non-punctuation character.
inline std::size_t word_count(std::string_view text) {
  std::size_t n = 0;
  for (const Token &t : tokenize(text))
    if (!is_punctuation_only(t.text)) ++n;
  return n;
}

/// Lowercase, strip punctuation, collapse whitespace, trim.
inline std::string normalize_text(std::string_view s) {
  std::string stripped = strip_punct_lower(s);
  std::string out;
  out.reserve(stripped.size());
  bool pending_space = false;
  for (char c : stripped) {
    if (text_detail::is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

/// Removes leading and trailing punctuation (ASCII and typographic).
inline std::string_view trim_punct(std::string_view s) {
  for (;;) {
    if (s.empty()) return s;
    if (std::size_t n = text_detail::typographic_punct_len(s, 0)) {
      s.remove_prefix(n);
      continue;
    }
    if (text_detail::is_ascii_punct(s.front())) {
      s.remove_prefix(1);
      continue;
    }
    break;
  }
  for (;;) {
    if (s.empty()) return s;
    if (s.size() >= 3 && text_detail::typographic_punct_len(s, s.size() - 3)) {
      s.remove_suffix(3);
      continue;
    }
    if (text_detail::is_ascii_punct(s.back())) {
      s.remove_suffix(1);
      continue;
    }
    break;
  }
  return s;
}

/// True when the first letter or digit of the token is an uppercase letter
/// or a digit ("350", "ACLU", "\"Sierra").
inline bool is_capitalized(std::string_view tok) {
  for (char c : tok) {
    if (c >= 'A' && c <= 'Z') return true;
    if (c >= '0' && c <= '9') return true;
    if (c >= 'a' && c <= 'z') return false;
    if (static_cast<unsigned char>(c) >= 0x80) return false;
  }
  return false;
}

inline std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  for (const Token &t : tokenize(s)) out.emplace_back(t.text);
  return out;
}

template <typename Range>
std::string join(const Range &parts, std::string_view sep) {
  std::string out;
  bool first = true;
  for (const auto &p : parts) {
    if (!first) out.append(sep);
    out.append(p);
    first = false;
  }
  return out;
}

}  // namespace legisfeat
