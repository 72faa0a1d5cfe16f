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

// Registry of known organizations and the blocklists applied to extracted
// names. All matching is exact on normalized forms.

#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "legisfeat/errors.hpp"
#include "legisfeat/text.hpp"

namespace legisfeat {

/// Lowercase, punctuation removed, whitespace collapsed and trimmed.
/// Idempotent.
inline std::string normalize_org_name(std::string_view name) { return normalize_text(name); }

/// Names whose normalized form is this short are never organizations.
inline constexpr std::size_t kMaxRejectedNameLength = 2;

struct RegistryMatch {
  std::string canonical;
  TokenSpan span;

  friend bool operator==(const RegistryMatch &, const RegistryMatch &) = default;
};

class OrgRegistry {
 public:
  OrgRegistry() { phrase_blocklist_.insert("board member"); }

  /// Adds a canonical organization name. Returns false when the name is
  /// too short after normalization or collapses onto an existing entry.
  bool add(std::string_view name) {
    std::string canonical(trim_whitespace(name));
    std::string norm = normalize_org_name(canonical);
    if (norm.size() <= kMaxRejectedNameLength) return false;
    if (!index_.emplace(norm, entries_.size()).second) return false;
    entries_.push_back(std::move(canonical));
    std::size_t words = static_cast<std::size_t>(std::count(norm.begin(), norm.end(), ' ')) + 1;
    max_words_ = std::max(max_words_, words);
    return true;
  }

  void add_place(std::string_view place) {
    std::string norm = normalize_org_name(place);
    if (!norm.empty()) places_.insert(std::move(norm));
  }

  void add_blocked_phrase(std::string_view phrase) {
    std::string norm = normalize_org_name(phrase);
    if (!norm.empty()) phrase_blocklist_.insert(std::move(norm));
  }

  /// Canonical names in insertion order.
  const std::vector<std::string> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Canonical name for a normalized form, or nullptr.
  const std::string *find_normalized(std::string_view normalized) const {
    auto it = index_.find(std::string(normalized));
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  const std::string *find(std::string_view name) const {
    return find_normalized(normalize_org_name(name));
  }

  std::size_t max_entry_words() const { return max_words_; }
  const std::set<std::string> &city_county_blocklist() const { return places_; }
  const std::set<std::string> &phrase_blocklist() const { return phrase_blocklist_; }

 private:
  static std::string_view trim_whitespace(std::string_view s) {
    while (!s.empty() && text_detail::is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && text_detail::is_space(s.back())) s.remove_suffix(1);
    return s;
  }

  std::vector<std::string> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::set<std::string> places_;
  std::set<std::string> phrase_blocklist_;
  std::size_t max_words_ = 0;
};

struct RegistryLoad {
  OrgRegistry registry;
  std::vector<std::string> rejected;  // too short after normalization
};

/// One name per line, UTF-8; blank lines and lines starting with '#' are
/// skipped.
inline std::vector<std::string> read_name_list(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file '" + path.string() + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view v = line;
    while (!v.empty() && text_detail::is_space(v.front())) v.remove_prefix(1);
    while (!v.empty() && text_detail::is_space(v.back())) v.remove_suffix(1);
    if (v.empty() || v.front() == '#') continue;
    out.emplace_back(v);
  }
  return out;
}

inline RegistryLoad build_registry(std::span<const std::string> orgs,
                                   std::span<const std::string> places = {}) {
  RegistryLoad out;
  for (const std::string &name : orgs) {
    std::string norm = normalize_org_name(name);
    if (norm.size() <= kMaxRejectedNameLength) {
      out.rejected.push_back(name);
      continue;
    }
    out.registry.add(name);  // duplicate normalized forms keep the first
  }
  for (const std::string &p : places) out.registry.add_place(p);
  return out;
}

inline RegistryLoad load_registry(const std::filesystem::path &orgs_file,
                                  const std::filesystem::path &places_file) {
  std::vector<std::string> orgs = read_name_list(orgs_file);
  std::vector<std::string> places;
  if (!places_file.empty()) places = read_name_list(places_file);
  return build_registry(orgs, places);
}

/// Left-to-right, non-overlapping, longest matches of registry entries.
/// Spans are positions in tokenize(text). Punctuation-only tokens inside a
/// span are skipped over; a span never starts or ends on one.
inline std::vector<RegistryMatch> registry_scan(std::span<const Token> tokens,
                                                const OrgRegistry &registry) {
  std::vector<RegistryMatch> out;
  if (registry.empty()) return out;
  std::vector<std::string> norm;
  norm.reserve(tokens.size());
  for (const Token &t : tokens) norm.push_back(normalize_token(t.text));

  const std::size_t max_words = registry.max_entry_words();
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (norm[i].empty()) {
      ++i;
      continue;
    }
    std::string key;
    std::size_t words = 0;
    const std::string *best = nullptr;
    std::size_t best_end = i;
    for (std::size_t j = i; j < tokens.size() && words < max_words; ++j) {
      if (norm[j].empty()) continue;
      if (words > 0) key.push_back(' ');
      key += norm[j];
      ++words;
      if (const std::string *hit = registry.find_normalized(key)) {
        best = hit;
        best_end = j + 1;
      }
    }
    if (best) {
      out.push_back({*best, {i, best_end}});
      i = best_end;
    } else {
      ++i;
    }
  }
  return out;
}

inline std::vector<RegistryMatch> registry_scan(std::string_view text, const OrgRegistry &registry) {
  std::vector<Token> tokens = tokenize(text);
  return registry_scan(tokens, registry);
}

inline bool is_blocklisted(std::string_view name, const OrgRegistry &registry) {
  std::string norm = normalize_org_name(name);
  return norm.size() <= kMaxRejectedNameLength || registry.city_county_blocklist().count(norm) ||
         registry.phrase_blocklist().count(norm);
}

}  // namespace legisfeat
