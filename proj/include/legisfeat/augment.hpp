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

// Synthetic sequence-labeling corpora built by swapping the affiliated
// organizations of annotated comments for registry names.
//
// Randomness: every comment (recall corpus) or registry entry (precision
// corpus) gets its own std::mt19937_64 seeded from splitmix64 of (seed, i), and
// draws are unbiased by rejection. Output is a function of (input, seed)
// alone, independent of platform and thread count.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "legisfeat/errors.hpp"
#include "legisfeat/gazetteer.hpp"
#include "legisfeat/text.hpp"

namespace legisfeat {

enum class EntityTag { PERSON, ORGANIZATION, OTHER };

inline std::string_view to_string(EntityTag t) {
  switch (t) {
    case EntityTag::PERSON: return "PERSON";
    case EntityTag::ORGANIZATION: return "ORGANIZATION";
    case EntityTag::OTHER: return "OTHER";
  }
  return "OTHER";
}

inline std::optional<EntityTag> parse_entity_tag(std::string_view s) {
  if (s == "PERSON") return EntityTag::PERSON;
  if (s == "ORGANIZATION") return EntityTag::ORGANIZATION;
  if (s == "OTHER") return EntityTag::OTHER;
  return std::nullopt;
}

struct TaggedComment {
  std::vector<std::string> tokens;
  std::vector<EntityTag> tags;
  std::vector<TokenSpan> org_slots;  // sorted, non-overlapping

  void validate() const {
    if (tokens.size() != tags.size()) throw InputError("tagged comment: tokens and tags differ in length");
    std::size_t prev_end = 0;
    for (const TokenSpan &s : org_slots) {
      if (s.empty() || s.end > tokens.size() || s.begin < prev_end)
        throw InputError("tagged comment: org slots must be sorted, non-empty, non-overlapping");
      prev_end = s.end;
    }
  }

  friend bool operator==(const TaggedComment &, const TaggedComment &) = default;
};

using Corpus = std::vector<TaggedComment>;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Uniform integer in [0, bound) without modulo bias.
inline std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t bound) {
  if (bound == 0) throw InvariantError("uniform_below: empty range");
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

inline std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed + splitmix64(stream)));
}

namespace augment_detail {

// Replaces each slot with the chosen name, re-tagging the new tokens.
inline TaggedComment fill_slots(const TaggedComment &c, std::span<const std::string *const> names) {
  TaggedComment out;
  std::size_t cursor = 0;
  for (std::size_t s = 0; s < c.org_slots.size(); ++s) {
    const TokenSpan &slot = c.org_slots[s];
    for (; cursor < slot.begin; ++cursor) {
      out.tokens.push_back(c.tokens[cursor]);
      out.tags.push_back(c.tags[cursor]);
    }
    TokenSpan fresh{out.tokens.size(), out.tokens.size()};
    for (std::string &w : split_words(*names[s])) {
      out.tokens.push_back(std::move(w));
      out.tags.push_back(EntityTag::ORGANIZATION);
    }
    fresh.end = out.tokens.size();
    out.org_slots.push_back(fresh);
    cursor = slot.end;
  }
  for (; cursor < c.tokens.size(); ++cursor) {
    out.tokens.push_back(c.tokens[cursor]);
    out.tags.push_back(c.tags[cursor]);
  }
  return out;
}

inline std::vector<TaggedComment> substitute_with(const TaggedComment &comment,
                                                  const OrgRegistry &registry, std::size_t n,
                                                  std::mt19937_64 &rng) {
  std::vector<TaggedComment> out;
  out.reserve(n);
  if (comment.org_slots.empty()) {
    out.assign(n, comment);
    return out;
  }
  if (registry.empty()) throw InputError("substitute_orgs: registry is empty");
  const auto &entries = registry.entries();
  std::vector<const std::string *> names(comment.org_slots.size());
  for (std::size_t k = 0; k < n; ++k) {
    for (auto &p : names) p = &entries[uniform_below(rng, entries.size())];
    out.push_back(fill_slots(comment, names));
  }
  return out;
}

}  // namespace augment_detail

/// n copies of the comment, each slot filled independently with a uniformly
/// drawn registry entry.
inline std::vector<TaggedComment> substitute_orgs(const TaggedComment &comment,
                                                  const OrgRegistry &registry, std::size_t n,
                                                  std::uint64_t seed) {
  if (n == 0) throw InputError("substitute_orgs: n must be at least 1");
  comment.validate();
  std::mt19937_64 rng = derived_rng(seed, 0);
  return augment_detail::substitute_with(comment, registry, n, rng);
}

/// per_comment substitutions for every comment, concatenated in input order.
inline Corpus generate_recall_corpus(std::span<const TaggedComment> comments,
                                     const OrgRegistry &registry, std::size_t per_comment,
                                     std::uint64_t seed) {
  Corpus out;
  if (comments.empty()) return out;
  if (per_comment == 0) throw InputError("generate_recall_corpus: per_comment must be at least 1");
  out.reserve(comments.size() * per_comment);
  for (std::size_t i = 0; i < comments.size(); ++i) {
    comments[i].validate();
    std::mt19937_64 rng = derived_rng(seed, i);
    auto batch = augment_detail::substitute_with(comments[i], registry, per_comment, rng);
    std::move(batch.begin(), batch.end(), std::back_inserter(out));
  }
  return out;
}

/// For every registry entry, per_org single-slot templates drawn uniformly
/// and filled with that entry; then every zero-slot comment once.
/// Comments with two or more slots are not used.
inline Corpus generate_precision_corpus(std::span<const TaggedComment> comments,
                                        const OrgRegistry &registry, std::size_t per_org,
                                        std::uint64_t seed) {
  if (per_org == 0) throw InputError("generate_precision_corpus: per_org must be at least 1");
  std::vector<const TaggedComment *> single, none;
  for (const TaggedComment &c : comments) {
    c.validate();
    if (c.org_slots.size() == 1) single.push_back(&c);
    else if (c.org_slots.empty()) none.push_back(&c);
  }
  if (single.empty() && !registry.empty())
    throw InputError("generate_precision_corpus: no single-organization comments to use as templates");
  Corpus out;
  out.reserve(registry.size() * per_org + none.size());
  const auto &entries = registry.entries();
  for (std::size_t e = 0; e < entries.size(); ++e) {
    std::mt19937_64 rng = derived_rng(seed, e);
    const std::string *name = &entries[e];
    for (std::size_t k = 0; k < per_org; ++k) {
      const TaggedComment &tpl = *single[uniform_below(rng, single.size())];
      out.push_back(augment_detail::fill_slots(tpl, std::span<const std::string *const>(&name, 1)));
    }
  }
  for (const TaggedComment *c : none) out.push_back(*c);
  return out;
}

/// "token<TAB>TAG" per line, a blank line after each sentence.
inline void emit_sequence_labels(std::span<const TaggedComment> corpus, std::ostream &sink) {
  for (const TaggedComment &c : corpus) {
    for (std::size_t i = 0; i < c.tokens.size(); ++i)
      sink << c.tokens[i] << '\t' << to_string(c.tags[i]) << '\n';
    sink << '\n';
  }
  if (!sink) throw InputError("emit_sequence_labels: write failed");
}

/// Inverse of emit_sequence_labels. Org slots are rebuilt from maximal runs
/// of ORGANIZATION tags.
inline Corpus read_sequence_labels(std::istream &in) {
  Corpus out;
  TaggedComment cur;
  auto finish = [&] {
    if (cur.tokens.empty()) return;
    for (std::size_t i = 0; i < cur.tags.size();) {
      if (cur.tags[i] != EntityTag::ORGANIZATION) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < cur.tags.size() && cur.tags[j] == EntityTag::ORGANIZATION) ++j;
      cur.org_slots.push_back({i, j});
      i = j;
    }
    out.push_back(std::move(cur));
    cur = {};
  };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      finish();
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(lineno, "expected 'token<TAB>TAG'");
    auto tag = parse_entity_tag(line.substr(tab + 1));
    if (!tag) throw ParseError(lineno, "unknown tag '" + line.substr(tab + 1) + "'");
    cur.tokens.push_back(line.substr(0, tab));
    cur.tags.push_back(*tag);
  }
  finish();
  return out;
}

/// Line-delimited JSON: {"tokens": [...], "tags": [...], "org_slots": [[b, e], ...]}.
inline std::vector<TaggedComment> read_tagged_comments(std::istream &in) {
  std::vector<TaggedComment> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    TaggedComment c;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      c.tokens = j.at("tokens").get<std::vector<std::string>>();
      for (const auto &t : j.at("tags")) {
        auto tag = parse_entity_tag(t.get<std::string>());
        if (!tag) throw ParseError(lineno, "unknown tag '" + t.get<std::string>() + "'");
        c.tags.push_back(*tag);
      }
      for (const auto &s : j.value("org_slots", nlohmann::json::array())) {
        auto b = s.at(0).get<std::size_t>();
        auto e = s.at(1).get<std::size_t>();
        c.org_slots.push_back({b, e});
      }
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(lineno, std::string("tagged comment: ") + e.what());
    }
    try {
      c.validate();
    } catch (const InputError &e) {
      throw ParseError(lineno, e.what());
    }
    for (const std::string &t : c.tokens)
      if (t.empty() || t.find_first_of(" \t\r\n") != std::string::npos)
        throw ParseError(lineno, "tagged comment: tokens must be non-empty and whitespace-free");
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<TaggedComment> read_tagged_comments(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file '" + path + "'");
  return read_tagged_comments(in);
}

inline void write_tagged_comments(std::ostream &out, std::span<const TaggedComment> cs) {
  for (const TaggedComment &c : cs) {
    nlohmann::ordered_json j;
    j["tokens"] = c.tokens;
    auto &tags = j["tags"] = nlohmann::ordered_json::array();
    for (EntityTag t : c.tags) tags.push_back(std::string(to_string(t)));
    auto &slots = j["org_slots"] = nlohmann::ordered_json::array();
    for (const TokenSpan &s : c.org_slots) slots.push_back({s.begin, s.end});
    out << j.dump() << '\n';
  }
}

}  // namespace legisfeat
