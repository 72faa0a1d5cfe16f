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

// Scoring extracted organization names against annotated truth.
//
// Names are compared on normalized forms. Extracted names that match
// nothing are split into fragments (on commas and the standalone word
// "and", with a leading "the" removed) and the fragments are matched
// again. Whatever is still unmatched is reported for manual review.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "legisfeat/errors.hpp"
#include "legisfeat/gazetteer.hpp"
#include "legisfeat/transcript.hpp"

namespace legisfeat {

struct UnresolvedPair {
  std::string extracted;  // empty for a missed truth with nothing nearby
  std::string truth;      // empty for a false positive with nothing nearby

  friend bool operator==(const UnresolvedPair &, const UnresolvedPair &) = default;
};

struct MatchOutcome {
  std::uint64_t true_positives = 0;
  std::uint64_t false_negatives = 0;
  std::uint64_t false_positives = 0;
  std::vector<UnresolvedPair> unresolved;

  MatchOutcome &operator+=(const MatchOutcome &o) {
    true_positives += o.true_positives;
    false_negatives += o.false_negatives;
    false_positives += o.false_positives;
    unresolved.insert(unresolved.end(), o.unresolved.begin(), o.unresolved.end());
    return *this;
  }
};

struct F1Score {
  double value = 0.0;
  bool degenerate = false;  // tp + fn + fp == 0
};

inline F1Score f1(std::uint64_t tp, std::uint64_t fn, std::uint64_t fp) {
  std::uint64_t denom = 2 * tp + fn + fp;
  if (denom == 0) return {0.0, true};
  return {2.0 * static_cast<double>(tp) / static_cast<double>(denom), false};
}

inline F1Score f1(const MatchOutcome &m) {
  return f1(m.true_positives, m.false_negatives, m.false_positives);
}

namespace evaluation_detail {

inline std::string strip_leading_the(std::string s) {
  if (s.rfind("the ", 0) == 0) s.erase(0, 4);
  return s;
}

// Normalized fragments of an extracted name.
inline std::vector<std::string> fragments(std::string_view name) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= name.size(); ++i) {
    if (i < name.size() && name[i] != ',' && name[i] != ';') continue;
    std::string piece = normalize_org_name(name.substr(start, i - start));
    start = i + 1;
    std::vector<std::string> words = split_words(piece);
    std::vector<std::string> cur;
    auto flush = [&] {
      std::string f = strip_leading_the(join(cur, " "));
      if (!f.empty()) out.push_back(std::move(f));
      cur.clear();
    };
    for (std::string &w : words) {
      if (w == "and") flush();
      else cur.push_back(std::move(w));
    }
    flush();
  }
  return out;
}

inline double token_jaccard(std::string_view a, std::string_view b) {
  auto wa = split_words(a), wb = split_words(b);
  std::set<std::string> sa(wa.begin(), wa.end()), sb(wb.begin(), wb.end());
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto &w : sa) inter += sb.count(w);
  return static_cast<double>(inter) / static_cast<double>(sa.size() + sb.size() - inter);
}

inline std::string nearest(std::string_view name, const std::vector<std::string> &pool) {
  std::string best;
  double best_score = 0.0;
  for (const std::string &p : pool) {
    double s = token_jaccard(normalize_org_name(name), normalize_org_name(p));
    if (s > best_score) {
      best_score = s;
      best = p;
    }
  }
  return best;
}

}  // namespace evaluation_detail

/// Matches are greedy: each name takes the first unmatched truth, in truth
/// order.
inline MatchOutcome reconcile(std::span<const std::string> extracted,
                              std::span<const std::string> truth) {
  using namespace evaluation_detail;
  MatchOutcome m;
  std::vector<std::string> truth_norm;
  for (const std::string &t : truth) truth_norm.push_back(normalize_org_name(t));
  std::vector<bool> taken(truth.size(), false);

  auto take = [&](const std::string &norm, bool loose) {
    for (std::size_t k = 0; k < truth_norm.size(); ++k) {
      if (taken[k]) continue;
      bool eq = loose ? strip_leading_the(truth_norm[k]) == norm : truth_norm[k] == norm;
      if (eq) {
        taken[k] = true;
        return true;
      }
    }
    return false;
  };

  std::vector<std::string> pending;
  for (const std::string &e : extracted) {
    if (take(normalize_org_name(e), false))
      ++m.true_positives;
    else
      pending.push_back(e);
  }

  std::vector<std::string> leftovers;
  for (const std::string &e : pending) {
    std::vector<std::string> frags = fragments(e);
    std::vector<std::string> missed;
    std::size_t hits = 0;
    for (const std::string &f : frags) {
      if (take(f, true))
        ++hits;
      else
        missed.push_back(f);
    }
    m.true_positives += hits;
    if (hits == 0) {
      leftovers.push_back(e);
    } else {
      leftovers.insert(leftovers.end(), missed.begin(), missed.end());
    }
  }

  std::vector<std::string> unmatched_truth;
  for (std::size_t k = 0; k < truth.size(); ++k)
    if (!taken[k]) unmatched_truth.push_back(truth[k]);

  m.false_positives = leftovers.size();
  m.false_negatives = unmatched_truth.size();
  for (const std::string &l : leftovers) m.unresolved.push_back({l, nearest(l, unmatched_truth)});
  for (const std::string &t : unmatched_truth) {
    std::string near = nearest(t, leftovers);
    if (near.empty()) m.unresolved.push_back({"", t});
  }
  return m;
}

/// One annotated public comment.
struct AnnotatedComment {
  std::string comment;
  Speaker speaker;
  std::vector<std::string> organizations;
};

/// Line-delimited JSON: {"comment": ..., "speaker": {"full_name": ...,
/// "last_name": ...}, "organizations": [...]}.
inline std::vector<AnnotatedComment> read_annotated_comments(std::istream &in) {
  std::vector<AnnotatedComment> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
    }
    AnnotatedComment c;
    try {
      c.comment = j.at("comment").get<std::string>();
      const auto &sp = j.at("speaker");
      c.speaker.full_name = sp.at("full_name").get<std::string>();
      c.speaker.last_name = sp.value("last_name", std::string());
      c.speaker.role = Role::public_commenter;
      c.organizations = j.at("organizations").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(lineno, std::string("annotated comment: ") + e.what());
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<AnnotatedComment> read_annotated_comments(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file '" + path + "'");
  return read_annotated_comments(in);
}

inline void write_annotated_comments(std::ostream &out, std::span<const AnnotatedComment> cs) {
  for (const AnnotatedComment &c : cs) {
    nlohmann::ordered_json j;
    j["comment"] = c.comment;
    j["speaker"] = {{"full_name", c.speaker.full_name}, {"last_name", c.speaker.last_name}};
    j["organizations"] = c.organizations;
    out << j.dump() << '\n';
  }
}

struct EvaluationReport {
  std::size_t comments = 0;
  MatchOutcome outcome;
  F1Score score;
};

using Extractor = std::function<std::vector<std::string>(const AnnotatedComment &)>;

inline EvaluationReport evaluate_extractor(std::span<const AnnotatedComment> corpus,
                                           const Extractor &extractor) {
  EvaluationReport r;
  for (const AnnotatedComment &c : corpus) {
    std::vector<std::string> got = extractor(c);
    r.outcome += reconcile(got, c.organizations);
    ++r.comments;
  }
  r.score = f1(r.outcome);
  return r;
}

}  // namespace legisfeat
