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

// Session-level aggregation: hearing filters and rankings.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "legisfeat/engagement.hpp"
#include "legisfeat/gazetteer.hpp"
#include "legisfeat/stance.hpp"
#include "legisfeat/transcript.hpp"

namespace legisfeat {

/// Public comment: never a lawmaker or the secretary. Otherwise tagged as
/// such, or (untagged) spoken by a public commenter, or (untagged) an
/// utterance that states a position.
inline bool is_public_comment(const Hearing &h, const Utterance &u) {
  Role r = h.speaker_of(u).role;
  if (is_lawmaker(r) || r == Role::committee_secretary) return false;
  if (u.phase) return *u.phase == Phase::public_comment;
  if (r == Role::public_commenter) return true;
  return count_phrases(u.text).total() > 0;
}

inline bool has_vote_evidence(const Hearing &h) {
  return h.vote_recorded || detect_roll_call(h).has_value();
}

inline bool has_public_comment(const Hearing &h) {
  return std::any_of(h.utterances.begin(), h.utterances.end(),
                     [&](const Utterance &u) { return is_public_comment(h, u); });
}

inline std::size_t roster_members_speaking(const Hearing &h) {
  std::set<std::string_view> ids;
  for (const Utterance &u : h.utterances)
    if (h.on_roster(u.speaker)) ids.insert(u.speaker);
  return ids.size();
}

struct FilterStats {
  std::size_t input = 0;
  std::size_t removed_no_vote = 0;
  std::size_t removed_no_public_comment = 0;
  std::size_t removed_floor_session = 0;
  std::size_t removed_few_speakers = 0;
  std::size_t kept = 0;
};

inline constexpr std::size_t kMinLegislatorsSpeaking = 3;

/// Hearings with a vote and at least one public comment. Stats count the
/// first failing predicate.
inline std::vector<const Hearing *> filter_for_affiliation(std::span<const Hearing> hearings,
                                                           FilterStats *stats = nullptr) {
  FilterStats s;
  std::vector<const Hearing *> out;
  for (const Hearing &h : hearings) {
    ++s.input;
    if (!has_vote_evidence(h)) {
      ++s.removed_no_vote;
    } else if (!has_public_comment(h)) {
      ++s.removed_no_public_comment;
    } else {
      out.push_back(&h);
    }
  }
  s.kept = out.size();
  if (stats) *stats = s;
  return out;
}

/// Committee hearings with a vote and at least three roster members speaking.
inline std::vector<const Hearing *> filter_for_engagement(
    std::span<const Hearing> hearings, FilterStats *stats = nullptr,
    std::size_t min_speaking = kMinLegislatorsSpeaking) {
  FilterStats s;
  std::vector<const Hearing *> out;
  for (const Hearing &h : hearings) {
    ++s.input;
    if (!has_vote_evidence(h)) {
      ++s.removed_no_vote;
    } else if (roster_members_speaking(h) < min_speaking) {
      ++s.removed_few_speakers;
    } else if (h.is_floor_session) {
      ++s.removed_floor_session;
    } else {
      out.push_back(&h);
    }
  }
  s.kept = out.size();
  if (stats) *stats = s;
  return out;
}

struct OrgCount {
  std::string organization;
  std::size_t hearings = 0;

  friend bool operator==(const OrgCount &, const OrgCount &) = default;
};

/// Number of hearings each organization appears in. Names are compared
/// normalized; the first spelling seen is reported. Names on the exclusion
/// list are dropped. Sorted by count descending, then name ascending.
inline std::vector<OrgCount> org_frequency(std::span<const std::vector<std::string>> per_hearing,
                                           std::span<const std::string> exclusions = {}) {
  std::set<std::string> excluded;
  for (const std::string &e : exclusions) excluded.insert(normalize_org_name(e));
  std::map<std::string, OrgCount> by_key;
  for (const std::vector<std::string> &orgs : per_hearing) {
    std::set<std::string> seen;
    for (const std::string &o : orgs) {
      std::string key = normalize_org_name(o);
      if (key.empty() || excluded.count(key) || !seen.insert(key).second) continue;
      auto [it, fresh] = by_key.try_emplace(key, OrgCount{o, 0});
      ++it->second.hearings;
    }
  }
  std::vector<OrgCount> out;
  out.reserve(by_key.size());
  for (auto &[k, v] : by_key) out.push_back(std::move(v));
  std::sort(out.begin(), out.end(), [](const OrgCount &a, const OrgCount &b) {
    if (a.hearings != b.hearings) return a.hearings > b.hearings;
    return a.organization < b.organization;
  });
  return out;
}

struct LegislatorScore {
  std::string legislator;  // display name
  std::string id;
  EngagementBreakdown breakdown;
};

/// Sorted by total descending, then name ascending.
inline std::vector<LegislatorScore> rank_legislators(std::vector<LegislatorScore> scores) {
  std::stable_sort(scores.begin(), scores.end(),
                   [](const LegislatorScore &a, const LegislatorScore &b) {
                     if (a.breakdown.total != b.breakdown.total)
                       return a.breakdown.total > b.breakdown.total;
                     return a.legislator < b.legislator;
                   });
  return scores;
}

struct SessionReport {
  std::vector<OrgCount> org_rankings;
  std::vector<LegislatorScore> engagement_rankings;
  FilterStats affiliation_filter;
  FilterStats engagement_filter;
};

}  // namespace legisfeat
