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

// Legislator engagement.
//
// Four activity tallies per legislator, summed over the hearings of the
// committees they sit on, each scaled by one weight:
//
//   vote_score           = alpha * number_votes / num_hearings_on_committee
//   speaking_score       = beta  * num_times_speaking
//   back_and_forth_score = gamma * num_words_in_back_and_forth
//   question_score       = delta * num_questions
//   total                = sum of the four

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "legisfeat/errors.hpp"
#include "legisfeat/text.hpp"
#include "legisfeat/transcript.hpp"

namespace legisfeat {

struct EngagementWeights {
  double alpha = 0.5;
  double beta = 0.0005;
  double gamma = 0.00005;
  double delta = 0.01;

  friend bool operator==(const EngagementWeights &, const EngagementWeights &) = default;
};

/// key=value lines (alpha, beta, gamma, delta); '#' starts a comment.
/// Missing keys keep their defaults.
inline EngagementWeights read_weights(std::istream &in) {
  EngagementWeights w;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<std::string> parts = split_words(line);
    std::string joined = join(parts, "");
    if (joined.empty()) continue;
    auto eq = joined.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
    std::string key = joined.substr(0, eq);
    double value = 0;
    try {
      std::size_t used = 0;
      value = std::stod(joined.substr(eq + 1), &used);
      if (used != joined.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::logic_error &) {
      throw ParseError(lineno, "weight '" + key + "' is not a number");
    }
    if (!(value >= 0.0) || !std::isfinite(value))
      throw ParseError(lineno, "weight '" + key + "' must be non-negative");
    if (key == "alpha") w.alpha = value;
    else if (key == "beta") w.beta = value;
    else if (key == "gamma") w.gamma = value;
    else if (key == "delta") w.delta = value;
    else throw ParseError(lineno, "unknown weight '" + key + "'");
  }
  return w;
}

inline EngagementWeights read_weights(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file '" + path + "'");
  return read_weights(in);
}

enum class BackAndForthWords { whole_exchange, legislator_only };

struct EngagementConfig {
  std::size_t speaking_min_words = 6;       // an instance needs more than this
  double block_seconds = 30.0;
  std::size_t words_per_block = 75;         // untimed fallback, ~150 wpm
  std::size_t back_and_forth_min_words = 12;  // a chain needs more than this
  BackAndForthWords back_and_forth_words = BackAndForthWords::whole_exchange;
};

struct EngagementCounters {
  std::uint64_t number_votes = 0;
  std::uint64_t num_hearings_on_committee = 0;
  std::uint64_t num_times_speaking = 0;
  std::uint64_t num_words_in_back_and_forth = 0;
  std::uint64_t num_questions = 0;

  EngagementCounters &operator+=(const EngagementCounters &o) {
    number_votes += o.number_votes;
    num_hearings_on_committee += o.num_hearings_on_committee;
    num_times_speaking += o.num_times_speaking;
    num_words_in_back_and_forth += o.num_words_in_back_and_forth;
    num_questions += o.num_questions;
    return *this;
  }

  friend EngagementCounters operator+(EngagementCounters a, const EngagementCounters &b) {
    return a += b;
  }

  friend bool operator==(const EngagementCounters &, const EngagementCounters &) = default;
};

struct EngagementBreakdown {
  double vote_score = 0;
  double speaking_score = 0;
  double back_and_forth_score = 0;
  double question_score = 0;
  double total = 0;
};

/// Thirty-second blocks of speech in one legislator utterance.
inline std::uint64_t speaking_instances(const Utterance &u, const EngagementConfig &cfg = {}) {
  std::size_t words = word_count(u.text);
  if (words <= cfg.speaking_min_words) return 0;
  std::uint64_t blocks = 0;
  if (u.timed() && cfg.block_seconds > 0) {
    blocks = static_cast<std::uint64_t>(std::ceil((*u.end_seconds - *u.start_seconds) / cfg.block_seconds));
  } else {
    std::size_t per = std::max<std::size_t>(cfg.words_per_block, 1);
    blocks = (words + per - 1) / per;
  }
  return std::max<std::uint64_t>(blocks, 1);
}

struct BackAndForth {
  std::string legislator;
  std::size_t first = 0;  // utterance indices, inclusive
  std::size_t last = 0;
  std::uint64_t total_words = 0;
  std::uint64_t legislator_words = 0;

  friend bool operator==(const BackAndForth &, const BackAndForth &) = default;
};

/// Maximal chains L, N, L [, N, L ...] where every L turn is the same
/// lawmaker and every N turn is a single non-lawmaker utterance. Chains of
/// at most `back_and_forth_min_words` words are dropped.
inline std::vector<BackAndForth> detect_back_and_forths(const Hearing &h,
                                                        const EngagementConfig &cfg = {}) {
  std::vector<BackAndForth> out;
  const auto &u = h.utterances;
  auto lawmaker = [&](std::size_t i) { return is_lawmaker(h.speaker_of(u[i]).role); };
  std::size_t i = 0;
  while (i < u.size()) {
    if (!lawmaker(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 2 < u.size() && !lawmaker(j + 1) && u[j + 2].speaker == u[i].speaker) j += 2;
    if (j == i) {
      ++i;
      continue;
    }
    BackAndForth b;
    b.legislator = u[i].speaker;
    b.first = u[i].index;
    b.last = u[j].index;
    for (std::size_t k = i; k <= j; ++k) {
      std::uint64_t w = word_count(u[k].text);
      b.total_words += w;
      if ((k - i) % 2 == 0) b.legislator_words += w;
    }
    if (b.total_words > cfg.back_and_forth_min_words) out.push_back(std::move(b));
    i = j + 1;
  }
  return out;
}

inline std::uint64_t count_questions(std::string_view text) {
  return static_cast<std::uint64_t>(std::count(text.begin(), text.end(), '?'));
}

struct RollCall {
  std::string hearing_id;
  std::size_t first = 0;  // utterance indices, inclusive
  std::size_t last = 0;
  std::set<std::string> votes;
};

namespace engagement_detail {

inline std::vector<std::string> name_words(std::string_view s) {
  std::vector<std::string> out;
  for (const Token &t : tokenize(s)) {
    std::string n = normalize_token(t.text);
    if (!n.empty()) out.push_back(std::move(n));
  }
  return out;
}

// Occurrences of each roster last name in a text.
inline std::map<std::string, std::size_t> mentions(
    std::string_view text, const std::vector<std::pair<std::string, std::vector<std::string>>> &roster) {
  std::vector<std::string> words = name_words(text);
  std::map<std::string, std::size_t> out;
  for (const auto &[id, last] : roster) {
    if (last.empty() || last.size() > words.size()) continue;
    for (std::size_t i = 0; i + last.size() <= words.size(); ++i)
      if (std::equal(last.begin(), last.end(), words.begin() + static_cast<std::ptrdiff_t>(i)))
        ++out[id];
  }
  return out;
}

}  // namespace engagement_detail

/// Locates the verbal vote. Candidate regions are maximal runs of phase
/// "roll-call" utterances, and maximal runs of committee-secretary
/// utterances that each name a roster member, possibly interleaved with
/// lawmaker replies (including one reply after the last call). A run
/// qualifies when its secretary utterances name at least two distinct
/// members. The region naming the most members wins; ties go to the later
/// region.
///
/// A member voted when the secretary names them twice within the region,
/// or when they speak inside the region after they were first named.
inline std::optional<RollCall> detect_roll_call(const Hearing &h) {
  using engagement_detail::mentions;
  const auto &u = h.utterances;
  std::vector<std::pair<std::string, std::vector<std::string>>> roster;
  for (const std::string &id : h.committee_roster)
    roster.emplace_back(id, engagement_detail::name_words(h.speakers.at(id).last_name));

  std::vector<std::map<std::string, std::size_t>> named(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    if (h.speaker_of(u[i]).role == Role::committee_secretary) named[i] = mentions(u[i].text, roster);

  struct Region {
    std::size_t first, last;
  };
  std::vector<Region> regions;
  // Phase-tagged runs.
  for (std::size_t i = 0; i < u.size();) {
    if (u[i].phase != Phase::roll_call) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < u.size() && u[j + 1].phase == Phase::roll_call) ++j;
    regions.push_back({i, j});
    i = j + 1;
  }
  // Secretary runs.
  auto secretary_naming = [&](std::size_t i) {
    return h.speaker_of(u[i]).role == Role::committee_secretary && !named[i].empty();
  };
  for (std::size_t i = 0; i < u.size();) {
    if (!secretary_naming(i)) {
      ++i;
      continue;
    }
    std::size_t last = i;
    std::size_t j = i + 1;
    while (j < u.size()) {
      if (secretary_naming(j)) {
        last = j;
      } else if (!is_lawmaker(h.speaker_of(u[j]).role)) {
        break;
      }
      ++j;
    }
    // Keep the reply to the final call.
    if (last + 1 < j) ++last;
    regions.push_back({i, last});
    i = last + 1;
  }

  std::sort(regions.begin(), regions.end(), [](const Region &a, const Region &b) {
    return a.first != b.first ? a.first < b.first : a.last < b.last;
  });
  std::optional<RollCall> best;
  std::size_t best_names = 0;
  for (const Region &r : regions) {
    std::map<std::string, std::size_t> counts;
    std::map<std::string, std::size_t> first_named;
    for (std::size_t i = r.first; i <= r.last; ++i)
      for (const auto &[id, n] : named[i]) {
        counts[id] += n;
        first_named.emplace(id, i);
      }
    if (counts.size() < 2) continue;
    RollCall rc;
    rc.hearing_id = h.id;
    rc.first = u[r.first].index;
    rc.last = u[r.last].index;
    for (const auto &[id, n] : counts)
      if (n >= 2) rc.votes.insert(id);
    for (std::size_t i = r.first; i <= r.last; ++i) {
      auto it = first_named.find(u[i].speaker);
      if (it != first_named.end() && i > it->second) rc.votes.insert(u[i].speaker);
    }
    if (!best || counts.size() >= best_names) {
      best_names = counts.size();
      best = std::move(rc);
    }
  }
  return best;
}

/// Per-legislator counters for one hearing, for every roster member.
struct HearingEngagement {
  std::map<std::string, EngagementCounters> counters;
  std::optional<RollCall> roll_call;
  std::vector<BackAndForth> back_and_forths;
};

inline HearingEngagement analyze_hearing(const Hearing &h, const EngagementConfig &cfg = {}) {
  HearingEngagement out;
  out.roll_call = detect_roll_call(h);
  out.back_and_forths = detect_back_and_forths(h, cfg);
  for (const std::string &id : h.committee_roster) {
    EngagementCounters &c = out.counters[id];
    c.num_hearings_on_committee = 1;
    if (out.roll_call && out.roll_call->votes.count(id)) c.number_votes = 1;
  }
  for (const Utterance &u : h.utterances) {
    auto it = out.counters.find(u.speaker);
    if (it == out.counters.end()) continue;
    it->second.num_times_speaking += speaking_instances(u, cfg);
    it->second.num_questions += count_questions(u.text);
  }
  for (const BackAndForth &b : out.back_and_forths) {
    auto it = out.counters.find(b.legislator);
    if (it == out.counters.end()) continue;
    it->second.num_words_in_back_and_forth +=
        cfg.back_and_forth_words == BackAndForthWords::whole_exchange ? b.total_words
                                                                      : b.legislator_words;
  }
  return out;
}

inline EngagementCounters accumulate(std::span<const Hearing> hearings, std::string_view legislator,
                                     const EngagementConfig &cfg = {}) {
  EngagementCounters total;
  for (const Hearing &h : hearings) {
    if (!h.on_roster(legislator)) continue;
    total += analyze_hearing(h, cfg).counters.at(std::string(legislator));
  }
  if (total.num_hearings_on_committee == 0)
    throw InputError("legislator '" + std::string(legislator) + "' has no committee hearings");
  return total;
}

inline EngagementBreakdown compute_scores(const EngagementCounters &c,
                                          const EngagementWeights &w = {}) {
  if (c.num_hearings_on_committee == 0)
    throw InputError("compute_scores: no committee hearings");
  if (c.number_votes > c.num_hearings_on_committee)
    throw InvariantError("compute_scores: more votes than hearings");
  EngagementBreakdown b;
  b.vote_score = w.alpha * static_cast<double>(c.number_votes) /
                 static_cast<double>(c.num_hearings_on_committee);
  b.speaking_score = w.beta * static_cast<double>(c.num_times_speaking);
  b.back_and_forth_score = w.gamma * static_cast<double>(c.num_words_in_back_and_forth);
  b.question_score = w.delta * static_cast<double>(c.num_questions);
  b.total = b.vote_score + b.speaking_score + b.back_and_forth_score + b.question_score;
  return b;
}

}  // namespace legisfeat
