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

// Hearing data model and the line-delimited JSON hearing format.
// See docs/hearing-format.md for the schema.

#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "legisfeat/errors.hpp"
#include "legisfeat/text.hpp"

namespace legisfeat {

enum class Role {
  legislator,
  chair,
  committee_secretary,
  public_commenter,
  witness,
  bill_presenter,
  other,
};

enum class Phase { discussion, public_comment, roll_call, other };

inline std::string_view to_string(Role r) {
  switch (r) {
    case Role::legislator: return "legislator";
    case Role::chair: return "chair";
    case Role::committee_secretary: return "committee-secretary";
    case Role::public_commenter: return "public-commenter";
    case Role::witness: return "witness";
    case Role::bill_presenter: return "bill-presenter";
    case Role::other: return "other";
  }
  return "other";
}

inline std::optional<Role> parse_role(std::string_view s) {
  for (Role r : {Role::legislator, Role::chair, Role::committee_secretary, Role::public_commenter,
                 Role::witness, Role::bill_presenter, Role::other})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

inline std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::discussion: return "discussion";
    case Phase::public_comment: return "public-comment";
    case Phase::roll_call: return "roll-call";
    case Phase::other: return "other";
  }
  return "other";
}

inline std::optional<Phase> parse_phase(std::string_view s) {
  for (Phase p : {Phase::discussion, Phase::public_comment, Phase::roll_call, Phase::other})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

/// Committee members. Chairs are legislators who run the hearing.
inline bool is_lawmaker(Role r) { return r == Role::legislator || r == Role::chair; }

struct Speaker {
  std::string id;
  std::string full_name;
  std::string last_name;
  Role role = Role::other;

  friend bool operator==(const Speaker &, const Speaker &) = default;
};

struct Utterance {
  std::size_t index = 0;
  std::string speaker;  // Speaker::id
  std::string text;
  std::optional<double> start_seconds;
  std::optional<double> end_seconds;
  std::optional<Phase> phase;

  bool timed() const { return start_seconds && end_seconds; }

  friend bool operator==(const Utterance &, const Utterance &) = default;
};

struct Hearing {
  std::string id;
  std::vector<std::string> committee_roster;  // sorted, unique
  std::optional<std::string> bill_id;
  bool is_floor_session = false;
  bool vote_recorded = false;
  std::map<std::string, Speaker> speakers;
  std::vector<Utterance> utterances;

  const Speaker &speaker_of(const Utterance &u) const { return speakers.at(u.speaker); }

  bool on_roster(std::string_view speaker_id) const {
    return std::binary_search(committee_roster.begin(), committee_roster.end(), speaker_id);
  }

  friend bool operator==(const Hearing &, const Hearing &) = default;
};

namespace transcript_detail {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] inline void fail(std::size_t line, const std::string &what) {
  throw ParseError(line, what);
}

inline const json &require(const json &obj, const char *field, std::size_t line,
                           const std::string &where) {
  auto it = obj.find(field);
  if (it == obj.end()) fail(line, where + ": missing field '" + field + "'");
  return *it;
}

inline std::string require_string(const json &obj, const char *field, std::size_t line,
                                  const std::string &where) {
  const json &v = require(obj, field, line, where);
  if (!v.is_string()) fail(line, where + ": field '" + field + "' must be a string");
  return v.get<std::string>();
}

inline bool optional_bool(const json &obj, const char *field, std::size_t line,
                          const std::string &where) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return false;
  if (!it->is_boolean()) fail(line, where + ": field '" + field + "' must be a boolean");
  return it->get<bool>();
}

inline std::optional<double> optional_seconds(const json &obj, const char *field, std::size_t line,
                                              const std::string &where) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) fail(line, where + ": field '" + field + "' must be a number");
  double v = it->get<double>();
  if (!(v >= 0.0)) fail(line, where + ": field '" + field + "' must be non-negative");
  return v;
}

inline Speaker parse_speaker(const json &j, std::size_t line, const std::string &where) {
  if (!j.is_object()) fail(line, where + ": speaker must be an object");
  Speaker s;
  s.id = require_string(j, "id", line, where);
  if (s.id.empty()) fail(line, where + ": field 'id' must be non-empty");
  std::string ctx = where + " speaker '" + s.id + "'";
  s.full_name = require_string(j, "full_name", line, ctx);
  s.last_name = require_string(j, "last_name", line, ctx);
  std::string role = require_string(j, "role", line, ctx);
  auto r = parse_role(role);
  if (!r) fail(line, ctx + ": field 'role' has unknown value '" + role + "'");
  s.role = *r;
  if (is_lawmaker(s.role) && normalize_text(s.last_name).empty())
    fail(line, ctx + ": field 'last_name' must be non-empty for legislators");
  return s;
}

inline Hearing parse_hearing_json(const json &j, std::size_t line) {
  if (!j.is_object()) fail(line, "hearing record must be a JSON object");
  Hearing h;
  h.id = require_string(j, "id", line, "hearing");
  if (h.id.empty()) fail(line, "hearing: field 'id' must be non-empty");
  const std::string where = "hearing '" + h.id + "'";

  if (auto it = j.find("bill_id"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) fail(line, where + ": field 'bill_id' must be a string");
    h.bill_id = it->get<std::string>();
  }
  h.is_floor_session = optional_bool(j, "is_floor_session", line, where);
  h.vote_recorded = optional_bool(j, "vote_recorded", line, where);

  const json &speakers = require(j, "speakers", line, where);
  if (!speakers.is_array()) fail(line, where + ": field 'speakers' must be an array");
  for (const json &sj : speakers) {
    Speaker s = parse_speaker(sj, line, where);
    std::string id = s.id;
    if (!h.speakers.emplace(id, std::move(s)).second)
      fail(line, where + ": duplicate speaker id '" + id + "'");
  }

  const json &roster = require(j, "committee_roster", line, where);
  if (!roster.is_array()) fail(line, where + ": field 'committee_roster' must be an array");
  for (const json &r : roster) {
    if (!r.is_string()) fail(line, where + ": committee_roster entries must be strings");
    std::string id = r.get<std::string>();
    auto sp = h.speakers.find(id);
    if (sp == h.speakers.end())
      fail(line, where + ": committee_roster id '" + id + "' has no speaker record");
    if (!is_lawmaker(sp->second.role))
      fail(line, where + ": committee_roster id '" + id + "' is not a legislator");
    h.committee_roster.push_back(std::move(id));
  }
  std::sort(h.committee_roster.begin(), h.committee_roster.end());
  if (std::adjacent_find(h.committee_roster.begin(), h.committee_roster.end()) !=
      h.committee_roster.end())
    fail(line, where + ": committee_roster contains a duplicate id");

  const json &utts = require(j, "utterances", line, where);
  if (!utts.is_array()) fail(line, where + ": field 'utterances' must be an array");
  for (const json &uj : utts) {
    if (!uj.is_object()) fail(line, where + ": utterance must be an object");
    Utterance u;
    const json &idx = require(uj, "index", line, where + " utterance");
    if (!idx.is_number_integer() || idx.get<long long>() < 0)
      fail(line, where + ": utterance field 'index' must be a non-negative integer");
    u.index = idx.get<std::size_t>();
    std::string ctx = where + " utterance " + std::to_string(u.index);
    if (u.index != h.utterances.size())
      fail(line, ctx + ": field 'index' gapless ordering violated (expected " +
                     std::to_string(h.utterances.size()) + ")");
    u.speaker = require_string(uj, "speaker", line, ctx);
    if (!h.speakers.count(u.speaker))
      fail(line, ctx + ": field 'speaker' references unknown speaker '" + u.speaker + "'");
    u.text = require_string(uj, "text", line, ctx);
    u.start_seconds = optional_seconds(uj, "start_seconds", line, ctx);
    u.end_seconds = optional_seconds(uj, "end_seconds", line, ctx);
    if (u.start_seconds && u.end_seconds && *u.end_seconds < *u.start_seconds)
      fail(line, ctx + ": field 'end_seconds' precedes 'start_seconds'");
    if (auto it = uj.find("phase"); it != uj.end() && !it->is_null()) {
      if (!it->is_string()) fail(line, ctx + ": field 'phase' must be a string");
      auto p = parse_phase(it->get<std::string>());
      if (!p) fail(line, ctx + ": field 'phase' has unknown value '" + it->get<std::string>() + "'");
      u.phase = p;
    }
    h.utterances.push_back(std::move(u));
  }
  return h;
}

}  // namespace transcript_detail

/// Reads line-delimited JSON hearings. Blank lines are skipped. Speaker ids
/// are corpus-wide: the same id must carry the same names everywhere. Roles
/// are per hearing, since a member may chair one committee and sit on another.
inline std::vector<Hearing> parse_hearings(std::istream &in) {
  std::vector<Hearing> out;
  std::set<std::string> seen;
  std::map<std::string, Speaker> corpus_speakers;
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
    Hearing h = transcript_detail::parse_hearing_json(j, lineno);
    if (!seen.insert(h.id).second) throw ParseError(lineno, "duplicate hearing id '" + h.id + "'");
    for (const auto &[id, sp] : h.speakers) {
      auto [it, fresh] = corpus_speakers.emplace(id, sp);
      if (!fresh && (it->second.full_name != sp.full_name || it->second.last_name != sp.last_name))
        throw ParseError(lineno, "speaker id '" + id + "' conflicts with an earlier definition");
    }
    out.push_back(std::move(h));
  }
  return out;
}

inline nlohmann::ordered_json to_json(const Hearing &h) {
  nlohmann::ordered_json j;
  j["id"] = h.id;
  j["committee_roster"] = h.committee_roster;
  if (h.bill_id) j["bill_id"] = *h.bill_id;
  j["is_floor_session"] = h.is_floor_session;
  j["vote_recorded"] = h.vote_recorded;
  auto &speakers = j["speakers"] = nlohmann::ordered_json::array();
  for (const auto &[id, s] : h.speakers) {
    speakers.push_back({{"id", s.id},
                        {"full_name", s.full_name},
                        {"last_name", s.last_name},
                        {"role", std::string(to_string(s.role))}});
  }
  auto &utts = j["utterances"] = nlohmann::ordered_json::array();
  for (const Utterance &u : h.utterances) {
    nlohmann::ordered_json uj;
    uj["index"] = u.index;
    uj["speaker"] = u.speaker;
    uj["text"] = u.text;
    if (u.start_seconds) uj["start_seconds"] = *u.start_seconds;
    if (u.end_seconds) uj["end_seconds"] = *u.end_seconds;
    if (u.phase) uj["phase"] = std::string(to_string(*u.phase));
    utts.push_back(std::move(uj));
  }
  return j;
}

/// Canonical serialization: one hearing per line, fixed field order,
/// speakers sorted by id, roster sorted.
inline void write_hearings(std::ostream &out, const std::vector<Hearing> &hearings) {
  for (const Hearing &h : hearings) out << to_json(h).dump() << '\n';
}

}  // namespace legisfeat
