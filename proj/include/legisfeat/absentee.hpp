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

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "legisfeat/engagement.hpp"
#include "legisfeat/transcript.hpp"

namespace legisfeat {

enum class AttendanceStatus { present, absent, not_assessed_special_meeting };

inline std::string_view to_string(AttendanceStatus s) {
  switch (s) {
    case AttendanceStatus::present: return "present";
    case AttendanceStatus::absent: return "absent";
    case AttendanceStatus::not_assessed_special_meeting: return "not-assessed-special-meeting";
  }
  return "absent";
}

struct AttendanceRecord {
  std::string hearing_id;
  std::string legislator_id;
  AttendanceStatus status = AttendanceStatus::absent;

  friend bool operator==(const AttendanceRecord &, const AttendanceRecord &) = default;
};

/// One record per roster member, in roster order. Present means the member
/// spoke at least once or voted in the roll call.
inline std::vector<AttendanceRecord> detect_absences(const Hearing &h,
                                                     const std::optional<RollCall> &roll_call) {
  std::set<std::string_view> spoke;
  for (const Utterance &u : h.utterances) spoke.insert(u.speaker);
  std::vector<AttendanceRecord> out;
  out.reserve(h.committee_roster.size());
  for (const std::string &id : h.committee_roster) {
    bool present = spoke.count(id) || (roll_call && roll_call->votes.count(id));
    out.push_back({h.id, id, present ? AttendanceStatus::present : AttendanceStatus::absent});
  }
  return out;
}

/// Fraction of absent members above which a hearing is treated as a special
/// meeting. Strict: exactly this fraction leaves the records alone.
inline constexpr double kSpecialMeetingAbsentFraction = 0.6;

/// When more than `threshold` of the roster is absent, nobody is marked
/// absent; those records become not-assessed-special-meeting. `records` must
/// all belong to one hearing and cover its roster.
inline std::vector<AttendanceRecord> apply_special_meeting_rule(
    std::vector<AttendanceRecord> records, double threshold = kSpecialMeetingAbsentFraction) {
  if (records.empty()) return records;
  std::size_t absent = 0;
  for (const AttendanceRecord &r : records)
    if (r.status == AttendanceStatus::absent) ++absent;
  // absent / roster > threshold, kept in exact arithmetic for the default
  // threshold of 6/10.
  bool special = threshold == kSpecialMeetingAbsentFraction
                     ? absent * 10 > records.size() * 6
                     : static_cast<double>(absent) > threshold * static_cast<double>(records.size());
  if (!special) return records;
  for (AttendanceRecord &r : records)
    if (r.status == AttendanceStatus::absent) r.status = AttendanceStatus::not_assessed_special_meeting;
  return records;
}

inline std::vector<AttendanceRecord> attendance(const Hearing &h,
                                                double threshold = kSpecialMeetingAbsentFraction) {
  return apply_special_meeting_rule(detect_absences(h, detect_roll_call(h)), threshold);
}

}  // namespace legisfeat
