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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "legisfeat/absentee.hpp"

namespace legisfeat {
namespace {

Hearing roster_of(std::size_t n) {
  Hearing h;
  h.id = "h";
  for (std::size_t i = 0; i < n; ++i) {
    std::string id = "L" + std::to_string(10 + i);
    h.speakers[id] = {id, "Member " + id, id, Role::legislator};
    h.committee_roster.push_back(id);
  }
  h.speakers["S"] = {"S", "Sec", "Sec", Role::committee_secretary};
  return h;
}

void speak(Hearing &h, const std::string &id, const std::string &text = "Thank you.") {
  Utterance u;
  u.index = h.utterances.size();
  u.speaker = id;
  u.text = text;
  h.utterances.push_back(u);
}

std::vector<AttendanceRecord> records(std::size_t absent, std::size_t total) {
  std::vector<AttendanceRecord> r;
  for (std::size_t i = 0; i < total; ++i)
    r.push_back({"h", "L" + std::to_string(i),
                 i < absent ? AttendanceStatus::absent : AttendanceStatus::present});
  return r;
}

TEST(DetectAbsences, Evidence) {
  Hearing h = roster_of(3);
  speak(h, "L10");
  RollCall rc;
  rc.votes = {"L11"};
  auto r = detect_absences(h, rc);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].status, AttendanceStatus::present);
  EXPECT_EQ(r[1].status, AttendanceStatus::present);
  EXPECT_EQ(r[2].status, AttendanceStatus::absent);
  EXPECT_EQ(detect_absences(h, std::nullopt)[1].status, AttendanceStatus::absent);
}

TEST(SpecialMeeting, StrictThreshold) {
  auto seven = apply_special_meeting_rule(records(7, 10));
  std::size_t marked = 0;
  for (const auto &r : seven) marked += r.status == AttendanceStatus::not_assessed_special_meeting;
  EXPECT_EQ(marked, 7u);
  EXPECT_EQ(apply_special_meeting_rule(records(6, 10)), records(6, 10));
  EXPECT_EQ(apply_special_meeting_rule(records(0, 10)), records(0, 10));
  EXPECT_EQ(apply_special_meeting_rule(records(3, 5)), records(3, 5));
  EXPECT_NE(apply_special_meeting_rule(records(4, 5)), records(4, 5));
}

TEST(SpecialMeeting, Idempotent) {
  auto once = apply_special_meeting_rule(records(8, 10));
  EXPECT_EQ(apply_special_meeting_rule(once), once);
}

TEST(Attendance, RollCallFromTranscript) {
  Hearing h = roster_of(3);
  speak(h, "S", "L10? L11? L11 aye. L12?");
  speak(h, "L10", "Aye.");
  auto r = attendance(h);
  EXPECT_EQ(r[0].status, AttendanceStatus::present);
  EXPECT_EQ(r[1].status, AttendanceStatus::present);
  EXPECT_EQ(r[2].status, AttendanceStatus::absent);
  EXPECT_EQ(to_string(AttendanceStatus::not_assessed_special_meeting), "not-assessed-special-meeting");
}

}  // namespace
}  // namespace legisfeat
