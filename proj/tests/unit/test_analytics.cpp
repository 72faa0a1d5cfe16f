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

#include "legisfeat/analytics.hpp"

namespace legisfeat {
namespace {

Hearing make(const std::string &id, bool vote, bool comment, std::size_t speaking, bool floor = false) {
  Hearing h;
  h.id = id;
  h.vote_recorded = vote;
  h.is_floor_session = floor;
  h.speakers["P"] = {"P", "Pat Lee", "Lee", Role::public_commenter};
  for (std::size_t i = 0; i < 4; ++i) {
    std::string l = "L" + std::to_string(i);
    h.speakers[l] = {l, "Member " + l, l, Role::legislator};
    h.committee_roster.push_back(l);
  }
  auto say = [&](const std::string &who, const std::string &text, std::optional<Phase> ph) {
    h.utterances.push_back({h.utterances.size(), who, text, std::nullopt, std::nullopt, ph});
  };
  for (std::size_t i = 0; i < speaking; ++i) say("L" + std::to_string(i), "Comments.", std::nullopt);
  if (comment) say("P", "Pat Lee with Sierra Club, in support.", Phase::public_comment);
  return h;
}

TEST(AffiliationFilter, Cases) {
  std::vector<Hearing> hs = {make("a", true, true, 1), make("b", true, false, 1),
                             make("c", false, true, 1)};
  FilterStats s;
  auto kept = filter_for_affiliation(hs, &s);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0]->id, "a");
  EXPECT_EQ(s.removed_no_public_comment, 1u);
  EXPECT_EQ(s.removed_no_vote, 1u);
  EXPECT_TRUE(filter_for_affiliation(std::vector<Hearing>{}).empty());
}

TEST(EngagementFilter, Cases) {
  std::vector<Hearing> hs = {make("two", true, false, 2), make("three", true, false, 3),
                             make("floor", true, false, 4, true)};
  FilterStats s;
  auto kept = filter_for_engagement(hs, &s);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0]->id, "three");
  EXPECT_EQ(s.removed_few_speakers, 1u);
  EXPECT_EQ(s.removed_floor_session, 1u);
}

TEST(PublicComment, RolesThenPhaseThenFallbacks) {
  Hearing h = make("x", true, false, 0);
  h.speakers["W"] = {"W", "Wes Fox", "Fox", Role::witness};
  h.utterances.push_back({0, "P", "Hello.", std::nullopt, std::nullopt, std::nullopt});
  h.utterances.push_back({1, "W", "We oppose it.", std::nullopt, std::nullopt, std::nullopt});
  h.utterances.push_back({2, "W", "Some facts.", std::nullopt, std::nullopt, std::nullopt});
  h.utterances.push_back({3, "L0", "I support it.", std::nullopt, std::nullopt, std::nullopt});
  EXPECT_TRUE(is_public_comment(h, h.utterances[0]));
  EXPECT_TRUE(is_public_comment(h, h.utterances[1]));
  EXPECT_FALSE(is_public_comment(h, h.utterances[2]));
  EXPECT_FALSE(is_public_comment(h, h.utterances[3]));

  h.utterances.push_back({4, "L0", "Anyone in support?", std::nullopt, std::nullopt, Phase::public_comment});
  h.utterances.push_back({5, "W", "Thanks.", std::nullopt, std::nullopt, Phase::public_comment});
  h.utterances.push_back({6, "P", "We support it.", std::nullopt, std::nullopt, Phase::discussion});
  EXPECT_FALSE(is_public_comment(h, h.utterances[4]));
  EXPECT_TRUE(is_public_comment(h, h.utterances[5]));
  EXPECT_FALSE(is_public_comment(h, h.utterances[6]));
}

TEST(OrgFrequency, PerHearingSets) {
  std::vector<std::vector<std::string>> one = {{"X Org", "X Org", "x org", "X Org", "X ORG"}};
  auto r = org_frequency(one);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].hearings, 1u);
  EXPECT_EQ(r[0].organization, "X Org");

  std::vector<std::vector<std::string>> three = {{"Y Org"}, {"Y Org", "Members"}, {"Y Org", "Z Org"}};
  std::vector<std::string> excl = {"Members"};
  auto r3 = org_frequency(three, excl);
  ASSERT_EQ(r3.size(), 2u);
  EXPECT_EQ(r3[0], (OrgCount{"Y Org", 3}));
  EXPECT_EQ(r3[1], (OrgCount{"Z Org", 1}));
  EXPECT_TRUE(org_frequency(std::vector<std::vector<std::string>>{}).empty());
}

TEST(RankLegislators, OrderAndTies) {
  auto score = [](const std::string &name, double total) {
    LegislatorScore s;
    s.legislator = name;
    s.breakdown.total = total;
    return s;
  };
  auto r = rank_legislators({score("Mike McGuire", 16.448), score("Hannah-Beth Jackson", 23.621)});
  EXPECT_EQ(r[0].legislator, "Hannah-Beth Jackson");
  auto t = rank_legislators({score("Bee", 1.0), score("Aye", 1.0)});
  EXPECT_EQ(t[0].legislator, "Aye");
  EXPECT_EQ(rank_legislators({score("Solo", 0.0)}).size(), 1u);
}

}  // namespace
}  // namespace legisfeat
