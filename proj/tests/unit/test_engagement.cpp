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

#include <sstream>
#include <string>
#include <vector>

#include "legisfeat/engagement.hpp"

namespace legisfeat {
namespace {

struct Builder {
  Hearing h;

  Builder() {
    h.id = "h";
    add("L1", "Ana Ruiz", "Ruiz", Role::legislator);
    add("L2", "Ben Cho", "Cho", Role::legislator);
    add("C", "Cara Diaz", "Diaz", Role::chair);
    add("W", "Wes Fox", "Fox", Role::witness);
    add("S", "Sam Gray", "Gray", Role::committee_secretary);
    h.committee_roster = {"C", "L1", "L2"};
  }

  void add(const std::string &id, const std::string &full, const std::string &last, Role r) {
    h.speakers[id] = {id, full, last, r};
  }

  Builder &say(const std::string &who, const std::string &text) {
    Utterance u;
    u.index = h.utterances.size();
    u.speaker = who;
    u.text = text;
    h.utterances.push_back(u);
    return *this;
  }
};

std::string words(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += i ? " w" : "w";
  return s;
}

TEST(SpeakingInstances, Boundaries) {
  Utterance u;
  u.text = words(6);
  EXPECT_EQ(speaking_instances(u), 0u);
  u.text = words(40);
  u.start_seconds = 10;
  u.end_seconds = 70;
  EXPECT_EQ(speaking_instances(u), 2u);
  Utterance untimed;
  untimed.text = words(100);
  EXPECT_EQ(speaking_instances(untimed), 2u);
  untimed.text = words(7);
  EXPECT_EQ(speaking_instances(untimed), 1u);
}

TEST(BackAndForth, SingleChain) {
  Builder b;
  b.say("L1", words(10)).say("W", words(8)).say("L1", words(7));
  auto bf = detect_back_and_forths(b.h);
  ASSERT_EQ(bf.size(), 1u);
  EXPECT_EQ(bf[0].total_words, 25u);
  EXPECT_EQ(bf[0].legislator_words, 17u);
  EXPECT_EQ(bf[0].legislator, "L1");
}

TEST(BackAndForth, ShortChainDropped) {
  Builder b;
  b.say("L1", words(3)).say("W", words(5)).say("L1", words(2));
  EXPECT_TRUE(detect_back_and_forths(b.h).empty());
  Builder c;
  c.say("L1", words(3)).say("W", words(5)).say("L1", words(5));
  EXPECT_EQ(detect_back_and_forths(c.h).size(), 1u);
}

TEST(BackAndForth, MaximalChain) {
  Builder b;
  b.say("L1", words(5)).say("W", words(5)).say("L1", words(5)).say("W", words(5)).say("L1", words(5));
  auto bf = detect_back_and_forths(b.h);
  ASSERT_EQ(bf.size(), 1u);
  EXPECT_EQ(bf[0].first, 0u);
  EXPECT_EQ(bf[0].last, 4u);
}

TEST(BackAndForth, DifferentLegislatorBreaksChain) {
  Builder b;
  b.say("L1", words(9)).say("W", words(9)).say("L2", words(9));
  EXPECT_TRUE(detect_back_and_forths(b.h).empty());
}

TEST(CountQuestions, Marks) {
  EXPECT_EQ(count_questions("Why? Are you sure?"), 2u);
  EXPECT_EQ(count_questions(""), 0u);
  Builder b;
  b.say("L1", "One?").say("L1", "none").say("L1", "Two? Three?");
  std::uint64_t total = 0;
  for (const Utterance &u : b.h.utterances) total += count_questions(u.text);
  EXPECT_EQ(total, 3u);
  EXPECT_EQ(analyze_hearing(b.h).counters.at("L1").num_questions, 3u);
}

TEST(RollCall, RepeatAndReply) {
  Builder b;
  b.h.speakers["L1"].last_name = "Jackson";
  b.h.speakers["L2"].last_name = "McGuire";
  b.say("S", "Jackson? ... Jackson, aye. McGuire? ... McGuire, no.");
  auto rc = detect_roll_call(b.h);
  ASSERT_TRUE(rc);
  EXPECT_EQ(rc->votes, (std::set<std::string>{"L1", "L2"}));
}

TEST(RollCall, SingleMentionWithoutReplyIsNotAVote) {
  Builder b;
  b.say("S", "Ruiz?").say("S", "Cho? Cho aye.").say("S", "Diaz?").say("C", "Aye.");
  auto rc = detect_roll_call(b.h);
  ASSERT_TRUE(rc);
  EXPECT_EQ(rc->votes, (std::set<std::string>{"C", "L2"}));
}

TEST(RollCall, NoneWithoutSecretaryOrPhase) {
  Builder b;
  b.say("L1", "Ruiz and Cho agree.").say("W", "Thanks.");
  EXPECT_FALSE(detect_roll_call(b.h));
}

TEST(RollCall, PhaseTaggedRegion) {
  Builder b;
  b.say("S", "Ruiz?").say("L1", "Aye.").say("S", "Cho?");
  for (auto &u : b.h.utterances) u.phase = Phase::roll_call;
  auto rc = detect_roll_call(b.h);
  ASSERT_TRUE(rc);
  EXPECT_EQ(rc->votes, (std::set<std::string>{"L1"}));
}

TEST(Accumulate, SingleHearingTally) {
  Builder b;
  b.say("S", "Ruiz?").say("L1", "Aye, and I thank the author for this bill today.");
  b.say("L1", "One more comment from me on the record please.");
  b.say("S", "Cho?");
  std::vector<Hearing> hs = {b.h};
  EngagementCounters c = accumulate(hs, "L1");
  EXPECT_EQ(c.number_votes, 1u);
  EXPECT_EQ(c.num_hearings_on_committee, 1u);
  EXPECT_EQ(c.num_times_speaking, 2u);
  EngagementCounters silent = accumulate(hs, "L2");
  EXPECT_EQ(silent, (EngagementCounters{0, 1, 0, 0, 0}));
  EXPECT_THROW(accumulate(hs, "W"), InputError);
}

TEST(ComputeScores, HandArithmetic) {
  auto b = compute_scores({10, 20, 100, 10000, 50});
  EXPECT_NEAR(b.vote_score, 0.25, 1e-12);
  EXPECT_NEAR(b.speaking_score, 0.05, 1e-12);
  EXPECT_NEAR(b.back_and_forth_score, 0.5, 1e-12);
  EXPECT_NEAR(b.question_score, 0.5, 1e-12);
  EXPECT_NEAR(b.total, 1.3, 1e-12);
  auto z = compute_scores({0, 7, 0, 0, 0});
  EXPECT_EQ(z.total, 0.0);
  EXPECT_THROW(compute_scores({0, 0, 0, 0, 0}), InputError);
  EXPECT_THROW(compute_scores({3, 2, 0, 0, 0}), InvariantError);
}

TEST(ComputeScores, PublishedRowSumsToTotal) {
  // votes/hearings, speaking, words, questions chosen to give each component.
  auto b = compute_scores({638, 1000, 6278, 205860, 987});
  EXPECT_NEAR(b.vote_score, 0.319, 1e-9);
  EXPECT_NEAR(b.speaking_score, 3.139, 1e-9);
  EXPECT_NEAR(b.back_and_forth_score, 10.293, 1e-9);
  EXPECT_NEAR(b.question_score, 9.87, 1e-9);
  EXPECT_NEAR(b.total, 23.621, 1e-9);
}

TEST(ReadWeights, ParsesAndValidates) {
  std::istringstream in("# weights\nalpha = 1\nbeta=0.1\n");
  auto w = read_weights(in);
  EXPECT_EQ(w.alpha, 1.0);
  EXPECT_EQ(w.beta, 0.1);
  EXPECT_EQ(w.gamma, 0.00005);
  std::istringstream bad("epsilon=2\n");
  EXPECT_THROW(read_weights(bad), InputError);
  std::istringstream neg("alpha=-1\n");
  EXPECT_THROW(read_weights(neg), InputError);
}

}  // namespace
}  // namespace legisfeat
