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

#include "../support/synthetic.hpp"

namespace legisfeat {
namespace {

OrgRegistry small_registry(std::size_t n) {
  std::vector<std::string> orgs;
  for (std::size_t i = 0; i < n; ++i) orgs.push_back("Organization Number " + std::to_string(i));
  return build_registry(orgs, {}).registry;
}

TEST(Substitute, CountsAndDeterminism) {
  auto comments = testing::tagged_comments(7);
  auto reg = small_registry(10);
  auto a = substitute_orgs(comments[0], reg, 100, 42);
  EXPECT_EQ(a.size(), 100u);
  EXPECT_EQ(a, substitute_orgs(comments[0], reg, 100, 42));
  for (const auto &c : a) {
    ASSERT_EQ(c.org_slots.size(), 1u);
    EXPECT_EQ(c.org_slots[0].size(), 3u);
    EXPECT_EQ(c.tokens[c.org_slots[0].begin], "Organization");
  }
  auto zero = substitute_orgs(comments[3], reg, 3, 1);
  ASSERT_EQ(zero.size(), 3u);
  for (const auto &c : zero) EXPECT_EQ(c, comments[3]);
  EXPECT_THROW(substitute_orgs(comments[0], OrgRegistry{}, 1, 1), InputError);
}

TEST(RecallCorpus, Size) {
  auto reg = small_registry(10);
  EXPECT_EQ(generate_recall_corpus(testing::tagged_comments(7), reg, 100, 9).size(), 700u);
  EXPECT_TRUE(generate_recall_corpus({}, reg, 100, 9).empty());
}

TEST(PrecisionCorpus, Size) {
  auto comments = testing::tagged_comments(7);  // 2 zero-slot, 1 two-slot
  auto reg = small_registry(10);
  std::vector<TaggedComment> input = {comments[0], comments[1], comments[3], comments[5],
                                      comments[2]};
  TaggedComment third_zero = comments[3];
  third_zero.tokens[0] = "Tina";
  input.push_back(third_zero);
  EXPECT_EQ(generate_precision_corpus(input, reg, 4, 3).size(), 43u);
  std::vector<TaggedComment> one = {comments[0]};
  EXPECT_EQ(generate_precision_corpus(one, small_registry(1), 1, 3).size(), 1u);
  std::vector<TaggedComment> none = {comments[3]};
  EXPECT_THROW(generate_precision_corpus(none, reg, 4, 3), InputError);
}

TEST(SequenceLabels, FormatAndRoundTrip) {
  TaggedComment c;
  c.tokens = {"With", "Sierra", "Club"};
  c.tags = {EntityTag::OTHER, EntityTag::ORGANIZATION, EntityTag::ORGANIZATION};
  c.org_slots = {{1, 3}};
  std::vector<TaggedComment> one = {c};
  std::ostringstream out;
  emit_sequence_labels(one, out);
  EXPECT_EQ(out.str(), "With\tOTHER\nSierra\tORGANIZATION\nClub\tORGANIZATION\n\n");

  auto corpus = generate_recall_corpus(testing::tagged_comments(7), small_registry(5), 100, 5);
  std::ostringstream all;
  emit_sequence_labels(corpus, all);
  std::istringstream in(all.str());
  auto back = read_sequence_labels(in);
  EXPECT_EQ(back.size(), 700u);
}

TEST(TaggedComments, JsonRoundTrip) {
  auto comments = testing::tagged_comments(7);
  std::ostringstream out;
  write_tagged_comments(out, comments);
  std::istringstream in(out.str());
  EXPECT_EQ(read_tagged_comments(in), comments);
  std::istringstream bad(R"({"tokens":["a"],"tags":["OTHER","OTHER"]})");
  EXPECT_THROW(read_tagged_comments(bad), ParseError);
}

}  // namespace
}  // namespace legisfeat
