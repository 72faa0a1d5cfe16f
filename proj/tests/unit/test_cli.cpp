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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "legisfeat/cli.hpp"
#include "../support/synthetic.hpp"

#ifndef LEGISFEAT_TEST_DATA
#define LEGISFEAT_TEST_DATA "tests/data"
#endif

namespace legisfeat {
namespace {

namespace fs = std::filesystem;

const std::string kData = LEGISFEAT_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "legisfeat");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("legisfeat_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

TEST_F(CliTest, ScoreEngagementMatchesHandScoredFixture) {
  auto r = run({"score-engagement", "--hearings", kData + "/golden_hearings.jsonl", "--workers", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, slurp(kData + "/golden_engagement.csv"));
  EXPECT_NE(r.err.find("floor sessions"), std::string::npos);
}

TEST_F(CliTest, DetectAbsencesMatchesFixture) {
  auto out = dir / "absences.csv";
  auto r = run({"detect-absences", "--hearings", kData + "/golden_hearings.jsonl", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(out), slurp(kData + "/golden_absences.csv"));
}

TEST_F(CliTest, ExtractAffiliations) {
  auto r = run({"extract-affiliations", "--hearings", kData + "/golden_hearings.jsonl", "--orgs",
                kData + "/golden_orgs.txt", "--places", kData + "/golden_places.txt"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "hearing_id,utterance_index,speaker_id,organization\n"
            "G1,7,pub-1,Sierra Club California\n"
            "G2,4,pub-2,ACLU of California\n"
            "G2,4,pub-2,Members\n");
  EXPECT_NE(r.err.find("rejected 'AB'"), std::string::npos);
}

TEST_F(CliTest, RankWithExclusions) {
  auto excl = dir / "exclusions.txt";
  std::ofstream(excl) << "Members\n";
  auto r = run({"rank", "--hearings", kData + "/golden_hearings.jsonl", "--orgs", kData + "/golden_orgs.txt",
                "--exclusions", excl.string(), "--out-dir", (dir / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string orgs = slurp(dir / "out" / "org_rankings.csv");
  EXPECT_EQ(orgs, "rank,organization,hearings\n1,ACLU of California,1\n2,Sierra Club California,1\n");
  EXPECT_EQ(slurp(dir / "out" / "engagement_rankings.csv"), slurp(kData + "/golden_engagement.csv"));
  EXPECT_TRUE(fs::exists(dir / "out" / "filter_stats.csv"));

  auto without = run({"rank", "--hearings", kData + "/golden_hearings.jsonl", "--orgs",
                      kData + "/golden_orgs.txt", "--format", "table"});
  ASSERT_EQ(without.code, 0) << without.err;
  EXPECT_NE(without.out.find("Members"), std::string::npos);
  EXPECT_NE(without.out.find("Mike McGuire"), std::string::npos);
}

TEST_F(CliTest, EvaluatePerfectExtractor) {
  auto labeled = dir / "labeled.jsonl";
  {
    std::ofstream out(labeled);
    write_annotated_comments(out, testing::affiliation_corpus(40, 2));
  }
  auto r = run({"evaluate", "--labeled", labeled.string(), "--extractor", "truth"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find(",1.0000\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, ClassifyStanceTrainsAndLabels) {
  auto tsv = dir / "stance.tsv";
  {
    std::ofstream out(tsv);
    for (const auto &s : testing::stance_samples(300, 4))
      out << s.comment << '\t' << to_string(s.label) << '\n';
  }
  auto tree = dir / "tree.txt";
  auto metrics = dir / "metrics.csv";
  auto r = run({"classify-stance", "--labeled", tsv.string(), "--tree-out", tree.string(), "--metrics",
                metrics.string(), "--test-count", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(tree).rfind("stance-tree 1\n", 0), 0u);
  auto labeled = run({"classify-stance", "--tree", tree.string(), "--hearings",
                      kData + "/golden_hearings.jsonl"});
  ASSERT_EQ(labeled.code, 0) << labeled.err;
  EXPECT_NE(labeled.out.find("G1,7,pub-1,0,1,0,0,0,Support"), std::string::npos) << labeled.out;
  EXPECT_NE(labeled.out.find("G2,4,pub-2,1,0,0,0,0,Oppose"), std::string::npos) << labeled.out;
}

TEST_F(CliTest, GenTrainingDataCounts) {
  auto tagged = dir / "tagged.jsonl";
  {
    std::ofstream out(tagged);
    write_tagged_comments(out, testing::tagged_comments(7));
  }
  auto r = run({"gen-training-data", "--tagged", tagged.string(), "--orgs", kData + "/golden_orgs.txt",
                "--out-dir", (dir / "gen").string(), "--per-comment", "100", "--per-org", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(dir / "gen" / "recall_corpus.tsv");
  EXPECT_EQ(read_sequence_labels(in).size(), 700u);
  std::ifstream pin(dir / "gen" / "precision_corpus.tsv");
  EXPECT_EQ(read_sequence_labels(pin).size(), 3u * 4u + 2u);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"score-engagement", "--bogus"}).code, 1);
  auto missing = run({"score-engagement", "--hearings", "/nonexistent.jsonl"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("/nonexistent.jsonl"), std::string::npos);
  auto bad = dir / "bad.jsonl";
  std::ofstream(bad) << "{\"id\": 3}\n";
  auto malformed = run({"score-engagement", "--hearings", bad.string()});
  EXPECT_EQ(malformed.code, 1);
  EXPECT_NE(malformed.err.find("line 1"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, ConfigFileSuppliesOptions) {
  auto cfg = dir / "run.ini";
  std::ofstream(cfg) << "hearings=" << kData << "/golden_hearings.jsonl\nalpha=1.0\n";
  auto r = run({"--config", cfg.string(), "score-engagement"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1,leg-mcguire,Mike McGuire,1.012400,1.000000"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace legisfeat
