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

// Ranks legislators by engagement and lists the organizations each public
// commenter names.
//
//   legisfeat_example samples/hearings.jsonl samples/orgs.txt samples/places.txt

#include <fstream>
#include <iostream>
#include <map>

#include "legisfeat/legisfeat.hpp"

int main(int argc, char **argv) {
  if (argc != 4) {
    std::cerr << "usage: legisfeat_example HEARINGS.jsonl ORGS.txt PLACES.txt\n";
    return 1;
  }
  try {
    std::ifstream in(argv[1]);
    if (!in) throw legisfeat::InputError(std::string("cannot read ") + argv[1]);
    std::vector<legisfeat::Hearing> hearings = legisfeat::parse_hearings(in);
    legisfeat::OrgRegistry registry = legisfeat::load_registry(argv[2], argv[3]).registry;

    // Engagement: sum per-hearing counters, then score and rank.
    std::map<std::string, legisfeat::EngagementCounters> totals;
    std::map<std::string, std::string> names;
    for (const legisfeat::Hearing *h : legisfeat::filter_for_engagement(hearings)) {
      for (const auto &[id, counters] : legisfeat::analyze_hearing(*h).counters) {
        totals[id] += counters;
        names[id] = h->speakers.at(id).full_name;
      }
    }
    std::vector<legisfeat::LegislatorScore> scores;
    for (const auto &[id, counters] : totals)
      scores.push_back({names[id], id, legisfeat::compute_scores(counters)});
    for (const auto &s : legisfeat::rank_legislators(scores))
      std::cout << s.legislator << "\t" << legisfeat::format_fixed(s.breakdown.total, 3) << '\n';

    // Affiliations: one line per public comment that names an organization.
    for (const legisfeat::Hearing &h : hearings) {
      for (const legisfeat::Utterance &u : h.utterances) {
        if (!legisfeat::is_public_comment(h, u)) continue;
        auto result = legisfeat::extract_affiliations(u.text, h.speaker_of(u), registry);
        for (const std::string &org : result.accepted)
          std::cout << h.id << "\t" << u.index << "\t" << org << '\n';
      }
    }
  } catch (const legisfeat::InputError &e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
