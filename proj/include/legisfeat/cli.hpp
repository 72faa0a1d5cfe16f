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

// The legisfeat command line. run() is the whole program; tools/legisfeat.cpp
// only forwards argv. Exit codes: 0 success, 1 input error, 2 internal
// invariant failure.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>

#include "legisfeat/absentee.hpp"
#include "legisfeat/affiliation.hpp"
#include "legisfeat/analytics.hpp"
#include "legisfeat/augment.hpp"
#include "legisfeat/csv.hpp"
#include "legisfeat/engagement.hpp"
#include "legisfeat/evaluation.hpp"
#include "legisfeat/gazetteer.hpp"
#include "legisfeat/parallel.hpp"
#include "legisfeat/stance.hpp"
#include "legisfeat/transcript.hpp"

namespace legisfeat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInternal = 2;

struct RunConfig {
  // inputs
  std::string hearings;
  std::string orgs;
  std::string places;
  std::string weights_file;
  std::string exclusions;
  std::string labeled;
  std::string tagged;
  std::string cues;
  std::string stop_verbs;
  std::string tree;

  // rule constants
  EngagementWeights weights;
  AffiliationConfig affiliation;
  EngagementConfig engagement;
  double special_meeting = kSpecialMeetingAbsentFraction;
  std::size_t min_speaking = kMinLegislatorsSpeaking;
  std::string back_and_forth_words = "whole";

  std::uint64_t seed = 20170101;
  std::size_t workers = default_workers();
  bool no_filter = false;
};

namespace detail {

class Output {
 public:
  Output(const std::string &path, std::ostream &fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw InputError("cannot write file '" + path + "'");
    stream_ = file_.get();
  }

  std::ostream &stream() { return *stream_; }

  void close() {
    stream_->flush();
    if (!*stream_) throw InputError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream *stream_ = nullptr;
};

inline void require(const std::string &value, const char *flag) {
  if (value.empty()) throw InputError(std::string("missing required option ") + flag);
}

inline std::vector<Hearing> load_hearings(const std::string &path) {
  require(path, "--hearings");
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file '" + path + "'");
  try {
    return parse_hearings(in);
  } catch (const ParseError &e) {
    throw InputError(path + ": " + e.what());
  }
}

inline OrgRegistry load_orgs(const RunConfig &cfg, std::ostream &log) {
  require(cfg.orgs, "--orgs");
  RegistryLoad load = load_registry(cfg.orgs, cfg.places);
  for (const std::string &r : load.rejected)
    log << "legisfeat: registry: rejected '" << r << "' (too short)\n";
  log << "legisfeat: registry: " << load.registry.size() << " organizations, "
      << load.registry.city_county_blocklist().size() << " places\n";
  return std::move(load.registry);
}

inline void apply_overrides(RunConfig &cfg) {
  if (!cfg.cues.empty()) cfg.affiliation.cue_phrases = read_name_list(cfg.cues);
  if (!cfg.stop_verbs.empty()) cfg.affiliation.stop_verbs = read_name_list(cfg.stop_verbs);
  if (!cfg.weights_file.empty()) cfg.weights = read_weights(cfg.weights_file);
  if (cfg.back_and_forth_words == "whole")
    cfg.engagement.back_and_forth_words = BackAndForthWords::whole_exchange;
  else if (cfg.back_and_forth_words == "legislator")
    cfg.engagement.back_and_forth_words = BackAndForthWords::legislator_only;
  else
    throw InputError("--bf-words must be 'whole' or 'legislator'");
  if (cfg.affiliation.window_words == 0) throw InputError("--window must be positive");
  if (cfg.engagement.block_seconds <= 0) throw InputError("--block-seconds must be positive");
  if (cfg.engagement.words_per_block == 0) throw InputError("--words-per-block must be positive");
  if (!(cfg.special_meeting > 0 && cfg.special_meeting < 1))
    throw InputError("--special-meeting must be in (0, 1)");
  if (cfg.workers == 0) cfg.workers = default_workers();
}

inline void log_filter(std::ostream &log, const char *name, const FilterStats &s) {
  log << "legisfeat: " << name << " filter: " << s.input << " hearings, removed "
      << s.removed_no_vote << " without votes, " << s.removed_no_public_comment
      << " without public comments, " << s.removed_few_speakers << " with fewer than 3 speaking, "
      << s.removed_floor_session << " floor sessions; kept " << s.kept << "\n";
}

inline std::vector<const Hearing *> all_of(const std::vector<Hearing> &hs) {
  std::vector<const Hearing *> out;
  for (const Hearing &h : hs) out.push_back(&h);
  return out;
}

struct CommentAffiliations {
  std::string hearing_id;
  std::size_t utterance = 0;
  std::string speaker_id;
  AffiliationResult result;
};

inline std::vector<std::vector<CommentAffiliations>> extract_hearings(
    const std::vector<const Hearing *> &hearings, const OrgRegistry &registry,
    const RunConfig &cfg) {
  return parallel_map(hearings.size(), cfg.workers, [&](std::size_t i) {
    const Hearing &h = *hearings[i];
    std::vector<CommentAffiliations> out;
    for (const Utterance &u : h.utterances) {
      if (!is_public_comment(h, u)) continue;
      out.push_back({h.id, u.index, u.speaker,
                     extract_affiliations(u.text, h.speaker_of(u), registry, cfg.affiliation)});
    }
    return out;
  });
}

struct ScoredLegislator {
  std::string id;
  std::string name;
  EngagementCounters counters;
  EngagementBreakdown breakdown;
};

inline std::vector<ScoredLegislator> score_hearings(const std::vector<const Hearing *> &hearings,
                                                    const RunConfig &cfg) {
  auto per_hearing = parallel_map(hearings.size(), cfg.workers, [&](std::size_t i) {
    return analyze_hearing(*hearings[i], cfg.engagement).counters;
  });
  std::map<std::string, EngagementCounters> totals;
  std::map<std::string, std::string> names;
  for (std::size_t i = 0; i < hearings.size(); ++i) {
    for (const auto &[id, c] : per_hearing[i]) {
      totals[id] += c;
      names.emplace(id, hearings[i]->speakers.at(id).full_name);
    }
  }
  std::vector<LegislatorScore> scores;
  for (const auto &[id, c] : totals) scores.push_back({names[id], id, compute_scores(c, cfg.weights)});
  std::vector<ScoredLegislator> out;
  for (LegislatorScore &s : rank_legislators(std::move(scores)))
    out.push_back({s.id, s.legislator, totals[s.id], s.breakdown});
  return out;
}

inline void write_engagement_csv(std::ostream &os, const std::vector<ScoredLegislator> &rows) {
  CsvWriter w(os);
  w.row({"rank", "legislator_id", "legislator", "engagement_score", "vote_score", "speaking_score",
         "back_and_forth_score", "question_score", "number_votes", "num_hearings_on_committee",
         "num_times_speaking", "num_words_in_back_and_forth", "num_questions"});
  std::size_t rank = 0;
  for (const ScoredLegislator &r : rows) {
    w.row({std::to_string(++rank), r.id, r.name, format_fixed(r.breakdown.total),
           format_fixed(r.breakdown.vote_score), format_fixed(r.breakdown.speaking_score),
           format_fixed(r.breakdown.back_and_forth_score), format_fixed(r.breakdown.question_score),
           std::to_string(r.counters.number_votes),
           std::to_string(r.counters.num_hearings_on_committee),
           std::to_string(r.counters.num_times_speaking),
           std::to_string(r.counters.num_words_in_back_and_forth),
           std::to_string(r.counters.num_questions)});
  }
}

inline void print_table(std::ostream &os, const std::vector<std::string> &header,
                        const std::vector<std::vector<std::string>> &rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto &r : rows)
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c)
      width[c] = std::max(width[c], r[c].size());
  auto line = [&](const std::vector<std::string> &r) {
    for (std::size_t c = 0; c < width.size(); ++c) {
      os << (c ? " | " : "") << std::left << std::setw(static_cast<int>(width[c]))
         << (c < r.size() ? r[c] : "");
    }
    os << '\n';
  };
  line(header);
  for (std::size_t c = 0; c < width.size(); ++c) os << (c ? "-+-" : "") << std::string(width[c], '-');
  os << '\n';
  for (const auto &r : rows) line(r);
}

// Seeded Fisher-Yates over indices.
inline std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::mt19937_64 rng = derived_rng(seed, 0);
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[uniform_below(rng, i)]);
  return idx;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommands

inline void extract_affiliations_cmd(RunConfig cfg, const std::string &out_path,
                                     const std::string &rejections_path, std::ostream &out,
                                     std::ostream &log) {
  using namespace detail;
  apply_overrides(cfg);
  std::vector<Hearing> hearings = load_hearings(cfg.hearings);
  OrgRegistry registry = load_orgs(cfg, log);
  FilterStats stats;
  auto selected = cfg.no_filter ? all_of(hearings) : filter_for_affiliation(hearings, &stats);
  if (!cfg.no_filter) log_filter(log, "affiliation", stats);
  auto results = extract_hearings(selected, registry, cfg);

  Output o(out_path, out);
  CsvWriter w(o.stream());
  w.row({"hearing_id", "utterance_index", "speaker_id", "organization"});
  for (const auto &hearing : results)
    for (const CommentAffiliations &c : hearing)
      for (const std::string &org : c.result.accepted)
        w.row({c.hearing_id, std::to_string(c.utterance), c.speaker_id, org});
  o.close();

  if (!rejections_path.empty()) {
    Output r(rejections_path, out);
    CsvWriter rw(r.stream());
    rw.row({"hearing_id", "utterance_index", "candidate", "source", "reason"});
    for (const auto &hearing : results)
      for (const CommentAffiliations &c : hearing)
        for (const Rejection &rej : c.result.rejected)
          rw.row({c.hearing_id, std::to_string(c.utterance), rej.candidate.name(),
                  std::string(to_string(rej.candidate.source)), std::string(to_string(rej.reason))});
    r.close();
  }
}

struct StanceOptions {
  std::size_t test_count = 167;
  std::size_t max_depth = 5;
  std::size_t min_leaf = 1;
  std::string tree_out;
  std::string metrics;
  std::string out;
};

inline void classify_stance_cmd(RunConfig cfg, const StanceOptions &opt, std::ostream &out,
                                std::ostream &log) {
  using namespace detail;
  apply_overrides(cfg);
  if (cfg.labeled.empty() && cfg.hearings.empty())
    throw InputError("classify-stance needs --labeled and/or --hearings");

  std::optional<DecisionTree> tree;
  if (!cfg.tree.empty()) {
    std::ifstream in(cfg.tree);
    if (!in) throw InputError("cannot read file '" + cfg.tree + "'");
    try {
      tree = DecisionTree::read(in);
    } catch (const ParseError &e) {
      throw InputError(cfg.tree + ": " + e.what());
    }
  }

  if (!cfg.labeled.empty()) {
    std::vector<LabeledComment> samples;
    try {
      samples = read_stance_samples(cfg.labeled);
    } catch (const ParseError &e) {
      throw InputError(cfg.labeled + ": " + e.what());
    }
    if (opt.test_count >= samples.size())
      throw InputError("--test-count must be smaller than the number of labeled samples");
    auto order = shuffled_indices(samples.size(), cfg.seed);
    std::vector<LabeledVector> train, test;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const LabeledComment &s = samples[order[k]];
      (k < opt.test_count ? test : train).push_back({count_phrases(s.comment), s.label});
    }
    if (!tree) tree = train_tree(train, {opt.max_depth, opt.min_leaf});
    std::vector<StanceLabel> truth, tree_pred, rule_pred;
    for (const LabeledVector &v : test) {
      truth.push_back(v.label);
      tree_pred.push_back(tree->classify(v.features));
      rule_pred.push_back(rule_fallback(v.features));
    }
    StanceMetrics tm = stance_metrics(truth, tree_pred);
    StanceMetrics rm = stance_metrics(truth, rule_pred);
    log << "legisfeat: stance: " << train.size() << " train, " << test.size()
        << " test; tree macro-F1 " << format_fixed(tm.macro_f1, 4) << ", rule macro-F1 "
        << format_fixed(rm.macro_f1, 4) << "\n";
    if (!opt.metrics.empty()) {
      Output m(opt.metrics, out);
      CsvWriter w(m.stream());
      w.row({"classifier", "train", "test", "accuracy", "macro_f1", "f1_support", "f1_oppose",
             "f1_neutral"});
      for (auto [name, met] : {std::pair{"tree", tm}, std::pair{"rule", rm}})
        w.row({name, std::to_string(train.size()), std::to_string(test.size()),
               format_fixed(met.accuracy, 4), format_fixed(met.macro_f1, 4),
               format_fixed(met.per_class_f1[0], 4), format_fixed(met.per_class_f1[1], 4),
               format_fixed(met.per_class_f1[2], 4)});
      m.close();
    }
  }

  if (tree && !opt.tree_out.empty()) {
    Output t(opt.tree_out, out);
    tree->write(t.stream());
    t.close();
  }

  if (!cfg.hearings.empty()) {
    std::vector<Hearing> hearings = load_hearings(cfg.hearings);
    if (!tree) log << "legisfeat: stance: no tree given, using the rule fallback\n";
    Output o(opt.out, out);
    CsvWriter w(o.stream());
    w.row({"hearing_id", "utterance_index", "speaker_id", "strong_opposition", "strong_support",
           "medium_opposition", "medium_support", "weak_support", "stance"});
    for (const Hearing &h : hearings) {
      for (const Utterance &u : h.utterances) {
        if (!is_public_comment(h, u)) continue;
        PhraseCountVector v = count_phrases(u.text);
        StanceLabel label = tree ? tree->classify(v) : rule_fallback(v);
        w.row({h.id, std::to_string(u.index), u.speaker, std::to_string(v[0]),
               std::to_string(v[1]), std::to_string(v[2]), std::to_string(v[3]),
               std::to_string(v[4]), std::string(to_string(label))});
      }
    }
    o.close();
  }
}

inline void score_engagement_cmd(RunConfig cfg, const std::string &out_path, std::ostream &out,
                                 std::ostream &log) {
  using namespace detail;
  apply_overrides(cfg);
  std::vector<Hearing> hearings = load_hearings(cfg.hearings);
  FilterStats stats;
  auto selected =
      cfg.no_filter ? all_of(hearings) : filter_for_engagement(hearings, &stats, cfg.min_speaking);
  if (!cfg.no_filter) log_filter(log, "engagement", stats);
  auto rows = score_hearings(selected, cfg);
  Output o(out_path, out);
  write_engagement_csv(o.stream(), rows);
  o.close();
}

inline void detect_absences_cmd(RunConfig cfg, const std::string &out_path, std::ostream &out,
                                std::ostream &log) {
  using namespace detail;
  apply_overrides(cfg);
  std::vector<Hearing> hearings = load_hearings(cfg.hearings);
  auto records = parallel_map(hearings.size(), cfg.workers,
                              [&](std::size_t i) { return attendance(hearings[i], cfg.special_meeting); });
  Output o(out_path, out);
  CsvWriter w(o.stream());
  w.row({"hearing_id", "legislator_id", "status"});
  std::size_t absent = 0, special = 0;
  for (const auto &hearing : records) {
    for (const AttendanceRecord &r : hearing) {
      absent += r.status == AttendanceStatus::absent;
      special += r.status == AttendanceStatus::not_assessed_special_meeting;
      w.row({r.hearing_id, r.legislator_id, std::string(to_string(r.status))});
    }
  }
  o.close();
  log << "legisfeat: attendance: " << hearings.size() << " hearings, " << absent << " absences, "
      << special << " not assessed (special meeting)\n";
}

struct RankOptions {
  std::string out_dir;
  std::string format = "csv";
  std::size_t top = 0;
};

inline void rank_cmd(RunConfig cfg, const RankOptions &opt, std::ostream &out, std::ostream &log) {
  using namespace detail;
  apply_overrides(cfg);
  std::vector<Hearing> hearings = load_hearings(cfg.hearings);
  OrgRegistry registry = load_orgs(cfg, log);
  std::vector<std::string> exclusions;
  if (!cfg.exclusions.empty()) exclusions = read_name_list(cfg.exclusions);

  SessionReport report;
  auto aff = cfg.no_filter ? all_of(hearings) : filter_for_affiliation(hearings, &report.affiliation_filter);
  auto eng = cfg.no_filter ? all_of(hearings)
                           : filter_for_engagement(hearings, &report.engagement_filter, cfg.min_speaking);
  if (!cfg.no_filter) {
    log_filter(log, "affiliation", report.affiliation_filter);
    log_filter(log, "engagement", report.engagement_filter);
  }

  std::vector<std::vector<std::string>> per_hearing;
  for (const auto &hearing : extract_hearings(aff, registry, cfg)) {
    std::vector<std::string> orgs;
    for (const CommentAffiliations &c : hearing)
      orgs.insert(orgs.end(), c.result.accepted.begin(), c.result.accepted.end());
    per_hearing.push_back(std::move(orgs));
  }
  report.org_rankings = org_frequency(per_hearing, exclusions);
  auto scored = score_hearings(eng, cfg);

  std::size_t org_rows = opt.top ? std::min(opt.top, report.org_rankings.size()) : report.org_rankings.size();
  std::size_t leg_rows = opt.top ? std::min(opt.top, scored.size()) : scored.size();

  if (opt.format == "table") {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < org_rows; ++i)
      rows.push_back({std::to_string(i + 1), report.org_rankings[i].organization,
                      std::to_string(report.org_rankings[i].hearings)});
    out << "Organizations by number of hearings\n";
    print_table(out, {"Ranking", "Organization Name", "Hearings"}, rows);
    rows.clear();
    for (std::size_t i = 0; i < leg_rows; ++i) {
      const auto &b = scored[i].breakdown;
      rows.push_back({std::to_string(i + 1), scored[i].name, format_fixed(b.total, 3),
                      format_fixed(b.vote_score, 3), format_fixed(b.speaking_score, 3),
                      format_fixed(b.back_and_forth_score, 3), format_fixed(b.question_score, 3)});
    }
    out << "\nLegislator engagement\n";
    print_table(out,
                {"Ranking", "Legislator Name", "Engagement Score", "Voting Score", "Speaking Score",
                 "Back and Forth Score", "Question Score"},
                rows);
    return;
  }
  if (opt.format != "csv") throw InputError("--format must be 'csv' or 'table'");
  require(opt.out_dir, "--out-dir");
  std::filesystem::path dir(opt.out_dir);
  {
    Output o((dir / "org_rankings.csv").string(), out);
    CsvWriter w(o.stream());
    w.row({"rank", "organization", "hearings"});
    for (std::size_t i = 0; i < org_rows; ++i)
      w.row({std::to_string(i + 1), report.org_rankings[i].organization,
             std::to_string(report.org_rankings[i].hearings)});
    o.close();
  }
  {
    Output o((dir / "engagement_rankings.csv").string(), out);
    scored.resize(leg_rows);
    write_engagement_csv(o.stream(), scored);
    o.close();
  }
  {
    Output o((dir / "filter_stats.csv").string(), out);
    CsvWriter w(o.stream());
    w.row({"filter", "input", "removed_no_vote", "removed_no_public_comment",
           "removed_few_speakers", "removed_floor_session", "kept"});
    for (auto [name, s] : {std::pair{"affiliation", report.affiliation_filter},
                           std::pair{"engagement", report.engagement_filter}})
      w.row({name, std::to_string(s.input), std::to_string(s.removed_no_vote),
             std::to_string(s.removed_no_public_comment), std::to_string(s.removed_few_speakers),
             std::to_string(s.removed_floor_session), std::to_string(s.kept)});
    o.close();
  }
}

struct TrainingDataOptions {
  std::string mode = "both";
  std::size_t per_comment = 100;
  std::size_t per_org = 4;
  std::string out_dir;
};

inline void gen_training_data_cmd(RunConfig cfg, const TrainingDataOptions &opt, std::ostream &out,
                                  std::ostream &log) {
  using namespace detail;
  apply_overrides(cfg);
  require(cfg.tagged, "--tagged");
  require(opt.out_dir, "--out-dir");
  if (opt.mode != "recall" && opt.mode != "precision" && opt.mode != "both")
    throw InputError("--mode must be 'recall', 'precision' or 'both'");
  std::vector<TaggedComment> comments;
  try {
    comments = read_tagged_comments(cfg.tagged);
  } catch (const ParseError &e) {
    throw InputError(cfg.tagged + ": " + e.what());
  }
  OrgRegistry registry = load_orgs(cfg, log);
  std::filesystem::path dir(opt.out_dir);
  if (opt.mode != "precision") {
    Corpus c = generate_recall_corpus(comments, registry, opt.per_comment, cfg.seed);
    Output o((dir / "recall_corpus.tsv").string(), out);
    emit_sequence_labels(c, o.stream());
    o.close();
    log << "legisfeat: recall corpus: " << c.size() << " sentences\n";
  }
  if (opt.mode != "recall") {
    Corpus c = generate_precision_corpus(comments, registry, opt.per_org, cfg.seed);
    Output o((dir / "precision_corpus.tsv").string(), out);
    emit_sequence_labels(c, o.stream());
    o.close();
    log << "legisfeat: precision corpus: " << c.size() << " sentences\n";
  }
}

struct EvaluateOptions {
  std::string extractor = "all";
  std::string out;
  std::string unresolved;
};

inline void evaluate_cmd(RunConfig cfg, const EvaluateOptions &opt, std::ostream &out,
                         std::ostream &log) {
  using namespace detail;
  apply_overrides(cfg);
  require(cfg.labeled, "--labeled");
  std::vector<AnnotatedComment> corpus;
  try {
    corpus = read_annotated_comments(cfg.labeled);
  } catch (const ParseError &e) {
    throw InputError(cfg.labeled + ": " + e.what());
  }
  std::vector<std::string> modes;
  if (opt.extractor == "all") modes = {"recall", "precision", "combined"};
  else if (opt.extractor == "recall" || opt.extractor == "precision" ||
           opt.extractor == "combined" || opt.extractor == "truth")
    modes = {opt.extractor};
  else
    throw InputError("--extractor must be one of recall, precision, combined, truth, all");

  std::optional<OrgRegistry> registry;
  if (opt.extractor != "truth") registry = load_orgs(cfg, log);

  Output o(opt.out, out);
  CsvWriter w(o.stream());
  w.row({"extractor", "comments", "true_positives", "false_negatives", "false_positives", "f1"});
  std::vector<std::pair<std::string, UnresolvedPair>> unresolved;
  for (const std::string &mode : modes) {
    Extractor fn;
    if (mode == "truth") {
      fn = [](const AnnotatedComment &c) { return c.organizations; };
    } else {
      ExtractorMode m = mode == "recall"      ? ExtractorMode::recall_only
                        : mode == "precision" ? ExtractorMode::precision_only
                                              : ExtractorMode::combined;
      fn = [&, m](const AnnotatedComment &c) {
        return extract_affiliations(c.comment, c.speaker, *registry, cfg.affiliation, m).accepted;
      };
    }
    // Per-comment work in parallel, outcomes merged in corpus order.
    auto outcomes = parallel_map(corpus.size(), cfg.workers, [&](std::size_t i) {
      return reconcile(fn(corpus[i]), corpus[i].organizations);
    });
    MatchOutcome total;
    for (const MatchOutcome &m : outcomes) total += m;
    F1Score score = f1(total);
    w.row({mode, std::to_string(corpus.size()), std::to_string(total.true_positives),
           std::to_string(total.false_negatives), std::to_string(total.false_positives),
           format_fixed(score.value, 4)});
    log << "legisfeat: evaluate " << mode << ": F1 " << format_fixed(score.value, 4)
        << (score.degenerate ? " (degenerate: nothing to score)" : "") << "\n";
    for (const UnresolvedPair &p : total.unresolved) unresolved.emplace_back(mode, p);
  }
  o.close();
  if (!opt.unresolved.empty()) {
    Output u(opt.unresolved, out);
    CsvWriter uw(u.stream());
    uw.row({"extractor", "extracted", "nearest_truth"});
    for (const auto &[mode, p] : unresolved) uw.row({mode, p.extracted, p.truth});
    u.close();
  }
}

// ---------------------------------------------------------------------------

/// Parses argv and runs one subcommand. Reports go to files or `out`,
/// diagnostics and progress to `err`.
inline int run(int argc, const char *const *argv, std::ostream &out = std::cout,
               std::ostream &err = std::cerr) {
  CLI::App app{"legisfeat: features from legislative hearing transcripts"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file; flags override it");

  RunConfig cfg;
  app.add_option("--hearings", cfg.hearings, "Hearing file (line-delimited JSON)");
  app.add_option("--orgs", cfg.orgs, "Organization registry, one name per line");
  app.add_option("--places", cfg.places, "City/county blocklist, one name per line");
  app.add_option("--weights", cfg.weights_file, "Engagement weights file (key=value)");
  app.add_option("--alpha", cfg.weights.alpha, "Vote weight")->capture_default_str();
  app.add_option("--beta", cfg.weights.beta, "Speaking weight")->capture_default_str();
  app.add_option("--gamma", cfg.weights.gamma, "Back-and-forth weight")->capture_default_str();
  app.add_option("--delta", cfg.weights.delta, "Question weight")->capture_default_str();
  app.add_option("--exclusions", cfg.exclusions, "Organization names dropped from rankings");
  app.add_option("--labeled", cfg.labeled, "Labeled data (stance TSV or annotated JSONL)");
  app.add_option("--tagged", cfg.tagged, "Tagged comments (JSONL) for training data");
  app.add_option("--cues", cfg.cues, "Affiliation cue phrases, one per line");
  app.add_option("--stop-verbs", cfg.stop_verbs, "Stop verbs for the template retest");
  app.add_option("--tree", cfg.tree, "Trained stance tree");
  app.add_option("--window", cfg.affiliation.window_words, "Introduction window in words")
      ->capture_default_str();
  app.add_option("--cue-gap", cfg.affiliation.cue_max_gap, "Max tokens between cue and registry name")
      ->capture_default_str();
  app.add_option("--special-meeting", cfg.special_meeting, "Absent fraction that marks a special meeting")
      ->capture_default_str();
  app.add_option("--speaking-min-words", cfg.engagement.speaking_min_words,
                 "A speaking instance needs more words than this")
      ->capture_default_str();
  app.add_option("--block-seconds", cfg.engagement.block_seconds, "Seconds per speaking instance")
      ->capture_default_str();
  app.add_option("--words-per-block", cfg.engagement.words_per_block,
                 "Words per speaking instance for untimed utterances")
      ->capture_default_str();
  app.add_option("--bf-min-words", cfg.engagement.back_and_forth_min_words,
                 "A back-and-forth needs more words than this")
      ->capture_default_str();
  app.add_option("--bf-words", cfg.back_and_forth_words,
                 "Back-and-forth word count: whole or legislator")
      ->capture_default_str();
  app.add_option("--min-speaking", cfg.min_speaking, "Legislators speaking for engagement hearings")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
  app.add_flag("--no-filter", cfg.no_filter, "Skip hearing filters");

  std::string out_path, rejections;
  auto *extract = app.add_subcommand("extract-affiliations", "Affiliated organizations per public comment");
  extract->add_option("--out", out_path, "Output CSV (default stdout)");
  extract->add_option("--rejections", rejections, "CSV of rejected candidates");

  StanceOptions stance;
  auto *classify = app.add_subcommand("classify-stance", "Train/evaluate the stance tree, label comments");
  classify->add_option("--test-count", stance.test_count, "Held-out samples")->capture_default_str();
  classify->add_option("--max-depth", stance.max_depth, "Tree depth limit")->capture_default_str();
  classify->add_option("--min-leaf", stance.min_leaf, "Minimum samples per leaf")->capture_default_str();
  classify->add_option("--tree-out", stance.tree_out, "Write the tree here");
  classify->add_option("--metrics", stance.metrics, "Metrics CSV");
  classify->add_option("--out", stance.out, "Per-comment CSV (default stdout)");

  auto *score = app.add_subcommand("score-engagement", "Engagement breakdown per legislator");
  score->add_option("--out", out_path, "Output CSV (default stdout)");

  auto *absences = app.add_subcommand("detect-absences", "Attendance per hearing and roster member");
  absences->add_option("--out", out_path, "Output CSV (default stdout)");

  RankOptions rank;
  auto *rank_app = app.add_subcommand("rank", "Session organization and engagement rankings");
  rank_app->add_option("--out-dir", rank.out_dir, "Directory for CSV reports");
  rank_app->add_option("--format", rank.format, "csv or table")->capture_default_str();
  rank_app->add_option("--top", rank.top, "Rows per ranking (0 = all)")->capture_default_str();

  TrainingDataOptions gen;
  auto *gen_app = app.add_subcommand("gen-training-data", "Synthetic sequence-labeling corpora");
  gen_app->add_option("--mode", gen.mode, "recall, precision or both")->capture_default_str();
  gen_app->add_option("--per-comment", gen.per_comment, "Recall copies per comment")->capture_default_str();
  gen_app->add_option("--per-org", gen.per_org, "Precision sentences per organization")->capture_default_str();
  gen_app->add_option("--out-dir", gen.out_dir, "Directory for corpora");

  EvaluateOptions eval;
  auto *eval_app = app.add_subcommand("evaluate", "Score extractors against annotated comments");
  eval_app->add_option("--extractor", eval.extractor, "recall, precision, combined, truth or all")
      ->capture_default_str();
  eval_app->add_option("--out", eval.out, "Metrics CSV (default stdout)");
  eval_app->add_option("--unresolved", eval.unresolved, "CSV of pairs for manual review");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (*extract) extract_affiliations_cmd(cfg, out_path, rejections, out, err);
    else if (*classify) classify_stance_cmd(cfg, stance, out, err);
    else if (*score) score_engagement_cmd(cfg, out_path, out, err);
    else if (*absences) detect_absences_cmd(cfg, out_path, out, err);
    else if (*rank_app) rank_cmd(cfg, rank, out, err);
    else if (*gen_app) gen_training_data_cmd(cfg, gen, out, err);
    else if (*eval_app) evaluate_cmd(cfg, eval, out, err);
  } catch (const InputError &e) {
    err << "legisfeat: error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error &e) {
    err << "legisfeat: error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception &e) {
    err << "legisfeat: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace legisfeat::cli
