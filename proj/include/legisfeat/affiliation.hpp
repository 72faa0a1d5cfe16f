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

// Organizations a public commenter states affiliation with.
//
// Two extractors with opposite biases run over the same comment:
//
//  * recall    -- cue-phrase patterns ("on behalf of X", "with X", ...) plus a
//                 registry scan of the whole comment. Over-generates.
//  * precision -- registry entries only, inside the introduction window, and
//                 only right after a cue phrase. Misses a lot, rarely wrong.
//
// combine() accepts names both extractors agree on, then runs every other
// candidate through a fixed rule cascade:
//
//   inside window -> not the speaker's name -> template retest -> length and
//   blocklists
//
// The first failing rule is recorded as the rejection reason.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "legisfeat/gazetteer.hpp"
#include "legisfeat/stance.hpp"
#include "legisfeat/text.hpp"
#include "legisfeat/transcript.hpp"

namespace legisfeat {

struct AffiliationConfig {
  std::vector<std::string> cue_phrases = {"on behalf of", "representing", "here with",
                                          "with",         "from",         "speaking for"};
  // A candidate containing one of these is not an organization name.
  std::vector<std::string> stop_verbs = {
      "am",   "is",      "are",     "was",     "were",      "be",         "been",
      "urge", "urging",  "ask",     "asking",  "request",   "thank",      "thanks",
      "want", "would",   "like",    "have",    "has",       "had",        "do",
      "does", "did",     "speak",   "testify", "represent", "appreciate", "encourage"};
  // Capitalized words that end a captured name ("... Color and I'm in support").
  std::vector<std::string> capture_stop_words = {"i",   "im",   "id",     "ive",    "ill",
                                                 "we",  "were", "weve",   "my",     "our",
                                                 "me",  "us",   "thank",  "thanks", "please",
                                                 "yes", "no",   "hello",  "hi",     "good"};
  // Lowercase words allowed inside a name when followed by a capitalized word.
  std::vector<std::string> connectors = {"of", "for", "and", "the", "on", "de", "at", "&"};
  std::size_t window_words = 12;
  std::size_t cue_max_gap = 3;
};

enum class CandidateSource { recall, precision, registry_scan };

inline std::string_view to_string(CandidateSource s) {
  switch (s) {
    case CandidateSource::recall: return "recall";
    case CandidateSource::precision: return "precision";
    case CandidateSource::registry_scan: return "registry-scan";
  }
  return "recall";
}

struct Candidate {
  std::string surface;
  std::optional<std::string> canonical;
  std::size_t token_start = 0;
  std::size_t token_end = 0;
  CandidateSource source = CandidateSource::recall;

  /// Name reported for this candidate: the registry spelling when known.
  const std::string &name() const { return canonical ? *canonical : surface; }
  std::string key() const { return normalize_org_name(name()); }

  friend bool operator==(const Candidate &, const Candidate &) = default;
};

enum class RejectionReason { outside_window, speaker_name, template_retest_failed, blocklisted, too_short };

inline std::string_view to_string(RejectionReason r) {
  switch (r) {
    case RejectionReason::outside_window: return "outside-window";
    case RejectionReason::speaker_name: return "speaker-name";
    case RejectionReason::template_retest_failed: return "template-retest-failed";
    case RejectionReason::blocklisted: return "blocklisted";
    case RejectionReason::too_short: return "too-short";
  }
  return "blocklisted";
}

struct Rejection {
  Candidate candidate;
  RejectionReason reason;
};

struct AffiliationResult {
  std::vector<std::string> accepted;
  std::vector<Rejection> rejected;
};

/// The tokenized comment with normalized forms, shared by every stage.
class CommentView {
 public:
  explicit CommentView(std::string_view text) : tokens_(tokenize(text)) {
    norm_.reserve(tokens_.size());
    for (const Token &t : tokens_) norm_.push_back(normalize_token(t.text));
  }

  std::size_t size() const { return tokens_.size(); }
  const std::vector<Token> &tokens() const { return tokens_; }
  std::string_view raw(std::size_t i) const { return tokens_[i].text; }
  const std::string &norm(std::size_t i) const { return norm_[i]; }
  std::span<const std::string> norms() const { return norm_; }

  /// Surface text of a token range with edge punctuation removed.
  std::string surface(TokenSpan s) const {
    std::vector<std::string_view> parts;
    for (std::size_t i = s.begin; i < s.end; ++i) parts.push_back(tokens_[i].text);
    std::string joined = join(parts, " ");
    return std::string(trim_punct(joined));
  }

  /// Positions where the normalized word sequence occurs.
  std::vector<TokenSpan> find(std::span<const std::string> words) const {
    std::vector<TokenSpan> out;
    if (words.empty()) return out;
    for (std::size_t i = 0; i + words.size() <= norm_.size(); ++i) {
      bool ok = true;
      for (std::size_t k = 0; k < words.size() && ok; ++k) ok = norm_[i + k] == words[k];
      if (ok) out.push_back({i, i + words.size()});
    }
    return out;
  }

 private:
  std::vector<Token> tokens_;
  std::vector<std::string> norm_;
};

namespace affiliation_detail {

inline std::vector<std::string> normalized_words(std::string_view s) {
  std::vector<std::string> out;
  for (const Token &t : tokenize(s)) {
    std::string n = normalize_token(t.text);
    if (!n.empty()) out.push_back(std::move(n));
  }
  return out;
}

inline bool contains(const std::vector<std::string> &list, std::string_view w) {
  return std::find(list.begin(), list.end(), w) != list.end();
}

inline bool ends_with_any(std::string_view tok, std::string_view chars) {
  std::string_view t = tok;
  while (!t.empty() && (t.back() == '"' || t.back() == '\'' || t.back() == ')')) t.remove_suffix(1);
  return !t.empty() && chars.find(t.back()) != std::string_view::npos;
}

// Sentence end, but not an initialism like "A.C.L.U.".
inline bool ends_sentence(std::string_view tok) {
  if (!ends_with_any(tok, ".!?")) return false;
  std::string_view t = tok;
  t.remove_suffix(1);
  return t.find('.') == std::string_view::npos;
}

inline bool starts_position_phrase(const CommentView &c, std::size_t i) {
  return match_position_phrase(c.norms(), i).has_value();
}

struct CueMatch {
  TokenSpan span;
};

inline std::vector<CueMatch> find_cues(const CommentView &c, const AffiliationConfig &cfg) {
  std::vector<std::vector<std::string>> cues;
  for (const std::string &p : cfg.cue_phrases) {
    auto w = normalized_words(p);
    if (!w.empty()) cues.push_back(std::move(w));
  }
  std::stable_sort(cues.begin(), cues.end(),
                   [](const auto &a, const auto &b) { return a.size() > b.size(); });
  std::vector<CueMatch> out;
  for (std::size_t i = 0; i < c.size();) {
    bool hit = false;
    for (const auto &cue : cues) {
      if (i + cue.size() > c.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < cue.size() && ok; ++k) ok = c.norm(i + k) == cue[k];
      if (ok) {
        out.push_back({{i, i + cue.size()}});
        i += cue.size();
        hit = true;
        break;
      }
    }
    if (!hit) ++i;
  }
  return out;
}

inline bool name_word(const CommentView &c, std::size_t i, const AffiliationConfig &cfg) {
  return !c.norm(i).empty() && is_capitalized(c.raw(i)) &&
         !contains(cfg.capture_stop_words, c.norm(i)) && !starts_position_phrase(c, i);
}

// Captures the capitalized run that follows a cue. Commas split the run
// into separate items; connector words are kept only when a capitalized
// word follows them.
inline std::vector<TokenSpan> capture_after_cue(const CommentView &c, std::size_t pos,
                                                const AffiliationConfig &cfg) {
  std::vector<TokenSpan> items;
  auto skip_article = [&](std::size_t j) {
    while (j < c.size() && c.norm(j) == "the" && !ends_with_any(c.raw(j), ",;:.!?")) ++j;
    return j;
  };
  std::size_t j = skip_article(pos);
  std::size_t item_begin = j;
  while (j < c.size()) {
    if (name_word(c, j, cfg)) {
      ++j;
      std::string_view raw = c.raw(j - 1);
      if (ends_sentence(raw)) break;
      if (ends_with_any(raw, ",;:")) {
        items.push_back({item_begin, j});
        j = skip_article(j);
        item_begin = j;
        if (j >= c.size() || !name_word(c, j, cfg)) break;
      }
      continue;
    }
    if (j > item_begin && contains(cfg.connectors, c.norm(j)) &&
        !ends_with_any(c.raw(j), ",;:.!?")) {
      std::size_t k = j;
      while (k < c.size() && contains(cfg.connectors, c.norm(k)) &&
             !ends_with_any(c.raw(k), ",;:.!?"))
        ++k;
      if (k < c.size() && name_word(c, k, cfg)) {
        j = k;
        continue;
      }
    }
    break;
  }
  if (j > item_begin) items.push_back({item_begin, j});
  return items;
}

// Drops leading and trailing connector tokens.
inline TokenSpan trim_connectors(const CommentView &c, TokenSpan s, const AffiliationConfig &cfg) {
  while (!s.empty() && (c.norm(s.begin).empty() || contains(cfg.connectors, c.norm(s.begin))))
    ++s.begin;
  while (!s.empty() && (c.norm(s.end - 1).empty() || contains(cfg.connectors, c.norm(s.end - 1))))
    --s.end;
  return s;
}

}  // namespace affiliation_detail

/// Token spans where the speaker's name occurs: the full name, and the last
/// name alone where it is not part of a full-name occurrence.
inline std::vector<TokenSpan> speaker_name_spans(const CommentView &c, const Speaker &speaker) {
  using affiliation_detail::normalized_words;
  std::vector<TokenSpan> spans;
  auto full = normalized_words(speaker.full_name);
  if (!full.empty()) spans = c.find(full);
  auto last = normalized_words(speaker.last_name);
  if (!last.empty() && last != full) {
    for (TokenSpan s : c.find(last)) {
      bool inside = std::any_of(spans.begin(), spans.end(),
                                [&](const TokenSpan &f) { return f.overlaps(s); });
      if (!inside) spans.push_back(s);
    }
  }
  std::sort(spans.begin(), spans.end(),
            [](const TokenSpan &a, const TokenSpan &b) { return a.begin < b.begin; });
  return spans;
}

/// Prefix of the comment holding `window_words` countable words. Tokens in
/// entity spans and punctuation-only tokens are not counted. The window is
/// extended to the end of any entity span it cuts.
inline TokenSpan intro_window(const CommentView &c, std::span<const TokenSpan> entity_spans,
                              std::size_t window_words = 12) {
  std::size_t counted = 0;
  std::size_t end = c.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    bool in_entity = std::any_of(entity_spans.begin(), entity_spans.end(),
                                 [&](const TokenSpan &s) { return s.contains(i); });
    if (in_entity || c.norm(i).empty()) continue;
    if (++counted == window_words) {
      end = i + 1;
      break;
    }
  }
  for (const TokenSpan &s : entity_spans)
    if (s.begin < end && end < s.end) end = s.end;
  return {0, end};
}

inline TokenSpan intro_window(std::string_view comment, std::span<const TokenSpan> entity_spans,
                              std::size_t window_words = 12) {
  return intro_window(CommentView(comment), entity_spans, window_words);
}

inline std::vector<Candidate> extract_recall(const CommentView &c, const OrgRegistry &registry,
                                             const AffiliationConfig &cfg = {}) {
  using namespace affiliation_detail;
  std::vector<Candidate> out;
  std::vector<RegistryMatch> scan = registry_scan(c.tokens(), registry);

  for (const CueMatch &cue : find_cues(c, cfg)) {
    for (TokenSpan item : capture_after_cue(c, cue.span.end, cfg)) {
      // Registry entries inside a captured run are reported on their own,
      // the leftovers between them as further candidates.
      std::vector<TokenSpan> pieces;
      std::size_t cursor = item.begin;
      for (const RegistryMatch &m : scan) {
        if (m.span.begin < item.begin || m.span.end > item.end) continue;
        if (m.span.begin > cursor) pieces.push_back({cursor, m.span.begin});
        cursor = m.span.end;
      }
      if (cursor < item.end) pieces.push_back({cursor, item.end});
      bool had_registry = cursor != item.begin || pieces.size() != 1;
      for (TokenSpan piece : pieces) {
        TokenSpan t = had_registry ? trim_connectors(c, piece, cfg) : piece;
        if (t.empty()) continue;
        std::string surface = c.surface(t);
        if (surface.empty()) continue;
        Candidate cand;
        cand.surface = surface;
        if (const std::string *canon = registry.find(surface)) cand.canonical = *canon;
        cand.token_start = t.begin;
        cand.token_end = t.end;
        cand.source = CandidateSource::recall;
        out.push_back(std::move(cand));
      }
    }
  }
  for (const RegistryMatch &m : scan) {
    out.push_back({c.surface(m.span), m.canonical, m.span.begin, m.span.end,
                   CandidateSource::registry_scan});
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate &a, const Candidate &b) {
    return a.token_start < b.token_start;
  });
  return out;
}

inline std::vector<Candidate> extract_recall(std::string_view comment, const Speaker &,
                                             const OrgRegistry &registry,
                                             const AffiliationConfig &cfg = {}) {
  return extract_recall(CommentView(comment), registry, cfg);
}

inline std::vector<Candidate> extract_precision(const CommentView &c, const Speaker &speaker,
                                                const OrgRegistry &registry,
                                                const AffiliationConfig &cfg = {}) {
  using namespace affiliation_detail;
  std::vector<Candidate> out;
  std::vector<TokenSpan> names = speaker_name_spans(c, speaker);
  TokenSpan window = intro_window(c, names, cfg.window_words);
  std::vector<CueMatch> cues = find_cues(c, cfg);
  for (const RegistryMatch &m : registry_scan(c.tokens(), registry)) {
    if (m.span.begin >= window.end) continue;
    bool cued = std::any_of(cues.begin(), cues.end(), [&](const CueMatch &q) {
      return q.span.end <= m.span.begin && m.span.begin - q.span.end <= cfg.cue_max_gap;
    });
    if (!cued) continue;
    out.push_back(
        {c.surface(m.span), m.canonical, m.span.begin, m.span.end, CandidateSource::precision});
  }
  return out;
}

inline std::vector<Candidate> extract_precision(std::string_view comment, const Speaker &speaker,
                                                const OrgRegistry &registry,
                                                const AffiliationConfig &cfg = {}) {
  return extract_precision(CommentView(comment), speaker, registry, cfg);
}

/// Sentence used to check a candidate in an ideal affiliation context.
inline std::string retest_sentence(std::string_view candidate) {
  return "My name is Alex Rivera, with " + std::string(candidate) +
         ", and I am in support of this bill.";
}

/// Registry names: the precision extractor must accept the name inside
/// retest_sentence(). Other names get a shape test: at least one capitalized
/// content word, and no stop verb or position-phrase word.
inline bool template_retest(std::string_view candidate, const OrgRegistry &registry,
                            const AffiliationConfig &cfg = {}) {
  using namespace affiliation_detail;
  std::string key = normalize_org_name(candidate);
  if (key.empty()) return false;
  if (registry.find_normalized(key)) {
    static const Speaker kRetestSpeaker{"", "Alex Rivera", "Rivera", Role::public_commenter};
    for (const Candidate &p :
         extract_precision(retest_sentence(candidate), kRetestSpeaker, registry, cfg))
      if (p.key() == key) return true;
    return false;
  }
  CommentView view(candidate);
  bool content = false;
  for (std::size_t i = 0; i < view.size(); ++i) {
    const std::string &w = view.norm(i);
    if (w.empty()) continue;
    if (contains(cfg.stop_verbs, w)) return false;
    for (const PositionPhrase &p : position_phrases())
      for (std::string_view pw : p.words)
        if (pw == w && pw != "no" && pw != "yes") return false;
    if (is_capitalized(view.raw(i)) && !contains(cfg.connectors, w)) content = true;
  }
  return content;
}

/// Merges the two extractor outputs for one comment.
inline AffiliationResult combine(std::span<const Candidate> recall,
                                 std::span<const Candidate> precision, const CommentView &c,
                                 const Speaker &speaker, const OrgRegistry &registry,
                                 const AffiliationConfig &cfg = {}) {
  struct Accepted {
    std::string name;
    std::string key;
    std::size_t start;
  };
  std::vector<Accepted> accepted;
  auto accepted_key = [&](const std::string &key) {
    return std::any_of(accepted.begin(), accepted.end(),
                       [&](const Accepted &a) { return a.key == key; });
  };
  auto accept = [&](const Candidate &cand) {
    std::string key = cand.key();
    for (Accepted &a : accepted) {
      if (a.key == key) {
        a.start = std::min(a.start, cand.token_start);
        return;
      }
    }
    accepted.push_back({cand.name(), std::move(key), cand.token_start});
  };

  std::set<std::string> recall_keys, precision_keys;
  for (const Candidate &r : recall) recall_keys.insert(r.key());
  for (const Candidate &p : precision) precision_keys.insert(p.key());

  // (1) agreement
  for (const Candidate &p : precision)
    if (recall_keys.count(p.key())) accept(p);
  for (const Candidate &r : recall)
    if (precision_keys.count(r.key())) accept(r);

  // (2) cascade over everything else, in comment order
  std::vector<const Candidate *> rest;
  for (const Candidate &r : recall)
    if (!precision_keys.count(r.key())) rest.push_back(&r);
  for (const Candidate &p : precision)
    if (!recall_keys.count(p.key())) rest.push_back(&p);
  std::stable_sort(rest.begin(), rest.end(), [](const Candidate *a, const Candidate *b) {
    return a->token_start < b->token_start;
  });

  std::vector<TokenSpan> names = speaker_name_spans(c, speaker);
  TokenSpan window = intro_window(c, names, cfg.window_words);
  std::string full_name = normalize_org_name(speaker.full_name);
  std::string last_name = normalize_org_name(speaker.last_name);

  AffiliationResult result;
  std::set<std::pair<std::string, std::size_t>> seen_rejections;
  for (const Candidate *cand : rest) {
    std::string key = cand->key();
    if (accepted_key(key)) continue;
    std::optional<RejectionReason> reason;
    if (cand->token_start >= window.end)
      reason = RejectionReason::outside_window;
    else if (!key.empty() && (key == full_name || key == last_name))
      reason = RejectionReason::speaker_name;
    else if (!template_retest(cand->name(), registry, cfg))
      reason = RejectionReason::template_retest_failed;
    else if (key.size() <= kMaxRejectedNameLength)
      reason = RejectionReason::too_short;
    else if (is_blocklisted(key, registry))
      reason = RejectionReason::blocklisted;

    if (!reason) {
      accept(*cand);
    } else if (seen_rejections.emplace(key, cand->token_start).second) {
      result.rejected.push_back({*cand, *reason});
    }
  }

  // (3) comment order
  std::stable_sort(accepted.begin(), accepted.end(),
                   [](const Accepted &a, const Accepted &b) { return a.start < b.start; });
  for (Accepted &a : accepted) result.accepted.push_back(std::move(a.name));
  return result;
}

enum class ExtractorMode { combined, recall_only, precision_only };

/// Distinct candidate names in comment order.
inline std::vector<std::string> distinct_names(std::span<const Candidate> cands) {
  std::vector<const Candidate *> sorted;
  for (const Candidate &c : cands) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Candidate *a, const Candidate *b) {
    return a->token_start < b->token_start;
  });
  std::vector<std::string> out;
  std::set<std::string> keys;
  for (const Candidate *c : sorted)
    if (keys.insert(c->key()).second) out.push_back(c->name());
  return out;
}

/// Full extraction for one comment.
inline AffiliationResult extract_affiliations(std::string_view comment, const Speaker &speaker,
                                              const OrgRegistry &registry,
                                              const AffiliationConfig &cfg = {},
                                              ExtractorMode mode = ExtractorMode::combined) {
  CommentView view(comment);
  std::vector<Candidate> recall, precision;
  if (mode != ExtractorMode::precision_only) recall = extract_recall(view, registry, cfg);
  if (mode != ExtractorMode::recall_only) precision = extract_precision(view, speaker, registry, cfg);
  switch (mode) {
    case ExtractorMode::recall_only: return {distinct_names(recall), {}};
    case ExtractorMode::precision_only: return {distinct_names(precision), {}};
    case ExtractorMode::combined: break;
  }
  return combine(recall, precision, view, speaker, registry, cfg);
}

}  // namespace legisfeat
