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

// Commenter stance from explicit position phrases.
//
// A comment is reduced to five phrase counts, then labelled by a CART
// decision tree (Gini, greedy, integer thresholds) or by a fixed
// support-versus-opposition rule when no tree is available.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "legisfeat/errors.hpp"
#include "legisfeat/text.hpp"

namespace legisfeat {

enum class PhraseCategory : std::size_t {
  strong_opposition = 0,
  strong_support = 1,
  medium_opposition = 2,
  medium_support = 3,
  weak_support = 4,
};

inline constexpr std::size_t kPhraseCategories = 5;

struct PositionPhrase {
  std::vector<std::string_view> words;
  PhraseCategory category;
};

/// The position phrase lists. Multi-word phrases are listed first so that a
/// scan can take the first hit as the longest.
inline const std::vector<PositionPhrase> &position_phrases() {
  static const std::vector<PositionPhrase> table = {
      {{"no", "vote"}, PhraseCategory::medium_opposition},
      {{"nay", "vote"}, PhraseCategory::medium_opposition},
      {{"aye", "vote"}, PhraseCategory::medium_support},
      {{"yes", "vote"}, PhraseCategory::medium_support},
      {{"oppose"}, PhraseCategory::strong_opposition},
      {{"opposition"}, PhraseCategory::strong_opposition},
      {{"opposing"}, PhraseCategory::strong_opposition},
      {{"opposed"}, PhraseCategory::strong_opposition},
      {{"support"}, PhraseCategory::strong_support},
      {{"supporting"}, PhraseCategory::strong_support},
      {{"cosponsor"}, PhraseCategory::weak_support},
  };
  return table;
}

struct PhraseHit {
  std::size_t length = 0;  // words consumed
  PhraseCategory category{};
};

/// Longest position phrase starting at words[pos], if any. Words must be
/// lowercase with punctuation removed.
template <typename String>
std::optional<PhraseHit> match_position_phrase(std::span<const String> words, std::size_t pos) {
  for (const PositionPhrase &p : position_phrases()) {
    if (pos + p.words.size() > words.size()) continue;
    bool ok = true;
    for (std::size_t k = 0; k < p.words.size() && ok; ++k)
      ok = std::string_view(words[pos + k]) == p.words[k];
    if (ok) return PhraseHit{p.words.size(), p.category};
  }
  return std::nullopt;
}

/// Lowercase alphanumeric runs; every other byte is a boundary.
inline std::vector<std::string> stance_words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                 static_cast<unsigned char>(c) >= 0x80;
    if (alnum) {
      cur.push_back(text_detail::ascii_lower(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct PhraseCountVector {
  std::array<std::uint32_t, kPhraseCategories> counts{};

  std::uint32_t operator[](std::size_t i) const { return counts[i]; }
  std::uint32_t &operator[](std::size_t i) { return counts[i]; }
  std::uint32_t operator[](PhraseCategory c) const { return counts[static_cast<std::size_t>(c)]; }
  std::uint32_t &operator[](PhraseCategory c) { return counts[static_cast<std::size_t>(c)]; }

  std::uint32_t strong_opposition() const { return (*this)[PhraseCategory::strong_opposition]; }
  std::uint32_t strong_support() const { return (*this)[PhraseCategory::strong_support]; }
  std::uint32_t medium_opposition() const { return (*this)[PhraseCategory::medium_opposition]; }
  std::uint32_t medium_support() const { return (*this)[PhraseCategory::medium_support]; }
  std::uint32_t weak_support() const { return (*this)[PhraseCategory::weak_support]; }

  std::uint32_t total() const {
    std::uint32_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }

  friend bool operator==(const PhraseCountVector &, const PhraseCountVector &) = default;
};

/// Case-insensitive, word-boundary-anchored counts. Each word position
/// contributes to at most one phrase; the longest phrase wins.
inline PhraseCountVector count_phrases(std::string_view comment) {
  PhraseCountVector v;
  std::vector<std::string> words = stance_words(comment);
  std::span<const std::string> ws(words);
  for (std::size_t i = 0; i < words.size();) {
    if (auto hit = match_position_phrase(ws, i)) {
      ++v[hit->category];
      i += hit->length;
    } else {
      ++i;
    }
  }
  return v;
}

enum class StanceLabel : std::size_t { Support = 0, Oppose = 1, Neutral = 2 };

inline constexpr std::size_t kStanceLabels = 3;

inline std::string_view to_string(StanceLabel l) {
  switch (l) {
    case StanceLabel::Support: return "Support";
    case StanceLabel::Oppose: return "Oppose";
    case StanceLabel::Neutral: return "Neutral";
  }
  return "Neutral";
}

inline std::optional<StanceLabel> parse_stance_label(std::string_view s) {
  std::string low;
  for (char c : s) low.push_back(text_detail::ascii_lower(c));
  if (low == "support") return StanceLabel::Support;
  if (low == "oppose") return StanceLabel::Oppose;
  if (low == "neutral") return StanceLabel::Neutral;
  return std::nullopt;
}

inline StanceLabel rule_fallback(const PhraseCountVector &v) {
  std::uint64_t opposition = std::uint64_t{v.strong_opposition()} + v.medium_opposition();
  std::uint64_t support =
      std::uint64_t{v.strong_support()} + v.medium_support() + v.weak_support();
  if (opposition > support) return StanceLabel::Oppose;
  if (support > opposition) return StanceLabel::Support;
  return StanceLabel::Neutral;
}

struct LabeledVector {
  PhraseCountVector features;
  StanceLabel label = StanceLabel::Neutral;
};

using ClassHistogram = std::array<std::uint32_t, kStanceLabels>;

struct TreeNode {
  // Internal node: feature >= 0, count <= threshold goes left.
  int feature = -1;
  std::uint32_t threshold = 0;
  int left = -1;
  int right = -1;
  StanceLabel label = StanceLabel::Neutral;
  ClassHistogram histogram{};

  bool is_leaf() const { return feature < 0; }

  friend bool operator==(const TreeNode &, const TreeNode &) = default;
};

struct TreeParams {
  std::size_t max_depth = 5;
  std::size_t min_leaf = 1;
};

class DecisionTree {
 public:
  DecisionTree() = default;
  explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) { validate(); }

  StanceLabel classify(const PhraseCountVector &v) const {
    if (nodes_.empty()) throw InvariantError("classify on an empty decision tree");
    std::size_t i = 0;
    while (!nodes_[i].is_leaf()) {
      const TreeNode &n = nodes_[i];
      i = static_cast<std::size_t>(v[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                         : n.right);
    }
    return nodes_[i].label;
  }

  const std::vector<TreeNode> &nodes() const { return nodes_; }
  bool empty() const { return nodes_.empty(); }

  std::size_t depth() const { return nodes_.empty() ? 0 : depth_from(0); }

  std::size_t leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode &n) { return n.is_leaf(); }));
  }

  /// Indented preorder text:
  ///   stance-tree 1
  ///   split <feature> <threshold>
  ///     <left subtree>
  ///     <right subtree>
  ///   leaf <label> <n_support> <n_oppose> <n_neutral>
  void write(std::ostream &out) const {
    out << "stance-tree 1\n";
    if (!nodes_.empty()) write_node(out, 0, 0);
  }

  static DecisionTree read(std::istream &in) {
    std::string line;
    std::size_t lineno = 0;
    auto next = [&](std::vector<std::string> &fields) {
      while (std::getline(in, line)) {
        ++lineno;
        fields = split_words(line);
        if (!fields.empty()) return true;
      }
      return false;
    };
    std::vector<std::string> fields;
    if (!next(fields) || fields.size() != 2 || fields[0] != "stance-tree" || fields[1] != "1")
      throw ParseError(lineno, "expected header 'stance-tree 1'");
    std::vector<TreeNode> nodes;
    auto parse = [&](auto &&self) -> int {
      if (!next(fields)) throw ParseError(lineno, "unexpected end of tree");
      int id = static_cast<int>(nodes.size());
      nodes.emplace_back();
      try {
        if (fields[0] == "split" && fields.size() == 3) {
          int feature = std::stoi(fields[1]);
          long long threshold = std::stoll(fields[2]);
          if (feature < 0 || feature >= static_cast<int>(kPhraseCategories) || threshold < 0)
            throw ParseError(lineno, "split feature or threshold out of range");
          nodes[id].feature = feature;
          nodes[id].threshold = static_cast<std::uint32_t>(threshold);
          int l = self(self);
          int r = self(self);
          nodes[id].left = l;
          nodes[id].right = r;
          for (std::size_t k = 0; k < kStanceLabels; ++k)
            nodes[id].histogram[k] = nodes[l].histogram[k] + nodes[r].histogram[k];
          nodes[id].label = majority(nodes[id].histogram);
        } else if (fields[0] == "leaf" && fields.size() == 5) {
          auto label = parse_stance_label(fields[1]);
          if (!label) throw ParseError(lineno, "unknown leaf label '" + fields[1] + "'");
          nodes[id].label = *label;
          for (std::size_t k = 0; k < kStanceLabels; ++k) {
            long long c = std::stoll(fields[2 + k]);
            if (c < 0) throw ParseError(lineno, "negative class count");
            nodes[id].histogram[k] = static_cast<std::uint32_t>(c);
          }
        } else {
          throw ParseError(lineno, "expected 'split <feature> <threshold>' or 'leaf ...'");
        }
      } catch (const std::logic_error &) {
        throw ParseError(lineno, "malformed number in tree node");
      }
      return id;
    };
    parse(parse);
    return DecisionTree(std::move(nodes));
  }

  static StanceLabel majority(const ClassHistogram &h) {
    std::uint32_t best = std::max({h[0], h[1], h[2]});
    std::size_t winners = 0;
    std::size_t winner = 0;
    for (std::size_t k = 0; k < kStanceLabels; ++k)
      if (h[k] == best) ++winners, winner = k;
    if (winners > 1) return StanceLabel::Neutral;
    return static_cast<StanceLabel>(winner);
  }

 private:
  void validate() const {
    for (const TreeNode &n : nodes_) {
      if (n.is_leaf()) continue;
      if (n.left <= 0 || n.right <= 0 || n.left >= static_cast<int>(nodes_.size()) ||
          n.right >= static_cast<int>(nodes_.size()))
        throw InvariantError("decision tree child index out of range");
    }
  }

  std::size_t depth_from(std::size_t i) const {
    const TreeNode &n = nodes_[i];
    if (n.is_leaf()) return 0;
    return 1 + std::max(depth_from(static_cast<std::size_t>(n.left)),
                        depth_from(static_cast<std::size_t>(n.right)));
  }

  void write_node(std::ostream &out, std::size_t i, std::size_t depth) const {
    const TreeNode &n = nodes_[i];
    out << std::string(2 * depth, ' ');
    if (n.is_leaf()) {
      out << "leaf " << to_string(n.label) << ' ' << n.histogram[0] << ' ' << n.histogram[1] << ' '
          << n.histogram[2] << '\n';
      return;
    }
    out << "split " << n.feature << ' ' << n.threshold << '\n';
    write_node(out, static_cast<std::size_t>(n.left), depth + 1);
    write_node(out, static_cast<std::size_t>(n.right), depth + 1);
  }

  std::vector<TreeNode> nodes_;
};

namespace stance_detail {

using Wide = unsigned __int128;

inline ClassHistogram histogram_of(std::span<const LabeledVector> samples,
                                   std::span<const std::size_t> idx) {
  ClassHistogram h{};
  for (std::size_t i : idx) ++h[static_cast<std::size_t>(samples[i].label)];
  return h;
}

inline std::uint64_t sum_sq(const ClassHistogram &h) {
  std::uint64_t s = 0;
  for (auto c : h) s += std::uint64_t{c} * c;
  return s;
}

// Gini impurity of a split is n_total minus the "purity" score
//   P = sq(left)/n_left + sq(right)/n_right,
// so minimizing impurity is maximizing P. P is kept as an exact fraction.
struct Purity {
  Wide num = 0;
  Wide den = 1;
};

inline bool greater(const Purity &a, const Purity &b) { return a.num * b.den > b.num * a.den; }

struct Builder {
  std::span<const LabeledVector> samples;
  TreeParams params;
  std::vector<TreeNode> nodes;

  int build(std::vector<std::size_t> idx, std::size_t depth) {
    int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    ClassHistogram h = histogram_of(samples, idx);
    nodes[id].histogram = h;
    nodes[id].label = DecisionTree::majority(h);

    std::size_t classes_present =
        static_cast<std::size_t>(std::count_if(h.begin(), h.end(), [](auto c) { return c > 0; }));
    if (classes_present <= 1 || depth >= params.max_depth) return id;

    const std::size_t n = idx.size();
    // Parent purity sq/n; a split must strictly improve on it.
    Purity best{Wide{sum_sq(h)}, Wide{n}};
    int best_feature = -1;
    std::uint32_t best_threshold = 0;

    for (std::size_t f = 0; f < kPhraseCategories; ++f) {
      std::vector<std::uint32_t> values;
      values.reserve(n);
      for (std::size_t i : idx) values.push_back(samples[i].features[f]);
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        std::uint32_t t = static_cast<std::uint32_t>(
            (std::uint64_t{values[k]} + values[k + 1]) / 2);
        ClassHistogram lh{}, rh{};
        std::size_t nl = 0, nr = 0;
        for (std::size_t i : idx) {
          std::size_t label = static_cast<std::size_t>(samples[i].label);
          if (samples[i].features[f] <= t) {
            ++lh[label];
            ++nl;
          } else {
            ++rh[label];
            ++nr;
          }
        }
        if (nl < params.min_leaf || nr < params.min_leaf) continue;
        Purity p{Wide{sum_sq(lh)} * nr + Wide{sum_sq(rh)} * nl, Wide{nl} * nr};
        if (greater(p, best)) {
          best = p;
          best_feature = static_cast<int>(f);
          best_threshold = t;
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<std::size_t> left, right;
    for (std::size_t i : idx)
      (samples[i].features[static_cast<std::size_t>(best_feature)] <= best_threshold ? left : right)
          .push_back(i);
    nodes[id].feature = best_feature;
    nodes[id].threshold = best_threshold;
    int l = build(std::move(left), depth + 1);
    int r = build(std::move(right), depth + 1);
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
  }
};

}  // namespace stance_detail

/// Greedy top-down CART on Gini impurity. Candidate thresholds are the
/// floored midpoints between consecutive distinct values at a node. Ties go
/// to the lower feature index, then the lower threshold. Leaves take the
/// majority class; a tied majority is Neutral.
inline DecisionTree train_tree(std::span<const LabeledVector> samples, TreeParams params = {}) {
  if (samples.empty()) throw InputError("train_tree: no training samples");
  if (params.min_leaf == 0) params.min_leaf = 1;
  stance_detail::Builder b{samples, params, {}};
  std::vector<std::size_t> idx(samples.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  b.build(std::move(idx), 0);
  return DecisionTree(std::move(b.nodes));
}

struct LabeledComment {
  std::string comment;
  StanceLabel label = StanceLabel::Neutral;
};

/// Reads "comment<TAB>label" lines. The label is the text after the last tab.
inline std::vector<LabeledComment> read_stance_samples(std::istream &in) {
  std::vector<LabeledComment> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw ParseError(lineno, "expected 'comment<TAB>label'");
    auto label = parse_stance_label(line.substr(tab + 1));
    if (!label)
      throw ParseError(lineno, "unknown stance label '" + line.substr(tab + 1) + "'");
    out.push_back({line.substr(0, tab), *label});
  }
  return out;
}

inline std::vector<LabeledComment> read_stance_samples(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file '" + path + "'");
  return read_stance_samples(in);
}

inline std::vector<LabeledVector> vectorize(std::span<const LabeledComment> comments) {
  std::vector<LabeledVector> out;
  out.reserve(comments.size());
  for (const LabeledComment &c : comments) out.push_back({count_phrases(c.comment), c.label});
  return out;
}

struct StanceMetrics {
  std::size_t samples = 0;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  std::array<double, kStanceLabels> per_class_f1{};
};

/// Macro-averaged F1 over the labels that occur in either the truth or the
/// predictions.
inline StanceMetrics stance_metrics(std::span<const StanceLabel> truth,
                                    std::span<const StanceLabel> predicted) {
  if (truth.size() != predicted.size())
    throw InvariantError("stance_metrics: truth and prediction lengths differ");
  StanceMetrics m;
  m.samples = truth.size();
  if (truth.empty()) return m;
  std::array<std::size_t, kStanceLabels> tp{}, fp{}, fn{};
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto t = static_cast<std::size_t>(truth[i]);
    auto p = static_cast<std::size_t>(predicted[i]);
    if (t == p) {
      ++tp[t];
      ++correct;
    } else {
      ++fp[p];
      ++fn[t];
    }
  }
  m.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < kStanceLabels; ++k) {
    std::size_t denom = 2 * tp[k] + fp[k] + fn[k];
    if (denom == 0) continue;
    m.per_class_f1[k] = 2.0 * static_cast<double>(tp[k]) / static_cast<double>(denom);
    sum += m.per_class_f1[k];
    ++used;
  }
  m.macro_f1 = used ? sum / static_cast<double>(used) : 0.0;
  return m;
}

}  // namespace legisfeat
