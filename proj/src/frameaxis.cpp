// Copyright 2026 The Narraframe Authors.
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

#include "narraframe/frameaxis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "narraframe/text.hpp"

namespace narraframe {

Microframe make_microframe(std::string pole_neg, std::string pole_pos,
                           const EmbeddingModel& model) {
  if (pole_neg == pole_pos) throw Error("microframe poles must differ: '" + pole_neg + "'");
  Microframe frame{std::move(pole_neg), std::move(pole_pos), {}};
  frame.axis = model.vector(frame.pole_pos) - model.vector(frame.pole_neg);
  if (frame.axis.norm() == 0.0) throw Error("microframe " + frame.id() + " has a zero axis");
  return frame;
}

MicroframeSet parse_microframes(std::string_view content, const EmbeddingModel& model) {
  MicroframeSet set;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      ++set.skipped;
      continue;
    }
    std::string neg = utf8_lower(line.substr(0, tab));
    std::string pos = utf8_lower(line.substr(tab + 1));
    if (neg.empty() || pos.empty() || neg == pos || !model.contains(neg) ||
        !model.contains(pos)) {
      ++set.skipped;
      continue;
    }
    try {
      set.frames.push_back(make_microframe(std::move(neg), std::move(pos), model));
    } catch (const Error&) {
      ++set.skipped;
    }
  }
  if (set.frames.empty()) throw Error("no usable antonym pair: every pole pair was skipped");
  return set;
}

MicroframeSet load_microframes(const std::filesystem::path& path, const EmbeddingModel& model) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read antonym pair file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_microframes(buffer.str(), model);
}

const StopWords& default_stopwords() {
  static const StopWords words = {
      "a",      "about",  "above",  "after",   "again", "against", "all",    "am",
      "an",     "and",    "any",    "are",     "as",    "at",      "be",     "because",
      "been",   "before", "being",  "below",   "between", "both",  "but",    "by",
      "can",    "could",  "did",    "do",      "does",  "doing",   "down",   "during",
      "each",   "few",    "for",    "from",    "further", "had",   "has",    "have",
      "having", "he",     "her",    "here",    "hers",  "herself", "him",    "himself",
      "his",    "how",    "i",      "if",      "in",    "into",    "is",     "it",
      "it's",   "its",    "itself", "just",    "me",    "more",    "most",   "my",
      "myself", "no",     "nor",    "not",     "now",   "of",      "off",    "on",
      "once",   "only",   "or",     "other",   "our",   "ours",    "ourselves", "out",
      "over",   "own",    "rt",     "same",    "she",   "should",  "so",     "some",
      "such",   "than",   "that",   "the",     "their", "theirs",  "them",   "themselves",
      "then",   "there",  "these",  "they",    "this",  "those",   "through", "to",
      "too",    "under",  "until",  "up",      "very",  "was",     "we",     "were",
      "what",   "when",   "where",  "which",   "while", "who",     "whom",   "why",
      "will",   "with",   "would",  "you",     "your",  "yours",   "yourself", "yourselves",
      "amp",    "s",      "t",      "via",
  };
  return words;
}

const StopWords& no_stopwords() {
  static const StopWords words;
  return words;
}

namespace {

// In-vocabulary, non-stop token counts of a document, in first-seen order.
std::vector<std::pair<Eigen::Index, double>> bag(const Document& doc, const EmbeddingModel& model,
                                                 const StopWords& stopwords) {
  std::map<Eigen::Index, double> counts;
  for (const std::string& token : doc.tokens) {
    if (stopwords.count(token)) continue;
    if (auto row = model.find(token)) counts[*row] += 1.0;
  }
  return {counts.begin(), counts.end()};
}

double contribution(const EmbeddingModel& model, Eigen::Index row, const Microframe& frame) {
  return word_contribution(model.vectors().row(row).transpose(), frame.axis);
}

}  // namespace

std::optional<double> document_bias(const Document& doc, const Microframe& frame,
                                    const EmbeddingModel& model, const StopWords& stopwords) {
  const auto words = bag(doc, model, stopwords);
  if (words.empty()) return std::nullopt;
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& [row, n] : words) {
    weighted += n * contribution(model, row, frame);
    total += n;
  }
  return weighted / total;
}

BaselineBias corpus_baseline_bias(const CorpusPartition& background, const Microframe& frame,
                                  const EmbeddingModel& model, const StopWords& stopwords) {
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& [token, n] : background.term_counts()) {
    if (stopwords.count(token)) continue;
    auto row = model.find(token);
    if (!row) continue;
    weighted += static_cast<double>(n) * contribution(model, *row, frame);
    total += static_cast<double>(n);
  }
  if (total == 0.0) {
    throw Error("corpus_baseline_bias: background has no in-vocabulary token for " + frame.id());
  }
  return {frame.id(), weighted / total};
}

std::optional<double> document_intensity(const Document& doc, const Microframe& frame,
                                         const BaselineBias& baseline,
                                         const EmbeddingModel& model,
                                         const StopWords& stopwords) {
  const auto words = bag(doc, model, stopwords);
  if (words.empty()) return std::nullopt;
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& [row, n] : words) {
    const double dev = contribution(model, row, frame) - baseline.value;
    weighted += n * dev * dev;
    total += n;
  }
  return weighted / total;
}

FrameScorer::FrameScorer(const EmbeddingModel& model, std::vector<Microframe> frames,
                         const StopWords& stopwords)
    : model_(&model), frames_(std::move(frames)), stopwords_(&stopwords) {
  if (frames_.empty()) throw Error("FrameScorer: no microframes");
  unit_axes_.resize(model.dim(), static_cast<Eigen::Index>(frames_.size()));
  for (size_t f = 0; f < frames_.size(); ++f) {
    if (frames_[f].axis.size() != model.dim()) {
      throw Error("FrameScorer: axis of " + frames_[f].id() + " has the wrong dimension");
    }
    unit_axes_.col(static_cast<Eigen::Index>(f)) = frames_[f].axis / frames_[f].axis.norm();
  }
}

FrameScorer::Bag FrameScorer::bag_of(const Document& doc) const {
  return bag(doc, *model_, *stopwords_);
}

Eigen::MatrixXd FrameScorer::contributions(const std::vector<Eigen::Index>& rows) const {
  Eigen::MatrixXd unit(static_cast<Eigen::Index>(rows.size()), model_->dim());
  for (size_t i = 0; i < rows.size(); ++i) {
    auto v = model_->vectors().row(rows[i]);
    const double n = v.norm();
    if (n == 0.0) throw Error("word_contribution: zero-norm vector for '" +
                              model_->vocabulary().token(rows[i]) + "'");
    unit.row(static_cast<Eigen::Index>(i)) = v / n;
  }
  return unit * unit_axes_;
}

Eigen::RowVectorXd FrameScorer::baseline(const CorpusPartition& background) const {
  std::vector<Eigen::Index> rows;
  std::vector<double> counts;
  for (const auto& [token, n] : background.term_counts()) {
    if (stopwords_->count(token)) continue;
    if (auto row = model_->find(token)) {
      rows.push_back(*row);
      counts.push_back(static_cast<double>(n));
    }
  }
  if (rows.empty()) throw Error("baseline: background has no in-vocabulary token");
  const Eigen::MatrixXd c = contributions(rows);
  Eigen::RowVectorXd weighted = Eigen::RowVectorXd::Zero(c.cols());
  double total = 0.0;
  for (size_t i = 0; i < rows.size(); ++i) {
    weighted += counts[i] * c.row(static_cast<Eigen::Index>(i));
    total += counts[i];
  }
  return weighted / total;
}

CorpusScores FrameScorer::score(const CorpusPartition& corpus,
                                const Eigen::RowVectorXd& baseline) const {
  const auto n_frames = static_cast<Eigen::Index>(frames_.size());
  if (baseline.size() != n_frames) throw Error("score: baseline size does not match frames");

  std::vector<Bag> bags;
  bags.reserve(corpus.size());
  std::map<Eigen::Index, Eigen::Index> local;  // vocabulary row -> contribution row
  for (const Document& doc : corpus.docs()) {
    bags.push_back(bag_of(doc));
    for (const auto& [row, n] : bags.back()) local.emplace(row, 0);
  }
  std::vector<Eigen::Index> rows;
  rows.reserve(local.size());
  for (auto& [row, slot] : local) {
    slot = static_cast<Eigen::Index>(rows.size());
    rows.push_back(row);
  }
  const Eigen::MatrixXd c = rows.empty() ? Eigen::MatrixXd(0, n_frames) : contributions(rows);

  const auto n_docs = static_cast<Eigen::Index>(corpus.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CorpusScores scores{Eigen::MatrixXd::Constant(n_docs, n_frames, nan),
                      Eigen::MatrixXd::Constant(n_docs, n_frames, nan),
                      std::vector<bool>(corpus.size(), false)};
  Eigen::RowVectorXd bias(n_frames);
  Eigen::RowVectorXd moment(n_frames);
  for (Eigen::Index d = 0; d < n_docs; ++d) {
    const Bag& words = bags[static_cast<size_t>(d)];
    if (words.empty()) continue;
    bias.setZero();
    moment.setZero();
    double total = 0.0;
    for (const auto& [row, n] : words) {
      auto contrib = c.row(local.at(row));
      bias += n * contrib;
      moment += n * (contrib - baseline).array().square().matrix();
      total += n;
    }
    scores.bias.row(d) = bias / total;
    scores.intensity.row(d) = moment / total;
    scores.scored[static_cast<size_t>(d)] = true;
  }
  return scores;
}

namespace {

struct FrameMeans {
  Eigen::RowVectorXd bias;
  Eigen::RowVectorXd intensity;
  Eigen::RowVectorXi documents;
};

FrameMeans frame_means(const CorpusScores& scores) {
  const Eigen::Index f = scores.bias.cols();
  FrameMeans m{Eigen::RowVectorXd::Zero(f), Eigen::RowVectorXd::Zero(f),
               Eigen::RowVectorXi::Zero(f)};
  for (Eigen::Index d = 0; d < scores.bias.rows(); ++d) {
    if (!scores.scored[static_cast<size_t>(d)]) continue;
    m.bias += scores.bias.row(d);
    m.intensity += scores.intensity.row(d);
    m.documents.array() += 1;
  }
  for (Eigen::Index j = 0; j < f; ++j) {
    if (m.documents[j] > 0) {
      m.bias[j] /= m.documents[j];
      m.intensity[j] /= m.documents[j];
    }
  }
  return m;
}

}  // namespace

FrameDifferences differential_microframes(const CorpusPartition& corpus_a,
                                          const CorpusPartition& corpus_b,
                                          const FrameScorer& scorer,
                                          const Eigen::RowVectorXd& baseline, int k) {
  if (k < 1) throw Error("differential_microframes: k must be positive");
  if (corpus_a.empty() || corpus_b.empty()) {
    throw Error("differential_microframes: both corpora must be nonempty");
  }
  const FrameMeans a = frame_means(scorer.score(corpus_a, baseline));
  const FrameMeans b = frame_means(scorer.score(corpus_b, baseline));

  std::vector<FrameDifference> rows;
  for (size_t i = 0; i < scorer.frames().size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    if (a.documents[j] == 0 || b.documents[j] == 0) continue;
    const Microframe& frame = scorer.frames()[i];
    rows.push_back({frame.id(), frame.pole_neg, frame.pole_pos, a.bias[j], a.intensity[j],
                    b.bias[j], b.intensity[j], a.intensity[j] - b.intensity[j]});
  }

  auto ranked = [&](bool a_first) {
    std::vector<FrameDifference> list = rows;
    for (FrameDifference& r : list) {
      r.difference = a_first ? r.intensity_a - r.intensity_b : r.intensity_b - r.intensity_a;
    }
    std::sort(list.begin(), list.end(), [](const FrameDifference& x, const FrameDifference& y) {
      return x.difference != y.difference ? x.difference > y.difference
                                          : x.frame_id < y.frame_id;
    });
    if (static_cast<int>(list.size()) > k) list.resize(static_cast<size_t>(k));
    return list;
  };
  return {ranked(true), ranked(false)};
}

FrameDifferences differential_microframes(const CorpusPartition& corpus_a,
                                          const CorpusPartition& corpus_b,
                                          const std::vector<Microframe>& frames,
                                          const std::vector<BaselineBias>& baselines,
                                          const EmbeddingModel& model, int k,
                                          const StopWords& stopwords) {
  if (baselines.size() != frames.size()) {
    throw Error("differential_microframes: one baseline per frame is required");
  }
  Eigen::RowVectorXd baseline(static_cast<Eigen::Index>(frames.size()));
  for (size_t i = 0; i < frames.size(); ++i) {
    if (baselines[i].frame_id != frames[i].id()) {
      throw Error("differential_microframes: baseline " + baselines[i].frame_id +
                  " does not match frame " + frames[i].id());
    }
    baseline[static_cast<Eigen::Index>(i)] = baselines[i].value;
  }
  const FrameScorer scorer(model, frames, stopwords);
  return differential_microframes(corpus_a, corpus_b, scorer, baseline, k);
}

std::vector<ScoredDocument> top_documents(const CorpusPartition& corpus,
                                          const CorpusScores& scores, Eigen::Index frame,
                                          int n) {
  if (n < 1) throw Error("top_documents: n must be positive");
  std::vector<size_t> order;
  for (size_t d = 0; d < corpus.size(); ++d) {
    if (scores.scored[d]) order.push_back(d);
  }
  auto intensity = [&](size_t d) { return scores.intensity(static_cast<Eigen::Index>(d), frame); };
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    if (intensity(x) != intensity(y)) return intensity(x) > intensity(y);
    return corpus.docs()[x].id < corpus.docs()[y].id;
  });
  if (static_cast<int>(order.size()) > n) order.resize(static_cast<size_t>(n));
  std::vector<ScoredDocument> out;
  for (size_t d : order) {
    out.push_back({corpus.docs()[d], scores.bias(static_cast<Eigen::Index>(d), frame),
                   intensity(d)});
  }
  return out;
}

std::vector<ScoredDocument> top_documents(const CorpusPartition& corpus, const Microframe& frame,
                                          int n, const BaselineBias& baseline,
                                          const EmbeddingModel& model,
                                          const StopWords& stopwords) {
  if (corpus.empty()) throw Error("top_documents: corpus is empty");
  const FrameScorer scorer(model, {frame}, stopwords);
  Eigen::RowVectorXd b(1);
  b[0] = baseline.value;
  return top_documents(corpus, scorer.score(corpus, b), 0, n);
}

}  // namespace narraframe
