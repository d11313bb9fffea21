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

#ifndef NARRAFRAME_FRAMEAXIS_HPP_
#define NARRAFRAME_FRAMEAXIS_HPP_

#include <Eigen/Dense>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "narraframe/corpus.hpp"
#include "narraframe/embedding.hpp"
#include "narraframe/error.hpp"

namespace narraframe {

// An antonym pair used as a semantic axis: axis = v(pole_pos) - v(pole_neg).
struct Microframe {
  std::string pole_neg;
  std::string pole_pos;
  Eigen::VectorXd axis;

  // "pole_neg:pole_pos"
  std::string id() const { return pole_neg + ":" + pole_pos; }
};

// Throws Error when a pole is OOV, the poles coincide, or the axis is zero.
Microframe make_microframe(std::string pole_neg, std::string pole_pos,
                           const EmbeddingModel& model);

struct MicroframeSet {
  std::vector<Microframe> frames;
  std::size_t skipped = 0;  // OOV poles, identical poles, malformed lines
};

// Antonym pair file: `pole_neg<TAB>pole_pos` per line.
MicroframeSet load_microframes(const std::filesystem::path& path, const EmbeddingModel& model);
MicroframeSet parse_microframes(std::string_view content, const EmbeddingModel& model);

// Cosine of the angle between a word vector and a microframe axis.
template <typename Word, typename Axis>
double word_contribution(const Eigen::MatrixBase<Word>& word, const Eigen::MatrixBase<Axis>& axis) {
  if (word.size() != axis.size()) throw Error("word_contribution: dimension mismatch");
  const double wn = word.norm();
  const double an = axis.norm();
  if (wn == 0.0 || an == 0.0) throw Error("word_contribution: zero-norm vector");
  return word.dot(axis) / (wn * an);
}

using StopWords = std::unordered_set<std::string>;

// Common English function words, excluded from frame scores by default.
const StopWords& default_stopwords();
// An empty list, for scoring every in-vocabulary token.
const StopWords& no_stopwords();

// Token-count-weighted mean contribution of a document's in-vocabulary,
// non-stop tokens. Empty when no token qualifies.
std::optional<double> document_bias(const Document& doc, const Microframe& frame,
                                    const EmbeddingModel& model,
                                    const StopWords& stopwords = default_stopwords());

struct BaselineBias {
  std::string frame_id;
  double value = 0.0;
};

// Pooled weighted mean contribution over all tokens of the background.
// Throws Error when no token qualifies.
BaselineBias corpus_baseline_bias(const CorpusPartition& background, const Microframe& frame,
                                  const EmbeddingModel& model,
                                  const StopWords& stopwords = default_stopwords());

// Second moment of contributions around the baseline bias.
std::optional<double> document_intensity(const Document& doc, const Microframe& frame,
                                         const BaselineBias& baseline,
                                         const EmbeddingModel& model,
                                         const StopWords& stopwords = default_stopwords());

// Per-document scores for many frames at once. Rows follow corpus.docs();
// unscored rows (no qualifying token) hold NaN.
struct CorpusScores {
  Eigen::MatrixXd bias;
  Eigen::MatrixXd intensity;
  std::vector<bool> scored;
};

// Batch scorer: precomputes the contribution of every needed token to every
// frame in one matrix product.
class FrameScorer {
 public:
  FrameScorer(const EmbeddingModel& model, std::vector<Microframe> frames,
              const StopWords& stopwords = default_stopwords());

  const std::vector<Microframe>& frames() const { return frames_; }

  // Baseline bias per frame over the pooled background tokens.
  Eigen::RowVectorXd baseline(const CorpusPartition& background) const;
  CorpusScores score(const CorpusPartition& corpus, const Eigen::RowVectorXd& baseline) const;

 private:
  using Bag = std::vector<std::pair<Eigen::Index, double>>;
  Bag bag_of(const Document& doc) const;
  // Contribution rows for the given vocabulary rows.
  Eigen::MatrixXd contributions(const std::vector<Eigen::Index>& rows) const;

  const EmbeddingModel* model_;
  std::vector<Microframe> frames_;
  const StopWords* stopwords_;
  Eigen::MatrixXd unit_axes_;  // d × F
};

inline constexpr int kDefaultDifferentialFrames = 10;
inline constexpr int kDefaultTopDocuments = 3;

struct FrameDifference {
  std::string frame_id;
  std::string pole_neg;
  std::string pole_pos;
  double bias_a = 0.0;
  double intensity_a = 0.0;
  double bias_b = 0.0;
  double intensity_b = 0.0;
  double difference = 0.0;  // of mean intensities, in the list's direction
};

struct FrameDifferences {
  std::vector<FrameDifference> a_over_b;
  std::vector<FrameDifference> b_over_a;
};

// Mean document bias and intensity per corpus (documents weighted
// equally, unscored ones left out); the k frames with the largest
// intensity gap in each direction, ties by frame id. Frames that score no
// document in one of the corpora are left out.
FrameDifferences differential_microframes(const CorpusPartition& corpus_a,
                                          const CorpusPartition& corpus_b,
                                          const FrameScorer& scorer,
                                          const Eigen::RowVectorXd& baseline, int k);

FrameDifferences differential_microframes(const CorpusPartition& corpus_a,
                                          const CorpusPartition& corpus_b,
                                          const std::vector<Microframe>& frames,
                                          const std::vector<BaselineBias>& baselines,
                                          const EmbeddingModel& model, int k,
                                          const StopWords& stopwords = default_stopwords());

struct ScoredDocument {
  Document doc;
  double bias = 0.0;
  double intensity = 0.0;
};

// The n highest-intensity documents for a frame column of precomputed
// scores; ties by document id.
std::vector<ScoredDocument> top_documents(const CorpusPartition& corpus,
                                          const CorpusScores& scores, Eigen::Index frame, int n);

std::vector<ScoredDocument> top_documents(const CorpusPartition& corpus, const Microframe& frame,
                                          int n, const BaselineBias& baseline,
                                          const EmbeddingModel& model,
                                          const StopWords& stopwords = default_stopwords());

}  // namespace narraframe

#endif  // NARRAFRAME_FRAMEAXIS_HPP_
