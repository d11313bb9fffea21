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

#ifndef NARRAFRAME_EMBEDDING_HPP_
#define NARRAFRAME_EMBEDDING_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "narraframe/corpus.hpp"

namespace narraframe {

// Token <-> row index.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> tokens);

  std::optional<Eigen::Index> find(std::string_view token) const;
  bool contains(std::string_view token) const { return find(token).has_value(); }
  const std::string& token(Eigen::Index i) const { return tokens_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(tokens_.size()); }

 private:
  struct Hash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Eigen::Index, Hash, std::equal_to<>> index_;
};

struct CooccurrenceEntry {
  std::int32_t row = 0;
  std::int32_t col = 0;
  double value = 0.0;
};

// Sparse symmetric table of distance-weighted co-occurrence counts.
class CooccurrenceTable {
 public:
  CooccurrenceTable(Vocabulary vocabulary, std::vector<CooccurrenceEntry> entries);

  const Vocabulary& vocabulary() const { return vocabulary_; }
  // Nonzero cells in (row, col) order; both (i, j) and (j, i) are present.
  const std::vector<CooccurrenceEntry>& entries() const { return entries_; }
  double at(Eigen::Index row, Eigen::Index col) const;
  double at(std::string_view a, std::string_view b) const;
  bool empty() const { return entries_.empty(); }

 private:
  Vocabulary vocabulary_;
  std::vector<CooccurrenceEntry> entries_;
};

// Every ordered token pair at distance 1..window inside one document adds
// 1/distance. Tokens rarer than min_count are removed before windowing.
// Vocabulary order is frequency descending, then token.
CooccurrenceTable build_cooccurrence(const CorpusPartition& corpus, int window = 10,
                                     int min_count = 5);

// Immutable token -> vector map. Rows of `vectors` follow vocabulary order.
class EmbeddingModel {
 public:
  EmbeddingModel(std::vector<std::string> tokens, Eigen::MatrixXd vectors);

  Eigen::Index dim() const { return vectors_.cols(); }
  Eigen::Index size() const { return vectors_.rows(); }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  const Eigen::MatrixXd& vectors() const { return vectors_; }
  std::optional<Eigen::Index> find(std::string_view token) const {
    return vocabulary_.find(token);
  }
  bool contains(std::string_view token) const { return vocabulary_.contains(token); }
  // Throws Error naming the token when it is out of vocabulary.
  Eigen::VectorXd vector(std::string_view token) const;

 private:
  Vocabulary vocabulary_;
  Eigen::MatrixXd vectors_;
};

struct GloveParams {
  int dim = 300;
  int epochs = 500;
  double x_max = 100.0;
  double alpha = 0.75;
  double learning_rate = 0.05;
  std::uint64_t seed = 1;
};

// Raw trainable state: word and context vectors and their biases.
struct GloveParameters {
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Matrix main;
  Matrix context;
  Eigen::VectorXd main_bias;
  Eigen::VectorXd context_bias;
};

struct GloveResult {
  EmbeddingModel model;            // main + context
  GloveParameters parameters;
  std::vector<double> epoch_loss;  // Σ f(X)·(w·w̃ + b + b̃ − ln X)² accumulated per epoch
};

// Called after every epoch with the 1-based epoch number.
using GloveEpochCallback = std::function<void(int, const GloveParameters&)>;

// GloVe weighting f(x) = min(1, (x / x_max)^alpha).
inline double glove_weight(double x, double x_max, double alpha) {
  return x < x_max ? std::pow(x / x_max, alpha) : 1.0;
}

// Weighted least squares objective over every table entry.
double glove_objective(const CooccurrenceTable& cooc, const GloveParameters& parameters,
                       double x_max, double alpha);

// Trains with AdaGrad over a seeded shuffle of the table each epoch.
// Single-threaded and bitwise deterministic for a given seed. Throws Error
// if the loss becomes non-finite.
GloveResult train_glove(const CooccurrenceTable& cooc, const GloveParams& params,
                        const GloveEpochCallback& on_epoch = {});

// Vector text format: `token v1 ... vd` per line, no header.
EmbeddingModel load_embeddings(const std::filesystem::path& path);
EmbeddingModel parse_embeddings(std::string_view content, std::string_view source);
// Values are written in shortest round-trip form, so load(save(m)) == m bitwise.
void save_embeddings(const EmbeddingModel& model, const std::filesystem::path& path);
std::string format_embeddings(const EmbeddingModel& model);

struct Neighbor {
  std::string token;
  double similarity = 0.0;
};

// Top-k by cosine similarity, excluding the query token; ties by token.
std::vector<Neighbor> nearest_neighbors(const EmbeddingModel& model, std::string_view query,
                                        int k);
std::vector<Neighbor> nearest_neighbors(const EmbeddingModel& model,
                                        const Eigen::VectorXd& query, int k);

// Seeds (lowercased, in vocabulary) plus each seed's top-k neighbors,
// deduplicated, ordered by best similarity. Throws if every seed is OOV.
std::vector<std::string> expand_party_terms(const EmbeddingModel& model,
                                            const std::vector<std::string>& seeds, int k);

}  // namespace narraframe

#endif  // NARRAFRAME_EMBEDDING_HPP_
