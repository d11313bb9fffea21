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

#include "narraframe/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "narraframe/error.hpp"
#include "narraframe/random.hpp"
#include "narraframe/text.hpp"

namespace narraframe {

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  index_.reserve(tokens_.size());
  for (size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], static_cast<Eigen::Index>(i)).second) {
      throw Error("duplicate vocabulary token '" + tokens_[i] + "'");
    }
  }
}

std::optional<Eigen::Index> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CooccurrenceTable::CooccurrenceTable(Vocabulary vocabulary,
                                     std::vector<CooccurrenceEntry> entries)
    : vocabulary_(std::move(vocabulary)), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
}

double CooccurrenceTable::at(Eigen::Index row, Eigen::Index col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col},
                             [](const CooccurrenceEntry& e, const auto& key) {
                               return e.row != key.first ? e.row < key.first
                                                         : e.col < key.second;
                             });
  if (it == entries_.end() || it->row != row || it->col != col) return 0.0;
  return it->value;
}

double CooccurrenceTable::at(std::string_view a, std::string_view b) const {
  auto i = vocabulary_.find(a);
  auto j = vocabulary_.find(b);
  if (!i || !j) return 0.0;
  return at(*i, *j);
}

CooccurrenceTable build_cooccurrence(const CorpusPartition& corpus, int window, int min_count) {
  if (corpus.total_tokens() == 0) throw Error("build_cooccurrence: corpus is empty");
  if (window < 1) throw Error("build_cooccurrence: window must be positive");

  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (const auto& [token, count] : corpus.term_counts()) {
    if (count >= min_count) kept.emplace_back(token, count);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens;
  tokens.reserve(kept.size());
  for (auto& [token, count] : kept) tokens.push_back(std::move(token));
  Vocabulary vocabulary(std::move(tokens));

  const auto v = static_cast<std::uint64_t>(vocabulary.size());
  std::unordered_map<std::uint64_t, double> cells;
  std::vector<std::int32_t> ids;
  for (const Document& doc : corpus.docs()) {
    ids.clear();
    for (const std::string& token : doc.tokens) {
      if (auto id = vocabulary.find(token)) ids.push_back(static_cast<std::int32_t>(*id));
    }
    for (size_t p = 0; p < ids.size(); ++p) {
      const size_t last = std::min(ids.size(), p + static_cast<size_t>(window) + 1);
      for (size_t q = p + 1; q < last; ++q) {
        const double w = 1.0 / static_cast<double>(q - p);
        cells[static_cast<std::uint64_t>(ids[p]) * v + ids[q]] += w;
        cells[static_cast<std::uint64_t>(ids[q]) * v + ids[p]] += w;
      }
    }
  }

  std::vector<CooccurrenceEntry> entries;
  entries.reserve(cells.size());
  for (const auto& [key, value] : cells) {
    entries.push_back({static_cast<std::int32_t>(key / v), static_cast<std::int32_t>(key % v),
                       value});
  }
  return CooccurrenceTable(std::move(vocabulary), std::move(entries));
}

EmbeddingModel::EmbeddingModel(std::vector<std::string> tokens, Eigen::MatrixXd vectors)
    : vocabulary_(std::move(tokens)), vectors_(std::move(vectors)) {
  if (vocabulary_.size() == 0) throw Error("embedding model has an empty vocabulary");
  if (vocabulary_.size() != vectors_.rows()) {
    throw Error("embedding model: token count does not match vector rows");
  }
  if (vectors_.cols() < 1) throw Error("embedding model: dimension must be positive");
  if (!vectors_.allFinite()) throw Error("embedding model contains NaN or Inf components");
}

Eigen::VectorXd EmbeddingModel::vector(std::string_view token) const {
  auto i = find(token);
  if (!i) throw Error("token '" + std::string(token) + "' is not in the embedding vocabulary");
  return vectors_.row(*i).transpose();
}

double glove_objective(const CooccurrenceTable& cooc, const GloveParameters& parameters,
                       double x_max, double alpha) {
  double total = 0.0;
  for (const CooccurrenceEntry& e : cooc.entries()) {
    const double diff = parameters.main.row(e.row).dot(parameters.context.row(e.col)) +
                        parameters.main_bias[e.row] + parameters.context_bias[e.col] -
                        std::log(e.value);
    total += glove_weight(e.value, x_max, alpha) * diff * diff;
  }
  return total;
}

GloveResult train_glove(const CooccurrenceTable& cooc, const GloveParams& params,
                        const GloveEpochCallback& on_epoch) {
  if (cooc.empty()) throw Error("train_glove: co-occurrence table is empty");
  if (params.dim < 2) throw Error("train_glove: dimension must be at least 2");
  if (params.epochs < 1) throw Error("train_glove: epochs must be positive");

  const Eigen::Index v = cooc.vocabulary().size();
  const Eigen::Index d = params.dim;
  Rng rng(params.seed);
  auto init = [&](Eigen::Index rows, Eigen::Index cols) {
    GloveParameters::Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        m(i, j) = (uniform01(rng) - 0.5) / static_cast<double>(d);
      }
    }
    return m;
  };

  GloveParameters p;
  p.main = init(v, d);
  p.context = init(v, d);
  p.main_bias = init(v, 1).col(0);
  p.context_bias = init(v, 1).col(0);

  // AdaGrad accumulators start at 1.
  GloveParameters::Matrix sq_main = GloveParameters::Matrix::Ones(v, d);
  GloveParameters::Matrix sq_context = GloveParameters::Matrix::Ones(v, d);
  Eigen::VectorXd sq_main_bias = Eigen::VectorXd::Ones(v);
  Eigen::VectorXd sq_context_bias = Eigen::VectorXd::Ones(v);

  std::vector<std::uint32_t> order(cooc.entries().size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);

  std::vector<double> log_x(cooc.entries().size());
  std::vector<double> weight(cooc.entries().size());
  for (size_t i = 0; i < order.size(); ++i) {
    log_x[i] = std::log(cooc.entries()[i].value);
    weight[i] = glove_weight(cooc.entries()[i].value, params.x_max, params.alpha);
  }

  std::vector<double> losses;
  losses.reserve(static_cast<size_t>(params.epochs));
  Eigen::RowVectorXd grad_main(d);
  Eigen::RowVectorXd grad_context(d);
  for (int epoch = 1; epoch <= params.epochs; ++epoch) {
    shuffle(order, rng);
    double loss = 0.0;
    for (std::uint32_t k : order) {
      const CooccurrenceEntry& e = cooc.entries()[k];
      auto w = p.main.row(e.row);
      auto c = p.context.row(e.col);
      const double diff =
          w.dot(c) + p.main_bias[e.row] + p.context_bias[e.col] - log_x[k];
      double fdiff = weight[k] * diff;
      loss += fdiff * diff;
      fdiff *= params.learning_rate;

      grad_main = fdiff * c;
      grad_context = fdiff * w;
      w.array() -= grad_main.array() / sq_main.row(e.row).array().sqrt();
      c.array() -= grad_context.array() / sq_context.row(e.col).array().sqrt();
      sq_main.row(e.row).array() += grad_main.array().square();
      sq_context.row(e.col).array() += grad_context.array().square();

      p.main_bias[e.row] -= fdiff / std::sqrt(sq_main_bias[e.row]);
      p.context_bias[e.col] -= fdiff / std::sqrt(sq_context_bias[e.col]);
      sq_main_bias[e.row] += fdiff * fdiff;
      sq_context_bias[e.col] += fdiff * fdiff;
    }
    if (!std::isfinite(loss)) {
      throw Error("train_glove: loss became non-finite in epoch " + std::to_string(epoch) +
                  "; try a smaller learning rate");
    }
    losses.push_back(loss);
    if (on_epoch) on_epoch(epoch, p);
  }

  Eigen::MatrixXd vectors = p.main + p.context;
  return GloveResult{EmbeddingModel(cooc.vocabulary().tokens(), std::move(vectors)),
                     std::move(p), std::move(losses)};
}

EmbeddingModel parse_embeddings(std::string_view content, std::string_view source) {
  std::vector<std::string> tokens;
  std::vector<double> values;
  Eigen::Index dim = -1;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < content.size()) {
    size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    std::vector<std::string> fields = split_whitespace(line);
    const auto n = static_cast<Eigen::Index>(fields.size()) - 1;
    auto where = [&] { return std::string(source) + ":" + std::to_string(line_no); };
    if (n < 1) throw IoError(where() + ": row has no vector components");
    if (dim < 0) dim = n;
    if (n != dim) {
      throw IoError(where() + ": expected " + std::to_string(dim) + " components, found " +
                    std::to_string(n));
    }
    for (Eigen::Index i = 1; i <= n; ++i) {
      const std::string& f = fields[static_cast<size_t>(i)];
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), x);
      if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(x)) {
        throw IoError(where() + ": bad vector component '" + f + "'");
      }
      values.push_back(x);
    }
    tokens.push_back(std::move(fields[0]));
  }
  if (tokens.empty()) throw IoError(std::string(source) + ": no vectors found");

  Eigen::MatrixXd vectors(static_cast<Eigen::Index>(tokens.size()), dim);
  for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) vectors(r, c) = values[static_cast<size_t>(r * dim + c)];
  }
  try {
    return EmbeddingModel(std::move(tokens), std::move(vectors));
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw IoError(std::string(source) + ": " + e.what());
  }
}

EmbeddingModel load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read vector file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_embeddings(buffer.str(), path.string());
}

std::string format_embeddings(const EmbeddingModel& model) {
  std::string out;
  char buf[32];
  for (Eigen::Index r = 0; r < model.size(); ++r) {
    out += model.vocabulary().token(r);
    for (Eigen::Index c = 0; c < model.dim(); ++c) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, model.vectors()(r, c));
      out.push_back(' ');
      out.append(buf, ptr);
    }
    out.push_back('\n');
  }
  return out;
}

void save_embeddings(const EmbeddingModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write vector file " + path.string());
  out << format_embeddings(model);
  if (!out) throw IoError("failed writing vector file " + path.string());
}

namespace {

std::vector<Neighbor> rank_neighbors(const EmbeddingModel& model, const Eigen::VectorXd& query,
                                     std::optional<Eigen::Index> skip, int k) {
  if (k < 1) throw Error("nearest_neighbors: k must be positive");
  if (query.size() != model.dim()) {
    throw Error("nearest_neighbors: query has dimension " + std::to_string(query.size()) +
                ", model has " + std::to_string(model.dim()));
  }
  const double qn = query.norm();
  if (qn == 0.0) throw Error("nearest_neighbors: query vector has zero norm");

  const Eigen::VectorXd dots = model.vectors() * query;
  const Eigen::VectorXd norms = model.vectors().rowwise().norm();
  std::vector<Neighbor> all;
  all.reserve(static_cast<size_t>(model.size()));
  for (Eigen::Index i = 0; i < model.size(); ++i) {
    if ((skip && *skip == i) || norms[i] == 0.0) continue;
    all.push_back({model.vocabulary().token(i), dots[i] / (norms[i] * qn)});
  }
  auto better = [](const Neighbor& a, const Neighbor& b) {
    return a.similarity != b.similarity ? a.similarity > b.similarity : a.token < b.token;
  };
  const size_t n = std::min(all.size(), static_cast<size_t>(k));
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(), better);
  all.resize(n);
  return all;
}

}  // namespace

std::vector<Neighbor> nearest_neighbors(const EmbeddingModel& model, std::string_view query,
                                        int k) {
  auto i = model.find(query);
  if (!i) throw Error("nearest_neighbors: token '" + std::string(query) + "' is out of vocabulary");
  return rank_neighbors(model, model.vectors().row(*i).transpose(), i, k);
}

std::vector<Neighbor> nearest_neighbors(const EmbeddingModel& model,
                                        const Eigen::VectorXd& query, int k) {
  return rank_neighbors(model, query, std::nullopt, k);
}

std::vector<std::string> expand_party_terms(const EmbeddingModel& model,
                                            const std::vector<std::string>& seeds, int k) {
  std::map<std::string, double> best;
  auto offer = [&](const std::string& token, double similarity) {
    auto [it, inserted] = best.emplace(token, similarity);
    if (!inserted) it->second = std::max(it->second, similarity);
  };
  bool any = false;
  for (const std::string& raw : seeds) {
    const std::string seed = utf8_lower(raw);
    if (!model.contains(seed)) continue;
    any = true;
    offer(seed, 1.0);
    for (const Neighbor& n : nearest_neighbors(model, seed, k)) offer(utf8_lower(n.token), n.similarity);
  }
  if (!any) throw Error("expand_party_terms: none of the seed terms is in the vocabulary");

  std::vector<std::pair<std::string, double>> ranked(best.begin(), best.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (auto& [token, sim] : ranked) out.push_back(std::move(token));
  return out;
}

}  // namespace narraframe
