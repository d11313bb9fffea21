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

#include "narraframe/overrepresentation.hpp"

#include <algorithm>
#include <limits>

#include "narraframe/error.hpp"

namespace narraframe {

LogOddsResult log_odds(const CorpusPartition& target, const CorpusPartition& other,
                       const CorpusPartition& background) {
  if (background.total_tokens() <= 0) {
    throw Error("log_odds: background corpus is empty, the prior is undefined");
  }
  LogOddsResult result;
  result.n_i = target.total_tokens();
  result.n_j = other.total_tokens();
  result.n_bg = background.total_tokens();

  std::set<std::string_view> vocabulary;
  for (const auto& [token, count] : target.term_counts()) vocabulary.insert(token);
  for (const auto& [token, count] : other.term_counts()) vocabulary.insert(token);

  const double n_i = static_cast<double>(result.n_i);
  const double n_j = static_cast<double>(result.n_j);
  const double n_bg = static_cast<double>(result.n_bg);
  for (std::string_view token : vocabulary) {
    TermStat stat;
    stat.token = std::string(token);
    stat.f_i = target.count(token);
    stat.f_j = other.count(token);
    stat.f_bg = background.count(token);
    if (stat.f_i + stat.f_bg == 0 || stat.f_j + stat.f_bg == 0) continue;
    stat.s = log_odds_ratio(static_cast<double>(stat.f_i), n_i, static_cast<double>(stat.f_j),
                            n_j, static_cast<double>(stat.f_bg), n_bg);
    result.terms.push_back(std::move(stat));
  }
  return z_scores(std::move(result));
}

LogOddsResult z_scores(LogOddsResult result) {
  for (TermStat& t : result.terms) {
    t.z = log_odds_z(t.s, static_cast<double>(t.f_i), static_cast<double>(t.f_j),
                     static_cast<double>(t.f_bg));
  }
  return result;
}

std::vector<TermStat> sorted_by_z(const LogOddsResult& result) {
  std::vector<TermStat> terms = result.terms;
  std::sort(terms.begin(), terms.end(), [](const TermStat& a, const TermStat& b) {
    if (a.z != b.z) return a.z > b.z;
    return a.token < b.token;
  });
  return terms;
}

RankedTerms top_terms(const LogOddsResult& result, int k,
                      const std::set<std::string, std::less<>>& exclusions) {
  if (k < 1) throw Error("top_terms: k must be positive");
  RankedTerms ranked;
  for (TermStat& t : sorted_by_z(result)) {
    if (exclusions.count(t.token)) continue;
    if (static_cast<int>(ranked.terms.size()) == k) break;
    ranked.terms.push_back(std::move(t));
  }
  ranked.short_list = static_cast<int>(ranked.terms.size()) < k;
  return ranked;
}

std::map<std::string, int, std::less<>> dense_ranks(const TermCounts& counts) {
  std::vector<std::pair<std::int64_t, const std::string*>> order;
  order.reserve(counts.size());
  for (const auto& [token, count] : counts) {
    if (count > 0) order.emplace_back(count, &token);
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::map<std::string, int, std::less<>> ranks;
  int rank = 0;
  std::int64_t previous = -1;
  for (const auto& [count, token] : order) {
    if (count != previous) {
      ++rank;
      previous = count;
    }
    ranks.emplace(*token, rank);
  }
  return ranks;
}

namespace {

int deepest(const std::map<std::string, int, std::less<>>& ranks) {
  int m = 0;
  for (const auto& [token, r] : ranks) m = std::max(m, r);
  return m;
}

}  // namespace

std::vector<SharedTerm> dense_rank_shared_terms(const CorpusPartition& freq_i,
                                                const CorpusPartition& freq_j,
                                                const CorpusPartition& background, int k) {
  if (k < 1) throw Error("dense_rank_shared_terms: k must be positive");
  const auto ranks_i = dense_ranks(freq_i.term_counts());
  const auto ranks_j = dense_ranks(freq_j.term_counts());
  const auto ranks_bg = dense_ranks(background.term_counts());
  const double depth_i = deepest(ranks_i);
  const double depth_j = deepest(ranks_j);
  const double depth_bg = deepest(ranks_bg);

  std::vector<SharedTerm> shared;
  for (const auto& [token, r_i] : ranks_i) {
    auto it_j = ranks_j.find(token);
    if (it_j == ranks_j.end()) continue;
    auto it_bg = ranks_bg.find(token);
    const double q_bg = it_bg == ranks_bg.end() ? std::numeric_limits<double>::infinity()
                                                : it_bg->second / depth_bg;
    if (r_i / depth_i < q_bg && it_j->second / depth_j < q_bg) {
      shared.push_back({token, r_i, it_j->second, it_bg == ranks_bg.end() ? 0 : it_bg->second});
    }
  }
  std::sort(shared.begin(), shared.end(), [](const SharedTerm& a, const SharedTerm& b) {
    const int a_best = std::min(a.rank_i, a.rank_j);
    const int b_best = std::min(b.rank_i, b.rank_j);
    if (a_best != b_best) return a_best < b_best;
    const int a_worst = std::max(a.rank_i, a.rank_j);
    const int b_worst = std::max(b.rank_i, b.rank_j);
    if (a_worst != b_worst) return a_worst < b_worst;
    return a.token < b.token;
  });
  if (static_cast<int>(shared.size()) > k) shared.resize(k);
  return shared;
}

}  // namespace narraframe
