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

#ifndef NARRAFRAME_OVERREPRESENTATION_HPP_
#define NARRAFRAME_OVERREPRESENTATION_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "narraframe/corpus.hpp"

namespace narraframe {

// Log-odds ratio of a word between corpora i and j, smoothed with
// background counts as an informative Dirichlet prior. Natural log.
inline double log_odds_ratio(double f_i, double n_i, double f_j, double n_j, double f_bg,
                             double n_bg);

// z-score of a log-odds ratio against its estimated variance.
inline double log_odds_z(double s, double f_i, double f_j, double f_bg);

struct TermStat {
  std::string token;
  double s = 0.0;
  double z = 0.0;
  std::int64_t f_i = 0;
  std::int64_t f_j = 0;
  std::int64_t f_bg = 0;
};

struct LogOddsResult {
  std::vector<TermStat> terms;  // sorted by token
  std::int64_t n_i = 0;
  std::int64_t n_j = 0;
  std::int64_t n_bg = 0;
};

// Scores every token of target ∪ other that has nonzero smoothed counts on
// both sides; z is filled in as well. Throws Error on an empty background.
LogOddsResult log_odds(const CorpusPartition& target, const CorpusPartition& other,
                       const CorpusPartition& background);

// Recomputes z for every term from s and the counts.
LogOddsResult z_scores(LogOddsResult result);

inline constexpr int kDefaultTopTerms = 40;

struct RankedTerms {
  std::vector<TermStat> terms;
  bool short_list = false;  // fewer than k eligible tokens
};

// Highest-z tokens outside `exclusions`; ties go to the lexicographically
// smaller token.
RankedTerms top_terms(const LogOddsResult& result, int k,
                      const std::set<std::string, std::less<>>& exclusions = {});

// Tokens sorted by z descending, ties by token.
std::vector<TermStat> sorted_by_z(const LogOddsResult& result);

struct SharedTerm {
  std::string token;
  int rank_i = 0;   // dense frequency rank in partition i, 1 = most frequent
  int rank_j = 0;
  int rank_bg = 0;  // 0 when absent from the background
};

// Dense frequency ranks (1 = most frequent, ties share a rank, no gaps).
std::map<std::string, int, std::less<>> dense_ranks(const TermCounts& counts);

// Words over-represented relative to the background in both partitions,
// ordered by the smaller of their two partition ranks. A word counts as
// over-represented in a partition when its rank, normalized by that
// partition's deepest rank, is strictly better than its normalized
// background rank (absent background words always qualify).
std::vector<SharedTerm> dense_rank_shared_terms(const CorpusPartition& freq_i,
                                                const CorpusPartition& freq_j,
                                                const CorpusPartition& background, int k);

// ---------------------------------------------------------------------------

inline double log_odds_ratio(double f_i, double n_i, double f_j, double n_j, double f_bg,
                             double n_bg) {
  return std::log((f_i + f_bg) / (n_i + n_bg - f_i + f_bg)) -
         std::log((f_j + f_bg) / (n_j + n_bg - f_j + f_bg));
}

inline double log_odds_z(double s, double f_i, double f_j, double f_bg) {
  return s / std::sqrt(1.0 / (f_i + f_bg) + 1.0 / (f_j + f_bg));
}

}  // namespace narraframe

#endif  // NARRAFRAME_OVERREPRESENTATION_HPP_
