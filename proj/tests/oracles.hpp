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

// Brute-force reference computations used to check the library. Each one is
// written directly from the defining formula with plain containers and
// shares no code with the implementation under test.

#ifndef NARRAFRAME_TESTS_ORACLES_HPP_
#define NARRAFRAME_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace oracle {

using Bag = std::map<std::string, long>;

inline Bag count(const std::vector<std::vector<std::string>>& docs) {
  Bag bag;
  for (const auto& d : docs)
    for (const auto& t : d) bag[t] += 1;
  return bag;
}

inline long total(const Bag& bag) {
  long n = 0;
  for (const auto& kv : bag) n += kv.second;
  return n;
}

struct LogOdds {
  double s;
  double z;
};

// Log-odds with an informative Dirichlet prior, evaluated term by term.
inline LogOdds log_odds(double fi, double ni, double fj, double nj, double fbg, double nbg) {
  const double a = fi + fbg;
  const double b = fj + fbg;
  const double odds_i = a / ((ni + nbg) - (fi + 0.0) + fbg);
  const double odds_j = b / ((nj + nbg) - (fj + 0.0) + fbg);
  const double s = std::log(odds_i) - std::log(odds_j);
  const double var = 1.0 / a + 1.0 / b;
  return {s, s / std::sqrt(var)};
}

// Symmetric 1/distance window counts, by explicit double loop.
inline std::map<std::pair<std::string, std::string>, double> cooccurrence(
    const std::vector<std::vector<std::string>>& docs, int window, int min_count) {
  Bag freq = count(docs);
  std::map<std::pair<std::string, std::string>, double> x;
  for (const auto& doc : docs) {
    std::vector<std::string> kept;
    for (const auto& t : doc)
      if (freq[t] >= min_count) kept.push_back(t);
    for (size_t i = 0; i < kept.size(); ++i) {
      for (size_t j = 0; j < kept.size(); ++j) {
        if (i == j) continue;
        const size_t dist = i > j ? i - j : j - i;
        if (dist > static_cast<size_t>(window)) continue;
        x[{kept[i], kept[j]}] += 1.0 / static_cast<double>(dist);
      }
    }
  }
  return x;
}

// Weighted least-squares GloVe cost from token-keyed parameters.
struct GloveState {
  std::map<std::string, std::vector<double>> w;
  std::map<std::string, std::vector<double>> wc;
  std::map<std::string, double> b;
  std::map<std::string, double> bc;
};

inline double glove_cost(const std::map<std::pair<std::string, std::string>, double>& x,
                         const GloveState& p, double x_max, double alpha) {
  double cost = 0.0;
  for (const auto& [pair, value] : x) {
    const auto& wi = p.w.at(pair.first);
    const auto& wj = p.wc.at(pair.second);
    double dot = 0.0;
    for (size_t k = 0; k < wi.size(); ++k) dot += wi[k] * wj[k];
    const double diff = dot + p.b.at(pair.first) + p.bc.at(pair.second) - std::log(value);
    const double weight = value >= x_max ? 1.0 : std::pow(value / x_max, alpha);
    cost += weight * diff * diff;
  }
  return cost;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0, aa = 0, bb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

// Per-word FrameAxis sums over one document; `contribution` is consulted
// for every occurrence (no grouping by type).
template <typename Contribution>
bool frame_scores(const std::vector<std::string>& tokens, Contribution contribution,
                  double baseline, double& bias, double& intensity) {
  double sum = 0, sq = 0;
  long n = 0;
  for (const auto& t : tokens) {
    double c;
    if (!contribution(t, c)) continue;
    sum += c;
    sq += (c - baseline) * (c - baseline);
    ++n;
  }
  if (n == 0) return false;
  bias = sum / n;
  intensity = sq / n;
  return true;
}

// Σ squared distance from each point to the mean of its cluster.
inline double inertia(const std::vector<std::vector<double>>& pts, const std::vector<int>& label) {
  std::map<int, std::vector<double>> sum;
  std::map<int, int> size;
  for (size_t i = 0; i < pts.size(); ++i) {
    auto& s = sum[label[i]];
    s.resize(pts[i].size(), 0.0);
    for (size_t d = 0; d < pts[i].size(); ++d) s[d] += pts[i][d];
    size[label[i]] += 1;
  }
  double total = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& s = sum[label[i]];
    for (size_t d = 0; d < pts[i].size(); ++d) {
      const double diff = pts[i][d] - s[d] / size[label[i]];
      total += diff * diff;
    }
  }
  return total;
}

// Fraction of points whose cluster's majority truth label matches theirs.
inline double purity(const std::vector<int>& cluster, const std::vector<int>& truth) {
  std::map<int, std::map<int, int>> table;
  for (size_t i = 0; i < cluster.size(); ++i) table[cluster[i]][truth[i]] += 1;
  int hit = 0;
  for (const auto& [c, row] : table) {
    int best = 0;
    for (const auto& [t, n] : row) best = std::max(best, n);
    hit += best;
  }
  return static_cast<double>(hit) / static_cast<double>(cluster.size());
}

// Partition as a set of member sets, so label numbering is irrelevant.
inline std::set<std::set<int>> groups(const std::vector<int>& label) {
  std::map<int, std::set<int>> g;
  for (size_t i = 0; i < label.size(); ++i) g[label[i]].insert(static_cast<int>(i));
  std::set<std::set<int>> out;
  for (auto& kv : g) out.insert(kv.second);
  return out;
}

// Trustworthiness by full sort of every pairwise distance list.
inline double trustworthiness(const std::vector<std::vector<double>>& high,
                              const std::vector<std::vector<double>>& low, int k) {
  const int n = static_cast<int>(high.size());
  auto dist = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
  };
  double penalty = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> h, l;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      h.push_back({dist(high[i], high[j]), j});
      l.push_back({dist(low[i], low[j]), j});
    }
    std::sort(h.begin(), h.end());
    std::sort(l.begin(), l.end());
    std::map<int, int> rank;
    for (int r = 0; r < n - 1; ++r) rank[h[r].second] = r + 1;
    for (int m = 0; m < k; ++m) {
      const int r = rank[l[m].second];
      if (r > k) penalty += r - k;
    }
  }
  return 1.0 - 2.0 / (static_cast<double>(n) * k * (2.0 * n - 3.0 * k - 1.0)) * penalty;
}

// Plain record used for recounting role tables.
struct Triple {
  std::string party, agent, verb, patient;
  int agent_tokens, patient_tokens;
};

inline int words(const std::string& s) {
  int n = 0;
  bool in = false;
  for (char c : s) {
    const bool space = c == ' ' || c == '\t';
    if (!space && !in) ++n;
    in = !space;
  }
  return n;
}

inline std::string lower(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

inline std::unordered_map<std::string, long> combination_counts(const std::vector<Triple>& ts,
                                                                const std::string& party) {
  std::unordered_map<std::string, long> m;
  for (const auto& t : ts)
    if (t.party == party) m[t.agent + "\x1f" + t.verb + "\x1f" + t.patient] += 1;
  return m;
}

}  // namespace oracle

#endif  // NARRAFRAME_TESTS_ORACLES_HPP_
