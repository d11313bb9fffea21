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

#ifndef NARRAFRAME_TRUSTWORTHINESS_HPP_
#define NARRAFRAME_TRUSTWORTHINESS_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <vector>

#include "narraframe/error.hpp"

namespace narraframe {

namespace trust_detail {

// Other rows of `points` ordered by distance from row i, ties by index.
template <typename Derived>
std::vector<Eigen::Index> ranked_neighbors(const Eigen::MatrixBase<Derived>& points,
                                           Eigen::Index i) {
  const Eigen::Index n = points.rows();
  std::vector<double> dist(static_cast<size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    dist[static_cast<size_t>(j)] = static_cast<double>((points.row(i) - points.row(j)).squaredNorm());
  }
  std::vector<Eigen::Index> order;
  order.reserve(static_cast<size_t>(n - 1));
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j != i) order.push_back(j);
  }
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return dist[static_cast<size_t>(a)] < dist[static_cast<size_t>(b)];
  });
  return order;
}

}  // namespace trust_detail

// Trustworthiness of a low-dimensional embedding:
//   T(k) = 1 − 2 / (n·k·(2n − 3k − 1)) · Σ_i Σ_{j ∈ U_i} (r(i, j) − k)
// where U_i holds the low-dimensional k-neighbors of i that are not among
// its high-dimensional k-neighbors and r(i, j) is j's rank in the
// high-dimensional ordering from i. 1 means no intrusions.
template <typename High, typename Low>
double trustworthiness(const Eigen::MatrixBase<High>& high, const Eigen::MatrixBase<Low>& low,
                       int k) {
  const Eigen::Index n = high.rows();
  if (low.rows() != n) throw Error("trustworthiness: point counts differ");
  if (k < 1 || k >= n) throw Error("trustworthiness: k must lie in [1, n)");
  const double norm = static_cast<double>(n) * k * (2.0 * n - 3.0 * k - 1.0);
  if (norm <= 0) throw Error("trustworthiness: k is too large for the point count");

  std::vector<Eigen::Index> rank(static_cast<size_t>(n));
  double penalty = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto high_order = trust_detail::ranked_neighbors(high, i);
    for (size_t r = 0; r < high_order.size(); ++r) {
      rank[static_cast<size_t>(high_order[r])] = static_cast<Eigen::Index>(r + 1);
    }
    const auto low_order = trust_detail::ranked_neighbors(low, i);
    for (int m = 0; m < k; ++m) {
      const Eigen::Index r = rank[static_cast<size_t>(low_order[static_cast<size_t>(m)])];
      if (r > k) penalty += static_cast<double>(r - k);
    }
  }
  return 1.0 - 2.0 / norm * penalty;
}

}  // namespace narraframe

#endif  // NARRAFRAME_TRUSTWORTHINESS_HPP_
