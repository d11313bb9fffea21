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

#ifndef NARRAFRAME_KMEANS_HPP_
#define NARRAFRAME_KMEANS_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "narraframe/error.hpp"
#include "narraframe/random.hpp"

namespace narraframe {

inline constexpr int kDefaultVerbClusters = 15;

struct KMeansParams {
  int restarts = 10;
  int max_iter = 300;
  std::uint64_t seed = 1;
};

template <typename Scalar>
struct Clustering {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  std::vector<std::string> labels;
  std::vector<int> assignment;  // cluster id in [0, k) per row
  Matrix centroids;             // k × d
  Scalar inertia = 0;           // Σ squared distance to own centroid
  // Inertia after each assignment step of the winning restart.
  std::vector<Scalar> inertia_trace;
  int iterations = 0;
};

namespace kmeans_detail {

template <typename Points, typename Centroids>
typename Points::Scalar squared_distance(const Points& points, Eigen::Index i,
                                         const Centroids& centroids, Eigen::Index c) {
  return (points.row(i) - centroids.row(c)).squaredNorm();
}

// Greedy k-means++: each new center is the best of a few D²-sampled
// candidates by total potential.
template <typename Matrix>
Matrix seed_centroids(const Matrix& points, int k, Rng& rng) {
  using Scalar = typename Matrix::Scalar;
  const Eigen::Index n = points.rows();
  Matrix centroids(k, points.cols());
  const int trials = 2 + static_cast<int>(std::log(static_cast<double>(k)));

  Eigen::Index first = static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
  centroids.row(0) = points.row(first);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> closest(n);
  for (Eigen::Index i = 0; i < n; ++i) closest[i] = (points.row(i) - centroids.row(0)).squaredNorm();

  std::vector<double> cumulative(static_cast<size_t>(n));
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      total += static_cast<double>(closest[i]);
      cumulative[static_cast<size_t>(i)] = total;
    }
    Eigen::Index best = -1;
    double best_potential = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
      Eigen::Index candidate;
      if (total > 0.0) {
        const double r = uniform01(rng) * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        candidate = std::min<Eigen::Index>(n - 1, it - cumulative.begin());
      } else {
        candidate = static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
      }
      double potential = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        potential += static_cast<double>(
            std::min(closest[i], (points.row(i) - points.row(candidate)).squaredNorm()));
      }
      if (potential < best_potential) {
        best_potential = potential;
        best = candidate;
      }
    }
    centroids.row(c) = points.row(best);
    for (Eigen::Index i = 0; i < n; ++i) {
      closest[i] = std::min(closest[i], (points.row(i) - centroids.row(c)).squaredNorm());
    }
  }
  return centroids;
}

// Assigns each point to its nearest centroid (keeping the current one on
// ties) and returns the inertia.
template <typename Matrix>
typename Matrix::Scalar assign(const Matrix& points, const Matrix& centroids,
                               std::vector<int>& assignment) {
  using Scalar = typename Matrix::Scalar;
  Scalar inertia = 0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    int& current = assignment[static_cast<size_t>(i)];
    int best = current;
    Scalar best_d = current >= 0 ? squared_distance(points, i, centroids, current)
                                 : std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      const Scalar d = squared_distance(points, i, centroids, c);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    current = best;
    inertia += best_d;
  }
  return inertia;
}

// Moves the point farthest from its centroid into each empty cluster.
template <typename Matrix>
void fill_empty(const Matrix& points, const Matrix& centroids, std::vector<int>& assignment,
                int k) {
  using Scalar = typename Matrix::Scalar;
  std::vector<int> sizes(static_cast<size_t>(k), 0);
  for (int a : assignment) ++sizes[static_cast<size_t>(a)];
  for (int c = 0; c < k; ++c) {
    if (sizes[static_cast<size_t>(c)] > 0) continue;
    Eigen::Index far = -1;
    Scalar far_d = -1;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const int own = assignment[static_cast<size_t>(i)];
      if (sizes[static_cast<size_t>(own)] < 2) continue;
      const Scalar d = squared_distance(points, i, centroids, own);
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    if (far < 0) break;
    --sizes[static_cast<size_t>(assignment[static_cast<size_t>(far)])];
    assignment[static_cast<size_t>(far)] = c;
    ++sizes[static_cast<size_t>(c)];
  }
}

template <typename Matrix>
Matrix means(const Matrix& points, const std::vector<int>& assignment, int k) {
  Matrix centroids = Matrix::Zero(k, points.cols());
  std::vector<int> sizes(static_cast<size_t>(k), 0);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const int c = assignment[static_cast<size_t>(i)];
    centroids.row(c) += points.row(i);
    ++sizes[static_cast<size_t>(c)];
  }
  for (int c = 0; c < k; ++c) {
    if (sizes[static_cast<size_t>(c)] > 0) centroids.row(c) /= static_cast<typename Matrix::Scalar>(sizes[static_cast<size_t>(c)]);
  }
  return centroids;
}

}  // namespace kmeans_detail

// Best of `restarts` runs of greedy k-means++ seeding followed by Lloyd
// iterations, by final inertia. Euclidean distance. Throws Error if the
// number of rows is below k.
template <typename Derived>
Clustering<typename Derived::Scalar> kmeans(const Eigen::MatrixBase<Derived>& input, int k,
                                            const KMeansParams& params = {},
                                            std::vector<std::string> labels = {}) {
  using Scalar = typename Derived::Scalar;
  using Matrix = typename Clustering<Scalar>::Matrix;
  namespace kd = kmeans_detail;

  const Matrix points = input;
  const Eigen::Index n = points.rows();
  if (k < 1) throw Error("kmeans: k must be positive");
  if (n < k) {
    throw Error("kmeans: " + std::to_string(n) + " points cannot form " + std::to_string(k) +
                " clusters");
  }
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != n) {
    throw Error("kmeans: label count does not match point count");
  }
  if (params.restarts < 1 || params.max_iter < 1) {
    throw Error("kmeans: restarts and max_iter must be positive");
  }

  Rng rng(params.seed);
  Clustering<Scalar> best;
  bool have_best = false;
  for (int restart = 0; restart < params.restarts; ++restart) {
    Clustering<Scalar> run;
    run.centroids = kd::seed_centroids(points, k, rng);
    run.assignment.assign(static_cast<size_t>(n), -1);
    run.inertia_trace.push_back(kd::assign(points, run.centroids, run.assignment));
    for (run.iterations = 1; run.iterations <= params.max_iter; ++run.iterations) {
      kd::fill_empty(points, run.centroids, run.assignment, k);
      run.centroids = kd::means(points, run.assignment, k);
      std::vector<int> next = run.assignment;
      run.inertia_trace.push_back(kd::assign(points, run.centroids, next));
      if (next == run.assignment) break;
      run.assignment = std::move(next);
    }
    run.iterations = std::min(run.iterations, params.max_iter);
    run.centroids = kd::means(points, run.assignment, k);
    run.inertia = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      run.inertia += kd::squared_distance(points, i, run.centroids,
                                          run.assignment[static_cast<size_t>(i)]);
    }
    if (!have_best || run.inertia < best.inertia) {
      best = std::move(run);
      have_best = true;
    }
  }
  best.labels = std::move(labels);
  return best;
}

}  // namespace narraframe

#endif  // NARRAFRAME_KMEANS_HPP_
