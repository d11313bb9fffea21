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

#ifndef NARRAFRAME_UMAP_HPP_
#define NARRAFRAME_UMAP_HPP_

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "narraframe/error.hpp"
#include "narraframe/random.hpp"

namespace narraframe {

struct UmapParams {
  int n_neighbors = 15;
  double min_dist = 0.1;
  double spread = 1.0;
  int epochs = 200;
  std::uint64_t seed = 1;
  int negative_sample_rate = 5;
  double learning_rate = 1.0;
  // Above this many points the spectral initialization (a dense
  // eigendecomposition) is replaced by a uniform random layout.
  Eigen::Index spectral_limit = 2000;
};

template <typename Scalar>
struct Projection {
  std::vector<std::string> labels;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> coords;
  UmapParams params;
};

namespace umap {

// Exact k nearest neighbors under Euclidean distance. Row i of the result
// starts with i itself; ties are broken by index.
template <typename Scalar>
struct KnnGraph {
  Eigen::MatrixXi indices;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> distances;
};

template <typename Derived>
KnnGraph<typename Derived::Scalar> exact_knn(const Eigen::MatrixBase<Derived>& points, int k) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = points.rows();
  KnnGraph<Scalar> g{Eigen::MatrixXi(n, k), Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(n, k)};
  std::vector<std::pair<Scalar, Eigen::Index>> row(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      row[static_cast<size_t>(j)] = {j == i ? Scalar(0) : (points.row(i) - points.row(j)).norm(), j};
    }
    std::partial_sort(row.begin(), row.begin() + k, row.end(), [i](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      if ((a.second == i) != (b.second == i)) return a.second == i;
      return a.second < b.second;
    });
    for (int c = 0; c < k; ++c) {
      g.indices(i, c) = static_cast<int>(row[static_cast<size_t>(c)].second);
      g.distances(i, c) = row[static_cast<size_t>(c)].first;
    }
  }
  return g;
}

// Per-point distance to the nearest neighbor (rho) and the bandwidth
// (sigma) at which the smoothed neighbor memberships sum to log2(k).
template <typename Scalar>
std::pair<std::vector<Scalar>, std::vector<Scalar>> smooth_knn_distances(
    const KnnGraph<Scalar>& g) {
  constexpr double kTolerance = 1e-5;
  constexpr double kMinScale = 1e-3;
  const Eigen::Index n = g.distances.rows();
  const Eigen::Index k = g.distances.cols();
  const double target = std::log2(static_cast<double>(k));
  const double mean_all = static_cast<double>(g.distances.mean());

  std::vector<Scalar> rho(static_cast<size_t>(n), 0);
  std::vector<Scalar> sigma(static_cast<size_t>(n), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (g.distances(i, j) > 0) {
        r = static_cast<double>(g.distances(i, j));
        break;
      }
    }
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double mid = 1.0;
    for (int iter = 0; iter < 64; ++iter) {
      double psum = 0.0;
      for (Eigen::Index j = 1; j < k; ++j) {
        const double d = static_cast<double>(g.distances(i, j)) - r;
        psum += d > 0 ? std::exp(-d / mid) : 1.0;
      }
      if (std::abs(psum - target) < kTolerance) break;
      if (psum > target) {
        hi = mid;
        mid = (lo + hi) / 2.0;
      } else {
        lo = mid;
        mid = std::isinf(hi) ? mid * 2.0 : (lo + hi) / 2.0;
      }
    }
    const double floor = kMinScale * (r > 0 ? static_cast<double>(g.distances.row(i).mean())
                                            : mean_all);
    rho[static_cast<size_t>(i)] = static_cast<Scalar>(r);
    sigma[static_cast<size_t>(i)] = static_cast<Scalar>(std::max(mid, floor));
  }
  return {rho, sigma};
}

// Fuzzy union of the directed membership graphs: P = A + Aᵀ − A∘Aᵀ.
template <typename Scalar>
Eigen::SparseMatrix<Scalar> fuzzy_simplicial_set(const KnnGraph<Scalar>& g) {
  const Eigen::Index n = g.distances.rows();
  const auto [rho, sigma] = smooth_knn_distances(g);
  std::vector<Eigen::Triplet<Scalar>> triplets;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < g.indices.cols(); ++c) {
      const int j = g.indices(i, c);
      if (j == i) continue;
      const Scalar d = g.distances(i, c) - rho[static_cast<size_t>(i)];
      const Scalar w = (d <= 0 || sigma[static_cast<size_t>(i)] == 0)
                           ? Scalar(1)
                           : std::exp(-d / sigma[static_cast<size_t>(i)]);
      triplets.emplace_back(i, j, w);
    }
  }
  Eigen::SparseMatrix<Scalar> a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SparseMatrix<Scalar> at = a.transpose();
  Eigen::SparseMatrix<Scalar> p = a + at - Eigen::SparseMatrix<Scalar>(a.cwiseProduct(at));
  p.prune(Scalar(0));
  return p;
}

// Fits 1 / (1 + a·x^(2b)) to the target low-dimensional membership curve
// by Levenberg-Marquardt least squares over 300 samples on [0, 3·spread].
inline std::pair<double, double> fit_ab(double min_dist, double spread) {
  constexpr int kSamples = 300;
  std::vector<double> xs(kSamples);
  std::vector<double> ys(kSamples);
  for (int s = 0; s < kSamples; ++s) {
    xs[s] = 3.0 * spread * s / (kSamples - 1);
    ys[s] = xs[s] < min_dist ? 1.0 : std::exp(-(xs[s] - min_dist) / spread);
  }
  auto residuals = [&](double a, double b, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    for (int s = 0; s < kSamples; ++s) {
      const double x = xs[s];
      const double p = x > 0 ? std::pow(x, 2.0 * b) : 0.0;
      const double f = 1.0 / (1.0 + a * p);
      r[s] = f - ys[s];
      if (jac) {
        (*jac)(s, 0) = -p * f * f;
        (*jac)(s, 1) = x > 0 ? -a * p * 2.0 * std::log(x) * f * f : 0.0;
      }
    }
    return r.squaredNorm();
  };
  double a = 1.0;
  double b = 1.0;
  double lambda = 1e-3;
  Eigen::VectorXd r(kSamples);
  Eigen::VectorXd trial(kSamples);
  Eigen::MatrixXd jac(kSamples, 2);
  double cost = residuals(a, b, r, &jac);
  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    const Eigen::Vector2d jtr = jac.transpose() * r;
    Eigen::Matrix2d damped = jtj;
    damped.diagonal() *= 1.0 + lambda;
    const Eigen::Vector2d step = damped.ldlt().solve(-jtr);
    const double next = residuals(a + step[0], b + step[1], trial, nullptr);
    if (next < cost) {
      a += step[0];
      b += step[1];
      lambda *= 0.3;
      const bool converged = cost - next < 1e-14 * std::max(1.0, cost);
      cost = residuals(a, b, r, &jac);
      if (converged) break;
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  return {a, b};
}

inline double gaussian(Rng& rng) {
  const double u1 = std::max(uniform01(rng), 1e-300);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

// Two smallest nontrivial eigenvectors of the normalized graph Laplacian,
// scaled to [0, 10] with a little noise. Falls back to a uniform random
// layout for large graphs.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 2> initial_layout(const Eigen::SparseMatrix<Scalar>& graph,
                                                        const UmapParams& params, Rng& rng) {
  const Eigen::Index n = graph.rows();
  Eigen::MatrixXd layout(n, 2);
  if (n <= params.spectral_limit && n > 2) {
    const Eigen::MatrixXd w = Eigen::MatrixXd(graph.template cast<double>());
    const Eigen::VectorXd degree = w.rowwise().sum();
    Eigen::VectorXd inv_sqrt(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      inv_sqrt[i] = degree[i] > 0 ? 1.0 / std::sqrt(degree[i]) : 0.0;
    }
    Eigen::MatrixXd laplacian = -(inv_sqrt.asDiagonal() * w * inv_sqrt.asDiagonal());
    laplacian.diagonal().array() += 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
    layout = solver.eigenvectors().middleCols(1, 2);
    const double extent = layout.cwiseAbs().maxCoeff();
    layout *= extent > 0 ? 10.0 / extent : 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      layout(i, 0) += 1e-4 * gaussian(rng);
      layout(i, 1) += 1e-4 * gaussian(rng);
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      layout(i, 0) = 20.0 * uniform01(rng) - 10.0;
      layout(i, 1) = 20.0 * uniform01(rng) - 10.0;
    }
  }
  for (int c = 0; c < 2; ++c) {
    const double lo = layout.col(c).minCoeff();
    const double hi = layout.col(c).maxCoeff();
    if (hi > lo) layout.col(c) = 10.0 * (layout.col(c).array() - lo) / (hi - lo);
  }
  return layout.cast<Scalar>();
}

// Stochastic cross-entropy descent: attraction along graph edges sampled in
// proportion to their weight, repulsion from uniformly drawn vertices.
template <typename Scalar>
void optimize_layout(Eigen::Matrix<Scalar, Eigen::Dynamic, 2>& layout,
                     const Eigen::SparseMatrix<Scalar>& graph, const UmapParams& params,
                     double a, double b, Rng& rng) {
  static constexpr double kClip = 4.0;
  const int n_epochs = params.epochs;
  const auto n = static_cast<std::uint64_t>(layout.rows());

  std::vector<int> head;
  std::vector<int> tail;
  std::vector<double> weight;
  double max_weight = 0.0;
  for (Eigen::Index col = 0; col < graph.outerSize(); ++col) {
    for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(graph, col); it; ++it) {
      max_weight = std::max(max_weight, static_cast<double>(it.value()));
    }
  }
  for (Eigen::Index col = 0; col < graph.outerSize(); ++col) {
    for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(graph, col); it; ++it) {
      const double w = static_cast<double>(it.value());
      if (w < max_weight / n_epochs) continue;
      head.push_back(static_cast<int>(it.row()));
      tail.push_back(static_cast<int>(it.col()));
      weight.push_back(w);
    }
  }
  const size_t n_edges = head.size();
  std::vector<double> per_sample(n_edges);
  for (size_t e = 0; e < n_edges; ++e) per_sample[e] = max_weight / weight[e];
  std::vector<double> per_negative(n_edges);
  for (size_t e = 0; e < n_edges; ++e) per_negative[e] = per_sample[e] / params.negative_sample_rate;
  std::vector<double> next_sample = per_sample;
  std::vector<double> next_negative = per_negative;

  auto clip = [](double g) { return std::clamp(g, -kClip, kClip); };
  double alpha = params.learning_rate;
  for (int epoch = 0; epoch < n_epochs; ++epoch) {
    for (size_t e = 0; e < n_edges; ++e) {
      if (next_sample[e] > epoch) continue;
      const int j = head[e];
      const int k = tail[e];
      const double dx = static_cast<double>(layout(j, 0) - layout(k, 0));
      const double dy = static_cast<double>(layout(j, 1) - layout(k, 1));
      const double d2 = dx * dx + dy * dy;
      if (d2 > 0.0) {
        const double coeff =
            -2.0 * a * b * std::pow(d2, b - 1.0) / (a * std::pow(d2, b) + 1.0);
        const double gx = clip(coeff * dx) * alpha;
        const double gy = clip(coeff * dy) * alpha;
        layout(j, 0) += static_cast<Scalar>(gx);
        layout(j, 1) += static_cast<Scalar>(gy);
        layout(k, 0) -= static_cast<Scalar>(gx);
        layout(k, 1) -= static_cast<Scalar>(gy);
      }
      next_sample[e] += per_sample[e];

      const int n_negative = static_cast<int>((epoch - next_negative[e]) / per_negative[e]);
      for (int s = 0; s < n_negative; ++s) {
        const auto other = static_cast<Eigen::Index>(uniform_index(rng, n));
        if (other == j) continue;
        const double ox = static_cast<double>(layout(j, 0) - layout(other, 0));
        const double oy = static_cast<double>(layout(j, 1) - layout(other, 1));
        const double o2 = ox * ox + oy * oy;
        double gx = kClip;
        double gy = kClip;
        if (o2 > 0.0) {
          const double coeff = 2.0 * b / ((0.001 + o2) * (a * std::pow(o2, b) + 1.0));
          gx = clip(coeff * ox);
          gy = clip(coeff * oy);
        }
        layout(j, 0) += static_cast<Scalar>(gx * alpha);
        layout(j, 1) += static_cast<Scalar>(gy * alpha);
      }
      next_negative[e] += n_negative * per_negative[e];
    }
    alpha = params.learning_rate * (1.0 - static_cast<double>(epoch + 1) / n_epochs);
  }
}

}  // namespace umap

// Projects rows to 2-D: exact kNN graph, smoothed fuzzy memberships,
// symmetrized, then laid out by negative-sampling cross-entropy descent.
// Seed-deterministic. Throws Error with fewer than n_neighbors + 1 rows.
template <typename Derived>
Projection<typename Derived::Scalar> project_umap(const Eigen::MatrixBase<Derived>& points,
                                                  const UmapParams& params = {},
                                                  std::vector<std::string> labels = {}) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = points.rows();
  if (params.n_neighbors < 2) throw Error("project_umap: n_neighbors must be at least 2");
  if (n < params.n_neighbors + 1) {
    throw Error("project_umap: " + std::to_string(n) + " points are too few for " +
                std::to_string(params.n_neighbors) + " neighbors");
  }
  if (params.epochs < 1) throw Error("project_umap: epochs must be positive");
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != n) {
    throw Error("project_umap: label count does not match point count");
  }
  if (!points.allFinite()) throw Error("project_umap: input contains NaN or Inf");

  Rng rng(params.seed);
  const auto graph = umap::fuzzy_simplicial_set(umap::exact_knn(points, params.n_neighbors));
  const auto [a, b] = umap::fit_ab(params.min_dist, params.spread);
  Projection<Scalar> projection{std::move(labels), umap::initial_layout(graph, params, rng), params};
  umap::optimize_layout(projection.coords, graph, params, a, b, rng);
  if (!projection.coords.allFinite()) throw Error("project_umap: layout diverged");
  return projection;
}

}  // namespace narraframe

#endif  // NARRAFRAME_UMAP_HPP_
