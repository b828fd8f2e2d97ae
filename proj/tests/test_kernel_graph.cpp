// Copyright 2026 The swsl authors. All rights reserved.
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

#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>
#include <Eigen/Dense>

#include "swsl/graph.hpp"
#include "swsl/kernel.hpp"
#include "test_util.hpp"

using swsl::GraphConfig;
using swsl::KernelConfig;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

// Term-by-term reimplementation used as the loop oracle.
double chi2_loop(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double num = (x[i] - y[i]) * (x[i] - y[i]);
    total += num / (x[i] + y[i] + 1e-12);
  }
  return 0.5 * total;
}

}  // namespace

TEST_CASE("chi_square_distance matches its defining formula") {
  CHECK(swsl::chi_square_distance(vec({0.5, 0.5}), vec({0.5, 0.5})) == 0.0);
  CHECK(swsl::chi_square_distance(vec({1, 0}), vec({0, 1})) ==
        doctest::Approx(1.0).epsilon(1e-9));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = swsl_test::random_histogram(rng, 8);
    auto y = swsl_test::random_histogram(rng, 8);
    CHECK(swsl::chi_square_distance(x, y) ==
          doctest::Approx(chi2_loop(x, y)).epsilon(1e-14));
    CHECK(swsl::chi_square_distance(x, y) == swsl::chi_square_distance(y, x));
    CHECK(swsl::chi_square_distance(x, y) >= 0.0);
  }

  CHECK_THROWS_AS(swsl::chi_square_distance(vec({-0.1, 1.1}), vec({0.5, 0.5})),
                  swsl::InvalidInput);
}

TEST_CASE("estimate_gamma inverts the mean pairwise distance") {
  SUBCASE("two points at distance 2") {
    Eigen::MatrixXd pts(2, 2);
    pts.row(0) = vec({2, 0});
    pts.row(1) = vec({0, 2});
    CHECK(swsl::estimate_gamma(pts) == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("identical points have no defined gamma") {
    Eigen::MatrixXd pts(3, 2);
    pts.row(0) = vec({0.5, 0.5});
    pts.row(1) = vec({0.5, 0.5});
    pts.row(2) = vec({0.5, 0.5});
    CHECK_THROWS_AS(swsl::estimate_gamma(pts), swsl::InvalidInput);
  }
  SUBCASE("three points with pairwise distances {1,2,3}") {
    Eigen::MatrixXd pts(3, 2);
    pts.row(0) = vec({0, 0});
    pts.row(1) = vec({2, 0});
    pts.row(2) = vec({0, 4});
    // d01 = 1, d02 = 2, d12 = 3; mean 2.
    CHECK(swsl::chi_square_distance(pts.row(0), pts.row(1)) ==
          doctest::Approx(1.0));
    CHECK(swsl::chi_square_distance(pts.row(0), pts.row(2)) ==
          doctest::Approx(2.0));
    CHECK(swsl::chi_square_distance(pts.row(1), pts.row(2)) ==
          doctest::Approx(3.0));
    CHECK(swsl::estimate_gamma(pts) == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("kernel_matrix matches entrywise brute force") {
  KernelConfig config;
  config.kind = swsl::KernelKind::kExpChi2;
  config.gamma = 1.0;

  CHECK(swsl::kernel_eval(config, vec({1, 0}), vec({0, 1})) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-9));

  std::mt19937_64 rng(23);
  Eigen::MatrixXd pts = swsl_test::random_histograms(rng, 5, 6);
  config.gamma = 2.5;
  Eigen::MatrixXd gram = swsl::kernel_matrix(pts, config);
  for (Eigen::Index i = 0; i < 5; ++i) {
    CHECK(gram(i, i) == 1.0);
    for (Eigen::Index j = 0; j < 5; ++j) {
      const double expected =
          std::exp(-config.gamma * chi2_loop(pts.row(i), pts.row(j)));
      CHECK(gram(i, j) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(gram(i, j) == gram(j, i));
    }
  }
}

TEST_CASE("knn_graph builds the documented collinear example") {
  // Points 0, 1, 2 on a line, k = 1, sigma = 1: edges (0,1) and (1,2) with
  // weight exp(-0.5); no edge (0,2).
  Eigen::MatrixXd pts(3, 1);
  pts << 0.0, 1.0, 2.0;
  GraphConfig config;
  config.k = 1;
  config.sigma = 1.0;
  config.metric = swsl::GraphMetric::kEuclidean;
  auto graph = swsl::knn_graph(pts, config);

  const double w = std::exp(-0.5);
  CHECK(graph.weights(0, 1) == doctest::Approx(w).epsilon(1e-12));
  CHECK(graph.weights(1, 2) == doctest::Approx(w).epsilon(1e-12));
  CHECK(graph.weights(0, 2) == 0.0);
  CHECK(graph.weights(0, 0) == 0.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(graph.laplacian.row(i).sum() == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(graph.laplacian(0, 0) == doctest::Approx(w));
  CHECK(graph.laplacian(1, 1) == doctest::Approx(2 * w));
}

TEST_CASE("knn_graph on identical points uses unit weights") {
  Eigen::MatrixXd pts(4, 3);
  for (int i = 0; i < 4; ++i) pts.row(i) = vec({0.2, 0.3, 0.5});
  GraphConfig config;
  config.k = 2;
  auto graph = swsl::knn_graph(pts, config);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (graph.weights(i, j) != 0.0) {
        CHECK(graph.weights(i, j) == 1.0);
      }
    }
  }
}

TEST_CASE("laplacian quadratic form matches the weighted-difference sum") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 20 + static_cast<int>(rng() % 30);
    Eigen::MatrixXd pts = swsl_test::random_histograms(rng, n, 6);
    GraphConfig config;
    config.k = 3;
    config.sigma = 1.0;
    auto graph = swsl::knn_graph(pts, config);

    for (int rep = 0; rep < 100; ++rep) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x[i] = swsl_test::gaussian(rng);
      x /= x.norm();
      const double quad = x.dot(graph.laplacian * x);
      double direct = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double diff = x[i] - x[j];
          direct += graph.weights(i, j) * diff * diff;
        }
      }
      direct *= 0.5;
      CHECK(std::abs(quad - direct) <= 1e-10);
      CHECK(quad >= -1e-10);
    }
  }
}

TEST_CASE("laplacian invariants: symmetry, zero row sums, PSD") {
  std::mt19937_64 rng(37);
  const int n = 40;
  Eigen::MatrixXd pts = swsl_test::random_histograms(rng, n, 5);
  GraphConfig config;
  config.k = 4;
  auto graph = swsl::knn_graph(pts, config);

  CHECK((graph.laplacian - graph.laplacian.transpose()).cwiseAbs().maxCoeff() ==
        0.0);
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(graph.laplacian.row(i).sum()) <= 1e-10);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(graph.laplacian);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("exp-chi2 gram matrices are numerically PSD") {
  std::mt19937_64 rng(41);
  KernelConfig config;
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 10 + static_cast<int>(rng() % 40);
    Eigen::MatrixXd pts = swsl_test::random_histograms(rng, n, 7);
    config.gamma = 0.5 + 2.0 * swsl_test::uniform01(rng);
    Eigen::MatrixXd gram = swsl::kernel_matrix(pts, config);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * gram.trace());
  }
}

TEST_CASE("knn_graph is invariant to input permutation") {
  std::mt19937_64 rng(43);
  const int n = 25;
  Eigen::MatrixXd pts = swsl_test::random_histograms(rng, n, 5);
  GraphConfig config;
  config.k = 3;
  auto graph = swsl::knn_graph(pts, config);

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng() % (i + 1)]);
  }
  Eigen::MatrixXd shuffled(n, pts.cols());
  for (int i = 0; i < n; ++i) shuffled.row(i) = pts.row(perm[i]);
  auto graph_perm = swsl::knn_graph(shuffled, config);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CHECK(std::abs(graph_perm.laplacian(i, j) -
                     graph.laplacian(perm[i], perm[j])) <= 1e-12);
    }
  }
}

TEST_CASE("knn_graph rejects k >= N") {
  Eigen::MatrixXd pts(3, 2);
  pts.setConstant(0.5);
  GraphConfig config;
  config.k = 3;
  CHECK_THROWS_AS(swsl::knn_graph(pts, config), swsl::InvalidInput);
}

TEST_CASE("kernel and graph input validation") {
  CHECK_THROWS_AS(swsl::chi_square_distance(vec({0.5, 0.5}), vec({1.0})),
                  swsl::InvalidInput);
  Eigen::MatrixXd single(1, 2);
  single.setConstant(0.5);
  CHECK_THROWS_AS(swsl::estimate_gamma(single), swsl::InvalidInput);

  Eigen::MatrixXd pts(4, 2);
  pts.setConstant(0.25);
  GraphConfig config;
  config.k = 1;
  config.sigma = 0.0;
  CHECK_THROWS_AS(swsl::knn_graph(pts, config), swsl::InvalidInput);
  config.sigma = 1.0;
  config.k = 0;
  CHECK_THROWS_AS(swsl::knn_graph(pts, config), swsl::InvalidInput);
}
