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

#include "swsl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "swsl/kernel.hpp"

namespace swsl {

std::string graph_metric_name(GraphMetric metric) {
  switch (metric) {
    case GraphMetric::kChi2: return "chi2";
    case GraphMetric::kEuclidean: return "euclidean";
  }
  return "chi2";
}

GraphMetric graph_metric_from_name(const std::string& name) {
  if (name == "chi2") return GraphMetric::kChi2;
  if (name == "euclidean") return GraphMetric::kEuclidean;
  throw InvalidInput("unknown graph metric \"" + name + "\"");
}

GraphLaplacian knn_graph(const Eigen::MatrixXd& features,
                         const GraphConfig& config) {
  const Eigen::Index n = features.rows();
  if (config.k < 1) {
    throw InvalidInput("knn_graph: k must be at least 1");
  }
  if (static_cast<Eigen::Index>(config.k) >= n) {
    throw InvalidInput("knn_graph: k = " + std::to_string(config.k) +
                       " must be smaller than the number of points " +
                       std::to_string(n));
  }
  if (config.sigma <= 0.0) {
    throw InvalidInput("knn_graph: sigma must be positive");
  }

  Eigen::MatrixXd dist(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double d = config.metric == GraphMetric::kChi2
                     ? chi_square_distance(features.row(i), features.row(j))
                     : (features.row(i) - features.row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }

  // adjacency[i][j] = true when j is one of i's k nearest (self excluded).
  std::vector<std::vector<bool>> nearest(n, std::vector<bool>(n, false));
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    order.clear();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) {
                       if (dist(i, a) != dist(i, b)) {
                         return dist(i, a) < dist(i, b);
                       }
                       return a < b;
                     });
    for (int r = 0; r < config.k; ++r) {
      nearest[i][order[r]] = true;
    }
  }

  GraphLaplacian graph;
  graph.weights = Eigen::MatrixXd::Zero(n, n);
  const double denom = 2.0 * config.sigma * config.sigma;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (nearest[i][j] || nearest[j][i]) {
        const double w = std::exp(-dist(i, j) * dist(i, j) / denom);
        graph.weights(i, j) = w;
        graph.weights(j, i) = w;
      }
    }
  }
  graph.degrees = graph.weights.rowwise().sum();
  graph.laplacian = -graph.weights;
  graph.laplacian.diagonal() += graph.degrees;
  return graph;
}

}  // namespace swsl
