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

#ifndef SWSL_GRAPH_HPP_
#define SWSL_GRAPH_HPP_

#include <string>

#include <Eigen/Core>

#include "swsl/error.hpp"

namespace swsl {

enum class GraphMetric { kChi2, kEuclidean };

std::string graph_metric_name(GraphMetric metric);
GraphMetric graph_metric_from_name(const std::string& name);

struct GraphConfig {
  int k = 10;            // neighbor count
  double sigma = 1.0;    // weight bandwidth
  GraphMetric metric = GraphMetric::kChi2;
};

/// Weighted kNN graph and its unnormalized Laplacian L = D - W.
struct GraphLaplacian {
  Eigen::MatrixXd weights;    // symmetric, zero diagonal
  Eigen::VectorXd degrees;    // row sums of weights
  Eigen::MatrixXd laplacian;  // D - W
};

/// Builds the kNN graph over the rows of `features`. An edge (i, j) exists
/// when i is among the k nearest neighbors of j or vice versa (union
/// symmetrization); its weight is exp(-d(i,j)^2 / (2 sigma^2)) with d taken
/// from the configured metric. Distance ties break by index order.
GraphLaplacian knn_graph(const Eigen::MatrixXd& features,
                         const GraphConfig& config);

}  // namespace swsl

#endif  // SWSL_GRAPH_HPP_
