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

#ifndef SWSL_GRAPH_SWSL_HPP_
#define SWSL_GRAPH_SWSL_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "swsl/dataset.hpp"
#include "swsl/graph.hpp"
#include "swsl/kernel.hpp"

namespace swsl {

// Training minimizes, over coefficient vector alpha and slacks xi,
//
//   (Y - J K a)' (Y - J K a) + l1 a'Ka + (l2 / N^2) a'KLKa + l3 sum_t xi_t^2
//   s.t.  1 - max_{j in bag t} K_j'a <= xi_t,  xi_t >= 0,
//
// where K is the kernel Gram matrix over all N training instances, L the
// graph Laplacian over the same instances, Y the label vector (zero on bag
// instances) and J the diagonal selector of the n labeled instances. The max
// constraints make the problem non-convex; it is solved by an iterative
// procedure that replaces each bag max with its linearization at the current
// iterate (uniform subgradient weights over the per-bag argmax set), which
// yields a convex piecewise-quadratic subproblem per iteration and a
// monotonically nonincreasing objective.

/// Everything the matrix-form objective needs.
struct ProblemMatrices {
  Eigen::VectorXd y;        // N; +/-1 on labeled rows, 0 elsewhere
  Eigen::MatrixXd kernel;   // N x N Gram matrix
  Eigen::MatrixXd laplacian;  // N x N graph Laplacian
  std::vector<BagRange> bag_ranges;  // T ranges covering rows [n, N)
  std::size_t num_labeled = 0;       // n

  std::size_t size() const { return static_cast<std::size_t>(y.size()); }
  std::size_t num_bags() const { return bag_ranges.size(); }
};

struct SolverConfig {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  std::optional<double> lambda3;  // empty = auto: n / T
  double cccp_tol = 1e-6;         // relative objective decrease
  int cccp_max_iters = 50;
  double subproblem_tol = 1e-8;   // relative gradient-norm threshold
  double tie_tol = 1e-9;          // relative band for the bag argmax set
};

/// Snapshot of the outer iteration: final coefficients, optimal slacks,
/// per-bag argmax sets and the objective trace (one entry per iterate,
/// nonincreasing within 1e-8).
struct CccpState {
  Eigen::VectorXd alpha;
  Eigen::VectorXd xi;
  std::vector<std::vector<std::size_t>> max_sets;
  std::vector<double> objective_trace;
  int iterations = 0;
};

/// Inductive model: f(x) = sum_i alpha_i k(x, x_i) over training instances.
struct GraphSwslModel {
  Eigen::VectorXd alpha;
  Eigen::MatrixXd train_features;
  KernelConfig kernel;
  SolverConfig config;
  std::vector<double> objective_trace;

  double predict_instance(const Eigen::VectorXd& x) const;
  /// Max over member instance scores; rows of `bag` are members.
  double predict_bag(const Eigen::MatrixXd& bag) const;
};

/// Builds K over all N instances, the kNN graph Laplacian over the same
/// instances, and the padded label vector.
ProblemMatrices build_problem(const IndexedDataset& data,
                              const KernelConfig& kernel,
                              const GraphConfig& graph);

/// The explicit-slack objective value at (alpha, xi).
double objective_value(const Eigen::VectorXd& alpha, const Eigen::VectorXd& xi,
                       const ProblemMatrices& p, const SolverConfig& cfg);

/// The objective with slacks eliminated analytically:
/// xi_t = max(0, 1 - max_{j in bag t} K_j'alpha). For every alpha this equals
/// the minimum of objective_value over feasible xi.
double penalized_objective(const Eigen::VectorXd& alpha,
                           const ProblemMatrices& p, const SolverConfig& cfg);

/// Uniform subgradient weights of the bag-t max at `alpha`: 1/r_t on every
/// member whose score lies within tie_tol * (1 + |bag max|) of the max, 0
/// elsewhere. Returned over the members of bag t, in range order.
Eigen::VectorXd subgradient_weights(const Eigen::VectorXd& alpha,
                                    const ProblemMatrices& p, std::size_t t,
                                    double tie_tol);

/// Minimizes the convex subproblem obtained by linearizing every bag max at
/// `alpha_k` (slacks eliminated). Active-set Newton with exact line search;
/// falls back to gradient descent if the active set fails to settle.
Eigen::VectorXd solve_subproblem(const ProblemMatrices& p,
                                 const SolverConfig& cfg,
                                 const Eigen::VectorXd& alpha_k);

/// Full training loop: supervised-only warm start, then outer iterations
/// until the relative objective decrease drops below cccp_tol, the per-bag
/// argmax sets stabilize, or cccp_max_iters is reached.
GraphSwslModel train_graph_swsl(const IndexedDataset& data,
                                const KernelConfig& kernel,
                                const GraphConfig& graph,
                                const SolverConfig& cfg,
                                CccpState* state = nullptr);

}  // namespace swsl

#endif  // SWSL_GRAPH_SWSL_HPP_
