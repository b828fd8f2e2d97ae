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

#ifndef SWSL_SVM_HPP_
#define SWSL_SVM_HPP_

#include <vector>

#include <Eigen/Core>

#include "swsl/kernel.hpp"

namespace swsl {

/// Soft-margin kernel SVM. Decision function
///   f(x) = sum_i dual_coef_i k(x, x_i) + bias
/// with dual_coef_i = alpha_i y_i over the training instances.
struct SvmModel {
  Eigen::VectorXd dual_coef;
  double bias = 0.0;
  std::vector<std::size_t> support_indices;
  Eigen::MatrixXd train_features;
  KernelConfig kernel;
  double slack_c = 1.0;

  double predict_instance(const Eigen::VectorXd& x) const;
  double predict_bag(const Eigen::MatrixXd& bag) const;
};

/// Diagnostics from the SMO dual solver.
struct SvmTrainReport {
  int pair_updates = 0;
  double kkt_violation = 0.0;  // m(alpha) - M(alpha) at exit
  bool converged = false;
  double dual_objective = 0.0;
};

/// Solves the standard soft-margin dual by sequential minimal optimization
/// with maximal-violating-pair selection, KKT tolerance 1e-5, at most 1e5
/// pair updates. Deterministic given the input order.
SvmModel train_kernel_svm(const Eigen::MatrixXd& features,
                          const std::vector<int>& labels, double slack_c,
                          const KernelConfig& kernel,
                          SvmTrainReport* report = nullptr);

}  // namespace swsl

#endif  // SWSL_SVM_HPP_
