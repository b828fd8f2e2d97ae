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

#ifndef SWSL_KERNEL_HPP_
#define SWSL_KERNEL_HPP_

#include <string>

#include <Eigen/Core>

#include "swsl/error.hpp"

namespace swsl {

enum class KernelKind { kExpChi2, kRbf };

struct KernelConfig {
  KernelKind kind = KernelKind::kExpChi2;
  double gamma = 1.0;  // exp(-gamma * chi2(x, y))
  double sigma = 1.0;  // exp(-|x - y|^2 / (2 sigma^2))
};

std::string kernel_kind_name(KernelKind kind);
KernelKind kernel_kind_from_name(const std::string& name);

/// Chi-square distance between non-negative vectors:
///   d(x, y) = 1/2 * sum_i (x_i - y_i)^2 / (x_i + y_i + eps),  eps = 1e-12.
/// The epsilon guards bins that are zero in both vectors.
double chi_square_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Inverse of the mean chi-square distance over all unordered distinct
/// pairs of rows. Errors when fewer than two points are given or all points
/// coincide (the mean distance is zero).
double estimate_gamma(const Eigen::MatrixXd& features);

double kernel_eval(const KernelConfig& config, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y);

/// Dense Gram matrix over the rows of `features`. Symmetric by
/// construction; unit diagonal for both supported kernels.
Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& features,
                              const KernelConfig& config);

/// Vector of k(x, row_i) against every row of `train`.
Eigen::VectorXd kernel_row(const KernelConfig& config,
                           const Eigen::MatrixXd& train,
                           const Eigen::VectorXd& x);

}  // namespace swsl

#endif  // SWSL_KERNEL_HPP_
