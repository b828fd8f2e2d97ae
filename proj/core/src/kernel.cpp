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

#include "swsl/kernel.hpp"

#include <cmath>

namespace swsl {

namespace {
constexpr double kChi2Epsilon = 1e-12;
}

std::string kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::kExpChi2: return "exp_chi2";
    case KernelKind::kRbf: return "rbf";
  }
  return "exp_chi2";
}

KernelKind kernel_kind_from_name(const std::string& name) {
  if (name == "exp_chi2") return KernelKind::kExpChi2;
  if (name == "rbf") return KernelKind::kRbf;
  throw InvalidInput("unknown kernel kind \"" + name + "\"");
}

double chi_square_distance(const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) {
  if (x.size() != y.size()) {
    throw InvalidInput("chi_square_distance: dimension mismatch");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0 || y[i] < 0.0) {
      throw InvalidInput("chi_square_distance: negative entry at index " +
                         std::to_string(i));
    }
    const double diff = x[i] - y[i];
    sum += diff * diff / (x[i] + y[i] + kChi2Epsilon);
  }
  return 0.5 * sum;
}

double estimate_gamma(const Eigen::MatrixXd& features) {
  const Eigen::Index n = features.rows();
  if (n < 2) {
    throw InvalidInput("estimate_gamma: need at least 2 points");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      total += chi_square_distance(features.row(i), features.row(j));
    }
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  const double mean = total / pairs;
  if (mean <= 0.0) {
    throw InvalidInput("estimate_gamma: mean pairwise distance is zero");
  }
  return 1.0 / mean;
}

double kernel_eval(const KernelConfig& config, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y) {
  switch (config.kind) {
    case KernelKind::kExpChi2:
      return std::exp(-config.gamma * chi_square_distance(x, y));
    case KernelKind::kRbf: {
      if (x.size() != y.size()) {
        throw InvalidInput("kernel_eval: dimension mismatch");
      }
      const double sq = (x - y).squaredNorm();
      return std::exp(-sq / (2.0 * config.sigma * config.sigma));
    }
  }
  throw InvalidInput("kernel_eval: unknown kernel kind");
}

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& features,
                              const KernelConfig& config) {
  const Eigen::Index n = features.rows();
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = 1.0;  // d(x, x) = 0 for both kernels
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double value = kernel_eval(config, features.row(i), features.row(j));
      gram(i, j) = value;
      gram(j, i) = value;
    }
  }
  return gram;
}

Eigen::VectorXd kernel_row(const KernelConfig& config,
                           const Eigen::MatrixXd& train,
                           const Eigen::VectorXd& x) {
  if (train.cols() != x.size()) {
    throw InvalidInput("kernel_row: dimension mismatch");
  }
  Eigen::VectorXd row(train.rows());
  for (Eigen::Index i = 0; i < train.rows(); ++i) {
    row[i] = kernel_eval(config, train.row(i), x);
  }
  return row;
}

}  // namespace swsl
