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

#include "swsl/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swsl {

namespace {

constexpr double kKktTolerance = 1e-5;
constexpr int kMaxPairUpdates = 100000;
constexpr double kTau = 1e-12;

}  // namespace

double SvmModel::predict_instance(const Eigen::VectorXd& x) const {
  if (x.size() != train_features.cols()) {
    throw InvalidInput("svm predict: feature dimension mismatch");
  }
  double sum = bias;
  for (std::size_t idx : support_indices) {
    sum += dual_coef[static_cast<Eigen::Index>(idx)] *
           kernel_eval(kernel, train_features.row(static_cast<Eigen::Index>(idx)), x);
  }
  return sum;
}

double SvmModel::predict_bag(const Eigen::MatrixXd& bag) const {
  if (bag.rows() < 1) {
    throw InvalidInput("svm predict_bag: empty bag");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < bag.rows(); ++r) {
    best = std::max(best, predict_instance(bag.row(r)));
  }
  return best;
}

SvmModel train_kernel_svm(const Eigen::MatrixXd& features,
                          const std::vector<int>& labels, double slack_c,
                          const KernelConfig& kernel, SvmTrainReport* report) {
  const Eigen::Index n = features.rows();
  if (n < 2) {
    throw InvalidInput("train_kernel_svm: need at least 2 instances");
  }
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw InvalidInput("train_kernel_svm: labels size mismatch");
  }
  if (slack_c <= 0.0) {
    throw InvalidInput("train_kernel_svm: slack C must be positive");
  }
  bool has_pos = false, has_neg = false;
  for (int label : labels) {
    if (label == 1) {
      has_pos = true;
    } else if (label == -1) {
      has_neg = true;
    } else {
      throw InvalidInput("train_kernel_svm: labels must be -1 or 1");
    }
  }
  if (!has_pos || !has_neg) {
    throw InvalidInput("train_kernel_svm: both classes must be present");
  }

  const Eigen::MatrixXd gram = kernel_matrix(features, kernel);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = labels[i];

  // Minimize 1/2 a'Qa - e'a with Q_ij = y_i y_j K_ij, 0 <= a <= C, y'a = 0.
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);  // Q a - e

  auto in_up = [&](Eigen::Index i) {
    return (y[i] > 0.0 && alpha[i] < slack_c) || (y[i] < 0.0 && alpha[i] > 0.0);
  };
  auto in_low = [&](Eigen::Index i) {
    return (y[i] > 0.0 && alpha[i] > 0.0) || (y[i] < 0.0 && alpha[i] < slack_c);
  };

  int updates = 0;
  double violation = std::numeric_limits<double>::infinity();
  while (updates < kMaxPairUpdates) {
    // Maximal violating pair.
    Eigen::Index i = -1, j = -1;
    double up_best = -std::numeric_limits<double>::infinity();
    double low_best = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
      const double score = -y[t] * grad[t];
      if (in_up(t) && score > up_best) {
        up_best = score;
        i = t;
      }
      if (in_low(t) && score < low_best) {
        low_best = score;
        j = t;
      }
    }
    violation = up_best - low_best;
    if (i < 0 || j < 0 || violation <= kKktTolerance) break;

    // Curvature along the feasible pair direction is |phi_i - phi_j|^2 in
    // feature space for either label combination.
    const double old_ai = alpha[i], old_aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = gram(i, i) + gram(j, j) - 2.0 * gram(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else {
        if (alpha[i] < 0.0) {
          alpha[i] = 0.0;
          alpha[j] = -diff;
        }
      }
      if (diff > 0.0) {
        if (alpha[i] > slack_c) {
          alpha[i] = slack_c;
          alpha[j] = slack_c - diff;
        }
      } else {
        if (alpha[j] > slack_c) {
          alpha[j] = slack_c;
          alpha[i] = slack_c + diff;
        }
      }
    } else {
      double quad = gram(i, i) + gram(j, j) - 2.0 * gram(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > slack_c) {
        if (alpha[i] > slack_c) {
          alpha[i] = slack_c;
          alpha[j] = sum - slack_c;
        }
      } else {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = sum;
        }
      }
      if (sum > slack_c) {
        if (alpha[j] > slack_c) {
          alpha[j] = slack_c;
          alpha[i] = sum - slack_c;
        }
      } else {
        if (alpha[i] < 0.0) {
          alpha[i] = 0.0;
          alpha[j] = sum;
        }
      }
    }

    const double di = (alpha[i] - old_ai) * y[i];
    const double dj = (alpha[j] - old_aj) * y[j];
    for (Eigen::Index t = 0; t < n; ++t) {
      grad[t] += y[t] * (gram(t, i) * di + gram(t, j) * dj);
    }
    ++updates;
  }

  // Bias from the free support vectors, or the KKT midpoint when none is
  // strictly inside the box.
  double free_sum = 0.0;
  int free_count = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    if (alpha[t] > 0.0 && alpha[t] < slack_c) {
      free_sum += -y[t] * grad[t];
      ++free_count;
    }
  }
  double bias;
  if (free_count > 0) {
    bias = free_sum / free_count;
  } else {
    double up_best = -std::numeric_limits<double>::infinity();
    double low_best = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
      const double score = -y[t] * grad[t];
      if (in_up(t)) up_best = std::max(up_best, score);
      if (in_low(t)) low_best = std::min(low_best, score);
    }
    bias = 0.5 * (up_best + low_best);
  }

  SvmModel model;
  model.dual_coef = alpha.cwiseProduct(y);
  model.bias = bias;
  model.train_features = features;
  model.kernel = kernel;
  model.slack_c = slack_c;
  for (Eigen::Index t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      model.support_indices.push_back(static_cast<std::size_t>(t));
    }
  }

  if (report) {
    report->pair_updates = updates;
    report->kkt_violation = violation;
    report->converged = violation <= kKktTolerance;
    // Dual objective e'a - 1/2 a'Qa; grad = Qa - e, so a'Qa = a'grad + a'e.
    report->dual_objective = 0.5 * (alpha.sum() - alpha.dot(grad));
  }
  return model;
}

}  // namespace swsl
