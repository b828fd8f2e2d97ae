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

#ifndef SWSL_GMM_HPP_
#define SWSL_GMM_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "swsl/error.hpp"

namespace swsl {

/// Frame vectors for one audio segment (rows are frames).
struct FrameSequence {
  std::string segment_id;
  Eigen::MatrixXd frames;
};

struct EmSettings {
  double tol = 1e-6;    // relative log-likelihood change
  int max_iters = 200;
};

struct GmmTrainReport {
  std::vector<double> log_likelihood;  // one entry per EM iteration
  int iterations = 0;
  bool converged = false;
  std::vector<std::string> warnings;
};

/// Diagonal-covariance Gaussian mixture. Components act as audio words:
/// per-frame posteriors are averaged into soft-count histogram features.
class DiagGmm {
 public:
  DiagGmm() = default;
  DiagGmm(Eigen::VectorXd weights, Eigen::MatrixXd means,
          Eigen::MatrixXd variances);

  int num_components() const { return static_cast<int>(weights_.size()); }
  Eigen::Index dim() const { return means_.cols(); }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::MatrixXd& means() const { return means_; }
  const Eigen::MatrixXd& variances() const { return variances_; }

  /// Pr(c | frame) for every component, computed in log space. Entries are
  /// non-negative and sum to 1.
  Eigen::VectorXd posterior(const Eigen::VectorXd& frame) const;

  /// Total log-likelihood of a set of frames under the mixture.
  double log_likelihood(const Eigen::MatrixXd& frames) const;

  /// EM training over the pooled frames of all sequences. Initialization is
  /// k-means++ seeding followed by one hard-assignment step; every M-step
  /// floors the variances at 1e-6 of the global per-dimension variance.
  static DiagGmm train(const std::vector<FrameSequence>& sequences,
                       int num_components, std::uint64_t seed,
                       const EmSettings& settings = {},
                       GmmTrainReport* report = nullptr);

 private:
  Eigen::VectorXd weights_;    // C
  Eigen::MatrixXd means_;      // C x d
  Eigen::MatrixXd variances_;  // C x d
  // Cached per-component log(w_c) - 1/2 sum_d log(2 pi var_cd).
  Eigen::VectorXd log_norm_;

  void refresh_cache();
  Eigen::VectorXd log_joint(const Eigen::VectorXd& frame) const;
};

/// H(c) = (1/M) sum_t Pr(c | f_t), normalized to sum to 1.
Eigen::VectorXd soft_count_histogram(const DiagGmm& gmm,
                                     const FrameSequence& seq);

/// One frame per row, comma-separated. segment_id is the file stem.
FrameSequence load_frames_csv(const std::filesystem::path& path);

DiagGmm load_gmm(const std::filesystem::path& path);
void save_gmm(const DiagGmm& gmm, const std::filesystem::path& path);
std::string gmm_to_json_string(const DiagGmm& gmm);

}  // namespace swsl

#endif  // SWSL_GMM_HPP_
