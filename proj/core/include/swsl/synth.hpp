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

#ifndef SWSL_SYNTH_HPP_
#define SWSL_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "swsl/dataset.hpp"

namespace swsl {

/// Parameters for synthetic weakly labeled data with known instance truth.
///
/// Positive and negative instances are drawn from two unit-variance
/// Gaussian clusters whose means are `cluster_separation` apart, optionally
/// perturbed by extra noise, then mapped through softplus and L1-normalized
/// so the outputs look like histogram features (non-negative, sum 1).
struct SynthConfig {
  std::uint64_t seed = 0;
  int dim = 8;
  int num_supervised_pos = 0;
  int num_supervised_neg = 0;
  int num_pos_bags = 0;
  int num_neg_bags = 0;
  int bag_size = 5;
  double witness_rate = 1.0;      // fraction of true positives per clean bag
  double bag_label_noise = 0.0;   // fraction of positive bags with no witness
  double signal_noise_sd = 0.0;
  double cluster_separation = 4.0;
};

/// True instance-level labels, including for instances hidden inside bags.
struct GroundTruth {
  std::map<std::string, int> labels;
};

struct SynthResult {
  SwslDataset dataset;
  GroundTruth truth;
};

/// Deterministic in `config.seed`. Clean positive bags contain exactly
/// ceil(witness_rate * bag_size) true positives; mislabeled positive bags
/// contain only negatives; negative bags contain only negatives.
SynthResult generate(const SynthConfig& config);

SynthConfig synth_config_from_json_string(const std::string& text);
SynthConfig load_synth_config(const std::filesystem::path& path);

GroundTruth load_ground_truth(const std::filesystem::path& path);
void save_ground_truth(const GroundTruth& truth,
                       const std::filesystem::path& path);
std::string ground_truth_to_json_string(const GroundTruth& truth);

}  // namespace swsl

#endif  // SWSL_SYNTH_HPP_
