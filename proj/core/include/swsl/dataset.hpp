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

#ifndef SWSL_DATASET_HPP_
#define SWSL_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "swsl/error.hpp"

namespace swsl {

/// A single data point (an audio segment in the motivating application).
/// `label`, when present, is -1 or +1. Feature entries must be finite; for
/// chi-square kernels they must also be non-negative.
struct Instance {
  std::string id;
  Eigen::VectorXd features;
  std::optional<int> label;
};

/// A recording-level group of instances carrying a weak label (-1 or +1).
struct Bag {
  std::string id;
  int label = 0;
  std::vector<std::string> instance_ids;
};

/// Labeled instances plus weakly labeled bags, validated on construction:
/// unique ids, consistent feature dimension, bag references resolve, every
/// instance is either labeled or belongs to exactly one bag. Instances
/// inside positive bags must be unlabeled (their labels are what the weak
/// label hides); a labeled instance inside a positive bag is rejected.
/// Immutable after construction and safe for concurrent reads.
class SwslDataset {
 public:
  SwslDataset(std::vector<Instance> instances, std::vector<Bag> bags);

  const std::vector<Instance>& instances() const { return instances_; }
  const std::vector<Bag>& bags() const { return bags_; }

  bool has_instance(const std::string& id) const;
  const Instance& instance(const std::string& id) const;

  /// Indices (into instances()) of labeled instances not referenced by any
  /// bag, in input order. These form the supervised set.
  const std::vector<std::size_t>& supervised_indices() const {
    return supervised_indices_;
  }

  std::size_t num_supervised() const { return supervised_indices_.size(); }
  Eigen::Index dim() const { return dim_; }

 private:
  std::vector<Instance> instances_;
  std::vector<Bag> bags_;
  std::unordered_map<std::string, std::size_t> index_by_id_;
  std::vector<std::size_t> supervised_indices_;
  Eigen::Index dim_ = 0;
};

/// Half-open row range [begin, end) into IndexedDataset::features.
/// External reports always print ranges 1-based inclusive.
struct BagRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

/// Where a canonical row came from: the source instance id and, when the
/// row belongs to a bag, that bag's id (empty otherwise).
struct Provenance {
  std::string instance_id;
  std::string bag_id;
};

/// The canonical training layout: rows 0..n-1 are labeled (supervised
/// instances followed by dissolved negative-bag instances), rows n..N-1 are
/// positive-bag instances grouped contiguously per bag.
struct IndexedDataset {
  Eigen::MatrixXd features;        // N x d, one row per instance
  std::vector<int> labels;         // size N; +/-1 for the first n, 0 after
  std::size_t num_labeled = 0;     // n
  std::vector<BagRange> bag_ranges;  // T ranges exactly tiling [n, N)
  std::vector<Provenance> provenance;  // size N

  std::size_t size() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t num_weak() const { return size() - num_labeled; }
  std::size_t num_bags() const { return bag_ranges.size(); }
};

/// Lays a dataset out in canonical training order. Negative bags are
/// dissolved into the labeled pool (all their instances are known negative);
/// positive bags keep their grouping and get ranges recorded.
IndexedDataset assemble_training_set(const SwslDataset& dataset);

SwslDataset load_dataset(const std::filesystem::path& path);
void save_dataset(const SwslDataset& dataset, const std::filesystem::path& path);

/// JSON round-trip helpers used by both the file API and the CLI.
SwslDataset dataset_from_json_string(const std::string& text);
std::string dataset_to_json_string(const SwslDataset& dataset);

/// Cross-validation fold assignment over supervised instances and bags.
/// Bags are atomic: a bag id maps to one fold and all its instances follow.
struct FoldSpec {
  std::map<std::string, int> fold_of;  // unit id (instance or bag) -> fold
  int num_folds = 0;
};

/// Deterministically shuffles the units (supervised instance ids, then bag
/// ids) with the given seed and deals them round-robin, so fold sizes differ
/// by at most one unit.
FoldSpec make_folds(const SwslDataset& dataset, int num_folds,
                    std::uint64_t seed);

}  // namespace swsl

#endif  // SWSL_DATASET_HPP_
