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

#ifndef SWSL_MISVM_HPP_
#define SWSL_MISVM_HPP_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "swsl/svm.hpp"

namespace swsl {

/// A multiple-instance problem over a shared instance matrix. Every
/// instance row belongs to exactly one bag; negative-bag instances are
/// treated as individually labeled negatives throughout.
struct MilBag {
  std::string id;
  int label = 0;
  std::vector<std::size_t> member_rows;
};

struct MilProblem {
  Eigen::MatrixXd instances;
  std::vector<MilBag> bags;
};

/// Working label assignments per outer iteration (recorded after the
/// forced-witness repair, so every entry satisfies the bag constraint).
struct MisvmTrace {
  std::vector<std::vector<int>> label_history;
  int outer_iterations = 0;
  bool converged = false;
};

/// The alternating miSVM heuristic: start with every positive-bag instance
/// labeled +1; train an SVM, relabel positive-bag instances by decision
/// sign, and force the top-scoring instance of any positive bag left without
/// a positive back to +1. Stops when the labels stabilize or after
/// max_outer rounds.
SvmModel train_misvm(const MilProblem& problem, double slack_c,
                     const KernelConfig& kernel, int max_outer = 20,
                     MisvmTrace* trace = nullptr);

/// naiveSWSL: each supervised instance becomes a singleton bag carrying its
/// label, appended after the weak bags; then miSVM runs on the combined
/// pool. With no weak bags this reduces exactly to the supervised SVM.
SvmModel train_naive_swsl(const Eigen::MatrixXd& supervised_features,
                          const std::vector<int>& supervised_labels,
                          const MilProblem& weak, double slack_c,
                          const KernelConfig& kernel, int max_outer = 20,
                          MisvmTrace* trace = nullptr);

}  // namespace swsl

#endif  // SWSL_MISVM_HPP_
