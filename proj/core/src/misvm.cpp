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

#include "swsl/misvm.hpp"

#include <limits>
#include <vector>

namespace swsl {

namespace {

void validate_problem(const MilProblem& problem) {
  const std::size_t n = static_cast<std::size_t>(problem.instances.rows());
  std::vector<bool> owned(n, false);
  bool has_pos_bag = false;
  for (const MilBag& bag : problem.bags) {
    if (bag.label != -1 && bag.label != 1) {
      throw InvalidInput("misvm: bag \"" + bag.id + "\" label must be -1 or 1");
    }
    if (bag.member_rows.empty()) {
      throw InvalidInput("misvm: bag \"" + bag.id + "\" is empty");
    }
    if (bag.label > 0) has_pos_bag = true;
    for (std::size_t row : bag.member_rows) {
      if (row >= n) {
        throw InvalidInput("misvm: bag \"" + bag.id +
                           "\" references row out of range");
      }
      if (owned[row]) {
        throw InvalidInput("misvm: instance row " + std::to_string(row) +
                           " belongs to more than one bag");
      }
      owned[row] = true;
    }
  }
  for (std::size_t row = 0; row < n; ++row) {
    if (!owned[row]) {
      throw InvalidInput("misvm: instance row " + std::to_string(row) +
                         " belongs to no bag");
    }
  }
  if (!has_pos_bag) {
    throw InvalidInput("misvm: need at least one positive bag");
  }
}

}  // namespace

SvmModel train_misvm(const MilProblem& problem, double slack_c,
                     const KernelConfig& kernel, int max_outer,
                     MisvmTrace* trace) {
  validate_problem(problem);
  if (max_outer < 1) {
    throw InvalidInput("misvm: max_outer must be at least 1");
  }
  const std::size_t n = static_cast<std::size_t>(problem.instances.rows());

  // Working labels: negative-bag instances are pinned to -1, positive-bag
  // instances start at +1.
  std::vector<int> labels(n, -1);
  for (const MilBag& bag : problem.bags) {
    if (bag.label > 0) {
      for (std::size_t row : bag.member_rows) labels[row] = 1;
    }
  }

  MisvmTrace local_trace;
  MisvmTrace& rec = trace ? *trace : local_trace;
  rec = MisvmTrace{};
  rec.label_history.push_back(labels);

  SvmModel model;
  for (int outer = 0; outer < max_outer; ++outer) {
    model = train_kernel_svm(problem.instances, labels, slack_c, kernel);
    rec.outer_iterations = outer + 1;

    std::vector<int> next = labels;
    for (const MilBag& bag : problem.bags) {
      if (bag.label < 0) continue;
      bool any_positive = false;
      std::size_t best_row = bag.member_rows.front();
      double best_score = -std::numeric_limits<double>::infinity();
      for (std::size_t row : bag.member_rows) {
        const double score =
            model.predict_instance(problem.instances.row(
                static_cast<Eigen::Index>(row)));
        next[row] = score > 0.0 ? 1 : -1;
        if (next[row] == 1) any_positive = true;
        if (score > best_score) {
          best_score = score;
          best_row = row;
        }
      }
      // Keep the bag constraint: a positive bag must hold a positive.
      if (!any_positive) next[best_row] = 1;
    }

    rec.label_history.push_back(next);
    if (next == labels) {
      rec.converged = true;
      break;
    }
    labels = std::move(next);
  }
  return model;
}

SvmModel train_naive_swsl(const Eigen::MatrixXd& supervised_features,
                          const std::vector<int>& supervised_labels,
                          const MilProblem& weak, double slack_c,
                          const KernelConfig& kernel, int max_outer,
                          MisvmTrace* trace) {
  if (supervised_features.rows() !=
      static_cast<Eigen::Index>(supervised_labels.size())) {
    throw InvalidInput("naive_swsl: supervised labels size mismatch");
  }
  for (int label : supervised_labels) {
    if (label != -1 && label != 1) {
      throw InvalidInput("naive_swsl: supervised labels must be -1 or 1");
    }
  }

  const Eigen::Index weak_rows = weak.instances.rows();
  const Eigen::Index sup_rows = supervised_features.rows();
  if (weak_rows > 0 && sup_rows > 0 &&
      weak.instances.cols() != supervised_features.cols()) {
    throw InvalidInput("naive_swsl: feature dimension mismatch");
  }

  MilProblem combined;
  combined.instances.resize(weak_rows + sup_rows,
                            sup_rows > 0 ? supervised_features.cols()
                                         : weak.instances.cols());
  if (weak_rows > 0) combined.instances.topRows(weak_rows) = weak.instances;
  if (sup_rows > 0) combined.instances.bottomRows(sup_rows) = supervised_features;

  combined.bags = weak.bags;
  for (Eigen::Index i = 0; i < sup_rows; ++i) {
    MilBag singleton;
    singleton.id = "supervised_" + std::to_string(i);
    singleton.label = supervised_labels[static_cast<std::size_t>(i)];
    singleton.member_rows.push_back(static_cast<std::size_t>(weak_rows + i));
    combined.bags.push_back(std::move(singleton));
  }
  return train_misvm(combined, slack_c, kernel, max_outer, trace);
}

}  // namespace swsl
