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

#ifndef SWSL_EVAL_HPP_
#define SWSL_EVAL_HPP_

#include <map>
#include <string>
#include <vector>

#include "swsl/dataset.hpp"
#include "swsl/model.hpp"
#include "swsl/synth.hpp"

namespace swsl {

/// Scores with parallel ground truth in {-1, +1}.
struct RankedResult {
  std::vector<double> scores;
  std::vector<int> truth;
};

/// Non-interpolated average precision: sort by score descending (ties keep
/// input order), average the precision at each positive's rank. Errors when
/// the truth contains no positive.
double average_precision(const RankedResult& result);

enum class EvalLevel { kBag, kInstance };

std::string eval_level_name(EvalLevel level);
EvalLevel eval_level_from_name(const std::string& name);

struct EvalReport {
  std::map<std::string, double> per_class_ap;
  double map_value = 0.0;
  std::string level;
  std::map<std::string, std::pair<int, int>> counts;  // class -> (pos, neg)
};

/// Bag level ranks every bag by its max instance score (supervised
/// instances count as singletons, truth = their labels); instance level
/// ranks every instance with a ground-truth entry. Datasets here are binary,
/// so the report carries a single "positive" class and MAP equals its AP.
EvalReport evaluate(const Model& model, const SwslDataset& data,
                    EvalLevel level, const GroundTruth* truth = nullptr);

std::string eval_report_to_json_string(const EvalReport& report);

enum class SelectionMetric { kAp, kMap };

/// Hyperparameter grid. For graphSWSL the cells are (lambda1, lambda2); for
/// the SVM-based methods lambda1_values doubles as the slack-C candidates
/// and lambda2 is inert.
struct GridSpec {
  std::vector<double> lambda1_values;
  std::vector<double> lambda2_values;
  SelectionMetric selection_metric = SelectionMetric::kAp;
};

/// Seven log-spaced values from 1e-3 to 1e3 per axis.
GridSpec default_grid();

struct CvCell {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::vector<double> fold_scores;
  double mean_score = 0.0;
  bool failed = false;
  std::string error;
};

struct CvResult {
  double best_lambda1 = 0.0;
  double best_lambda2 = 0.0;
  std::vector<CvCell> table;
};

/// Trains on all-but-one fold per cell, scores the held-out fold at bag
/// level, and averages across folds. Ties pick the smaller lambda1, then
/// the smaller lambda2. Cells whose training fails are excluded; if every
/// cell fails the cross-validation itself fails.
CvResult cross_validate(const SwslDataset& data, const FoldSpec& folds,
                        const GridSpec& grid, const TrainSettings& base);

std::string cv_result_to_json_string(const CvResult& result);

}  // namespace swsl

#endif  // SWSL_EVAL_HPP_
