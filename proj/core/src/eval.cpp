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

#include "swsl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include <nlohmann/json.hpp>

namespace swsl {

namespace {
using nlohmann::json;
}

double average_precision(const RankedResult& result) {
  const std::size_t n = result.scores.size();
  if (result.truth.size() != n) {
    throw InvalidInput("average_precision: scores and truth sizes differ");
  }
  std::size_t positives = 0;
  for (int t : result.truth) {
    if (t != -1 && t != 1) {
      throw InvalidInput("average_precision: truth must be -1 or 1");
    }
    if (t == 1) ++positives;
  }
  if (positives == 0) {
    throw InvalidInput("average_precision: no positives in truth");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return result.scores[a] > result.scores[b];
  });

  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t rank = 1; rank <= n; ++rank) {
    if (result.truth[order[rank - 1]] == 1) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(rank);
    }
  }
  return sum / static_cast<double>(positives);
}

std::string eval_level_name(EvalLevel level) {
  return level == EvalLevel::kBag ? "bag" : "instance";
}

EvalLevel eval_level_from_name(const std::string& name) {
  if (name == "bag") return EvalLevel::kBag;
  if (name == "instance") return EvalLevel::kInstance;
  throw InvalidInput("unknown evaluation level \"" + name + "\"");
}

EvalReport evaluate(const Model& model, const SwslDataset& data,
                    EvalLevel level, const GroundTruth* truth) {
  RankedResult ranked;
  if (level == EvalLevel::kBag) {
    for (const Bag& bag : data.bags()) {
      Eigen::MatrixXd members(static_cast<Eigen::Index>(bag.instance_ids.size()),
                              data.dim());
      for (std::size_t i = 0; i < bag.instance_ids.size(); ++i) {
        members.row(static_cast<Eigen::Index>(i)) =
            data.instance(bag.instance_ids[i]).features;
      }
      ranked.scores.push_back(model.predict_bag(members));
      ranked.truth.push_back(bag.label);
    }
    // Supervised instances act as singleton bags.
    for (std::size_t idx : data.supervised_indices()) {
      const Instance& inst = data.instances()[idx];
      ranked.scores.push_back(model.predict_instance(inst.features));
      ranked.truth.push_back(*inst.label);
    }
  } else {
    if (truth == nullptr) {
      throw InvalidInput("instance-level evaluation requires ground truth");
    }
    for (const Instance& inst : data.instances()) {
      auto it = truth->labels.find(inst.id);
      if (it == truth->labels.end()) continue;
      ranked.scores.push_back(model.predict_instance(inst.features));
      ranked.truth.push_back(it->second);
    }
    if (ranked.scores.empty()) {
      throw InvalidInput("ground truth covers no instance of the dataset");
    }
  }

  EvalReport report;
  report.level = eval_level_name(level);
  const double ap = average_precision(ranked);
  report.per_class_ap["positive"] = ap;
  report.map_value = ap;
  int pos = 0, neg = 0;
  for (int t : ranked.truth) (t == 1 ? pos : neg) += 1;
  report.counts["positive"] = {pos, neg};
  return report;
}

std::string eval_report_to_json_string(const EvalReport& report) {
  json root;
  root["level"] = report.level;
  root["per_class_ap"] = json::object();
  for (const auto& [name, ap] : report.per_class_ap) {
    root["per_class_ap"][name] = ap;
  }
  root["map"] = report.map_value;
  root["counts"] = json::object();
  for (const auto& [name, pn] : report.counts) {
    root["counts"][name] = {{"positives", pn.first}, {"negatives", pn.second}};
  }
  return root.dump(2) + "\n";
}

GridSpec default_grid() {
  GridSpec grid;
  for (int e = -3; e <= 3; ++e) {
    grid.lambda1_values.push_back(std::pow(10.0, e));
    grid.lambda2_values.push_back(std::pow(10.0, e));
  }
  return grid;
}

namespace {

struct FoldSplit {
  std::vector<Instance> train_instances;
  std::vector<Bag> train_bags;
  std::vector<std::string> test_supervised;  // instance ids
  std::vector<const Bag*> test_bags;
};

int fold_of_unit(const FoldSpec& folds, const std::string& id) {
  auto it = folds.fold_of.find(id);
  if (it == folds.fold_of.end()) {
    throw InvalidInput("fold spec does not cover unit \"" + id + "\"");
  }
  return it->second;
}

FoldSplit split_fold(const SwslDataset& data, const FoldSpec& folds,
                     int fold) {
  FoldSplit split;
  // Instances travel with their owning unit (themselves, or their bag).
  std::map<std::string, int> instance_fold;
  for (std::size_t idx : data.supervised_indices()) {
    const std::string& id = data.instances()[idx].id;
    instance_fold[id] = fold_of_unit(folds, id);
  }
  for (const Bag& bag : data.bags()) {
    const int bag_fold = fold_of_unit(folds, bag.id);
    for (const std::string& ref : bag.instance_ids) {
      instance_fold[ref] = bag_fold;
    }
    if (bag_fold == fold) {
      split.test_bags.push_back(&bag);
    } else {
      split.train_bags.push_back(bag);
    }
  }
  for (const Instance& inst : data.instances()) {
    auto it = instance_fold.find(inst.id);
    if (it == instance_fold.end()) continue;  // unreachable by construction
    if (it->second != fold) {
      split.train_instances.push_back(inst);
    }
  }
  for (std::size_t idx : data.supervised_indices()) {
    const std::string& id = data.instances()[idx].id;
    if (fold_of_unit(folds, id) == fold) {
      split.test_supervised.push_back(id);
    }
  }
  return split;
}

double score_fold(const Model& model, const SwslDataset& data,
                  const FoldSplit& split, SelectionMetric /*metric*/) {
  // Binary datasets: AP and MAP coincide.
  RankedResult ranked;
  for (const Bag* bag : split.test_bags) {
    Eigen::MatrixXd members(
        static_cast<Eigen::Index>(bag->instance_ids.size()), data.dim());
    for (std::size_t i = 0; i < bag->instance_ids.size(); ++i) {
      members.row(static_cast<Eigen::Index>(i)) =
          data.instance(bag->instance_ids[i]).features;
    }
    ranked.scores.push_back(model.predict_bag(members));
    ranked.truth.push_back(bag->label);
  }
  for (const std::string& id : split.test_supervised) {
    const Instance& inst = data.instance(id);
    ranked.scores.push_back(model.predict_instance(inst.features));
    ranked.truth.push_back(*inst.label);
  }
  return average_precision(ranked);
}

}  // namespace

CvResult cross_validate(const SwslDataset& data, const FoldSpec& folds,
                        const GridSpec& grid, const TrainSettings& base) {
  if (folds.num_folds < 2) {
    throw InvalidInput("cross_validate: need at least 2 folds");
  }
  if (grid.lambda1_values.empty() || grid.lambda2_values.empty()) {
    throw InvalidInput("cross_validate: empty grid");
  }

  // SVM-based methods tune the slack parameter through the lambda1 axis;
  // lambda2 has no meaning for them.
  const bool svm_family = base.method != Method::kGraphSwsl;
  std::vector<double> lambda2_axis =
      svm_family ? std::vector<double>{0.0} : grid.lambda2_values;

  std::vector<FoldSplit> splits;
  std::vector<int> usable_folds;
  for (int f = 0; f < folds.num_folds; ++f) {
    FoldSplit split = split_fold(data, folds, f);
    bool has_positive = false;
    for (const Bag* bag : split.test_bags) has_positive |= bag->label == 1;
    for (const std::string& id : split.test_supervised) {
      has_positive |= *data.instance(id).label == 1;
    }
    if (has_positive) {
      usable_folds.push_back(f);
    } else {
      std::cerr << "cv: fold " << f
                << " holds no positive unit and is skipped\n";
    }
    splits.push_back(std::move(split));
  }
  if (usable_folds.empty()) {
    throw InvalidInput("cross_validate: no fold contains a positive unit");
  }

  CvResult result;
  for (double l1 : grid.lambda1_values) {
    for (double l2 : lambda2_axis) {
      CvCell cell;
      cell.lambda1 = l1;
      cell.lambda2 = l2;
      for (int f : usable_folds) {
        const FoldSplit& split = splits[f];
        try {
          SwslDataset train_data(split.train_instances, split.train_bags);
          TrainSettings settings = base;
          if (svm_family) {
            settings.slack_c = l1;
          } else {
            settings.solver.lambda1 = l1;
            settings.solver.lambda2 = l2;
          }
          Model model = train_model(train_data, settings);
          cell.fold_scores.push_back(
              score_fold(model, data, split, grid.selection_metric));
        } catch (const Error& e) {
          cell.failed = true;
          cell.error = e.what();
          std::cerr << "cv: cell (lambda1=" << l1 << ", lambda2=" << l2
                    << ") fold " << f << " failed: " << e.what() << "\n";
          break;
        }
      }
      if (!cell.failed && !cell.fold_scores.empty()) {
        cell.mean_score =
            std::accumulate(cell.fold_scores.begin(), cell.fold_scores.end(),
                            0.0) /
            static_cast<double>(cell.fold_scores.size());
      }
      result.table.push_back(std::move(cell));
    }
  }

  const CvCell* best = nullptr;
  for (const CvCell& cell : result.table) {
    if (cell.failed) continue;
    if (best == nullptr || cell.mean_score > best->mean_score ||
        (cell.mean_score == best->mean_score &&
         (cell.lambda1 < best->lambda1 ||
          (cell.lambda1 == best->lambda1 && cell.lambda2 < best->lambda2)))) {
      best = &cell;
    }
  }
  if (best == nullptr) {
    throw ComputeError("cross_validate: every grid cell failed");
  }
  result.best_lambda1 = best->lambda1;
  result.best_lambda2 = best->lambda2;
  return result;
}

std::string cv_result_to_json_string(const CvResult& result) {
  json root;
  root["best"]["lambda1"] = result.best_lambda1;
  root["best"]["lambda2"] = result.best_lambda2;
  root["table"] = json::array();
  for (const CvCell& cell : result.table) {
    json node;
    node["lambda1"] = cell.lambda1;
    node["lambda2"] = cell.lambda2;
    node["fold_scores"] = cell.fold_scores;
    node["mean_score"] = cell.mean_score;
    node["failed"] = cell.failed;
    if (cell.failed) node["error"] = cell.error;
    root["table"].push_back(std::move(node));
  }
  return root.dump(2) + "\n";
}

}  // namespace swsl
