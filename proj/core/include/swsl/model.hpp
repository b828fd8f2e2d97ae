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

#ifndef SWSL_MODEL_HPP_
#define SWSL_MODEL_HPP_

#include <filesystem>
#include <string>
#include <variant>

#include "swsl/dataset.hpp"
#include "swsl/graph_swsl.hpp"
#include "swsl/misvm.hpp"

namespace swsl {

enum class Method { kGraphSwsl, kMisvm, kNaiveSwsl, kSvm };

std::string method_name(Method method);
Method method_from_name(const std::string& name);

/// Either solver family behind one prediction surface.
struct Model {
  Method method = Method::kGraphSwsl;
  std::variant<GraphSwslModel, SvmModel> impl;

  double predict_instance(const Eigen::VectorXd& x) const;
  double predict_bag(const Eigen::MatrixXd& bag) const;
};

/// Everything a training run needs besides the data. `gamma_auto` replaces
/// kernel.gamma with the inverse mean chi-square distance over whatever
/// instances the chosen method trains on.
struct TrainSettings {
  Method method = Method::kGraphSwsl;
  KernelConfig kernel;
  bool gamma_auto = true;
  GraphConfig graph;
  SolverConfig solver;
  double slack_c = 1.0;
  int misvm_max_outer = 20;
};

/// Dispatches on settings.method:
///  - graphswsl: everything (supervised pool, dissolved negative bags,
///    positive bags) through the manifold-regularized solver;
///  - misvm: positive and negative bags only (weak-only baseline);
///  - naive_swsl: weak bags plus supervised instances as singleton bags;
///  - svm: the labeled pool only (supervised plus negative-bag instances).
Model train_model(const SwslDataset& data, const TrainSettings& settings);

Model load_model(const std::filesystem::path& path);
void save_model(const Model& model, const std::filesystem::path& path);
std::string model_to_json_string(const Model& model);

}  // namespace swsl

#endif  // SWSL_MODEL_HPP_
