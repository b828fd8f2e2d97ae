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

#include "swsl/model.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace swsl {

namespace {

using nlohmann::json;

json kernel_to_json(const KernelConfig& kernel) {
  json node;
  node["kind"] = kernel_kind_name(kernel.kind);
  node["gamma"] = kernel.gamma;
  node["sigma"] = kernel.sigma;
  return node;
}

KernelConfig kernel_from_json(const json& node) {
  if (!node.is_object() || !node.contains("kind")) {
    throw InvalidInput("model JSON: bad kernel section");
  }
  KernelConfig kernel;
  kernel.kind = kernel_kind_from_name(node["kind"].get<std::string>());
  if (node.contains("gamma")) kernel.gamma = node["gamma"].get<double>();
  if (node.contains("sigma")) kernel.sigma = node["sigma"].get<double>();
  return kernel;
}

json matrix_to_json(const Eigen::MatrixXd& mat) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < mat.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < mat.cols(); ++c) row.push_back(mat(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& node) {
  if (!node.is_array() || node.empty() || !node[0].is_array()) {
    throw InvalidInput("model JSON: bad train_features");
  }
  const std::size_t rows = node.size();
  const std::size_t cols = node[0].size();
  Eigen::MatrixXd mat(static_cast<Eigen::Index>(rows),
                      static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (node[r].size() != cols) {
      throw InvalidInput("model JSON: ragged train_features");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          node[r][c].get<double>();
    }
  }
  return mat;
}

Eigen::VectorXd vector_from_json(const json& node, const std::string& what) {
  if (!node.is_array()) {
    throw InvalidInput("model JSON: \"" + what + "\" must be an array");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = node[i].get<double>();
  }
  return v;
}

// The labeled pool: supervised instances followed by dissolved negative
// bags, mirroring the canonical layout.
std::pair<Eigen::MatrixXd, std::vector<int>> labeled_pool(
    const SwslDataset& data) {
  std::vector<const Instance*> rows;
  std::vector<int> labels;
  for (std::size_t idx : data.supervised_indices()) {
    rows.push_back(&data.instances()[idx]);
    labels.push_back(*data.instances()[idx].label);
  }
  for (const Bag& bag : data.bags()) {
    if (bag.label > 0) continue;
    for (const std::string& ref : bag.instance_ids) {
      rows.push_back(&data.instance(ref));
      labels.push_back(-1);
    }
  }
  Eigen::MatrixXd features(static_cast<Eigen::Index>(rows.size()), data.dim());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    features.row(static_cast<Eigen::Index>(r)) = rows[r]->features;
  }
  return {std::move(features), std::move(labels)};
}

// All bag instances as one matrix, bags remapped to row indices.
MilProblem weak_problem(const SwslDataset& data) {
  MilProblem problem;
  std::size_t total = 0;
  for (const Bag& bag : data.bags()) total += bag.instance_ids.size();
  problem.instances.resize(static_cast<Eigen::Index>(total), data.dim());
  std::size_t row = 0;
  for (const Bag& bag : data.bags()) {
    MilBag mil;
    mil.id = bag.id;
    mil.label = bag.label;
    for (const std::string& ref : bag.instance_ids) {
      problem.instances.row(static_cast<Eigen::Index>(row)) =
          data.instance(ref).features;
      mil.member_rows.push_back(row);
      ++row;
    }
    problem.bags.push_back(std::move(mil));
  }
  return problem;
}

KernelConfig resolve_kernel(const TrainSettings& settings,
                            const Eigen::MatrixXd& train_features) {
  KernelConfig kernel = settings.kernel;
  if (settings.gamma_auto && kernel.kind == KernelKind::kExpChi2) {
    kernel.gamma = estimate_gamma(train_features);
  }
  return kernel;
}

}  // namespace

std::string method_name(Method method) {
  switch (method) {
    case Method::kGraphSwsl: return "graphswsl";
    case Method::kMisvm: return "misvm";
    case Method::kNaiveSwsl: return "naive_swsl";
    case Method::kSvm: return "svm";
  }
  return "graphswsl";
}

Method method_from_name(const std::string& name) {
  if (name == "graphswsl") return Method::kGraphSwsl;
  if (name == "misvm") return Method::kMisvm;
  if (name == "naive_swsl") return Method::kNaiveSwsl;
  if (name == "svm") return Method::kSvm;
  throw InvalidInput("unknown method \"" + name + "\"");
}

double Model::predict_instance(const Eigen::VectorXd& x) const {
  return std::visit([&](const auto& m) { return m.predict_instance(x); }, impl);
}

double Model::predict_bag(const Eigen::MatrixXd& bag) const {
  return std::visit([&](const auto& m) { return m.predict_bag(bag); }, impl);
}

Model train_model(const SwslDataset& data, const TrainSettings& settings) {
  Model model;
  model.method = settings.method;
  switch (settings.method) {
    case Method::kGraphSwsl: {
      IndexedDataset indexed = assemble_training_set(data);
      const KernelConfig kernel = resolve_kernel(settings, indexed.features);
      model.impl = train_graph_swsl(indexed, kernel, settings.graph,
                                    settings.solver);
      break;
    }
    case Method::kMisvm: {
      MilProblem problem = weak_problem(data);
      if (problem.bags.empty()) {
        throw InvalidInput("misvm: dataset has no bags");
      }
      const KernelConfig kernel = resolve_kernel(settings, problem.instances);
      model.impl = train_misvm(problem, settings.slack_c, kernel,
                               settings.misvm_max_outer);
      break;
    }
    case Method::kNaiveSwsl: {
      MilProblem weak = weak_problem(data);
      auto [sup_features, sup_labels] = [&] {
        std::vector<const Instance*> rows;
        std::vector<int> labels;
        for (std::size_t idx : data.supervised_indices()) {
          rows.push_back(&data.instances()[idx]);
          labels.push_back(*data.instances()[idx].label);
        }
        Eigen::MatrixXd features(static_cast<Eigen::Index>(rows.size()),
                                 data.dim());
        for (std::size_t r = 0; r < rows.size(); ++r) {
          features.row(static_cast<Eigen::Index>(r)) = rows[r]->features;
        }
        return std::make_pair(std::move(features), std::move(labels));
      }();
      Eigen::MatrixXd pool(weak.instances.rows() + sup_features.rows(),
                           data.dim());
      if (weak.instances.rows() > 0) {
        pool.topRows(weak.instances.rows()) = weak.instances;
      }
      if (sup_features.rows() > 0) {
        pool.bottomRows(sup_features.rows()) = sup_features;
      }
      const KernelConfig kernel = resolve_kernel(settings, pool);
      model.impl = train_naive_swsl(sup_features, sup_labels, weak,
                                    settings.slack_c, kernel,
                                    settings.misvm_max_outer);
      break;
    }
    case Method::kSvm: {
      auto [features, labels] = labeled_pool(data);
      const KernelConfig kernel = resolve_kernel(settings, features);
      model.impl = train_kernel_svm(features, labels, settings.slack_c, kernel);
      break;
    }
  }
  return model;
}

std::string model_to_json_string(const Model& model) {
  json root;
  root["method"] = method_name(model.method);
  if (const auto* graph = std::get_if<GraphSwslModel>(&model.impl)) {
    root["alpha"] = json::array();
    for (Eigen::Index i = 0; i < graph->alpha.size(); ++i) {
      root["alpha"].push_back(graph->alpha[i]);
    }
    root["train_features"] = matrix_to_json(graph->train_features);
    root["kernel"] = kernel_to_json(graph->kernel);
    json config;
    config["lambda1"] = graph->config.lambda1;
    config["lambda2"] = graph->config.lambda2;
    config["lambda3"] = graph->config.lambda3 ? json(*graph->config.lambda3)
                                              : json("auto");
    config["cccp_tol"] = graph->config.cccp_tol;
    config["cccp_max_iters"] = graph->config.cccp_max_iters;
    config["subproblem_tol"] = graph->config.subproblem_tol;
    config["tie_tol"] = graph->config.tie_tol;
    root["meta"]["config"] = std::move(config);
    root["meta"]["objective_trace"] = graph->objective_trace;
  } else {
    const SvmModel& svm = std::get<SvmModel>(model.impl);
    root["alpha"] = json::array();
    for (Eigen::Index i = 0; i < svm.dual_coef.size(); ++i) {
      root["alpha"].push_back(svm.dual_coef[i]);
    }
    root["bias"] = svm.bias;
    root["train_features"] = matrix_to_json(svm.train_features);
    root["kernel"] = kernel_to_json(svm.kernel);
    root["support_indices"] = svm.support_indices;
    root["meta"]["config"]["slack_c"] = svm.slack_c;
  }
  return root.dump(2) + "\n";
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw InvalidInput("cannot write model file: " + path.string());
  }
  out << model_to_json_string(model);
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open model file: " + path.string());
  }
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("model JSON parse error: ") + e.what());
  }
  if (!root.is_object() || !root.contains("method") ||
      !root.contains("alpha") || !root.contains("train_features") ||
      !root.contains("kernel")) {
    throw InvalidInput("model JSON: missing required fields");
  }

  Model model;
  model.method = method_from_name(root["method"].get<std::string>());
  Eigen::VectorXd alpha = vector_from_json(root["alpha"], "alpha");
  Eigen::MatrixXd train_features = matrix_from_json(root["train_features"]);
  if (alpha.size() != train_features.rows()) {
    throw InvalidInput("model JSON: alpha and train_features disagree");
  }
  KernelConfig kernel = kernel_from_json(root["kernel"]);

  if (model.method == Method::kGraphSwsl) {
    GraphSwslModel graph;
    graph.alpha = std::move(alpha);
    graph.train_features = std::move(train_features);
    graph.kernel = kernel;
    if (root.contains("meta") && root["meta"].contains("objective_trace")) {
      graph.objective_trace =
          root["meta"]["objective_trace"].get<std::vector<double>>();
    }
    if (root.contains("meta") && root["meta"].contains("config")) {
      const json& config = root["meta"]["config"];
      if (config.contains("lambda1")) {
        graph.config.lambda1 = config["lambda1"].get<double>();
      }
      if (config.contains("lambda2")) {
        graph.config.lambda2 = config["lambda2"].get<double>();
      }
      if (config.contains("lambda3") && config["lambda3"].is_number()) {
        graph.config.lambda3 = config["lambda3"].get<double>();
      }
    }
    model.impl = std::move(graph);
  } else {
    SvmModel svm;
    svm.dual_coef = std::move(alpha);
    svm.train_features = std::move(train_features);
    svm.kernel = kernel;
    if (root.contains("bias")) svm.bias = root["bias"].get<double>();
    if (root.contains("support_indices")) {
      svm.support_indices =
          root["support_indices"].get<std::vector<std::size_t>>();
    } else {
      for (Eigen::Index i = 0; i < svm.dual_coef.size(); ++i) {
        if (svm.dual_coef[i] != 0.0) {
          svm.support_indices.push_back(static_cast<std::size_t>(i));
        }
      }
    }
    if (root.contains("meta") && root["meta"].contains("config") &&
        root["meta"]["config"].contains("slack_c")) {
      svm.slack_c = root["meta"]["config"]["slack_c"].get<double>();
    }
    model.impl = std::move(svm);
  }
  return model;
}

}  // namespace swsl
