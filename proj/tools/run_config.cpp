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

#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace swsl::tools {

namespace {

using nlohmann::json;

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) {
    throw InvalidInput("config: \"" + where + "\" must be a number");
  }
  return v.get<double>();
}

void parse_kernel(const json& node, TrainSettings& settings) {
  for (const auto& item : node.items()) {
    const std::string& key = item.key();
    const json& v = item.value();
    if (key == "kind") {
      if (!v.is_string()) {
        throw InvalidInput("config: \"kernel.kind\" must be a string");
      }
      settings.kernel.kind = kernel_kind_from_name(v.get<std::string>());
    } else if (key == "gamma") {
      if (v.is_string() && v.get<std::string>() == "auto") {
        settings.gamma_auto = true;
      } else {
        settings.gamma_auto = false;
        settings.kernel.gamma = require_number(v, "kernel.gamma");
        if (settings.kernel.gamma <= 0.0) {
          throw InvalidInput("config: kernel.gamma must be positive");
        }
      }
    } else if (key == "sigma") {
      settings.kernel.sigma = require_number(v, "kernel.sigma");
      if (settings.kernel.sigma <= 0.0) {
        throw InvalidInput("config: kernel.sigma must be positive");
      }
    } else {
      throw InvalidInput("config: unknown key \"kernel." + key + "\"");
    }
  }
}

void parse_graph(const json& node, TrainSettings& settings) {
  for (const auto& item : node.items()) {
    const std::string& key = item.key();
    const json& v = item.value();
    if (key == "k") {
      settings.graph.k = static_cast<int>(require_number(v, "graph.k"));
    } else if (key == "sigma") {
      settings.graph.sigma = require_number(v, "graph.sigma");
    } else if (key == "metric") {
      if (!v.is_string()) {
        throw InvalidInput("config: \"graph.metric\" must be a string");
      }
      settings.graph.metric = graph_metric_from_name(v.get<std::string>());
    } else {
      throw InvalidInput("config: unknown key \"graph." + key + "\"");
    }
  }
}

void parse_solver(const json& node, TrainSettings& settings) {
  for (const auto& item : node.items()) {
    const std::string& key = item.key();
    const json& v = item.value();
    if (key == "lambda1") {
      settings.solver.lambda1 = require_number(v, "solver.lambda1");
    } else if (key == "lambda2") {
      settings.solver.lambda2 = require_number(v, "solver.lambda2");
    } else if (key == "lambda3") {
      if (v.is_string() && v.get<std::string>() == "auto") {
        settings.solver.lambda3.reset();
      } else {
        settings.solver.lambda3 = require_number(v, "solver.lambda3");
      }
    } else if (key == "cccp_tol") {
      settings.solver.cccp_tol = require_number(v, "solver.cccp_tol");
    } else if (key == "cccp_max_iters") {
      settings.solver.cccp_max_iters =
          static_cast<int>(require_number(v, "solver.cccp_max_iters"));
    } else if (key == "subproblem_tol") {
      settings.solver.subproblem_tol =
          require_number(v, "solver.subproblem_tol");
    } else if (key == "tie_tol") {
      settings.solver.tie_tol = require_number(v, "solver.tie_tol");
    } else {
      throw InvalidInput("config: unknown key \"solver." + key + "\"");
    }
  }
}

void parse_svm(const json& node, TrainSettings& settings) {
  for (const auto& item : node.items()) {
    const std::string& key = item.key();
    const json& v = item.value();
    if (key == "slack_c") {
      settings.slack_c = require_number(v, "svm.slack_c");
      if (settings.slack_c <= 0.0) {
        throw InvalidInput("config: svm.slack_c must be positive");
      }
    } else if (key == "max_outer") {
      settings.misvm_max_outer =
          static_cast<int>(require_number(v, "svm.max_outer"));
    } else {
      throw InvalidInput("config: unknown key \"svm." + key + "\"");
    }
  }
}

}  // namespace

TrainSettings settings_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) {
    throw InvalidInput("config: expected a JSON object");
  }
  TrainSettings settings;
  for (const auto& item : root.items()) {
    const std::string& key = item.key();
    if (!item.value().is_object()) {
      throw InvalidInput("config: section \"" + key + "\" must be an object");
    }
    if (key == "kernel") {
      parse_kernel(item.value(), settings);
    } else if (key == "graph") {
      parse_graph(item.value(), settings);
    } else if (key == "solver") {
      parse_solver(item.value(), settings);
    } else if (key == "svm") {
      parse_svm(item.value(), settings);
    } else {
      throw InvalidInput("config: unknown section \"" + key + "\"");
    }
  }
  return settings;
}

TrainSettings load_settings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open config file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return settings_from_json(buffer.str());
}

}  // namespace swsl::tools
