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

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "run_config.hpp"
#include "swsl/dataset.hpp"
#include "swsl/eval.hpp"
#include "swsl/gmm.hpp"
#include "swsl/model.hpp"
#include "swsl/synth.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw swsl::InvalidInput("cannot write output file: " + path.string());
  }
  out << text;
}

// ---------------------------------------------------------------------------
// synth

void cmd_synth(const fs::path& config_path, std::optional<std::uint64_t> seed,
               const fs::path& out_path, const fs::path& truth_path) {
  swsl::SynthConfig config = swsl::load_synth_config(config_path);
  if (seed) config.seed = *seed;
  swsl::SynthResult result = swsl::generate(config);
  swsl::save_dataset(result.dataset, out_path);
  swsl::save_ground_truth(result.truth, truth_path);
  std::cout << "synth: " << result.dataset.instances().size() << " instances, "
            << result.dataset.bags().size() << " bags, "
            << result.dataset.num_supervised() << " supervised -> "
            << out_path.string() << "\n";
}

// ---------------------------------------------------------------------------
// gmm-train / featurize

void cmd_gmm_train(const fs::path& frames_dir, int components,
                   std::uint64_t seed, double tol, int max_iters,
                   const fs::path& out_path) {
  if (!fs::is_directory(frames_dir)) {
    throw swsl::InvalidInput("not a directory: " + frames_dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(frames_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw swsl::InvalidInput("no .csv frame files in " + frames_dir.string());
  }
  std::vector<swsl::FrameSequence> sequences;
  for (const fs::path& file : files) {
    sequences.push_back(swsl::load_frames_csv(file));
  }

  swsl::EmSettings settings;
  settings.tol = tol;
  settings.max_iters = max_iters;
  swsl::GmmTrainReport report;
  swsl::DiagGmm gmm =
      swsl::DiagGmm::train(sequences, components, seed, settings, &report);
  swsl::save_gmm(gmm, out_path);
  for (const std::string& warning : report.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  std::cout << "gmm-train: " << components << " components, "
            << report.iterations << " EM iterations, final log-likelihood "
            << report.log_likelihood.back() << " -> " << out_path.string()
            << "\n";
}

void cmd_featurize(const fs::path& gmm_path, const fs::path& frames_path,
                   const fs::path& out_path) {
  swsl::DiagGmm gmm = swsl::load_gmm(gmm_path);
  swsl::FrameSequence seq = swsl::load_frames_csv(frames_path);
  Eigen::VectorXd hist = swsl::soft_count_histogram(gmm, seq);
  json root;
  root["id"] = seq.segment_id;
  root["features"] = json::array();
  for (Eigen::Index i = 0; i < hist.size(); ++i) {
    root["features"].push_back(hist[i]);
  }
  write_text(out_path, root.dump(2) + "\n");
  std::cout << "featurize: " << seq.frames.rows() << " frames -> "
            << hist.size() << "-bin histogram -> " << out_path.string() << "\n";
}

// ---------------------------------------------------------------------------
// train / predict / eval

swsl::TrainSettings settings_or_default(const std::optional<fs::path>& path) {
  if (path) return swsl::tools::load_settings(*path);
  return swsl::TrainSettings{};
}

void cmd_train(const std::string& method, const fs::path& data_path,
               const std::optional<fs::path>& config_path,
               const fs::path& out_path) {
  swsl::SwslDataset data = swsl::load_dataset(data_path);
  swsl::TrainSettings settings = settings_or_default(config_path);
  settings.method = swsl::method_from_name(method);

  const auto start = Clock::now();
  swsl::Model model = swsl::train_model(data, settings);
  const double elapsed = seconds_since(start);
  swsl::save_model(model, out_path);

  std::cout << "train: method " << method << ", "
            << data.instances().size() << " instances";
  if (const auto* graph = std::get_if<swsl::GraphSwslModel>(&model.impl)) {
    const auto& trace = graph->objective_trace;
    std::cout << ", objective " << trace.front() << " -> " << trace.back()
              << " over " << trace.size() << " iterates";
  }
  char timing[32];
  std::snprintf(timing, sizeof(timing), "%.3f", elapsed);
  std::cout << ", " << timing << "s -> " << out_path.string() << "\n";
}

void cmd_predict(const fs::path& model_path, const fs::path& data_path,
                 const fs::path& out_path) {
  swsl::Model model = swsl::load_model(model_path);
  swsl::SwslDataset data = swsl::load_dataset(data_path);
  json instance_scores = json::object();
  for (const swsl::Instance& inst : data.instances()) {
    instance_scores[inst.id] = model.predict_instance(inst.features);
  }
  json bag_scores = json::object();
  for (const swsl::Bag& bag : data.bags()) {
    Eigen::MatrixXd members(
        static_cast<Eigen::Index>(bag.instance_ids.size()), data.dim());
    for (std::size_t i = 0; i < bag.instance_ids.size(); ++i) {
      members.row(static_cast<Eigen::Index>(i)) =
          data.instance(bag.instance_ids[i]).features;
    }
    bag_scores[bag.id] = model.predict_bag(members);
  }
  json root;
  root["instance_scores"] = std::move(instance_scores);
  root["bag_scores"] = std::move(bag_scores);
  write_text(out_path, root.dump(2) + "\n");
  std::cout << "predict: " << data.instances().size() << " instances, "
            << data.bags().size() << " bags -> " << out_path.string() << "\n";
}

void cmd_eval(const fs::path& model_path, const fs::path& data_path,
              const std::optional<fs::path>& truth_path,
              const std::string& level_name, const fs::path& out_path) {
  swsl::Model model = swsl::load_model(model_path);
  swsl::SwslDataset data = swsl::load_dataset(data_path);
  swsl::EvalLevel level = swsl::eval_level_from_name(level_name);
  std::optional<swsl::GroundTruth> truth;
  if (truth_path) truth = swsl::load_ground_truth(*truth_path);
  if (level == swsl::EvalLevel::kInstance && !truth) {
    throw swsl::InvalidInput("instance-level evaluation requires --truth");
  }
  swsl::EvalReport report =
      swsl::evaluate(model, data, level, truth ? &*truth : nullptr);
  write_text(out_path, swsl::eval_report_to_json_string(report));
  std::cout << "eval (" << report.level << "): MAP " << report.map_value
            << " -> " << out_path.string() << "\n";
}

// ---------------------------------------------------------------------------
// cv

swsl::GridSpec load_grid(const std::string& grid_arg) {
  if (grid_arg == "default") return swsl::default_grid();
  std::ifstream in(grid_arg);
  if (!in) {
    throw swsl::InvalidInput("cannot open grid file: " + grid_arg);
  }
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw swsl::InvalidInput(std::string("grid parse error: ") + e.what());
  }
  swsl::GridSpec grid;
  for (const auto& item : root.items()) {
    if (item.key() == "lambda1_values") {
      grid.lambda1_values = item.value().get<std::vector<double>>();
    } else if (item.key() == "lambda2_values") {
      grid.lambda2_values = item.value().get<std::vector<double>>();
    } else if (item.key() == "selection_metric") {
      const std::string name = item.value().get<std::string>();
      if (name == "AP") {
        grid.selection_metric = swsl::SelectionMetric::kAp;
      } else if (name == "MAP") {
        grid.selection_metric = swsl::SelectionMetric::kMap;
      } else {
        throw swsl::InvalidInput("grid: selection_metric must be AP or MAP");
      }
    } else {
      throw swsl::InvalidInput("grid: unknown key \"" + item.key() + "\"");
    }
  }
  if (grid.lambda1_values.empty() || grid.lambda2_values.empty()) {
    throw swsl::InvalidInput("grid: lambda value lists must be non-empty");
  }
  return grid;
}

void cmd_cv(const fs::path& data_path, int folds, std::uint64_t seed,
            const std::string& method, const std::string& grid_arg,
            const std::optional<fs::path>& config_path,
            const fs::path& out_path) {
  swsl::SwslDataset data = swsl::load_dataset(data_path);
  swsl::FoldSpec fold_spec = swsl::make_folds(data, folds, seed);
  swsl::GridSpec grid = load_grid(grid_arg);
  swsl::TrainSettings settings = settings_or_default(config_path);
  settings.method = swsl::method_from_name(method);
  swsl::CvResult result = swsl::cross_validate(data, fold_spec, grid, settings);
  write_text(out_path, swsl::cv_result_to_json_string(result));
  std::cout << "cv: best lambda1 " << result.best_lambda1 << ", lambda2 "
            << result.best_lambda2 << " over " << result.table.size()
            << " cells -> " << out_path.string() << "\n";
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchmarkConfig {
  int seeds = 5;
  std::uint64_t base_seed = 0;
  std::vector<double> noise_levels{0.0};
  std::vector<std::string> methods{"misvm", "naive_swsl", "graphswsl"};
  swsl::SynthConfig synth;
  std::optional<swsl::SynthConfig> test_synth;
  swsl::TrainSettings run;
};

BenchmarkConfig load_benchmark_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw swsl::InvalidInput("cannot open benchmark config: " + path.string());
  }
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw swsl::InvalidInput(std::string("benchmark config parse error: ") +
                             e.what());
  }
  BenchmarkConfig config;
  bool have_synth = false;
  for (const auto& item : root.items()) {
    const std::string& key = item.key();
    const json& v = item.value();
    if (key == "seeds") {
      config.seeds = v.get<int>();
    } else if (key == "base_seed") {
      config.base_seed = v.get<std::uint64_t>();
    } else if (key == "noise_levels") {
      config.noise_levels = v.get<std::vector<double>>();
    } else if (key == "methods") {
      config.methods = v.get<std::vector<std::string>>();
    } else if (key == "synth") {
      config.synth = swsl::synth_config_from_json_string(v.dump());
      have_synth = true;
    } else if (key == "test_synth") {
      config.test_synth = swsl::synth_config_from_json_string(v.dump());
    } else if (key == "run") {
      config.run = swsl::tools::settings_from_json(v.dump());
    } else {
      throw swsl::InvalidInput("benchmark config: unknown key \"" + key +
                               "\"");
    }
  }
  if (!have_synth) {
    throw swsl::InvalidInput("benchmark config: missing \"synth\" section");
  }
  if (config.seeds < 1) {
    throw swsl::InvalidInput("benchmark config: seeds must be >= 1");
  }
  if (config.noise_levels.empty()) {
    throw swsl::InvalidInput("benchmark config: noise_levels must be non-empty");
  }
  for (const std::string& method : config.methods) {
    swsl::method_from_name(method);  // validates
  }
  return config;
}

void cmd_benchmark(const fs::path& config_path,
                   std::optional<std::uint64_t> seed, const fs::path& out_path) {
  BenchmarkConfig config = load_benchmark_config(config_path);
  if (seed) config.base_seed = *seed;

  // Test sets mirror the training distribution but come label-clean and
  // without a supervised pool, like held-out weakly labeled recordings.
  swsl::SynthConfig test_base;
  if (config.test_synth) {
    test_base = *config.test_synth;
  } else {
    test_base = config.synth;
    test_base.num_supervised_pos = 0;
    test_base.num_supervised_neg = 0;
  }
  test_base.bag_label_noise = 0.0;

  struct Row {
    std::string method;
    double noise = 0.0;
    std::vector<double> bag_aps;
    std::vector<double> instance_aps;
    double train_seconds = 0.0;
  };
  std::vector<Row> rows;

  for (std::size_t vi = 0; vi < config.noise_levels.size(); ++vi) {
    const double noise = config.noise_levels[vi];
    std::vector<Row> level_rows;
    for (const std::string& method : config.methods) {
      Row row;
      row.method = method;
      row.noise = noise;
      level_rows.push_back(row);
    }
    for (int s = 0; s < config.seeds; ++s) {
      const std::uint64_t pair_seed =
          config.base_seed +
          2 * (static_cast<std::uint64_t>(vi) * config.seeds + s);

      swsl::SynthConfig train_cfg = config.synth;
      train_cfg.bag_label_noise = noise;
      train_cfg.seed = pair_seed;
      swsl::SynthResult train_set = swsl::generate(train_cfg);

      swsl::SynthConfig test_cfg = test_base;
      test_cfg.seed = pair_seed + 1;
      swsl::SynthResult test_set = swsl::generate(test_cfg);

      for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
        swsl::TrainSettings settings = config.run;
        settings.method = swsl::method_from_name(config.methods[mi]);
        const auto start = Clock::now();
        swsl::Model model = swsl::train_model(train_set.dataset, settings);
        level_rows[mi].train_seconds += seconds_since(start);
        level_rows[mi].bag_aps.push_back(
            swsl::evaluate(model, test_set.dataset, swsl::EvalLevel::kBag)
                .map_value);
        level_rows[mi].instance_aps.push_back(
            swsl::evaluate(model, test_set.dataset, swsl::EvalLevel::kInstance,
                           &test_set.truth)
                .map_value);
      }
    }
    for (Row& row : level_rows) rows.push_back(std::move(row));
  }

  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) /
           static_cast<double>(v.size());
  };

  // Human-readable table (with timings) on stdout; the JSON file stays free
  // of timings so reruns are byte-identical.
  std::printf("%-12s %-7s %-10s %-13s %-9s\n", "method", "noise", "bag MAP",
              "instance MAP", "train s");
  for (const Row& row : rows) {
    std::printf("%-12s %-7.2f %-10.4f %-13.4f %-9.3f\n", row.method.c_str(),
                row.noise, mean(row.bag_aps), mean(row.instance_aps),
                row.train_seconds);
  }

  json out;
  out["seeds"] = config.seeds;
  out["base_seed"] = config.base_seed;
  out["noise_levels"] = config.noise_levels;
  out["rows"] = json::array();
  for (const Row& row : rows) {
    json node;
    node["method"] = row.method;
    node["noise"] = row.noise;
    node["bag_map"] = mean(row.bag_aps);
    node["instance_map"] = mean(row.instance_aps);
    node["bag_ap_per_seed"] = row.bag_aps;
    node["instance_ap_per_seed"] = row.instance_aps;
    out["rows"].push_back(std::move(node));
  }
  write_text(out_path, out.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "swsl: learning audio-style event detectors from strongly and weakly "
      "labeled data"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  std::string synth_config, synth_out, synth_truth;
  std::optional<std::uint64_t> synth_seed;
  synth->add_option("--config", synth_config, "Synth config JSON")->required();
  synth->add_option("--seed", synth_seed, "Override the config seed");
  synth->add_option("--out", synth_out, "Dataset JSON output")->required();
  synth->add_option("--truth", synth_truth, "Ground-truth JSON output")
      ->required();
  synth->callback([&] {
    cmd_synth(synth_config, synth_seed, synth_out, synth_truth);
  });

  // gmm-train
  auto* gmm_train =
      app.add_subcommand("gmm-train", "Train a diagonal-covariance GMM");
  std::string gmm_frames, gmm_out;
  int gmm_components = 8;
  std::uint64_t gmm_seed = 0;
  double gmm_tol = 1e-6;
  int gmm_max_iters = 200;
  gmm_train->add_option("--frames", gmm_frames, "Directory of frame CSVs")
      ->required();
  gmm_train->add_option("--components", gmm_components, "Component count")
      ->required();
  gmm_train->add_option("--seed", gmm_seed, "RNG seed");
  gmm_train->add_option("--tol", gmm_tol, "EM convergence tolerance");
  gmm_train->add_option("--max-iters", gmm_max_iters, "EM iteration cap");
  gmm_train->add_option("--out", gmm_out, "GMM JSON output")->required();
  gmm_train->callback([&] {
    cmd_gmm_train(gmm_frames, gmm_components, gmm_seed, gmm_tol, gmm_max_iters,
                  gmm_out);
  });

  // featurize
  auto* featurize = app.add_subcommand(
      "featurize", "Soft-count histogram for one frame CSV");
  std::string feat_gmm, feat_frames, feat_out;
  featurize->add_option("--gmm", feat_gmm, "GMM JSON")->required();
  featurize->add_option("--frames", feat_frames, "Frame CSV")->required();
  featurize->add_option("--out", feat_out, "Feature JSON output")->required();
  featurize->callback([&] { cmd_featurize(feat_gmm, feat_frames, feat_out); });

  // train
  auto* train = app.add_subcommand("train", "Train a model");
  std::string train_method, train_data, train_out;
  std::optional<fs::path> train_config;
  train
      ->add_option("--method", train_method,
                   "graphswsl | misvm | naive_swsl | svm")
      ->required();
  train->add_option("--data", train_data, "Dataset JSON")->required();
  train->add_option("--config", train_config, "Run config JSON");
  train->add_option("--out", train_out, "Model JSON output")->required();
  train->callback(
      [&] { cmd_train(train_method, train_data, train_config, train_out); });

  // predict
  auto* predict = app.add_subcommand("predict", "Score instances and bags");
  std::string predict_model, predict_data, predict_out;
  predict->add_option("--model", predict_model, "Model JSON")->required();
  predict->add_option("--data", predict_data, "Dataset JSON")->required();
  predict->add_option("--out", predict_out, "Scores JSON output")->required();
  predict->callback(
      [&] { cmd_predict(predict_model, predict_data, predict_out); });

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a model");
  std::string eval_model, eval_data, eval_level = "bag", eval_out;
  std::optional<fs::path> eval_truth;
  eval->add_option("--model", eval_model, "Model JSON")->required();
  eval->add_option("--data", eval_data, "Dataset JSON")->required();
  eval->add_option("--truth", eval_truth, "Ground-truth JSON");
  eval->add_option("--level", eval_level, "bag | instance");
  eval->add_option("--out", eval_out, "Report JSON output")->required();
  eval->callback(
      [&] { cmd_eval(eval_model, eval_data, eval_truth, eval_level, eval_out); });

  // localize: instance-level evaluation under its own name
  auto* localize =
      app.add_subcommand("localize", "Instance-level (temporal) evaluation");
  std::string loc_model, loc_data, loc_truth, loc_out;
  localize->add_option("--model", loc_model, "Model JSON")->required();
  localize->add_option("--data", loc_data, "Dataset JSON")->required();
  localize->add_option("--truth", loc_truth, "Ground-truth JSON")->required();
  localize->add_option("--out", loc_out, "Report JSON output")->required();
  localize->callback([&] {
    cmd_eval(loc_model, loc_data, fs::path(loc_truth), "instance", loc_out);
  });

  // cv
  auto* cv = app.add_subcommand("cv", "Cross-validate hyperparameters");
  std::string cv_data, cv_method = "graphswsl", cv_grid = "default", cv_out;
  std::optional<fs::path> cv_config;
  int cv_folds = 5;
  std::uint64_t cv_seed = 0;
  cv->add_option("--data", cv_data, "Dataset JSON")->required();
  cv->add_option("--folds", cv_folds, "Number of folds");
  cv->add_option("--seed", cv_seed, "Fold assignment seed");
  cv->add_option("--method", cv_method, "Training method");
  cv->add_option("--grid", cv_grid, "\"default\" or a grid JSON file");
  cv->add_option("--config", cv_config, "Run config JSON");
  cv->add_option("--out", cv_out, "CV report JSON output")->required();
  cv->callback([&] {
    cmd_cv(cv_data, cv_folds, cv_seed, cv_method, cv_grid, cv_config, cv_out);
  });

  // benchmark
  auto* benchmark = app.add_subcommand(
      "benchmark", "Compare methods across label-noise levels on synth data");
  std::string bench_config, bench_out;
  std::optional<std::uint64_t> bench_seed;
  benchmark->add_option("--config", bench_config, "Benchmark config JSON")
      ->required();
  benchmark->add_option("--seed", bench_seed, "Override base seed");
  benchmark->add_option("--out", bench_out, "Table JSON output")->required();
  benchmark->callback(
      [&] { cmd_benchmark(bench_config, bench_seed, bench_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const swsl::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const swsl::ComputeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const swsl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    // Malformed user-supplied JSON that slipped past a schema check.
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
