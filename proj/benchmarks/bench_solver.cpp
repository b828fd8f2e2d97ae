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

#include <benchmark/benchmark.h>

#include "swsl/dataset.hpp"
#include "swsl/graph_swsl.hpp"
#include "swsl/misvm.hpp"
#include "swsl/model.hpp"
#include "swsl/synth.hpp"

namespace {

swsl::SwslDataset bench_dataset(int pos_bags, std::uint64_t seed) {
  swsl::SynthConfig config;
  config.seed = seed;
  config.dim = 8;
  config.num_supervised_pos = 15;
  config.num_supervised_neg = 15;
  config.num_pos_bags = pos_bags;
  config.num_neg_bags = pos_bags / 2;
  config.bag_size = 5;
  config.witness_rate = 0.4;
  config.signal_noise_sd = 0.4;
  config.cluster_separation = 3.5;
  return swsl::generate(config).dataset;
}

void BM_TrainGraphSwsl(benchmark::State& state) {
  const auto data = bench_dataset(static_cast<int>(state.range(0)), 7);
  swsl::TrainSettings settings;
  settings.method = swsl::Method::kGraphSwsl;
  settings.graph.k = 10;
  settings.solver.lambda1 = 0.01;
  settings.solver.lambda2 = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(swsl::train_model(data, settings));
  }
}
BENCHMARK(BM_TrainGraphSwsl)->Arg(8)->Arg(16)->Arg(32)
    ->Unit(benchmark::kMillisecond);

void BM_SolveSubproblem(benchmark::State& state) {
  const auto data = bench_dataset(16, 9);
  const auto indexed = swsl::assemble_training_set(data);
  swsl::KernelConfig kernel;
  kernel.gamma = swsl::estimate_gamma(indexed.features);
  swsl::GraphConfig graph;
  graph.k = 10;
  const auto p = swsl::build_problem(indexed, kernel, graph);
  swsl::SolverConfig cfg;
  cfg.lambda1 = 0.01;
  cfg.lambda2 = 0.1;
  cfg.lambda3 = 2.0;
  const Eigen::VectorXd alpha_k =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.size()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(swsl::solve_subproblem(p, cfg, alpha_k));
  }
}
BENCHMARK(BM_SolveSubproblem)->Unit(benchmark::kMillisecond);

void BM_TrainMisvm(benchmark::State& state) {
  const auto data = bench_dataset(static_cast<int>(state.range(0)), 11);
  swsl::TrainSettings settings;
  settings.method = swsl::Method::kMisvm;
  settings.slack_c = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(swsl::train_model(data, settings));
  }
}
BENCHMARK(BM_TrainMisvm)->Arg(8)->Arg(16)->Arg(32)
    ->Unit(benchmark::kMillisecond);

}  // namespace
