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

#include "bench_util.hpp"
#include "swsl/graph.hpp"
#include "swsl/kernel.hpp"

namespace {

void BM_Chi2Distance(benchmark::State& state) {
  const auto pts = swsl_bench::random_histograms(1, 2, 64);
  const Eigen::VectorXd x = pts.row(0);
  const Eigen::VectorXd y = pts.row(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(swsl::chi_square_distance(x, y));
  }
}
BENCHMARK(BM_Chi2Distance);

void BM_KernelMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pts = swsl_bench::random_histograms(2, n, 64);
  swsl::KernelConfig config;
  config.gamma = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(swsl::kernel_matrix(pts, config));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_KernelMatrix)->Range(64, 512)->Complexity();

void BM_EstimateGamma(benchmark::State& state) {
  const auto pts = swsl_bench::random_histograms(3, 256, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(swsl::estimate_gamma(pts));
  }
}
BENCHMARK(BM_EstimateGamma);

void BM_KnnGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pts = swsl_bench::random_histograms(4, n, 32);
  swsl::GraphConfig config;
  config.k = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(swsl::knn_graph(pts, config));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_KnnGraph)->Range(64, 512)->Complexity();

}  // namespace
