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

#include <random>

#include <benchmark/benchmark.h>

#include "swsl/eval.hpp"
#include "swsl/gmm.hpp"

namespace {

swsl::DiagGmm bench_gmm(int components, int dim) {
  std::mt19937_64 rng(13);
  Eigen::VectorXd weights(components);
  Eigen::MatrixXd means(components, dim), vars(components, dim);
  for (int c = 0; c < components; ++c) {
    weights[c] = 1.0 / components;
    for (int d = 0; d < dim; ++d) {
      means(c, d) = static_cast<double>(rng() % 1000) / 100.0;
      vars(c, d) = 0.5 + static_cast<double>(rng() % 100) / 100.0;
    }
  }
  return swsl::DiagGmm(weights, means, vars);
}

void BM_GmmPosterior(benchmark::State& state) {
  const int components = static_cast<int>(state.range(0));
  const auto gmm = bench_gmm(components, 60);
  Eigen::VectorXd frame = Eigen::VectorXd::Constant(60, 2.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gmm.posterior(frame));
  }
}
BENCHMARK(BM_GmmPosterior)->Arg(64)->Arg(128);

void BM_SoftCountHistogram(benchmark::State& state) {
  const auto gmm = bench_gmm(64, 60);
  std::mt19937_64 rng(17);
  Eigen::MatrixXd frames(100, 60);
  for (int r = 0; r < 100; ++r) {
    for (int c = 0; c < 60; ++c) {
      frames(r, c) = static_cast<double>(rng() % 1000) / 100.0;
    }
  }
  const swsl::FrameSequence seq{"bench", frames};
  for (auto _ : state) {
    benchmark::DoNotOptimize(swsl::soft_count_histogram(gmm, seq));
  }
}
BENCHMARK(BM_SoftCountHistogram);

void BM_AveragePrecision(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(19);
  swsl::RankedResult result;
  for (int i = 0; i < n; ++i) {
    result.scores.push_back(static_cast<double>(rng() % 100000));
    result.truth.push_back(rng() % 4 == 0 ? 1 : -1);
  }
  result.truth[0] = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(swsl::average_precision(result));
  }
}
BENCHMARK(BM_AveragePrecision)->Range(1000, 100000);

}  // namespace
