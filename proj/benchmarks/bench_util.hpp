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

#ifndef SWSL_BENCHMARKS_BENCH_UTIL_HPP_
#define SWSL_BENCHMARKS_BENCH_UTIL_HPP_

#include <random>

#include <Eigen/Core>

namespace swsl_bench {

inline Eigen::MatrixXd random_histograms(std::uint64_t seed, int count,
                                         int dim) {
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd m(count, dim);
  for (int r = 0; r < count; ++r) {
    for (int c = 0; c < dim; ++c) {
      m(r, c) = 0.05 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
    m.row(r) /= m.row(r).sum();
  }
  return m;
}

}  // namespace swsl_bench

#endif  // SWSL_BENCHMARKS_BENCH_UTIL_HPP_
