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

#include <doctest.h>

#include "swsl/synth.hpp"
#include "test_util.hpp"

namespace {

swsl::SwslDataset small_dataset(std::uint64_t seed) {
  swsl::SynthConfig synth;
  synth.seed = seed;
  synth.dim = 4;
  synth.num_supervised_pos = 5;
  synth.num_supervised_neg = 5;
  synth.num_pos_bags = 3;
  synth.num_neg_bags = 3;
  synth.bag_size = 3;
  synth.witness_rate = 0.5;
  synth.cluster_separation = 4.0;
  synth.signal_noise_sd = 0.2;
  return swsl::generate(synth).dataset;
}

}  // namespace

TEST_CASE("model JSON round trip preserves predictions") {
  auto data = small_dataset(1);
  swsl_test::TempDir tmp("model_io");
  std::mt19937_64 rng(9);

  for (const char* name : {"graphswsl", "misvm", "naive_swsl", "svm"}) {
    CAPTURE(name);
    swsl::TrainSettings settings;
    settings.method = swsl::method_from_name(name);
    settings.graph.k = 4;
    auto model = swsl::train_model(data, settings);

    auto path = tmp.file(std::string(name) + ".json");
    swsl::save_model(model, path);
    auto loaded = swsl::load_model(path);
    CHECK(loaded.method == model.method);

    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXd x = swsl_test::random_histogram(rng, 4);
      CHECK(loaded.predict_instance(x) == model.predict_instance(x));
    }
    Eigen::MatrixXd bag(2, 4);
    bag.row(0) = swsl_test::random_histogram(rng, 4);
    bag.row(1) = swsl_test::random_histogram(rng, 4);
    CHECK(loaded.predict_bag(bag) == model.predict_bag(bag));

    // Serialized form is stable across a save/load cycle.
    CHECK(swsl::model_to_json_string(loaded) ==
          swsl::model_to_json_string(model));
  }
}

TEST_CASE("model loader rejects malformed files") {
  swsl_test::TempDir tmp("model_bad");
  auto path = tmp.file("bad.json");
  {
    std::ofstream out(path);
    out << R"({"method":"graphswsl","alpha":[1,2],"kernel":{"kind":"rbf"}})";
  }
  CHECK_THROWS_AS(swsl::load_model(path), swsl::InvalidInput);
  CHECK_THROWS_AS(swsl::load_model(tmp.file("missing.json")),
                  swsl::InvalidInput);
}

TEST_CASE("gamma auto uses the training pool heuristic") {
  auto data = small_dataset(2);
  swsl::TrainSettings settings;
  settings.method = swsl::Method::kGraphSwsl;
  settings.graph.k = 4;
  settings.gamma_auto = true;
  auto model = swsl::train_model(data, settings);
  const auto& impl = std::get<swsl::GraphSwslModel>(model.impl);
  const double expected = swsl::estimate_gamma(impl.train_features);
  CHECK(impl.kernel.gamma == expected);
}
