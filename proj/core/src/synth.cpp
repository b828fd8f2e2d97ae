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

#include "swsl/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace swsl {

namespace {

using nlohmann::json;

// Portable deterministic sampling: depend only on the mt19937_64 stream,
// not on the standard library's distribution implementations.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

void shuffle_indices(std::vector<int>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng() % i]);
  }
}

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }

std::string counted_id(const char* prefix, int i) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%03d", prefix, i);
  return buf;
}

void validate(const SynthConfig& c) {
  if (c.dim < 1) throw InvalidInput("synth: dim must be >= 1");
  if (c.num_supervised_pos < 0 || c.num_supervised_neg < 0 ||
      c.num_pos_bags < 0 || c.num_neg_bags < 0) {
    throw InvalidInput("synth: counts must be non-negative");
  }
  if ((c.num_pos_bags > 0 || c.num_neg_bags > 0) && c.bag_size < 1) {
    throw InvalidInput("synth: bag_size must be >= 1 when bags are requested");
  }
  if (!(c.witness_rate > 0.0 && c.witness_rate <= 1.0)) {
    throw InvalidInput("synth: witness_rate must be in (0, 1]");
  }
  if (!(c.bag_label_noise >= 0.0 && c.bag_label_noise < 1.0)) {
    throw InvalidInput("synth: bag_label_noise must be in [0, 1)");
  }
  if (c.signal_noise_sd < 0.0) {
    throw InvalidInput("synth: signal_noise_sd must be non-negative");
  }
  if (c.cluster_separation < 0.0) {
    throw InvalidInput("synth: cluster_separation must be non-negative");
  }
  const long total =
      static_cast<long>(c.num_supervised_pos) + c.num_supervised_neg +
      (static_cast<long>(c.num_pos_bags) + c.num_neg_bags) * c.bag_size;
  if (total < 1) {
    throw InvalidInput("synth: configuration generates no instances");
  }
}

}  // namespace

SynthResult generate(const SynthConfig& config) {
  validate(config);
  std::mt19937_64 rng(config.seed);

  const int dim = config.dim;
  const double offset = config.cluster_separation / 2.0;

  auto draw = [&](int true_label) {
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) {
      double v = gaussian(rng) + config.signal_noise_sd * gaussian(rng);
      if (i == 0) v += true_label > 0 ? offset : -offset;
      x[i] = softplus(v);
    }
    x /= x.sum();
    return x;
  };

  std::vector<Instance> instances;
  std::vector<Bag> bags;
  GroundTruth truth;

  auto add_instance = [&](const std::string& id, int true_label,
                          std::optional<int> visible_label) {
    instances.push_back({id, draw(true_label), visible_label});
    truth.labels[id] = true_label;
  };

  for (int i = 0; i < config.num_supervised_pos; ++i) {
    add_instance(counted_id("sup_p", i), 1, 1);
  }
  for (int i = 0; i < config.num_supervised_neg; ++i) {
    add_instance(counted_id("sup_n", i), -1, -1);
  }

  for (int b = 0; b < config.num_neg_bags; ++b) {
    Bag bag;
    bag.id = counted_id("nbag", b);
    bag.label = -1;
    for (int i = 0; i < config.bag_size; ++i) {
      std::string id = bag.id + "_" + counted_id("i", i);
      add_instance(id, -1, std::nullopt);
      bag.instance_ids.push_back(id);
    }
    bags.push_back(std::move(bag));
  }

  // Mislabeled positive bags carry the +1 weak label but hold no witness.
  const int noisy_count = static_cast<int>(
      std::lround(config.bag_label_noise * config.num_pos_bags));
  std::vector<int> bag_order(config.num_pos_bags);
  for (int i = 0; i < config.num_pos_bags; ++i) bag_order[i] = i;
  shuffle_indices(bag_order, rng);
  std::vector<bool> noisy(config.num_pos_bags, false);
  for (int i = 0; i < noisy_count; ++i) noisy[bag_order[i]] = true;

  const int witnesses = static_cast<int>(
      std::ceil(config.witness_rate * config.bag_size));

  for (int b = 0; b < config.num_pos_bags; ++b) {
    Bag bag;
    bag.id = counted_id("pbag", b);
    bag.label = 1;
    std::vector<int> slots(config.bag_size);
    for (int i = 0; i < config.bag_size; ++i) slots[i] = i;
    shuffle_indices(slots, rng);
    std::vector<bool> is_witness(config.bag_size, false);
    if (!noisy[b]) {
      for (int i = 0; i < witnesses && i < config.bag_size; ++i) {
        is_witness[slots[i]] = true;
      }
    }
    for (int i = 0; i < config.bag_size; ++i) {
      std::string id = bag.id + "_" + counted_id("i", i);
      add_instance(id, is_witness[i] ? 1 : -1, std::nullopt);
      bag.instance_ids.push_back(id);
    }
    bags.push_back(std::move(bag));
  }

  return SynthResult{SwslDataset(std::move(instances), std::move(bags)),
                     std::move(truth)};
}

SynthConfig synth_config_from_json_string(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("synth config parse error: ") + e.what());
  }
  if (!root.is_object()) {
    throw InvalidInput("synth config: expected a JSON object");
  }
  SynthConfig c;
  for (const auto& item : root.items()) {
    const std::string& key = item.key();
    const json& v = item.value();
    auto number = [&](const char* name) {
      if (!v.is_number()) {
        throw InvalidInput("synth config: \"" + std::string(name) +
                           "\" must be a number");
      }
      return v.get<double>();
    };
    if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(number("seed"));
    } else if (key == "dim") {
      c.dim = static_cast<int>(number("dim"));
    } else if (key == "num_supervised_pos") {
      c.num_supervised_pos = static_cast<int>(number(key.c_str()));
    } else if (key == "num_supervised_neg") {
      c.num_supervised_neg = static_cast<int>(number(key.c_str()));
    } else if (key == "num_pos_bags") {
      c.num_pos_bags = static_cast<int>(number(key.c_str()));
    } else if (key == "num_neg_bags") {
      c.num_neg_bags = static_cast<int>(number(key.c_str()));
    } else if (key == "bag_size") {
      c.bag_size = static_cast<int>(number(key.c_str()));
    } else if (key == "witness_rate") {
      c.witness_rate = number(key.c_str());
    } else if (key == "bag_label_noise") {
      c.bag_label_noise = number(key.c_str());
    } else if (key == "signal_noise_sd") {
      c.signal_noise_sd = number(key.c_str());
    } else if (key == "cluster_separation") {
      c.cluster_separation = number(key.c_str());
    } else {
      throw InvalidInput("synth config: unknown key \"" + key + "\"");
    }
  }
  return c;
}

SynthConfig load_synth_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open synth config file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return synth_config_from_json_string(buffer.str());
}

std::string ground_truth_to_json_string(const GroundTruth& truth) {
  json labels = json::object();
  for (const auto& [id, label] : truth.labels) {
    labels[id] = label;
  }
  json root;
  root["labels"] = std::move(labels);
  return root.dump(2) + "\n";
}

void save_ground_truth(const GroundTruth& truth,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw InvalidInput("cannot write ground truth file: " + path.string());
  }
  out << ground_truth_to_json_string(truth);
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open ground truth file: " + path.string());
  }
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("ground truth parse error: ") + e.what());
  }
  if (!root.is_object() || !root.contains("labels") ||
      !root["labels"].is_object()) {
    throw InvalidInput("ground truth JSON: missing \"labels\" object");
  }
  GroundTruth truth;
  for (const auto& item : root["labels"].items()) {
    if (!item.value().is_number_integer()) {
      throw InvalidInput("ground truth label for \"" + item.key() +
                         "\" must be -1 or 1");
    }
    int label = item.value().get<int>();
    if (label != -1 && label != 1) {
      throw InvalidInput("ground truth label for \"" + item.key() +
                         "\" must be -1 or 1");
    }
    truth.labels[item.key()] = label;
  }
  return truth;
}

}  // namespace swsl
