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

#include "swsl/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace swsl {

namespace {

using nlohmann::json;

bool valid_label(int label) { return label == -1 || label == 1; }

void check_features(const Eigen::VectorXd& features, const std::string& id) {
  if (features.size() == 0) {
    throw InvalidInput("instance \"" + id + "\": features must be non-empty");
  }
  for (Eigen::Index i = 0; i < features.size(); ++i) {
    if (!std::isfinite(features[i])) {
      throw InvalidInput("instance \"" + id + "\": features[" +
                         std::to_string(i) + "] is not finite");
    }
  }
}

}  // namespace

SwslDataset::SwslDataset(std::vector<Instance> instances, std::vector<Bag> bags)
    : instances_(std::move(instances)), bags_(std::move(bags)) {
  if (instances_.empty()) {
    throw InvalidInput("dataset has no instances");
  }

  dim_ = instances_.front().features.size();
  index_by_id_.reserve(instances_.size());
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const Instance& inst = instances_[i];
    if (inst.id.empty()) {
      throw InvalidInput("instance at position " + std::to_string(i) +
                         " has an empty id");
    }
    check_features(inst.features, inst.id);
    if (inst.features.size() != dim_) {
      throw InvalidInput("instance \"" + inst.id + "\": feature dimension " +
                         std::to_string(inst.features.size()) +
                         " does not match dataset dimension " +
                         std::to_string(dim_));
    }
    if (inst.label && !valid_label(*inst.label)) {
      throw InvalidInput("instance \"" + inst.id +
                         "\": label must be -1 or 1");
    }
    if (!index_by_id_.emplace(inst.id, i).second) {
      throw InvalidInput("duplicate instance id \"" + inst.id + "\"");
    }
  }

  // Which bag (if any) references each instance. An instance belongs to at
  // most one bag.
  std::unordered_map<std::string, const Bag*> owner;
  for (const Bag& bag : bags_) {
    if (bag.id.empty()) {
      throw InvalidInput("bag with empty id");
    }
    if (!valid_label(bag.label)) {
      throw InvalidInput("bag \"" + bag.id + "\": label must be -1 or 1");
    }
    if (bag.instance_ids.empty()) {
      throw InvalidInput("bag \"" + bag.id + "\" is empty");
    }
    if (index_by_id_.count(bag.id) > 0) {
      // Unit ids are used in fold assignments, so bags and instances share
      // one namespace.
      throw InvalidInput("bag id \"" + bag.id +
                         "\" collides with an instance id");
    }
    std::unordered_map<std::string, bool> seen;
    for (const std::string& ref : bag.instance_ids) {
      auto it = index_by_id_.find(ref);
      if (it == index_by_id_.end()) {
        throw InvalidInput("bag \"" + bag.id +
                           "\" references missing instance id \"" + ref + "\"");
      }
      if (!seen.emplace(ref, true).second) {
        throw InvalidInput("bag \"" + bag.id +
                           "\" lists instance \"" + ref + "\" twice");
      }
      if (!owner.emplace(ref, &bag).second) {
        throw InvalidInput("instance \"" + ref +
                           "\" is referenced by more than one bag");
      }
      const Instance& inst = instances_[it->second];
      if (bag.label > 0 && inst.label.has_value()) {
        throw InvalidInput("instance \"" + ref +
                           "\" carries a label but belongs to positive bag \"" +
                           bag.id + "\"");
      }
      if (bag.label < 0 && inst.label.has_value() && *inst.label != -1) {
        throw InvalidInput("instance \"" + ref +
                           "\" is labeled +1 but belongs to negative bag \"" +
                           bag.id + "\"");
      }
    }
  }

  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const Instance& inst = instances_[i];
    bool referenced = owner.count(inst.id) > 0;
    if (!referenced) {
      if (!inst.label) {
        throw InvalidInput("instance \"" + inst.id +
                           "\" is unlabeled and not referenced by any bag");
      }
      supervised_indices_.push_back(i);
    }
  }
}

bool SwslDataset::has_instance(const std::string& id) const {
  return index_by_id_.count(id) > 0;
}

const Instance& SwslDataset::instance(const std::string& id) const {
  auto it = index_by_id_.find(id);
  if (it == index_by_id_.end()) {
    throw InvalidInput("unknown instance id \"" + id + "\"");
  }
  return instances_[it->second];
}

IndexedDataset assemble_training_set(const SwslDataset& dataset) {
  const Eigen::Index dim = dataset.dim();

  std::vector<const Instance*> rows;
  std::vector<int> labels;
  std::vector<Provenance> provenance;
  rows.reserve(dataset.instances().size());

  // Supervised instances first, in input order.
  for (std::size_t idx : dataset.supervised_indices()) {
    const Instance& inst = dataset.instances()[idx];
    rows.push_back(&inst);
    labels.push_back(*inst.label);
    provenance.push_back({inst.id, ""});
  }
  // Negative bags dissolve into the labeled pool.
  for (const Bag& bag : dataset.bags()) {
    if (bag.label > 0) continue;
    for (const std::string& ref : bag.instance_ids) {
      rows.push_back(&dataset.instance(ref));
      labels.push_back(-1);
      provenance.push_back({ref, bag.id});
    }
  }
  const std::size_t num_labeled = rows.size();

  std::vector<BagRange> ranges;
  for (const Bag& bag : dataset.bags()) {
    if (bag.label < 0) continue;
    BagRange range;
    range.begin = rows.size();
    for (const std::string& ref : bag.instance_ids) {
      rows.push_back(&dataset.instance(ref));
      labels.push_back(0);
      provenance.push_back({ref, bag.id});
    }
    range.end = rows.size();
    ranges.push_back(range);
  }

  IndexedDataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.features.row(static_cast<Eigen::Index>(r)) = rows[r]->features;
  }
  out.labels = std::move(labels);
  out.num_labeled = num_labeled;
  out.bag_ranges = std::move(ranges);
  out.provenance = std::move(provenance);
  return out;
}

namespace {

Instance instance_from_json(const json& node, std::size_t position) {
  const std::string where = "instances[" + std::to_string(position) + "]";
  if (!node.is_object()) {
    throw InvalidInput(where + ": expected an object");
  }
  for (const auto& item : node.items()) {
    if (item.key() != "id" && item.key() != "features" && item.key() != "label") {
      throw InvalidInput(where + ": unknown key \"" + item.key() + "\"");
    }
  }
  if (!node.contains("id") || !node["id"].is_string()) {
    throw InvalidInput(where + ": missing string field \"id\"");
  }
  if (!node.contains("features") || !node["features"].is_array()) {
    throw InvalidInput(where + ": missing array field \"features\"");
  }
  Instance inst;
  inst.id = node["id"].get<std::string>();
  const auto& feats = node["features"];
  inst.features.resize(static_cast<Eigen::Index>(feats.size()));
  for (std::size_t i = 0; i < feats.size(); ++i) {
    if (!feats[i].is_number()) {
      throw InvalidInput(where + ".features[" + std::to_string(i) +
                         "]: expected a number");
    }
    inst.features[static_cast<Eigen::Index>(i)] = feats[i].get<double>();
  }
  if (node.contains("label") && !node["label"].is_null()) {
    if (!node["label"].is_number_integer()) {
      throw InvalidInput(where + ".label: expected -1, 1 or null");
    }
    inst.label = node["label"].get<int>();
  }
  return inst;
}

Bag bag_from_json(const json& node, std::size_t position) {
  const std::string where = "bags[" + std::to_string(position) + "]";
  if (!node.is_object()) {
    throw InvalidInput(where + ": expected an object");
  }
  for (const auto& item : node.items()) {
    if (item.key() != "id" && item.key() != "label" && item.key() != "instances") {
      throw InvalidInput(where + ": unknown key \"" + item.key() + "\"");
    }
  }
  if (!node.contains("id") || !node["id"].is_string()) {
    throw InvalidInput(where + ": missing string field \"id\"");
  }
  if (!node.contains("label") || !node["label"].is_number_integer()) {
    throw InvalidInput(where + ": missing integer field \"label\"");
  }
  if (!node.contains("instances") || !node["instances"].is_array()) {
    throw InvalidInput(where + ": missing array field \"instances\"");
  }
  Bag bag;
  bag.id = node["id"].get<std::string>();
  bag.label = node["label"].get<int>();
  for (std::size_t i = 0; i < node["instances"].size(); ++i) {
    const auto& ref = node["instances"][i];
    if (!ref.is_string()) {
      throw InvalidInput(where + ".instances[" + std::to_string(i) +
                         "]: expected a string id");
    }
    bag.instance_ids.push_back(ref.get<std::string>());
  }
  return bag;
}

}  // namespace

SwslDataset dataset_from_json_string(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("dataset JSON parse error: ") + e.what());
  }
  if (!root.is_object() || !root.contains("instances") ||
      !root["instances"].is_array()) {
    throw InvalidInput("dataset JSON: missing top-level \"instances\" array");
  }
  for (const auto& item : root.items()) {
    if (item.key() != "instances" && item.key() != "bags") {
      throw InvalidInput("dataset JSON: unknown top-level key \"" +
                         item.key() + "\"");
    }
  }
  std::vector<Instance> instances;
  for (std::size_t i = 0; i < root["instances"].size(); ++i) {
    instances.push_back(instance_from_json(root["instances"][i], i));
  }
  std::vector<Bag> bags;
  if (root.contains("bags")) {
    if (!root["bags"].is_array()) {
      throw InvalidInput("dataset JSON: \"bags\" must be an array");
    }
    for (std::size_t i = 0; i < root["bags"].size(); ++i) {
      bags.push_back(bag_from_json(root["bags"][i], i));
    }
  }
  return SwslDataset(std::move(instances), std::move(bags));
}

std::string dataset_to_json_string(const SwslDataset& dataset) {
  json root;
  root["instances"] = json::array();
  for (const Instance& inst : dataset.instances()) {
    json node;
    node["id"] = inst.id;
    node["features"] = json::array();
    for (Eigen::Index i = 0; i < inst.features.size(); ++i) {
      node["features"].push_back(inst.features[i]);
    }
    node["label"] = inst.label ? json(*inst.label) : json(nullptr);
    root["instances"].push_back(std::move(node));
  }
  root["bags"] = json::array();
  for (const Bag& bag : dataset.bags()) {
    json node;
    node["id"] = bag.id;
    node["label"] = bag.label;
    node["instances"] = bag.instance_ids;
    root["bags"].push_back(std::move(node));
  }
  return root.dump(2) + "\n";
}

SwslDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open dataset file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return dataset_from_json_string(buffer.str());
}

void save_dataset(const SwslDataset& dataset,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw InvalidInput("cannot write dataset file: " + path.string());
  }
  out << dataset_to_json_string(dataset);
}

FoldSpec make_folds(const SwslDataset& dataset, int num_folds,
                    std::uint64_t seed) {
  if (num_folds < 2) {
    throw InvalidInput("make_folds: num_folds must be at least 2");
  }
  std::vector<std::string> units;
  for (std::size_t idx : dataset.supervised_indices()) {
    units.push_back(dataset.instances()[idx].id);
  }
  for (const Bag& bag : dataset.bags()) {
    units.push_back(bag.id);
  }
  if (units.size() < static_cast<std::size_t>(num_folds)) {
    throw InvalidInput("make_folds: only " + std::to_string(units.size()) +
                       " units for " + std::to_string(num_folds) + " folds");
  }

  // Explicit Fisher-Yates so the assignment depends only on the seed, not on
  // the standard library's shuffle implementation.
  std::mt19937_64 rng(seed);
  for (std::size_t i = units.size() - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(units[i], units[j]);
  }

  FoldSpec spec;
  spec.num_folds = num_folds;
  for (std::size_t i = 0; i < units.size(); ++i) {
    spec.fold_of[units[i]] = static_cast<int>(i % num_folds);
  }
  return spec;
}

}  // namespace swsl
