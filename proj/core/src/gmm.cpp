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

#include "swsl/gmm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace swsl {

namespace {

using nlohmann::json;

constexpr double kVarianceFloorScale = 1e-6;
constexpr double kVarianceFloorAbs = 1e-10;

double log_sum_exp(const Eigen::VectorXd& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

DiagGmm::DiagGmm(Eigen::VectorXd weights, Eigen::MatrixXd means,
                 Eigen::MatrixXd variances)
    : weights_(std::move(weights)),
      means_(std::move(means)),
      variances_(std::move(variances)) {
  const Eigen::Index c = weights_.size();
  if (c < 1) throw InvalidInput("DiagGmm: need at least one component");
  if (means_.rows() != c || variances_.rows() != c ||
      means_.cols() != variances_.cols()) {
    throw InvalidInput("DiagGmm: inconsistent shapes");
  }
  if ((weights_.array() <= 0.0).any()) {
    throw InvalidInput("DiagGmm: weights must be positive");
  }
  if (std::abs(weights_.sum() - 1.0) > 1e-9) {
    throw InvalidInput("DiagGmm: weights must sum to 1");
  }
  if ((variances_.array() <= 0.0).any()) {
    throw InvalidInput("DiagGmm: variances must be positive");
  }
  refresh_cache();
}

void DiagGmm::refresh_cache() {
  const Eigen::Index c = weights_.size();
  log_norm_.resize(c);
  for (Eigen::Index i = 0; i < c; ++i) {
    log_norm_[i] =
        std::log(weights_[i]) -
        0.5 * (variances_.row(i).array() * 2.0 * std::numbers::pi).log().sum();
  }
}

Eigen::VectorXd DiagGmm::log_joint(const Eigen::VectorXd& frame) const {
  Eigen::VectorXd out(weights_.size());
  for (Eigen::Index c = 0; c < weights_.size(); ++c) {
    const auto diff = frame.transpose().array() - means_.row(c).array();
    out[c] = log_norm_[c] -
             0.5 * (diff.square() / variances_.row(c).array()).sum();
  }
  return out;
}

Eigen::VectorXd DiagGmm::posterior(const Eigen::VectorXd& frame) const {
  if (frame.size() != dim()) {
    throw InvalidInput("posterior: frame dimension " +
                       std::to_string(frame.size()) + " does not match GMM " +
                       std::to_string(dim()));
  }
  Eigen::VectorXd lj = log_joint(frame);
  const double lse = log_sum_exp(lj);
  Eigen::VectorXd post = (lj.array() - lse).exp();
  post /= post.sum();
  return post;
}

double DiagGmm::log_likelihood(const Eigen::MatrixXd& frames) const {
  double total = 0.0;
  for (Eigen::Index t = 0; t < frames.rows(); ++t) {
    total += log_sum_exp(log_joint(frames.row(t)));
  }
  return total;
}

namespace {

Eigen::MatrixXd pool_frames(const std::vector<FrameSequence>& sequences) {
  Eigen::Index total = 0;
  Eigen::Index dim = -1;
  for (const FrameSequence& seq : sequences) {
    if (seq.frames.rows() < 1) {
      throw InvalidInput("frame sequence \"" + seq.segment_id + "\" is empty");
    }
    if (dim < 0) dim = seq.frames.cols();
    if (seq.frames.cols() != dim) {
      throw InvalidInput("frame sequence \"" + seq.segment_id +
                         "\": frame dimension mismatch");
    }
    if (!seq.frames.allFinite()) {
      throw InvalidInput("frame sequence \"" + seq.segment_id +
                         "\" contains non-finite values");
    }
    total += seq.frames.rows();
  }
  if (total == 0) throw InvalidInput("no frames given");
  Eigen::MatrixXd pooled(total, dim);
  Eigen::Index row = 0;
  for (const FrameSequence& seq : sequences) {
    pooled.middleRows(row, seq.frames.rows()) = seq.frames;
    row += seq.frames.rows();
  }
  return pooled;
}

// k-means++ seeding: centers are data points, chosen by D^2 sampling.
std::vector<Eigen::Index> seed_centers(const Eigen::MatrixXd& frames, int c,
                                       std::mt19937_64& rng) {
  const Eigen::Index m = frames.rows();
  std::vector<Eigen::Index> centers;
  centers.push_back(static_cast<Eigen::Index>(rng() % m));
  Eigen::VectorXd best_sq =
      (frames.rowwise() - frames.row(centers[0])).rowwise().squaredNorm();
  while (static_cast<int>(centers.size()) < c) {
    const double total = best_sq.sum();
    Eigen::Index pick;
    if (total <= 0.0) {
      pick = static_cast<Eigen::Index>(rng() % m);
    } else {
      double target = uniform01(rng) * total;
      pick = m - 1;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        acc += best_sq[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    }
    centers.push_back(pick);
    Eigen::VectorXd sq =
        (frames.rowwise() - frames.row(pick)).rowwise().squaredNorm();
    best_sq = best_sq.cwiseMin(sq);
  }
  return centers;
}

}  // namespace

DiagGmm DiagGmm::train(const std::vector<FrameSequence>& sequences,
                       int num_components, std::uint64_t seed,
                       const EmSettings& settings, GmmTrainReport* report) {
  if (num_components < 1) {
    throw InvalidInput("train_gmm: need at least one component");
  }
  const Eigen::MatrixXd frames = pool_frames(sequences);
  const Eigen::Index m = frames.rows();
  const Eigen::Index d = frames.cols();
  if (m < num_components) {
    throw InvalidInput("train_gmm: " + std::to_string(num_components) +
                       " components but only " + std::to_string(m) +
                       " frames");
  }

  const Eigen::RowVectorXd global_mean = frames.colwise().mean();
  Eigen::RowVectorXd global_var =
      (frames.rowwise() - global_mean).array().square().colwise().mean();
  Eigen::RowVectorXd floor =
      (global_var * kVarianceFloorScale).cwiseMax(kVarianceFloorAbs);

  // Init: k-means++ seeds, one hard assignment, then moment estimates.
  std::mt19937_64 rng(seed);
  const std::vector<Eigen::Index> centers =
      seed_centers(frames, num_components, rng);

  std::vector<int> assign(m);
  for (Eigen::Index t = 0; t < m; ++t) {
    int best = 0;
    double best_sq = std::numeric_limits<double>::infinity();
    for (int c = 0; c < num_components; ++c) {
      const double sq = (frames.row(t) - frames.row(centers[c])).squaredNorm();
      if (sq < best_sq) {
        best_sq = sq;
        best = c;
      }
    }
    assign[t] = best;
  }

  Eigen::VectorXd weights(num_components);
  Eigen::MatrixXd means(num_components, d);
  Eigen::MatrixXd vars(num_components, d);
  {
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(num_components);
    means.setZero();
    for (Eigen::Index t = 0; t < m; ++t) {
      counts[assign[t]] += 1.0;
      means.row(assign[t]) += frames.row(t);
    }
    vars.setZero();
    for (int c = 0; c < num_components; ++c) {
      if (counts[c] > 0.0) {
        means.row(c) /= counts[c];
      } else {
        means.row(c) = frames.row(centers[c]);
      }
    }
    for (Eigen::Index t = 0; t < m; ++t) {
      vars.row(assign[t]) +=
          (frames.row(t) - means.row(assign[t])).array().square().matrix();
    }
    double weight_total = 0.0;
    for (int c = 0; c < num_components; ++c) {
      if (counts[c] > 0.0) {
        vars.row(c) /= counts[c];
      } else {
        vars.row(c) = global_var;
      }
      vars.row(c) = vars.row(c).cwiseMax(floor);
      weights[c] = std::max(counts[c], 1.0);
      weight_total += weights[c];
    }
    weights /= weight_total;
  }

  DiagGmm gmm(weights, means, vars);

  GmmTrainReport local_report;
  GmmTrainReport& rep = report ? *report : local_report;
  rep = GmmTrainReport{};

  Eigen::MatrixXd resp(m, num_components);
  double prev_ll = -std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < settings.max_iters; ++iter) {
    // E-step; also yields the log-likelihood of the current parameters.
    double ll = 0.0;
    for (Eigen::Index t = 0; t < m; ++t) {
      Eigen::VectorXd lj = gmm.log_joint(frames.row(t));
      const double lse = log_sum_exp(lj);
      ll += lse;
      resp.row(t) = (lj.array() - lse).exp();
    }
    rep.log_likelihood.push_back(ll);
    rep.iterations = iter + 1;
    if (iter > 0 &&
        std::abs(ll - prev_ll) <= settings.tol * (std::abs(prev_ll) + 1e-12)) {
      rep.converged = true;
      break;
    }
    prev_ll = ll;

    // M-step with variance flooring.
    Eigen::VectorXd counts = resp.colwise().sum();
    for (int c = 0; c < num_components; ++c) {
      if (counts[c] < 1e-12) {
        // Starved component: keep its parameters, give it negligible mass.
        weights[c] = 1e-12;
        continue;
      }
      means.row(c) = (resp.col(c).transpose() * frames) / counts[c];
      Eigen::RowVectorXd second =
          (resp.col(c).transpose() *
           (frames.rowwise() - means.row(c)).array().square().matrix()) /
          counts[c];
      vars.row(c) = second.cwiseMax(floor);
      weights[c] = counts[c] / static_cast<double>(m);
    }
    weights /= weights.sum();
    gmm = DiagGmm(weights, means, vars);
  }

  bool floored = false;
  for (int c = 0; c < num_components && !floored; ++c) {
    floored = (gmm.variances().row(c).array() <=
               floor.array() * (1.0 + 1e-12)).any();
  }
  if (floored) {
    rep.warnings.push_back(
        "variance floor active for at least one component; input may be "
        "degenerate");
  }
  if (!rep.converged && rep.iterations >= settings.max_iters) {
    rep.warnings.push_back("EM stopped at max_iters without converging");
  }
  return gmm;
}

Eigen::VectorXd soft_count_histogram(const DiagGmm& gmm,
                                     const FrameSequence& seq) {
  if (seq.frames.rows() < 1) {
    throw InvalidInput("soft_count_histogram: empty frame sequence");
  }
  Eigen::VectorXd hist = Eigen::VectorXd::Zero(gmm.num_components());
  for (Eigen::Index t = 0; t < seq.frames.rows(); ++t) {
    hist += gmm.posterior(seq.frames.row(t));
  }
  hist /= static_cast<double>(seq.frames.rows());
  hist /= hist.sum();
  return hist;
}

FrameSequence load_frames_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open frames file: " + path.string());
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      bool ok = true;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        ok = false;
      }
      // Whitespace may trail the number; anything else is a parse error.
      for (std::size_t i = used; ok && i < cell.size(); ++i) {
        ok = std::isspace(static_cast<unsigned char>(cell[i])) != 0;
      }
      if (!ok) {
        throw InvalidInput(path.string() + ":" + std::to_string(lineno) +
                           ": cannot parse \"" + cell + "\" as a number");
      }
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidInput(path.string() + ":" + std::to_string(lineno) +
                         ": row width " + std::to_string(row.size()) +
                         " differs from " +
                         std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw InvalidInput(path.string() + ": no frames");
  }
  FrameSequence seq;
  seq.segment_id = path.stem().string();
  seq.frames.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      seq.frames(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
    }
  }
  if (!seq.frames.allFinite()) {
    throw InvalidInput(path.string() + ": non-finite frame value");
  }
  return seq;
}

namespace {

json matrix_to_json(const Eigen::MatrixXd& mat) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < mat.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < mat.cols(); ++c) {
      row.push_back(mat(r, c));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& node, const std::string& what) {
  if (!node.is_array() || node.empty()) {
    throw InvalidInput("gmm JSON: \"" + what + "\" must be a non-empty array");
  }
  const std::size_t rows = node.size();
  if (!node[0].is_array()) {
    throw InvalidInput("gmm JSON: \"" + what + "\" must hold arrays");
  }
  const std::size_t cols = node[0].size();
  Eigen::MatrixXd mat(static_cast<Eigen::Index>(rows),
                      static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!node[r].is_array() || node[r].size() != cols) {
      throw InvalidInput("gmm JSON: ragged \"" + what + "\"");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!node[r][c].is_number()) {
        throw InvalidInput("gmm JSON: non-numeric entry in \"" + what + "\"");
      }
      mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          node[r][c].get<double>();
    }
  }
  return mat;
}

}  // namespace

std::string gmm_to_json_string(const DiagGmm& gmm) {
  json root;
  root["weights"] = json::array();
  for (Eigen::Index c = 0; c < gmm.weights().size(); ++c) {
    root["weights"].push_back(gmm.weights()[c]);
  }
  root["means"] = matrix_to_json(gmm.means());
  root["variances"] = matrix_to_json(gmm.variances());
  return root.dump(2) + "\n";
}

void save_gmm(const DiagGmm& gmm, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw InvalidInput("cannot write gmm file: " + path.string());
  }
  out << gmm_to_json_string(gmm);
}

DiagGmm load_gmm(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open gmm file: " + path.string());
  }
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("gmm JSON parse error: ") + e.what());
  }
  if (!root.is_object() || !root.contains("weights") ||
      !root.contains("means") || !root.contains("variances")) {
    throw InvalidInput(
        "gmm JSON: need \"weights\", \"means\" and \"variances\"");
  }
  const auto& w = root["weights"];
  if (!w.is_array() || w.empty()) {
    throw InvalidInput("gmm JSON: \"weights\" must be a non-empty array");
  }
  Eigen::VectorXd weights(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w[i].is_number()) {
      throw InvalidInput("gmm JSON: non-numeric weight");
    }
    weights[static_cast<Eigen::Index>(i)] = w[i].get<double>();
  }
  return DiagGmm(weights, matrix_from_json(root["means"], "means"),
                 matrix_from_json(root["variances"], "variances"));
}

}  // namespace swsl
