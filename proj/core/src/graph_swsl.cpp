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

#include "swsl/graph_swsl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace swsl {

namespace {

void validate_config(const SolverConfig& cfg) {
  if (cfg.lambda1 <= 0.0) throw InvalidInput("solver: lambda1 must be positive");
  if (cfg.lambda2 < 0.0) throw InvalidInput("solver: lambda2 must be non-negative");
  if (cfg.lambda3 && *cfg.lambda3 <= 0.0) {
    throw InvalidInput("solver: lambda3 must be positive");
  }
  if (cfg.cccp_tol <= 0.0 || cfg.subproblem_tol <= 0.0 || cfg.tie_tol <= 0.0) {
    throw InvalidInput("solver: tolerances must be positive");
  }
  if (cfg.cccp_max_iters < 1) {
    throw InvalidInput("solver: cccp_max_iters must be at least 1");
  }
}

// lambda3 = n / T when left on auto. With no positive bags the slack term is
// empty, so any positive value works; 1 keeps the objective well defined.
double resolve_lambda3(const ProblemMatrices& p, const SolverConfig& cfg) {
  if (cfg.lambda3) return *cfg.lambda3;
  if (p.num_bags() == 0) return 1.0;
  return static_cast<double>(p.num_labeled) /
         static_cast<double>(p.num_bags());
}

double bag_max(const Eigen::VectorXd& scores, const BagRange& range) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = range.begin; j < range.end; ++j) {
    best = std::max(best, scores[static_cast<Eigen::Index>(j)]);
  }
  return best;
}

std::vector<std::vector<std::size_t>> argmax_sets(
    const Eigen::VectorXd& scores, const ProblemMatrices& p, double tie_tol) {
  std::vector<std::vector<std::size_t>> sets;
  sets.reserve(p.num_bags());
  for (const BagRange& range : p.bag_ranges) {
    const double max_score = bag_max(scores, range);
    const double band = tie_tol * (1.0 + std::abs(max_score));
    std::vector<std::size_t> set;
    for (std::size_t j = range.begin; j < range.end; ++j) {
      if (scores[static_cast<Eigen::Index>(j)] >= max_score - band) {
        set.push_back(j);
      }
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

// Quadratic part of the objective (everything except the bag slack term).
double smooth_terms(const Eigen::VectorXd& alpha, const Eigen::VectorXd& scores,
                    const ProblemMatrices& p, double lambda1,
                    double lambda2_scaled) {
  const Eigen::Index n = static_cast<Eigen::Index>(p.num_labeled);
  const double data_fit =
      (p.y.head(n) - scores.head(n)).squaredNorm();
  const double rkhs = lambda1 * alpha.dot(scores);
  const double intrinsic =
      lambda2_scaled > 0.0
          ? lambda2_scaled * scores.dot(p.laplacian * scores)
          : 0.0;
  return data_fit + rkhs + intrinsic;
}

// Linearization of every bag max at a reference iterate: per-bag uniform
// subgradient weights stacked into columns of `delta` (N x T), plus the
// affine constants d_t so that l_t(a) = delta_t' K a + d_t equals the true
// bag max at the reference point.
struct Linearization {
  Eigen::MatrixXd delta;  // N x T
  Eigen::VectorXd d;      // T
};

Linearization linearize(const Eigen::VectorXd& scores,
                        const ProblemMatrices& p, double tie_tol) {
  const Eigen::Index num_rows = static_cast<Eigen::Index>(p.size());
  const Eigen::Index num_bags = static_cast<Eigen::Index>(p.num_bags());
  Linearization lin;
  lin.delta = Eigen::MatrixXd::Zero(num_rows, num_bags);
  lin.d.resize(num_bags);
  const auto sets = argmax_sets(scores, p, tie_tol);
  for (Eigen::Index t = 0; t < num_bags; ++t) {
    const double weight = 1.0 / static_cast<double>(sets[t].size());
    double linear_at_ref = 0.0;
    for (std::size_t j : sets[t]) {
      lin.delta(static_cast<Eigen::Index>(j), t) = weight;
      linear_at_ref += weight * scores[static_cast<Eigen::Index>(j)];
    }
    lin.d[t] = bag_max(scores, p.bag_ranges[t]) - linear_at_ref;
  }
  return lin;
}

// Shared state for one subproblem: matrices of
//   S(a) = smooth_terms(a) + l3 sum_t max(0, 1 - d_t - delta_t' K a)^2.
// The first-order condition factors as K * r(a) = 0 with
//   r(a) = (J + c2 L + l3 sum_{t in V} delta_t delta_t') K a + l1 a - Y
//          - l3 sum_{t in V} (1 - d_t) delta_t,
// so stationary points solve the better-conditioned system r(a) = 0 instead
// of the normal equations.
struct Subproblem {
  const ProblemMatrices& p;
  double lambda1;
  double lambda2_scaled;
  double lambda3;
  const Eigen::MatrixXd& base;  // (J + c2 L) K + l1 I; outlives this struct
  Linearization lin;

  Eigen::VectorXd scores(const Eigen::VectorXd& alpha) const {
    return p.kernel * alpha;
  }

  double value_at(const Eigen::VectorXd& alpha,
                  const Eigen::VectorXd& scores) const {
    double hinge = 0.0;
    for (Eigen::Index t = 0; t < lin.d.size(); ++t) {
      const double violation =
          1.0 - lin.d[t] - lin.delta.col(t).dot(scores);
      if (violation > 0.0) hinge += violation * violation;
    }
    return smooth_terms(alpha, scores, p, lambda1, lambda2_scaled) +
           lambda3 * hinge;
  }

  // r(a) as above; the true gradient of S is 2 K r(a).
  Eigen::VectorXd residual(const Eigen::VectorXd& alpha,
                           const Eigen::VectorXd& scores) const {
    const Eigen::Index n = static_cast<Eigen::Index>(p.num_labeled);
    Eigen::VectorXd r = lambda1 * alpha;
    r.head(n) += scores.head(n) - p.y.head(n);
    if (lambda2_scaled > 0.0) {
      r += lambda2_scaled * (p.laplacian * scores);
    }
    for (Eigen::Index t = 0; t < lin.d.size(); ++t) {
      const double violation = 1.0 - lin.d[t] - lin.delta.col(t).dot(scores);
      if (violation > 0.0) {
        r -= lambda3 * violation * lin.delta.col(t);
      }
    }
    return r;
  }

  double gradient_norm(const Eigen::VectorXd& alpha,
                       const Eigen::VectorXd& scores) const {
    return 2.0 * (p.kernel * residual(alpha, scores)).norm();
  }
};

Eigen::MatrixXd base_matrix(const ProblemMatrices& p, double lambda1,
                            double lambda2_scaled) {
  const Eigen::Index num_rows = static_cast<Eigen::Index>(p.size());
  const Eigen::Index n = static_cast<Eigen::Index>(p.num_labeled);
  Eigen::MatrixXd selector = Eigen::MatrixXd::Zero(num_rows, num_rows);
  selector.diagonal().head(n).setOnes();
  if (lambda2_scaled > 0.0) {
    selector += lambda2_scaled * p.laplacian;
  }
  Eigen::MatrixXd base = selector * p.kernel;
  base.diagonal().array() += lambda1;
  return base;
}

Eigen::VectorXd solve_linear(Eigen::MatrixXd system, const Eigen::VectorXd& rhs,
                             double jitter_unit) {
  const double rhs_scale = 1.0 + rhs.norm();
  double jitter = jitter_unit;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    Eigen::VectorXd x = lu.solve(rhs);
    if (x.allFinite() && (system * x - rhs).norm() <= 1e-6 * rhs_scale) {
      return x;
    }
    system.diagonal().array() += jitter;
    jitter *= 100.0;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  Eigen::VectorXd x = lu.solve(rhs);
  if (!x.allFinite()) {
    throw ComputeError("linear solve failed: non-finite solution");
  }
  return x;
}

// Exact minimization of the convex piecewise-quadratic S along
// alpha + s * dir for s >= 0. Returns the step; `scores` and `dir_scores`
// are K alpha and K dir.
double exact_line_search(const Subproblem& sub, const Eigen::VectorXd& alpha,
                         const Eigen::VectorXd& scores,
                         const Eigen::VectorXd& dir,
                         const Eigen::VectorXd& dir_scores) {
  const Eigen::Index n = static_cast<Eigen::Index>(sub.p.num_labeled);
  const Eigen::Index num_bags = sub.lin.d.size();

  // Smooth part coefficients: a0 + a1 s + a2 s^2.
  const Eigen::VectorXd residual0 = sub.p.y.head(n) - scores.head(n);
  double a1 = -2.0 * residual0.dot(dir_scores.head(n)) +
              sub.lambda1 * (alpha.dot(dir_scores) + dir.dot(scores));
  double a2 = dir_scores.head(n).squaredNorm() +
              sub.lambda1 * dir.dot(dir_scores);
  if (sub.lambda2_scaled > 0.0) {
    const Eigen::VectorXd lap_dir = sub.p.laplacian * dir_scores;
    a1 += 2.0 * sub.lambda2_scaled * scores.dot(lap_dir);
    a2 += sub.lambda2_scaled * dir_scores.dot(lap_dir);
  }

  // Hinge pieces: max(0, u_t - s v_t)^2 per bag.
  Eigen::VectorXd u(num_bags), v(num_bags);
  for (Eigen::Index t = 0; t < num_bags; ++t) {
    u[t] = 1.0 - sub.lin.d[t] - sub.lin.delta.col(t).dot(scores);
    v[t] = sub.lin.delta.col(t).dot(dir_scores);
  }

  auto phi_prime = [&](double s) {
    double g = a1 + 2.0 * a2 * s;
    for (Eigen::Index t = 0; t < num_bags; ++t) {
      const double w = u[t] - s * v[t];
      if (w > 0.0) g -= 2.0 * sub.lambda3 * w * v[t];
    }
    return g;
  };

  if (phi_prime(0.0) >= 0.0) return 0.0;

  double hi = 1.0;
  int expand = 0;
  while (phi_prime(hi) < 0.0 && expand < 60) {
    hi *= 2.0;
    ++expand;
  }
  if (phi_prime(hi) < 0.0) return hi;  // unbounded direction guard

  // phi' is nondecreasing (phi convex): bisect for the root.
  double lo = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (phi_prime(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-14 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd minimize_subproblem(const Subproblem& sub,
                                    const Eigen::VectorXd& alpha_k,
                                    double rel_tol) {
  const Eigen::Index num_bags = sub.lin.d.size();

  Eigen::VectorXd alpha = alpha_k;
  Eigen::VectorXd scores = sub.scores(alpha);
  const double tol = rel_tol * (1.0 + sub.gradient_norm(alpha, scores));

  const double jitter_unit =
      1e-10 * sub.p.kernel.trace() / static_cast<double>(sub.p.size());

  const int max_iters = 200;
  for (int iter = 0; iter < max_iters; ++iter) {
    if (sub.gradient_norm(alpha, scores) <= tol) return alpha;

    // Newton step for the currently violated set of bags.
    Eigen::MatrixXd system = sub.base;
    Eigen::VectorXd rhs = sub.p.y;
    for (Eigen::Index t = 0; t < num_bags; ++t) {
      const double violation =
          1.0 - sub.lin.d[t] - sub.lin.delta.col(t).dot(scores);
      if (violation > 0.0) {
        system += sub.lambda3 * sub.lin.delta.col(t) *
                  (sub.p.kernel * sub.lin.delta.col(t)).transpose();
        rhs += sub.lambda3 * (1.0 - sub.lin.d[t]) * sub.lin.delta.col(t);
      }
    }
    Eigen::VectorXd target = solve_linear(std::move(system), rhs, jitter_unit);
    Eigen::VectorXd dir = target - alpha;
    if (dir.norm() <= 1e-15 * (1.0 + alpha.norm())) break;

    Eigen::VectorXd dir_scores = sub.p.kernel * dir;
    const double step = exact_line_search(sub, alpha, scores, dir, dir_scores);
    if (step <= 0.0) break;
    alpha += step * dir;
    scores += step * dir_scores;
  }

  // Fallback: plain gradient descent with backtracking.
  double value = sub.value_at(alpha, scores);
  for (int iter = 0; iter < 100000; ++iter) {
    Eigen::VectorXd grad = 2.0 * (sub.p.kernel * sub.residual(alpha, scores));
    const double grad_norm = grad.norm();
    if (grad_norm <= tol) return alpha;
    double step = 1.0;
    for (int halving = 0; halving < 60; ++halving) {
      Eigen::VectorXd candidate = alpha - step * grad;
      Eigen::VectorXd cand_scores = sub.scores(candidate);
      const double cand_value = sub.value_at(candidate, cand_scores);
      if (cand_value <= value - 0.5 * step * grad_norm * grad_norm) {
        alpha = std::move(candidate);
        scores = std::move(cand_scores);
        value = cand_value;
        break;
      }
      step *= 0.5;
      if (halving == 59) {
        return alpha;  // no further progress representable
      }
    }
  }
  throw ComputeError(
      "subproblem did not converge: gradient norm " +
      std::to_string(sub.gradient_norm(alpha, scores)) + " above tolerance " +
      std::to_string(tol));
}

Subproblem make_subproblem(const ProblemMatrices& p, const SolverConfig& cfg,
                           const Eigen::MatrixXd& base,
                           const Eigen::VectorXd& alpha_k) {
  const double lambda2_scaled =
      cfg.lambda2 / (static_cast<double>(p.size()) * static_cast<double>(p.size()));
  Subproblem sub{p, cfg.lambda1, lambda2_scaled, resolve_lambda3(p, cfg),
                 base, Linearization{}};
  sub.lin = linearize(p.kernel * alpha_k, p, cfg.tie_tol);
  return sub;
}

}  // namespace

ProblemMatrices build_problem(const IndexedDataset& data,
                              const KernelConfig& kernel,
                              const GraphConfig& graph) {
  if (data.size() < 2) {
    throw InvalidInput("build_problem: need at least 2 instances");
  }
  ProblemMatrices p;
  p.kernel = kernel_matrix(data.features, kernel);
  p.laplacian = knn_graph(data.features, graph).laplacian;
  p.num_labeled = data.num_labeled;
  p.bag_ranges = data.bag_ranges;
  p.y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.num_labeled; ++i) {
    p.y[static_cast<Eigen::Index>(i)] = static_cast<double>(data.labels[i]);
  }
  return p;
}

double objective_value(const Eigen::VectorXd& alpha, const Eigen::VectorXd& xi,
                       const ProblemMatrices& p, const SolverConfig& cfg) {
  if (alpha.size() != static_cast<Eigen::Index>(p.size())) {
    throw InvalidInput("objective_value: alpha size mismatch");
  }
  if (xi.size() != static_cast<Eigen::Index>(p.num_bags())) {
    throw InvalidInput("objective_value: xi size mismatch");
  }
  const double lambda2_scaled =
      cfg.lambda2 / (static_cast<double>(p.size()) * static_cast<double>(p.size()));
  const Eigen::VectorXd scores = p.kernel * alpha;
  const double value =
      smooth_terms(alpha, scores, p, cfg.lambda1, lambda2_scaled) +
      resolve_lambda3(p, cfg) * xi.squaredNorm();
  if (!std::isfinite(value)) {
    throw ComputeError("objective_value: non-finite result");
  }
  return value;
}

double penalized_objective(const Eigen::VectorXd& alpha,
                           const ProblemMatrices& p, const SolverConfig& cfg) {
  if (alpha.size() != static_cast<Eigen::Index>(p.size())) {
    throw InvalidInput("penalized_objective: alpha size mismatch");
  }
  const double lambda2_scaled =
      cfg.lambda2 / (static_cast<double>(p.size()) * static_cast<double>(p.size()));
  const Eigen::VectorXd scores = p.kernel * alpha;
  double hinge = 0.0;
  for (const BagRange& range : p.bag_ranges) {
    const double slack = std::max(0.0, 1.0 - bag_max(scores, range));
    hinge += slack * slack;
  }
  const double value =
      smooth_terms(alpha, scores, p, cfg.lambda1, lambda2_scaled) +
      resolve_lambda3(p, cfg) * hinge;
  if (!std::isfinite(value)) {
    throw ComputeError("penalized_objective: non-finite result");
  }
  return value;
}

Eigen::VectorXd subgradient_weights(const Eigen::VectorXd& alpha,
                                    const ProblemMatrices& p, std::size_t t,
                                    double tie_tol) {
  if (t >= p.num_bags()) {
    throw InvalidInput("subgradient_weights: bag index out of range");
  }
  const BagRange& range = p.bag_ranges[t];
  const Eigen::VectorXd scores = p.kernel * alpha;
  const double max_score = bag_max(scores, range);
  const double band = tie_tol * (1.0 + std::abs(max_score));
  Eigen::VectorXd weights =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(range.size()));
  std::size_t count = 0;
  for (std::size_t j = range.begin; j < range.end; ++j) {
    if (scores[static_cast<Eigen::Index>(j)] >= max_score - band) ++count;
  }
  for (std::size_t j = range.begin; j < range.end; ++j) {
    if (scores[static_cast<Eigen::Index>(j)] >= max_score - band) {
      weights[static_cast<Eigen::Index>(j - range.begin)] =
          1.0 / static_cast<double>(count);
    }
  }
  return weights;
}

Eigen::VectorXd solve_subproblem(const ProblemMatrices& p,
                                 const SolverConfig& cfg,
                                 const Eigen::VectorXd& alpha_k) {
  validate_config(cfg);
  if (alpha_k.size() != static_cast<Eigen::Index>(p.size())) {
    throw InvalidInput("solve_subproblem: alpha size mismatch");
  }
  if (!alpha_k.allFinite()) {
    throw InvalidInput("solve_subproblem: alpha_k must be finite");
  }
  const double lambda2_scaled =
      cfg.lambda2 / (static_cast<double>(p.size()) * static_cast<double>(p.size()));
  const Eigen::MatrixXd base = base_matrix(p, cfg.lambda1, lambda2_scaled);
  Subproblem sub = make_subproblem(p, cfg, base, alpha_k);
  return minimize_subproblem(sub, alpha_k, cfg.subproblem_tol);
}

double GraphSwslModel::predict_instance(const Eigen::VectorXd& x) const {
  if (x.size() != train_features.cols()) {
    throw InvalidInput("predict_instance: feature dimension mismatch");
  }
  return kernel_row(kernel, train_features, x).dot(alpha);
}

double GraphSwslModel::predict_bag(const Eigen::MatrixXd& bag) const {
  if (bag.rows() < 1) {
    throw InvalidInput("predict_bag: empty bag");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < bag.rows(); ++r) {
    best = std::max(best, predict_instance(bag.row(r)));
  }
  return best;
}

GraphSwslModel train_graph_swsl(const IndexedDataset& data,
                                const KernelConfig& kernel,
                                const GraphConfig& graph,
                                const SolverConfig& cfg, CccpState* state) {
  validate_config(cfg);
  if (data.size() == 0) {
    throw InvalidInput("train: empty training set");
  }
  ProblemMatrices p = build_problem(data, kernel, graph);
  const double lambda2_scaled =
      cfg.lambda2 / (static_cast<double>(p.size()) * static_cast<double>(p.size()));
  const Eigen::MatrixXd base = base_matrix(p, cfg.lambda1, lambda2_scaled);
  const double jitter_unit =
      1e-10 * p.kernel.trace() / static_cast<double>(p.size());

  // Warm start: the supervised-only solution, i.e. the system with no bag
  // terms. With T = 0 this is already the trained model.
  Eigen::VectorXd alpha = solve_linear(base, p.y, jitter_unit);

  std::vector<double> trace;
  trace.push_back(penalized_objective(alpha, p, cfg));

  auto sets_for = [&](const Eigen::VectorXd& a) {
    return argmax_sets(p.kernel * a, p, cfg.tie_tol);
  };
  std::vector<std::vector<std::size_t>> prev_sets = sets_for(alpha);

  int iterations = 0;
  if (p.num_bags() > 0) {
    for (int k = 0; k < cfg.cccp_max_iters; ++k) {
      Subproblem sub = make_subproblem(p, cfg, base, alpha);
      Eigen::VectorXd next = minimize_subproblem(sub, alpha, cfg.subproblem_tol);
      const double value = penalized_objective(next, p, cfg);
      const double prev = trace.back();
      if (value > prev + 1e-12 * (1.0 + std::abs(prev))) {
        break;  // numerically stalled; keep the previous iterate
      }
      alpha = std::move(next);
      trace.push_back(value);
      ++iterations;
      const auto sets = sets_for(alpha);
      const double decrease = (prev - value) / std::max(std::abs(prev), 1e-12);
      if (decrease < cfg.cccp_tol || sets == prev_sets) {
        prev_sets = sets;
        break;
      }
      prev_sets = sets;
    }
  }

  if (state) {
    state->alpha = alpha;
    const Eigen::VectorXd scores = p.kernel * alpha;
    state->xi.resize(static_cast<Eigen::Index>(p.num_bags()));
    for (std::size_t t = 0; t < p.num_bags(); ++t) {
      state->xi[static_cast<Eigen::Index>(t)] =
          std::max(0.0, 1.0 - bag_max(scores, p.bag_ranges[t]));
    }
    state->max_sets = prev_sets;
    state->objective_trace = trace;
    state->iterations = iterations;
  }

  GraphSwslModel model;
  model.alpha = std::move(alpha);
  model.train_features = data.features;
  model.kernel = kernel;
  model.config = cfg;
  model.config.lambda3 = resolve_lambda3(p, cfg);
  model.objective_trace = std::move(trace);
  return model;
}

}  // namespace swsl
