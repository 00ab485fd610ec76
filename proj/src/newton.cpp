// Copyright 2026 The ehsched Authors
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

#include "ehsched/newton.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

#include "ehsched/errors.hpp"

namespace ehsched {

namespace detail {

namespace {

// Residual-checked solve attempt with iterative refinement sweeps.
// Returns false when the factorization is unusable at this damping level.
bool try_solve(const Eigen::MatrixXd& H, const Eigen::VectorXd& b,
               Eigen::VectorXd& x) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;
  x = ldlt.solve(b);
  if (!x.allFinite()) return false;

  const double b_norm = std::max(b.norm(), 1e-300);
  for (int sweep = 0; sweep < 3; ++sweep) {
    Eigen::VectorXd residual = b - H * x;
    if (residual.norm() <= 1e-12 * b_norm) break;
    Eigen::VectorXd correction = ldlt.solve(residual);
    if (!correction.allFinite()) break;
    x += correction;
  }
  return x.allFinite() && (H * x - b).norm() <= 1e-10 * b_norm;
}

}  // namespace

double solve_spd(const Eigen::MatrixXd& H, const Eigen::VectorXd& b,
                 double levenberg_init, Eigen::VectorXd& x) {
  const int n = static_cast<int>(H.rows());
  if (H.allFinite() && try_solve(H, b, x)) return 0.0;

  double tau = levenberg_init * H.trace() / n;
  if (!(tau > 0.0) || !std::isfinite(tau)) tau = levenberg_init;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  for (int attempt = 0; attempt < 20; ++attempt, tau *= 10.0) {
    const Eigen::MatrixXd damped = H + tau * identity;
    if (!damped.allFinite()) continue;
    if (try_solve(damped, b, x)) return tau;
  }
  throw SingularHessianError("damping escalation failed to factorize Hessian");
}

}  // namespace detail

namespace {

void check_config(const NewtonConfig& cfg) {
  if (!(cfg.eps_decrement > 0.0)) {
    throw std::invalid_argument("decrement threshold must be > 0");
  }
  if (!(cfg.backtrack_beta > 0.0 && cfg.backtrack_beta < 1.0)) {
    throw std::invalid_argument("backtrack factor must lie in (0, 1)");
  }
  if (!(cfg.armijo_c > 0.0 && cfg.armijo_c < 0.5)) {
    throw std::invalid_argument("Armijo constant must lie in (0, 0.5)");
  }
  if (cfg.max_steps < 1) {
    throw std::invalid_argument("max_steps must be >= 1");
  }
}

}  // namespace

NewtonResult minimize(const PenaltyProblem& pp, Eigen::VectorXd r0,
                      const NewtonConfig& cfg) {
  check_config(cfg);
  if (r0.size() != pp.dim()) {
    throw DimensionMismatchError("initial point has wrong dimension");
  }

  NewtonResult res;
  res.r = std::move(r0);

  for (int step = 0; step <= cfg.max_steps; ++step) {
    Derivatives der = evaluate(pp, res.r);
    if (!std::isfinite(der.value) || !der.grad.allFinite()) {
      throw NonFiniteObjectiveError("objective or gradient not finite at iterate");
    }

    Eigen::VectorXd direction;
    detail::solve_spd(der.hess, -der.grad, cfg.levenberg_init, direction);
    // grad' H^-1 grad. A nonpositive value only occurs by rounding when the
    // gradient is already negligible, which counts as converged.
    const double decrement_sq = -der.grad.dot(direction);

    res.final_decrement = std::sqrt(std::max(0.0, decrement_sq));
    if (res.final_decrement <= cfg.eps_decrement) {
      res.converged = true;
      return res;
    }
    if (step == cfg.max_steps) break;

    // Backtracking Armijo line search on the full Newton step.
    const double slope = -decrement_sq;  // grad' direction
    double t = 1.0;
    bool accepted = false;
    while (t >= 1e-20) {
      const double trial = evaluate_value(pp, res.r + t * direction);
      if (std::isfinite(trial) && trial <= der.value + cfg.armijo_c * t * slope) {
        res.r += t * direction;
        accepted = true;
        break;
      }
      t *= cfg.backtrack_beta;
    }
    if (!accepted) break;  // step underflow; report the best iterate we have

    res.steps = step + 1;
    if (cfg.observer) {
      cfg.observer(res.steps, evaluate_value(pp, res.r), res.final_decrement, t);
    }
  }
  res.converged = false;
  return res;
}

}  // namespace ehsched
