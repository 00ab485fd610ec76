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

#ifndef EHSCHED_NEWTON_HPP
#define EHSCHED_NEWTON_HPP

#include <Eigen/Core>
#include <functional>

#include "ehsched/objective.hpp"

namespace ehsched {

struct NewtonConfig {
  /// Stop once the Newton decrement sqrt(grad' H^-1 grad) drops to here.
  double eps_decrement = 1e-8;
  int max_steps = 200;
  /// Armijo sufficient-decrease constant, in (0, 0.5).
  double armijo_c = 1e-4;
  /// Step shrink factor of the backtracking line search, in (0, 1).
  double backtrack_beta = 0.5;
  /// Damping seed, as a fraction of trace(H)/n. Damping only engages when
  /// the plain factorization fails or produces an unusable step.
  double levenberg_init = 1e-10;
  /// Optional per-step observer: (step index, objective value, decrement,
  /// accepted step length).
  std::function<void(int, double, double, double)> observer;
};

struct NewtonResult {
  Eigen::VectorXd r;
  int steps = 0;
  double final_decrement = 0.0;
  bool converged = false;
};

/// Damped Newton minimizer for one penalty subproblem. Accepted steps
/// satisfy the Armijo condition, so the objective decreases monotonically.
/// Throws NonFiniteObjectiveError when the objective or gradient is not
/// finite at an iterate, SingularHessianError if damping escalation cannot
/// produce a usable step.
NewtonResult minimize(const PenaltyProblem& pp, Eigen::VectorXd r0,
                      const NewtonConfig& cfg);

namespace detail {

/// Solves H x = b for symmetric positive (semi)definite H, escalating
/// Levenberg damping tau*I until the factorization yields a finite
/// solution whose refined residual is small. Returns the damping used.
double solve_spd(const Eigen::MatrixXd& H, const Eigen::VectorXd& b,
                 double levenberg_init, Eigen::VectorXd& x);

}  // namespace detail

}  // namespace ehsched

#endif  // EHSCHED_NEWTON_HPP
