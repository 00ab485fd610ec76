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

#ifndef EHSCHED_SUMT_HPP
#define EHSCHED_SUMT_HPP

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "ehsched/newton.hpp"
#include "ehsched/objective.hpp"
#include "ehsched/timeline.hpp"
#include "ehsched/trace.hpp"

namespace ehsched {

struct SumtConfig {
  /// Initial penalty coefficient; unset means auto-balance against the
  /// objective at the initial point.
  std::optional<double> mu0;
  /// Geometric growth factor of the penalty coefficient, > 1.
  double eta = 2.0;
  /// Outer stop threshold: iterate until 1/mu falls to here.
  double eps_penalty = 1e-10;
  NewtonConfig newton;
  /// Unweighted residual tolerance (times the constraint scale) for the
  /// feasibility verdict.
  double feas_tol = 1e-6;
};

struct SumtResult {
  Eigen::VectorXd r;
  /// Bare energy consumed by the deadline at the final iterate.
  double energy = 0.0;
  int iterations = 0;
  std::vector<int> newton_steps;  // per outer iteration
  double max_violation = 0.0;
  bool feasible = false;
  /// Initial penalty coefficient actually used (relevant under auto mode).
  double mu0_used = 1.0;
};

/// Constant-rate start that sends all due data evenly over the deadline,
/// deliberately ignoring causality (an exterior point in general).
Eigen::VectorXd initial_point(const EventTimeline& tl, double deadline);

/// Balances the initial penalty coefficient so objective and weighted
/// penalty are commensurate at r0, floored at 1.
double auto_mu0(const PenaltyProblem& pp, const Eigen::VectorXd& r0);

/// Exterior-penalty outer loop: Newton subproblems with geometrically
/// growing penalty coefficient, each warm-started from the previous
/// solution. Runs exactly ceil(log(1/(mu0*eps))/log(eta)) iterations.
/// Deterministic for fixed inputs and config.
SumtResult solve_min_energy(const EventTimeline& tl, double deadline,
                            const SumtConfig& cfg, TraceSink* trace = nullptr);

}  // namespace ehsched

#endif  // EHSCHED_SUMT_HPP
