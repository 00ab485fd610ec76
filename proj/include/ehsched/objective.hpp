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

#ifndef EHSCHED_OBJECTIVE_HPP
#define EHSCHED_OBJECTIVE_HPP

#include <Eigen/Core>
#include <vector>

#include "ehsched/timeline.hpp"

namespace ehsched {

/// Per-constraint scale factors of the penalty terms. Normalizing each
/// squared violation by the squared constraint magnitude keeps every term
/// dimensionless and O(1) at the initial point, so no constraint dominates.
struct PenaltyWeights {
  std::vector<double> energy;  // one per epoch-end energy causality check
  std::vector<double> data;    // one per epoch-end data causality check
  double completion = 1.0;
  double nonneg = 1.0;
};

/// A frozen instance of the unconstrained penalty objective for one fixed
/// deadline: minimize  sum_i power(r_i) d_i  +  mu * P(r)  over the per-
/// epoch rates r (one variable per epoch touched by the deadline).
///
/// `durations` has one entry per rate variable; entries are the full epoch
/// lengths except the last, which is the part of the final epoch that the
/// deadline actually uses (possibly zero when the deadline falls exactly
/// on an event). `energy_caps` / `data_caps` hold the cumulative
/// availability at each epoch start, which bounds consumption through the
/// end of that epoch since nothing arrives mid-epoch.
struct PenaltyProblem {
  double deadline = 0.0;
  int full_epochs = 0;
  double tail = 0.0;
  std::vector<double> durations;
  std::vector<double> gains;
  std::vector<double> energy_caps;
  std::vector<double> data_caps;
  double bits_due = 0.0;  // data that must be fully sent by the deadline
  PenaltyWeights weights;
  double mu = 1.0;

  int dim() const { return full_epochs + 1; }

  /// Magnitude used to scale feasibility verdicts: the largest constraint
  /// bound of the instance, floored at 1.
  double constraint_scale() const;
};

/// Objective value with exact analytic first and second derivatives.
/// The Hessian is symmetric; squared-hinge kinks contribute zero curvature
/// exactly at the kink.
struct Derivatives {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

/// Freezes the penalty problem for deadline T with penalty coefficient mu.
/// Throws DeadlineBeforeDataError if T precedes the last data arrival.
PenaltyProblem make_problem(const EventTimeline& tl, double deadline, double mu);

/// Full evaluation: value, gradient and Hessian at rate vector r.
Derivatives evaluate(const PenaltyProblem& pp, const Eigen::VectorXd& r);

/// Objective value only (used by line searches).
double evaluate_value(const PenaltyProblem& pp, const Eigen::VectorXd& r);

/// Bare energy consumed by the deadline, without penalty terms.
double consumed_energy(const PenaltyProblem& pp, const Eigen::VectorXd& r);

/// Weighted penalty P(r) alone (the part multiplied by mu).
double penalty_value(const PenaltyProblem& pp, const Eigen::VectorXd& r);

/// Signed, unweighted constraint residuals at r. Positive entries of the
/// causality slacks are violations; `completion_mismatch` is the signed
/// over-/under-delivery of the completion equality.
struct ResidualReport {
  double min_rate = 0.0;
  std::vector<double> energy_slack;
  std::vector<double> data_slack;
  double completion_mismatch = 0.0;
  double max_violation = 0.0;
};

ResidualReport constraint_residuals(const PenaltyProblem& pp,
                                    const Eigen::VectorXd& r);

}  // namespace ehsched

#endif  // EHSCHED_OBJECTIVE_HPP
