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

#include "ehsched/sumt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ehsched/errors.hpp"

namespace ehsched {

namespace {

void check_config(const SumtConfig& cfg) {
  if (!(cfg.eta > 1.0)) {
    throw std::invalid_argument("penalty growth factor must be > 1");
  }
  if (!(cfg.eps_penalty > 0.0)) {
    throw std::invalid_argument("outer stop threshold must be > 0");
  }
  if (!(cfg.feas_tol > 0.0)) {
    throw std::invalid_argument("feasibility tolerance must be > 0");
  }
  if (cfg.mu0 && !(*cfg.mu0 > 0.0)) {
    throw std::invalid_argument("initial penalty coefficient must be > 0");
  }
}

}  // namespace

Eigen::VectorXd initial_point(const EventTimeline& tl, double deadline) {
  if (deadline < tl.data_window()) {
    throw DeadlineBeforeDataError("deadline precedes last data arrival");
  }
  const auto split = tl.split(deadline);
  const double constant_rate = tl.cumulative_data(deadline) / deadline;
  return Eigen::VectorXd::Constant(split.full_epochs + 1, constant_rate);
}

double auto_mu0(const PenaltyProblem& pp, const Eigen::VectorXd& r0) {
  const double objective = consumed_energy(pp, r0);
  const double penalty = penalty_value(pp, r0);
  return std::max(1.0, objective / std::max(penalty, 1e-12));
}

SumtResult solve_min_energy(const EventTimeline& tl, double deadline,
                            const SumtConfig& cfg, TraceSink* trace) {
  check_config(cfg);

  PenaltyProblem pp = make_problem(tl, deadline, 1.0);
  SumtResult res;
  res.r = initial_point(tl, deadline);

  double mu = cfg.mu0 ? *cfg.mu0 : auto_mu0(pp, res.r);
  res.mu0_used = mu;

  // One Newton solve per coefficient value; the coefficient grows by eta
  // after each solve and the loop ends once its reciprocal reaches the
  // stop threshold.
  while (true) {
    pp.mu = mu;
    NewtonResult inner = minimize(pp, std::move(res.r), cfg.newton);
    res.r = std::move(inner.r);
    res.iterations += 1;
    res.newton_steps.push_back(inner.steps);

    if (trace) {
      const ResidualReport rr = constraint_residuals(pp, res.r);
      trace->add({"sumt", res.iterations, mu, deadline, evaluate_value(pp, res.r),
                  consumed_energy(pp, res.r), rr.max_violation, inner.steps});
    }

    mu *= cfg.eta;
    if (1.0 / mu <= cfg.eps_penalty) break;
  }

  const ResidualReport rr = constraint_residuals(pp, res.r);
  res.energy = consumed_energy(pp, res.r);
  res.max_violation = rr.max_violation;
  res.feasible = rr.max_violation <= cfg.feas_tol * pp.constraint_scale();
  return res;
}

}  // namespace ehsched
