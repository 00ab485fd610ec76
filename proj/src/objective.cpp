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

#include "ehsched/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ehsched/errors.hpp"
#include "ehsched/linkmodel.hpp"

namespace ehsched {

namespace {

double square(double x) { return x * x; }

double magnitude_weight(double bound) {
  return 1.0 / square(std::max(bound, 1.0));
}

void require_dim(const PenaltyProblem& pp, const Eigen::VectorXd& r) {
  if (r.size() != pp.dim()) {
    throw DimensionMismatchError("rate vector has dimension " +
                                 std::to_string(r.size()) + ", expected " +
                                 std::to_string(pp.dim()));
  }
}

}  // namespace

double PenaltyProblem::constraint_scale() const {
  double scale = 1.0;
  if (!energy_caps.empty()) scale = std::max(scale, energy_caps.back());
  scale = std::max(scale, bits_due);
  return scale;
}

PenaltyProblem make_problem(const EventTimeline& tl, double deadline, double mu) {
  if (!(deadline > 0.0) || !std::isfinite(deadline)) {
    throw std::invalid_argument("deadline must be finite and > 0");
  }
  if (!(mu > 0.0)) {
    throw std::invalid_argument("penalty coefficient must be > 0");
  }
  if (deadline < tl.data_window()) {
    throw DeadlineBeforeDataError(
        "deadline " + std::to_string(deadline) + " precedes last data arrival at " +
        std::to_string(tl.data_window()));
  }

  const auto [full_epochs, tail] = tl.split(deadline);
  const int n = full_epochs + 1;

  PenaltyProblem pp;
  pp.deadline = deadline;
  pp.full_epochs = full_epochs;
  pp.tail = tail;
  pp.mu = mu;
  pp.durations.reserve(n);
  pp.gains.reserve(n);
  pp.energy_caps.reserve(n);
  pp.data_caps.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double t_k = tl.event_times()[k];
    pp.durations.push_back(k < full_epochs ? tl.epoch_lengths()[k] : tail);
    pp.gains.push_back(tl.epoch_gains()[k]);
    pp.energy_caps.push_back(tl.cumulative_energy(t_k));
    pp.data_caps.push_back(tl.cumulative_data(t_k));
  }
  pp.bits_due = tl.cumulative_data(deadline);

  pp.weights.energy.reserve(n);
  pp.weights.data.reserve(n);
  for (int k = 0; k < n; ++k) {
    pp.weights.energy.push_back(magnitude_weight(pp.energy_caps[k]));
    pp.weights.data.push_back(magnitude_weight(pp.data_caps[k]));
  }
  pp.weights.completion = magnitude_weight(pp.bits_due);
  pp.weights.nonneg = 1.0;
  return pp;
}

Derivatives evaluate(const PenaltyProblem& pp, const Eigen::VectorXd& r) {
  require_dim(pp, r);
  const int n = pp.dim();
  const auto& w = pp.weights;

  // Per-epoch power terms and cumulative consumption/delivery.
  Eigen::VectorXd gd(n);   // power(r_i) * d_i
  Eigen::VectorXd g1d(n);  // power'(r_i) * d_i
  Eigen::VectorXd g2d(n);  // power''(r_i) * d_i
  for (int i = 0; i < n; ++i) {
    const double d = pp.durations[i];
    const auto der = power_derivatives(r[i], pp.gains[i]);
    gd[i] = power_of_rate(r[i], pp.gains[i]) * d;
    g1d[i] = der.first * d;
    g2d[i] = der.second * d;
  }

  double energy = 0.0;
  double bits = 0.0;
  std::vector<double> energy_excess(n);  // max(0, consumed - cap) at epoch end k
  std::vector<double> data_excess(n);
  for (int k = 0; k < n; ++k) {
    energy += gd[k];
    bits += r[k] * pp.durations[k];
    energy_excess[k] = std::max(0.0, energy - pp.energy_caps[k]);
    data_excess[k] = std::max(0.0, bits - pp.data_caps[k]);
  }
  const double mismatch = bits - pp.bits_due;

  double penalty = w.completion * square(mismatch);
  for (int i = 0; i < n; ++i) penalty += w.nonneg * square(std::max(0.0, -r[i]));
  for (int k = 0; k < n; ++k) {
    penalty += w.energy[k] * square(energy_excess[k]);
    penalty += w.data[k] * square(data_excess[k]);
  }

  Derivatives out;
  out.value = energy + pp.mu * penalty;

  // Suffix accumulators over the causality checks that involve epoch j
  // (all k >= j): weighted excesses for the gradient, weighted activity
  // indicators for the Hessian cross terms.
  std::vector<double> e_excess_suffix(n + 1, 0.0);
  std::vector<double> b_excess_suffix(n + 1, 0.0);
  std::vector<double> e_active_suffix(n + 1, 0.0);
  std::vector<double> b_active_suffix(n + 1, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    e_excess_suffix[k] = e_excess_suffix[k + 1] + w.energy[k] * energy_excess[k];
    b_excess_suffix[k] = b_excess_suffix[k + 1] + w.data[k] * data_excess[k];
    e_active_suffix[k] =
        e_active_suffix[k + 1] + (energy_excess[k] > 0.0 ? w.energy[k] : 0.0);
    b_active_suffix[k] =
        b_active_suffix[k + 1] + (data_excess[k] > 0.0 ? w.data[k] : 0.0);
  }

  out.grad.resize(n);
  for (int j = 0; j < n; ++j) {
    const double d = pp.durations[j];
    double g = g1d[j];
    g += pp.mu * 2.0 *
         (e_excess_suffix[j] * g1d[j] + b_excess_suffix[j] * d +
          w.completion * mismatch * d - w.nonneg * std::max(0.0, -r[j]));
    out.grad[j] = g;
  }

  out.hess.setZero(n, n);
  for (int j = 0; j < n; ++j) {
    const double dj = pp.durations[j];
    double diag = g2d[j];
    diag += pp.mu * 2.0 *
            (e_active_suffix[j] * g1d[j] * g1d[j] + e_excess_suffix[j] * g2d[j] +
             b_active_suffix[j] * dj * dj + w.completion * dj * dj +
             (r[j] < 0.0 ? w.nonneg : 0.0));
    out.hess(j, j) = diag;
    for (int l = j + 1; l < n; ++l) {
      const double dl = pp.durations[l];
      // Shared terms are the checks at k >= max(j, l) = l plus the
      // completion equality.
      const double cross =
          pp.mu * 2.0 *
          (e_active_suffix[l] * g1d[j] * g1d[l] + b_active_suffix[l] * dj * dl +
           w.completion * dj * dl);
      out.hess(j, l) = cross;
      out.hess(l, j) = cross;
    }
  }
  return out;
}

double evaluate_value(const PenaltyProblem& pp, const Eigen::VectorXd& r) {
  require_dim(pp, r);
  return consumed_energy(pp, r) + pp.mu * penalty_value(pp, r);
}

double consumed_energy(const PenaltyProblem& pp, const Eigen::VectorXd& r) {
  require_dim(pp, r);
  double energy = 0.0;
  for (int i = 0; i < pp.dim(); ++i) {
    energy += power_of_rate(r[i], pp.gains[i]) * pp.durations[i];
  }
  return energy;
}

double penalty_value(const PenaltyProblem& pp, const Eigen::VectorXd& r) {
  require_dim(pp, r);
  const int n = pp.dim();
  const auto& w = pp.weights;
  double energy = 0.0;
  double bits = 0.0;
  double penalty = 0.0;
  for (int k = 0; k < n; ++k) {
    energy += power_of_rate(r[k], pp.gains[k]) * pp.durations[k];
    bits += r[k] * pp.durations[k];
    penalty += w.energy[k] * square(std::max(0.0, energy - pp.energy_caps[k]));
    penalty += w.data[k] * square(std::max(0.0, bits - pp.data_caps[k]));
    penalty += w.nonneg * square(std::max(0.0, -r[k]));
  }
  penalty += w.completion * square(bits - pp.bits_due);
  return penalty;
}

ResidualReport constraint_residuals(const PenaltyProblem& pp,
                                    const Eigen::VectorXd& r) {
  require_dim(pp, r);
  const int n = pp.dim();

  ResidualReport rep;
  rep.min_rate = r.minCoeff();
  rep.energy_slack.resize(n);
  rep.data_slack.resize(n);

  double energy = 0.0;
  double bits = 0.0;
  double worst = std::max(0.0, -rep.min_rate);
  for (int k = 0; k < n; ++k) {
    energy += power_of_rate(r[k], pp.gains[k]) * pp.durations[k];
    bits += r[k] * pp.durations[k];
    rep.energy_slack[k] = energy - pp.energy_caps[k];
    rep.data_slack[k] = bits - pp.data_caps[k];
    worst = std::max({worst, rep.energy_slack[k], rep.data_slack[k]});
  }
  rep.completion_mismatch = bits - pp.bits_due;
  rep.max_violation = std::max(worst, std::abs(rep.completion_mismatch));
  return rep;
}

}  // namespace ehsched
