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

#ifndef EHSCHED_ORACLE_HPP
#define EHSCHED_ORACLE_HPP

#include <string>
#include <vector>

#include "ehsched/scheduler.hpp"
#include "ehsched/timeline.hpp"

namespace ehsched::oracle {

// Ground-truth generators and validators, deliberately independent of the
// solver path: the power curve, cumulative sums and residuals here are
// computed from raw events with their own arithmetic so they can serve as
// cross-checks.

struct OracleConfig {
  double grid_resolution = 1e-3;  // rate step, bits/s
  double time_resolution = 1e-3;  // seconds, for deadline sweeps
  int max_dims = 3;               // refuse grid search beyond this many rates
};

struct GridResult {
  std::vector<double> rates;
  double energy = 0.0;
};

/// Exhaustive search over the rate grid for the least-energy point that
/// meets causality within the grid slack and the completion equality
/// within one rate step over the horizon. Ties break to the
/// lexicographically smallest rate vector. Throws NoFeasibleGridPointError
/// when no grid point qualifies and std::invalid_argument beyond max_dims.
GridResult grid_min_energy(const EventTimeline& tl, double deadline,
                           const OracleConfig& cfg);

/// Closed-form minimal completion time for a single-event instance
/// (energy E and data B both at t=0, constant gain h): the unique root of
/// power(r)/r = E/B gives the rate, and B over that rate the time.
/// Throws InfeasibleError when E is at or below the energy-per-bit limit.
double analytic_single_epoch_time(double energy, double bits, double gain);

struct ValidationReport {
  bool pass = false;
  double max_violation = 0.0;
  std::vector<std::string> failures;
};

/// Re-derives all causality and completion residuals of a schedule from
/// the raw event sequence and checks them against tol times the
/// constraint magnitude (floored at 1).
ValidationReport validate_schedule(const EventTimeline& tl, const Schedule& s,
                                   double tol);

}  // namespace ehsched::oracle

#endif  // EHSCHED_ORACLE_HPP
