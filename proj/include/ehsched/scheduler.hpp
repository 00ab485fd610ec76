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

#ifndef EHSCHED_SCHEDULER_HPP
#define EHSCHED_SCHEDULER_HPP

#include <string>
#include <vector>

#include "ehsched/sumt.hpp"
#include "ehsched/timeline.hpp"
#include "ehsched/trace.hpp"

namespace ehsched {

struct ScheduleConfig {
  /// Bisection stops when the deadline bracket shrinks to this width (s).
  double eps_bisect = 1e-3;
  SumtConfig sumt;
  /// Budget of deadline candidates past the last event before the bound
  /// search gives up (near-infeasible instance).
  int max_bound_extensions = 40;
};

/// A complete transmission plan: per-epoch rates with their start times,
/// durations and transmit powers. Rates within feasibility noise of zero
/// are clamped to exactly zero for presentation (validation happens on the
/// raw solver iterate).
struct Schedule {
  std::vector<double> start_times;
  std::vector<double> durations;
  std::vector<double> rates;
  std::vector<double> powers;
  double completion_time = 0.0;
  double consumed_energy = 0.0;
};

/// Iteration counts, a-priori bounds and timing of one min-time solve.
struct SolveReport {
  int bisections = 0;
  /// Halvings needed to shrink the initial bracket below eps_bisect.
  int bisection_bound = 0;
  int bound_search_solves = 0;
  /// Outer penalty iterations of each deadline solve, in solve order.
  std::vector<int> sumt_iterations;
  /// A-priori outer iteration count for the configured coefficients (of
  /// the final solve when the initial coefficient is auto-balanced).
  int sumt_iteration_bound = 0;
  long total_newton_steps = 0;
  int max_newton_steps = 0;
  /// The per-subproblem Newton step bound depends on the minimum decrement
  /// and the optimal value, neither of which is computable a priori.
  std::string newton_step_bound = "not computed";
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double wall_seconds = 0.0;  // logged, never serialized into result files
};

struct GlobalFeasibility {
  bool ok = false;
  double energy_available = 0.0;
  /// Infimum of energy needed to drain all data in the unbounded last
  /// epoch (not attained at any finite rate).
  double energy_required = 0.0;
};

/// Termination guard: all data must be drainable in the unbounded last
/// epoch with the total harvested energy, i.e. available > required
/// strictly. Prefix-level feasibility is left to the solver residuals.
GlobalFeasibility check_global_feasibility(const EventTimeline& tl);

struct DeadlineBounds {
  double lo = 0.0;  // infeasible (or the last data arrival time)
  double hi = 0.0;  // feasible
  SumtResult at_hi;
  int solves = 0;
  std::vector<int> sumt_iterations;  // per candidate solve
  long total_newton_steps = 0;
  int max_newton_steps = 0;
};

/// Walks deadline candidates (epoch ends, then extensions past the last
/// event) until the first feasible one, giving the initial bisection
/// bracket. Throws BoundSearchExhaustedError when the extension budget
/// runs out and InfeasibleError when the global guard fails.
DeadlineBounds find_bounds(const EventTimeline& tl, const ScheduleConfig& cfg,
                           TraceSink* trace = nullptr);

struct MinTimeSolution {
  Schedule schedule;
  SolveReport report;
  /// Raw (unclamped) solver result backing the schedule.
  SumtResult raw;
};

/// Minimum completion time: bisects the deadline bracket, keeping the
/// upper bound feasible, and returns the schedule of the last feasible
/// solve at the final upper bound.
MinTimeSolution solve_min_time(const EventTimeline& tl,
                               const ScheduleConfig& cfg,
                               TraceSink* trace = nullptr);

/// Builds the presentation schedule for a solved deadline.
Schedule build_schedule(const EventTimeline& tl, double deadline,
                        const SumtResult& solved, double feas_tol);

}  // namespace ehsched

#endif  // EHSCHED_SCHEDULER_HPP
