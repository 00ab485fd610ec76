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

#include "ehsched/scheduler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ehsched/errors.hpp"
#include "ehsched/linkmodel.hpp"

namespace ehsched {

namespace {

int total_steps(const SumtResult& res) {
  return std::accumulate(res.newton_steps.begin(), res.newton_steps.end(), 0);
}

void record_solve(DeadlineBounds& bounds, const SumtResult& res) {
  bounds.solves += 1;
  bounds.sumt_iterations.push_back(res.iterations);
  bounds.total_newton_steps += total_steps(res);
  bounds.max_newton_steps =
      std::max(bounds.max_newton_steps,
               *std::max_element(res.newton_steps.begin(), res.newton_steps.end()));
}

void trace_solve(TraceSink* trace, const char* phase, int iteration, double T,
                 const SumtResult& res) {
  if (!trace) return;
  trace->add({phase, iteration, std::nullopt, T, std::nullopt, res.energy,
              res.max_violation, total_steps(res)});
}

// Halvings needed to bring `gap` down to `eps`; equals ceil(log2(gap/eps))
// without transcendental rounding surprises.
int halving_count(double gap, double eps) {
  int count = 0;
  while (gap > eps && count < 4096) {
    gap *= 0.5;
    ++count;
  }
  return count;
}

int theoretical_sumt_iterations(double mu0, double eta, double eps_penalty) {
  const double raw = std::log(1.0 / (mu0 * eps_penalty)) / std::log(eta);
  return std::max(1, static_cast<int>(std::ceil(raw)));
}

}  // namespace

GlobalFeasibility check_global_feasibility(const EventTimeline& tl) {
  GlobalFeasibility gf;
  gf.energy_available = tl.total_energy();
  gf.energy_required = tl.total_data() * min_energy_per_bit(tl.last_gain());
  gf.ok = gf.energy_available > gf.energy_required;
  return gf;
}

DeadlineBounds find_bounds(const EventTimeline& tl, const ScheduleConfig& cfg,
                           TraceSink* trace) {
  const GlobalFeasibility gf = check_global_feasibility(tl);
  if (!gf.ok) {
    throw InfeasibleError(
        "instance infeasible: total energy " + std::to_string(gf.energy_available) +
        " J cannot drain all data (needs > " + std::to_string(gf.energy_required) +
        " J in the final epoch)");
  }

  DeadlineBounds bounds;
  bounds.lo = tl.data_window();  // completing before the last arrival is impossible

  auto attempt = [&](double candidate) -> bool {
    SumtResult res = solve_min_energy(tl, candidate, cfg.sumt, trace);
    record_solve(bounds, res);
    trace_solve(trace, "bound", bounds.solves, candidate, res);
    if (res.feasible) {
      bounds.hi = candidate;
      bounds.at_hi = std::move(res);
      return true;
    }
    bounds.lo = candidate;
    return false;
  };

  // Epoch-end candidates: every event time past the last data arrival.
  const auto& times = tl.event_times();
  for (double t : times) {
    if (t > tl.data_window() && attempt(t)) return bounds;
  }

  // Past the last event: extend by the last finite epoch length, doubling
  // the stride once half the extension budget is spent. With no finite
  // epoch to copy, the candidate itself doubles from last-arrival + 1 s.
  const bool no_finite_epoch = tl.epoch_lengths().empty();
  double stride = no_finite_epoch ? 1.0 : tl.epoch_lengths().back();
  double candidate = std::max(times.back(), tl.data_window());
  for (int ext = 1; ext <= cfg.max_bound_extensions; ++ext) {
    if (no_finite_epoch && ext > 1) {
      candidate *= 2.0;
    } else {
      candidate += stride;
      if (!no_finite_epoch && ext > cfg.max_bound_extensions / 2) stride *= 2.0;
    }
    if (attempt(candidate)) return bounds;
  }
  throw BoundSearchExhaustedError(
      "no feasible deadline within " + std::to_string(cfg.max_bound_extensions) +
      " extensions past the last event (near-infeasible instance)");
}

Schedule build_schedule(const EventTimeline& tl, double deadline,
                        const SumtResult& solved, double feas_tol) {
  const auto split = tl.split(deadline);
  const int n = split.full_epochs + 1;
  if (solved.r.size() != n) {
    throw DimensionMismatchError("solver result does not match deadline epochs");
  }

  Schedule s;
  s.completion_time = deadline;
  s.start_times.reserve(n);
  s.durations.reserve(n);
  s.rates.reserve(n);
  s.powers.reserve(n);
  for (int i = 0; i < n; ++i) {
    s.start_times.push_back(tl.event_times()[i]);
    s.durations.push_back(i < split.full_epochs ? tl.epoch_lengths()[i]
                                                : split.tail);
    const double rate = solved.r[i] < feas_tol ? 0.0 : solved.r[i];
    s.rates.push_back(rate);
    s.powers.push_back(power_of_rate(rate, tl.epoch_gains()[i]));
    s.consumed_energy += s.powers.back() * s.durations.back();
  }
  return s;
}

MinTimeSolution solve_min_time(const EventTimeline& tl, const ScheduleConfig& cfg,
                               TraceSink* trace) {
  if (!(cfg.eps_bisect > 0.0)) {
    throw std::invalid_argument("bisection tolerance must be > 0");
  }
  const auto started = std::chrono::steady_clock::now();

  DeadlineBounds bounds = find_bounds(tl, cfg, trace);

  MinTimeSolution sol;
  sol.report.bracket_lo = bounds.lo;
  sol.report.bracket_hi = bounds.hi;
  sol.report.bisection_bound = halving_count(bounds.hi - bounds.lo, cfg.eps_bisect);
  sol.report.bound_search_solves = bounds.solves;
  sol.report.sumt_iterations = std::move(bounds.sumt_iterations);
  sol.report.total_newton_steps = bounds.total_newton_steps;
  sol.report.max_newton_steps = bounds.max_newton_steps;

  double lo = bounds.lo;
  double hi = bounds.hi;
  SumtResult best = std::move(bounds.at_hi);

  // Feasible midpoints become the new upper bound, infeasible ones the new
  // lower bound; the returned schedule always comes from a feasible solve.
  while (hi - lo > cfg.eps_bisect) {
    const double mid = 0.5 * (lo + hi);
    SumtResult res = solve_min_energy(tl, mid, cfg.sumt, trace);
    sol.report.bisections += 1;
    sol.report.sumt_iterations.push_back(res.iterations);
    const int steps = std::accumulate(res.newton_steps.begin(),
                                      res.newton_steps.end(), 0);
    sol.report.total_newton_steps += steps;
    sol.report.max_newton_steps =
        std::max(sol.report.max_newton_steps,
                 *std::max_element(res.newton_steps.begin(), res.newton_steps.end()));
    trace_solve(trace, "bisect", sol.report.bisections, mid, res);
    if (res.feasible) {
      hi = mid;
      best = std::move(res);
    } else {
      lo = mid;
    }
  }

  sol.report.sumt_iteration_bound = theoretical_sumt_iterations(
      best.mu0_used, cfg.sumt.eta, cfg.sumt.eps_penalty);
  sol.schedule = build_schedule(tl, hi, best, cfg.sumt.feas_tol);
  sol.raw = std::move(best);
  sol.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return sol;
}

}  // namespace ehsched
