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

#include "ehsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "ehsched/errors.hpp"

namespace ehsched::oracle {

namespace {

// Own power curve, deliberately on a different arithmetic route than the
// solver (pow instead of expm1) so the two sides can cross-check.
double grid_power(double r, double h) { return (std::pow(2.0, 2.0 * r) - 1.0) / h; }

double grid_power_slope(double r, double h) {
  return 2.0 * std::log(2.0) * std::pow(2.0, 2.0 * r) / h;
}

double grid_rate(double p, double h) { return 0.5 * std::log2(1.0 + h * p); }

// Cumulative arrivals of one kind by time t, straight from raw events.
double arrived_by(const std::vector<Event>& events, EventKind kind, double t) {
  double total = 0.0;
  for (const Event& e : events) {
    if (e.kind == kind && e.time <= t) total += e.value;
  }
  return total;
}

}  // namespace

GridResult grid_min_energy(const EventTimeline& tl, double deadline,
                           const OracleConfig& cfg) {
  if (!(cfg.grid_resolution > 0.0)) {
    throw std::invalid_argument("grid resolution must be > 0");
  }
  const auto split = tl.split(deadline);
  const int n = split.full_epochs + 1;
  if (n > cfg.max_dims) {
    throw std::invalid_argument("grid search refused beyond " +
                                std::to_string(cfg.max_dims) + " rate variables");
  }

  const std::vector<Event> events = tl.events();
  const double step = cfg.grid_resolution;
  const double total_energy = arrived_by(events, EventKind::Harvest, deadline);
  const double bits_due = arrived_by(events, EventKind::Data, deadline);
  const double eq_tol = step * deadline;

  std::vector<double> durations(n), gains(n), energy_cap(n), data_cap(n);
  std::vector<long> top(n);  // largest grid index per dimension
  for (int i = 0; i < n; ++i) {
    durations[i] = i < split.full_epochs ? tl.epoch_lengths()[i] : split.tail;
    gains[i] = tl.epoch_gains()[i];
    const double t_i = tl.event_times()[i];
    energy_cap[i] = arrived_by(events, EventKind::Harvest, t_i);
    data_cap[i] = arrived_by(events, EventKind::Data, t_i);
    if (durations[i] > 0.0) {
      const double r_cap = std::min(grid_rate(total_energy / durations[i], gains[i]),
                                    bits_due / durations[i]);
      top[i] = static_cast<long>(std::floor(r_cap / step + 1e-9));
    } else {
      top[i] = 0;  // a zero-length slot carries nothing; pin its rate to 0
    }
  }

  GridResult best;
  double best_energy = std::numeric_limits<double>::infinity();

  // Depth-first enumeration in ascending (lexicographic) order over the
  // free dimensions; partial prefixes are cut once a causality cap or the
  // incumbent energy is exceeded (both cumulative sums grow with the
  // rate). The completion equality eliminates the last rate: it is solved
  // exactly for each prefix, so the energies of different prefixes are
  // comparable and the mismatch window only decides corner acceptance
  // (prefix overshoot, zero-length final slot). Anything else would let
  // the tolerance masquerade as free under-delivery.
  //
  // Causality slack is local: a point is kept iff its half-step rounding
  // box could contain a feasible continuum point, so any feasible point's
  // rounding is accepted while real constraint cheating stays bounded by
  // the discretization itself.
  std::function<void(int, double, double, double, double, std::vector<double>&)>
      visit = [&](int k, double energy, double bits, double e_slack,
                  double b_slack, std::vector<double>& rates) {
        const double d = durations[k];
        if (k == n - 1) {
          const double r =
              d > 0.0 ? std::max(0.0, (bits_due - bits) / d) : 0.0;
          // The eliminated rate inherits the rounding of all free rates.
          const double shift =
              d > 0.0 ? 0.5 * step * (deadline - d) / d : 0.0;
          const double e2 = energy + grid_power(r, gains[k]) * d;
          const double b2 = bits + r * d;
          if (std::abs(b2 - bits_due) > eq_tol * (1.0 + 1e-9)) return;
          const double e_slack2 =
              e_slack + grid_power_slope(r + shift, gains[k]) * shift * d;
          if (e2 > energy_cap[k] + e_slack2 || b2 > data_cap[k] + b_slack) {
            return;
          }
          if (e2 < best_energy) {
            best_energy = e2;
            rates[k] = r;
            best.rates = rates;
            best.energy = e2;
          }
          return;
        }
        for (long j = 0; j <= top[k]; ++j) {
          const double r = static_cast<double>(j) * step;
          const double e2 = energy + grid_power(r, gains[k]) * d;
          const double b2 = bits + r * d;
          const double e_slack2 =
              e_slack + grid_power_slope(r + step, gains[k]) * 0.5 * step * d;
          const double b_slack2 = b_slack + 0.5 * step * d;
          if (e2 > energy_cap[k] + e_slack2 || b2 > data_cap[k] + b_slack2) break;
          if (e2 >= best_energy) break;
          rates[k] = r;
          visit(k + 1, e2, b2, e_slack2, b_slack2, rates);
        }
      };

  std::vector<double> rates(n, 0.0);
  visit(0, 0.0, 0.0, 0.0, 0.0, rates);

  if (!std::isfinite(best_energy)) {
    throw NoFeasibleGridPointError("no grid point satisfies the constraints");
  }
  return best;
}

double analytic_single_epoch_time(double energy, double bits, double gain) {
  if (!(energy > 0.0) || !(bits > 0.0) || !(gain > 0.0)) {
    throw std::invalid_argument("energy, bits and gain must be > 0");
  }
  const double per_bit_limit = std::log(4.0) / gain;
  if (!(energy > bits * per_bit_limit)) {
    throw InfeasibleError("energy per bit at or below the finite-time limit");
  }

  // power(r)/r - E/B is strictly increasing with a negative limit at 0+,
  // so the root brackets cleanly.
  const double ratio = energy / bits;
  auto excess = [&](double r) { return grid_power(r, gain) / r - ratio; };

  double lo = 1e-8;
  while (excess(lo) > 0.0 && lo > 1e-280) lo *= 1e-3;
  double hi = std::max(1.0, 2.0 * lo);
  while (excess(hi) < 0.0) hi *= 2.0;

  for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return bits / (0.5 * (lo + hi));
}

namespace {

// Bits sent by time t under the schedule's piecewise-constant rates.
double sent_by(const Schedule& s, double t) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.rates.size(); ++i) {
    const double len =
        std::clamp(t - s.start_times[i], 0.0, s.durations[i]);
    total += s.rates[i] * len;
  }
  return total;
}

// Energy consumed by time t: every segment piece is costed with the
// channel gain of the timeline epoch it falls into.
double consumed_by(const EventTimeline& tl, const Schedule& s, double t) {
  const auto& times = tl.event_times();
  const auto& gains = tl.epoch_gains();
  double total = 0.0;
  for (std::size_t i = 0; i < s.rates.size(); ++i) {
    const double seg_lo = s.start_times[i];
    const double seg_hi = std::min(seg_lo + s.durations[i], t);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double ep_lo = times[k];
      const double ep_hi = (k + 1 < times.size())
                               ? times[k + 1]
                               : std::numeric_limits<double>::infinity();
      const double len = std::min(seg_hi, ep_hi) - std::max(seg_lo, ep_lo);
      if (len > 0.0) total += grid_power(s.rates[i], gains[k]) * len;
    }
  }
  return total;
}

}  // namespace

ValidationReport validate_schedule(const EventTimeline& tl, const Schedule& s,
                                   double tol) {
  ValidationReport rep;
  const std::vector<Event> events = tl.events();
  const double horizon = s.completion_time;
  const double scale =
      std::max({1.0, arrived_by(events, EventKind::Harvest, horizon),
                arrived_by(events, EventKind::Data, horizon)});
  const double threshold = tol * scale;

  double worst_rate = 0.0;
  for (double r : s.rates) worst_rate = std::max(worst_rate, -r);
  if (worst_rate > threshold) rep.failures.push_back("negative rate");

  double worst_energy = 0.0;
  double worst_data = 0.0;
  const auto& times = tl.event_times();
  for (std::size_t k = 0; k < times.size() && times[k] <= horizon; ++k) {
    const double t_hi =
        (k + 1 < times.size()) ? std::min(times[k + 1], horizon) : horizon;
    worst_energy = std::max(worst_energy,
                            consumed_by(tl, s, t_hi) -
                                arrived_by(events, EventKind::Harvest, times[k]));
    worst_data = std::max(worst_data,
                          sent_by(s, t_hi) -
                              arrived_by(events, EventKind::Data, times[k]));
  }
  if (worst_energy > threshold) rep.failures.push_back("energy causality");
  if (worst_data > threshold) rep.failures.push_back("data causality");

  const double mismatch =
      sent_by(s, horizon) - arrived_by(events, EventKind::Data, horizon);
  if (std::abs(mismatch) > threshold) rep.failures.push_back("completion");

  rep.max_violation = std::max(
      {worst_rate, worst_energy, worst_data, std::abs(mismatch), 0.0});
  rep.pass = rep.failures.empty();
  return rep;
}

}  // namespace ehsched::oracle
