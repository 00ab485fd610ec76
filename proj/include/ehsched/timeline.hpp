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

#ifndef EHSCHED_TIMELINE_HPP
#define EHSCHED_TIMELINE_HPP

#include <optional>
#include <vector>

namespace ehsched {

enum class EventKind { Harvest, Data, Channel };

/// A single arrival: energy (joules), data (bits) or a channel power-gain
/// change (dimensionless). Times are seconds from the start of the horizon.
struct Event {
  double time = 0.0;
  EventKind kind = EventKind::Harvest;
  double value = 0.0;
};

/// Offline event sequence with its epoch decomposition.
///
/// Events at identical times are merged into one composite event (harvest
/// and data values summed, last channel value by input order wins), so
/// every stored epoch has strictly positive length. The epoch after the
/// last event is conceptually unbounded. Cumulative availability E(t)/B(t)
/// are right-continuous step functions: an arrival is usable at the
/// instant it occurs.
///
/// Immutable after construction; safe for concurrent reads.
class EventTimeline {
 public:
  /// Whole-epoch count and leftover time of a deadline split: `full_epochs`
  /// epochs lie entirely inside [0, deadline] and `tail` seconds of the
  /// next epoch remain (unbounded for deadlines past the last event).
  struct EpochSplit {
    int full_epochs = 0;
    double tail = 0.0;
  };

  /// Builds a sorted, merged timeline. A synthetic time-0 event is inserted
  /// when no input event occurs at t=0. `initial_gain` supplies the channel
  /// gain of epoch 1 unless a channel event at t=0 overrides it.
  /// Throws NoDataError if the instance carries no data, NoGainError if no
  /// gain is defined at time 0, std::invalid_argument on malformed events.
  static EventTimeline build(std::vector<Event> events,
                             std::optional<double> initial_gain = std::nullopt);

  /// Total energy harvested by time t (right-continuous), t >= 0.
  double cumulative_energy(double t) const;

  /// Total data arrived by time t (right-continuous), t >= 0.
  double cumulative_data(double t) const;

  /// Splits a deadline T > 0 into whole epochs plus residual time.
  /// The prefix of epoch lengths plus the tail reproduces T exactly.
  EpochSplit split(double deadline) const;

  /// Event times t_1..t_m with t_1 = 0.
  const std::vector<double>& event_times() const { return times_; }

  /// Lengths of the m-1 finite epochs, all strictly positive.
  const std::vector<double>& epoch_lengths() const { return lengths_; }

  /// Channel gain in effect during each of the m epochs (the last one
  /// extends unbounded past the final event).
  const std::vector<double>& epoch_gains() const { return gains_; }

  /// Time of the last data arrival: all data is available from here on.
  double data_window() const { return data_window_; }

  double last_event_time() const { return times_.back(); }
  double last_gain() const { return gains_.back(); }
  double total_energy() const { return energy_cum_.back(); }
  double total_data() const { return data_cum_.back(); }

  /// Decomposes the merged timeline back into plain events (composite
  /// entries split into at most one harvest, one data and one channel
  /// event each). Rebuilding from this list reproduces the timeline.
  std::vector<Event> events() const;

 private:
  EventTimeline() = default;

  std::vector<double> times_;
  std::vector<double> lengths_;
  std::vector<double> gains_;
  std::vector<double> energy_cum_;
  std::vector<double> data_cum_;
  std::vector<double> harvest_at_;
  std::vector<double> data_at_;
  std::vector<std::optional<double>> channel_at_;
  double data_window_ = 0.0;
};

/// Convenience wrapper around EventTimeline::build.
EventTimeline build_timeline(std::vector<Event> events,
                             std::optional<double> initial_gain = std::nullopt);

}  // namespace ehsched

#endif  // EHSCHED_TIMELINE_HPP
