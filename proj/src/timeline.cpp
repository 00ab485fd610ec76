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

#include "ehsched/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ehsched/errors.hpp"

namespace ehsched {

namespace {

void validate_event(const Event& e) {
  if (!std::isfinite(e.time) || e.time < 0.0) {
    throw std::invalid_argument("event time must be finite and >= 0");
  }
  if (!std::isfinite(e.value) || e.value <= 0.0) {
    throw std::invalid_argument("event value must be finite and > 0");
  }
}

// Index of the last event time <= t.
std::size_t locate_index(const std::vector<double>& times, double t) {
  auto it = std::upper_bound(times.begin(), times.end(), t);
  return static_cast<std::size_t>(it - times.begin()) - 1;
}

}  // namespace

EventTimeline EventTimeline::build(std::vector<Event> events,
                                   std::optional<double> initial_gain) {
  for (const Event& e : events) validate_event(e);
  if (initial_gain && (!std::isfinite(*initial_gain) || *initial_gain <= 0.0)) {
    throw std::invalid_argument("initial gain must be finite and > 0");
  }

  // Stable sort keeps input order within a time so the last channel value
  // of a merge run wins.
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });

  EventTimeline tl;
  if (events.empty() || events.front().time > 0.0) {
    tl.times_.push_back(0.0);
    tl.harvest_at_.push_back(0.0);
    tl.data_at_.push_back(0.0);
    tl.channel_at_.push_back(std::nullopt);
  }
  for (const Event& e : events) {
    if (tl.times_.empty() || e.time != tl.times_.back()) {
      tl.times_.push_back(e.time);
      tl.harvest_at_.push_back(0.0);
      tl.data_at_.push_back(0.0);
      tl.channel_at_.push_back(std::nullopt);
    }
    switch (e.kind) {
      case EventKind::Harvest:
        tl.harvest_at_.back() += e.value;
        break;
      case EventKind::Data:
        tl.data_at_.back() += e.value;
        break;
      case EventKind::Channel:
        tl.channel_at_.back() = e.value;
        break;
    }
  }

  const std::size_t m = tl.times_.size();
  tl.lengths_.reserve(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    tl.lengths_.push_back(tl.times_[i + 1] - tl.times_[i]);
  }

  if (!tl.channel_at_[0] && !initial_gain) {
    throw NoGainError("no channel gain defined at time 0");
  }
  double gain = tl.channel_at_[0] ? *tl.channel_at_[0] : *initial_gain;
  tl.gains_.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (tl.channel_at_[i]) gain = *tl.channel_at_[i];
    tl.gains_.push_back(gain);
  }

  tl.energy_cum_.resize(m);
  tl.data_cum_.resize(m);
  double e_sum = 0.0;
  double b_sum = 0.0;
  bool has_data = false;
  for (std::size_t i = 0; i < m; ++i) {
    e_sum += tl.harvest_at_[i];
    b_sum += tl.data_at_[i];
    tl.energy_cum_[i] = e_sum;
    tl.data_cum_[i] = b_sum;
    if (tl.data_at_[i] > 0.0) {
      tl.data_window_ = tl.times_[i];
      has_data = true;
    }
  }
  if (!has_data) {
    throw NoDataError("instance carries no data to schedule");
  }
  return tl;
}

double EventTimeline::cumulative_energy(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
  return energy_cum_[locate_index(times_, t)];
}

double EventTimeline::cumulative_data(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
  return data_cum_[locate_index(times_, t)];
}

EventTimeline::EpochSplit EventTimeline::split(double deadline) const {
  if (!(deadline > 0.0) || !std::isfinite(deadline)) {
    throw std::invalid_argument("deadline must be finite and > 0");
  }
  const std::size_t j = locate_index(times_, deadline);
  return {static_cast<int>(j), deadline - times_[j]};
}

std::vector<Event> EventTimeline::events() const {
  std::vector<Event> out;
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (harvest_at_[i] > 0.0) {
      out.push_back({times_[i], EventKind::Harvest, harvest_at_[i]});
    }
    if (data_at_[i] > 0.0) {
      out.push_back({times_[i], EventKind::Data, data_at_[i]});
    }
    if (channel_at_[i]) {
      out.push_back({times_[i], EventKind::Channel, *channel_at_[i]});
    }
  }
  return out;
}

EventTimeline build_timeline(std::vector<Event> events,
                             std::optional<double> initial_gain) {
  return EventTimeline::build(std::move(events), std::move(initial_gain));
}

}  // namespace ehsched
