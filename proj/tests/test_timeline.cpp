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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ehsched/errors.hpp"
#include "ehsched/timeline.hpp"
#include "support/instance_gen.hpp"

using namespace ehsched;

namespace {

EventTimeline two_harvests() {
  return build_timeline({{0.0, EventKind::Harvest, 2.0},
                         {1.0, EventKind::Harvest, 3.0},
                         {0.0, EventKind::Data, 1.0}},
                        1.0);
}

}  // namespace

TEST_CASE("two harvests give two epochs with a boundary at t=1") {
  const EventTimeline tl = two_harvests();
  REQUIRE(tl.event_times().size() == 2);
  CHECK(tl.event_times()[0] == 0.0);
  CHECK(tl.event_times()[1] == 1.0);
  REQUIRE(tl.epoch_lengths().size() == 1);
  CHECK(tl.epoch_lengths()[0] == doctest::Approx(1.0));
}

TEST_CASE("simultaneous events merge into one composite event") {
  const EventTimeline tl = build_timeline(
      {{0.0, EventKind::Data, 1.0}, {0.0, EventKind::Harvest, 3.0}}, 1.0);
  CHECK(tl.event_times().size() == 1);
  CHECK(tl.total_energy() == doctest::Approx(3.0));
  CHECK(tl.total_data() == doctest::Approx(1.0));
}

TEST_CASE("merging sums values and keeps the last channel gain") {
  const EventTimeline tl = build_timeline({{1.0, EventKind::Harvest, 1.0},
                                           {1.0, EventKind::Harvest, 2.5},
                                           {1.0, EventKind::Channel, 2.0},
                                           {1.0, EventKind::Channel, 4.0},
                                           {0.0, EventKind::Data, 1.0}},
                                          1.0);
  REQUIRE(tl.event_times().size() == 2);
  CHECK(tl.cumulative_energy(1.0) == doctest::Approx(3.5));
  CHECK(tl.epoch_gains()[0] == doctest::Approx(1.0));
  CHECK(tl.epoch_gains()[1] == doctest::Approx(4.0));
}

TEST_CASE("epoch count equals the number of distinct event times") {
  const EventTimeline tl = build_timeline({{0.0, EventKind::Harvest, 2.0},
                                           {0.0, EventKind::Data, 1.0},
                                           {1.0, EventKind::Channel, 0.5},
                                           {2.5, EventKind::Data, 2.0},
                                           {2.5, EventKind::Harvest, 1.0},
                                           {4.0, EventKind::Harvest, 2.0}},
                                          1.0);
  CHECK(tl.event_times().size() == 4);
  CHECK(tl.epoch_lengths().size() == 3);
  CHECK(tl.data_window() == doctest::Approx(2.5));
}

TEST_CASE("a synthetic time-0 event appears when absent") {
  const EventTimeline tl = build_timeline(
      {{1.0, EventKind::Harvest, 2.0}, {1.0, EventKind::Data, 1.0}}, 1.5);
  REQUIRE(tl.event_times().size() == 2);
  CHECK(tl.event_times()[0] == 0.0);
  CHECK(tl.cumulative_energy(0.5) == doctest::Approx(0.0));
}

TEST_CASE("cumulative availability is a right-continuous step function") {
  const EventTimeline tl = two_harvests();
  CHECK(tl.cumulative_energy(0.5) == doctest::Approx(2.0));
  CHECK(tl.cumulative_energy(1.0) == doctest::Approx(5.0));
  CHECK(tl.cumulative_energy(0.0) == doctest::Approx(2.0));

  const EventTimeline td = build_timeline({{0.0, EventKind::Data, 1.0},
                                           {2.0, EventKind::Data, 4.0},
                                           {0.0, EventKind::Harvest, 1.0}},
                                          1.0);
  CHECK(td.cumulative_data(10.0) == doctest::Approx(5.0));
  CHECK(td.cumulative_data(1.9) == doctest::Approx(1.0));
  CHECK(td.cumulative_data(2.0) == doctest::Approx(5.0));
}

TEST_CASE("deadline split counts whole epochs and leftover") {
  // Epoch lengths 1 and 2 (events at 0, 1, 3).
  const EventTimeline tl = build_timeline({{0.0, EventKind::Harvest, 1.0},
                                           {0.0, EventKind::Data, 1.0},
                                           {1.0, EventKind::Harvest, 1.0},
                                           {3.0, EventKind::Harvest, 1.0}},
                                          1.0);
  auto split = tl.split(2.5);
  CHECK(split.full_epochs == 1);
  CHECK(split.tail == doctest::Approx(1.5));

  const EventTimeline single = build_timeline(
      {{0.0, EventKind::Harvest, 1.0}, {0.0, EventKind::Data, 1.0},
       {1.0, EventKind::Harvest, 1.0}},
      1.0);
  auto boundary = single.split(1.0);
  CHECK(boundary.full_epochs == 1);
  CHECK(boundary.tail == doctest::Approx(0.0));

  const EventTimeline lone = build_timeline(
      {{0.0, EventKind::Harvest, 1.0}, {0.0, EventKind::Data, 1.0}}, 1.0);
  auto open_end = lone.split(7.0);
  CHECK(open_end.full_epochs == 0);
  CHECK(open_end.tail == doctest::Approx(7.0));
}

TEST_CASE("split is exact: whole epochs plus tail reproduce the deadline") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> pick(1e-6, 12.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testsupport::random_instance(100 + trial, 6);
    const EventTimeline tl = inst.timeline();
    for (int i = 0; i < 20; ++i) {
      const double deadline = pick(rng);
      const auto split = tl.split(deadline);
      double prefix = 0.0;
      for (int k = 0; k < split.full_epochs; ++k) prefix += tl.epoch_lengths()[k];
      CHECK(prefix + split.tail ==
            doctest::Approx(deadline).epsilon(1e-12));
      if (split.full_epochs < static_cast<int>(tl.epoch_lengths().size())) {
        CHECK(split.tail < tl.epoch_lengths()[split.full_epochs]);
      }
      CHECK(split.tail >= 0.0);
    }
  }
}

TEST_CASE("cumulative functions are non-decreasing with jumps only at events") {
  const auto inst = testsupport::random_instance(7, 8);
  const EventTimeline tl = inst.timeline();
  double prev_e = -1.0;
  double prev_b = -1.0;
  for (double t = 0.0; t < tl.last_event_time() + 2.0; t += 0.01) {
    const double e = tl.cumulative_energy(t);
    const double b = tl.cumulative_data(t);
    CHECK(e >= prev_e);
    CHECK(b >= prev_b);
    prev_e = e;
    prev_b = b;
  }
  // Between consecutive events the functions are constant.
  const auto& times = tl.event_times();
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double mid = 0.5 * (times[k] + times[k + 1]);
    CHECK(tl.cumulative_energy(mid) == tl.cumulative_energy(times[k]));
    CHECK(tl.cumulative_data(mid) == tl.cumulative_data(times[k]));
  }
}

TEST_CASE("rebuilding from the merged events reproduces the structure") {
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testsupport::random_instance(500 + trial, 7);
    const EventTimeline tl = inst.timeline();
    const EventTimeline again = build_timeline(tl.events(), inst.initial_gain);
    REQUIRE(again.event_times() == tl.event_times());
    REQUIRE(again.epoch_lengths() == tl.epoch_lengths());
    REQUIRE(again.epoch_gains() == tl.epoch_gains());
    CHECK(again.total_energy() == tl.total_energy());
    CHECK(again.total_data() == tl.total_data());
    CHECK(again.data_window() == tl.data_window());
  }
}

TEST_CASE("instances without data or gain are rejected") {
  CHECK_THROWS_AS(build_timeline({{0.0, EventKind::Harvest, 1.0}}, 1.0),
                  NoDataError);
  CHECK_THROWS_AS(build_timeline({{0.0, EventKind::Harvest, 1.0},
                                  {0.0, EventKind::Data, 1.0}},
                                 std::nullopt),
                  NoGainError);
  // A channel event at t=0 stands in for the initial gain.
  CHECK_NOTHROW(build_timeline({{0.0, EventKind::Harvest, 1.0},
                                {0.0, EventKind::Data, 1.0},
                                {0.0, EventKind::Channel, 2.0}},
                               std::nullopt));
}

TEST_CASE("malformed events are rejected") {
  CHECK_THROWS_AS(build_timeline({{-1.0, EventKind::Data, 1.0}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_timeline({{0.0, EventKind::Data, 0.0}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_timeline({{0.0, EventKind::Data, -3.0}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      build_timeline({{0.0, EventKind::Data, 1.0}, {0.0, EventKind::Harvest, 1.0}},
                     -1.0),
      std::invalid_argument);
}
