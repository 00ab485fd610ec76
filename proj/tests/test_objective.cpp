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

#include <algorithm>
#include <cmath>
#include <random>

#include "ehsched/errors.hpp"
#include "ehsched/linkmodel.hpp"
#include "ehsched/objective.hpp"
#include "support/finite_diff.hpp"
#include "support/instance_gen.hpp"

using namespace ehsched;

namespace {

EventTimeline unit_timeline() {
  return build_timeline({{0.0, EventKind::Harvest, 3.0},
                         {0.0, EventKind::Data, 1.0},
                         {0.0, EventKind::Channel, 1.0}});
}

// The worked single-epoch example with every weight forced to 1.
PenaltyProblem unit_problem(double mu = 1.0) {
  PenaltyProblem pp = make_problem(unit_timeline(), 1.0, mu);
  pp.weights.energy = {1.0};
  pp.weights.data = {1.0};
  pp.weights.completion = 1.0;
  pp.weights.nonneg = 1.0;
  return pp;
}

Eigen::VectorXd vec(std::initializer_list<double> vals) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

// Largest rate-of-change of any hinged constraint value at r, used to pick
// finite-difference steps that cannot step across a hinge kink.
double hinge_lipschitz(const PenaltyProblem& pp, const Eigen::VectorXd& r) {
  double lip = 1.0;
  for (int j = 0; j < pp.dim(); ++j) {
    const auto der = power_derivatives(r[j], pp.gains[j]);
    lip = std::max({lip, der.first * pp.durations[j], pp.durations[j]});
  }
  return lip;
}

// Distance from r to the nearest hinge kink, measured in constraint value.
double kink_distance(const PenaltyProblem& pp, const Eigen::VectorXd& r) {
  double dist = std::numeric_limits<double>::infinity();
  double energy = 0.0;
  double bits = 0.0;
  for (int k = 0; k < pp.dim(); ++k) {
    energy += power_of_rate(r[k], pp.gains[k]) * pp.durations[k];
    bits += r[k] * pp.durations[k];
    dist = std::min({dist, std::abs(energy - pp.energy_caps[k]),
                     std::abs(bits - pp.data_caps[k]), std::abs(r[k])});
  }
  return dist;
}

}  // namespace

TEST_CASE("problem assembly freezes epochs, caps and weights") {
  const PenaltyProblem pp = make_problem(unit_timeline(), 1.0, 1.0);
  CHECK(pp.full_epochs == 0);
  REQUIRE(pp.durations.size() == 1);
  CHECK(pp.durations[0] == doctest::Approx(1.0));
  CHECK(pp.bits_due == doctest::Approx(1.0));
  CHECK(pp.energy_caps[0] == doctest::Approx(3.0));
  // Magnitude-normalized weights, floored at 1.
  CHECK(pp.weights.energy[0] == doctest::Approx(1.0 / 9.0));
  CHECK(pp.weights.data[0] == doctest::Approx(1.0));
  CHECK(pp.weights.completion == doctest::Approx(1.0));

  const EventTimeline two = build_timeline({{0.0, EventKind::Harvest, 2.0},
                                            {0.0, EventKind::Data, 1.0},
                                            {1.0, EventKind::Harvest, 1.0},
                                            {3.0, EventKind::Harvest, 1.0}},
                                           1.0);
  const PenaltyProblem pp2 = make_problem(two, 2.5, 1.0);
  REQUIRE(pp2.durations.size() == 2);
  CHECK(pp2.durations[0] == doctest::Approx(1.0));
  CHECK(pp2.durations[1] == doctest::Approx(1.5));
}

TEST_CASE("deadlines before the last data arrival are rejected") {
  const EventTimeline tl = build_timeline({{0.0, EventKind::Harvest, 3.0},
                                           {0.0, EventKind::Data, 1.0},
                                           {2.0, EventKind::Data, 1.0}},
                                          1.0);
  CHECK_THROWS_AS(make_problem(tl, 1.5, 1.0), DeadlineBeforeDataError);
  CHECK_NOTHROW(make_problem(tl, 2.0, 1.0));
}

TEST_CASE("worked example: feasible point pays only the bare energy") {
  const PenaltyProblem pp = unit_problem();
  const Derivatives d = evaluate(pp, vec({1.0}));
  CHECK(d.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(penalty_value(pp, vec({1.0})) == doctest::Approx(0.0));
}

TEST_CASE("worked example: violations price in quadratically") {
  const PenaltyProblem pp = unit_problem();
  // objective 15; penalties (15-3)^2 + (2-1)^2 + (2-1)^2 = 146.
  CHECK(consumed_energy(pp, vec({2.0})) == doctest::Approx(15.0));
  CHECK(penalty_value(pp, vec({2.0})) == doctest::Approx(146.0));
  CHECK(evaluate(pp, vec({2.0})).value == doctest::Approx(161.0));
}

TEST_CASE("residual report carries signed slacks") {
  const PenaltyProblem pp = unit_problem();

  const ResidualReport ok = constraint_residuals(pp, vec({1.0}));
  CHECK(ok.max_violation == doctest::Approx(0.0));

  const ResidualReport bad = constraint_residuals(pp, vec({2.0}));
  CHECK(bad.energy_slack[0] == doctest::Approx(12.0));
  CHECK(bad.data_slack[0] == doctest::Approx(1.0));
  CHECK(bad.completion_mismatch == doctest::Approx(1.0));
  CHECK(bad.max_violation == doctest::Approx(12.0));

  const ResidualReport under = constraint_residuals(pp, vec({0.5}));
  CHECK(under.completion_mismatch == doctest::Approx(-0.5));
  CHECK(under.energy_slack[0] < 0.0);
  CHECK(under.data_slack[0] < 0.0);
  CHECK(under.max_violation == doctest::Approx(0.5));
}

TEST_CASE("dimension mismatches are rejected") {
  const PenaltyProblem pp = unit_problem();
  CHECK_THROWS_AS(evaluate(pp, vec({1.0, 2.0})), DimensionMismatchError);
  CHECK_THROWS_AS(constraint_residuals(pp, vec({})), DimensionMismatchError);
}

TEST_CASE("gradient matches central differences at random points") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> rate(-1.5, 3.0);
  std::uniform_real_distribution<double> mu_pick(0.0, 2.0);
  int checked = 0;
  for (int trial = 0; checked < 100; ++trial) {
    const auto inst = testsupport::random_instance(900 + trial, trial % 7 + 1);
    const EventTimeline tl = inst.timeline();
    const double deadline = testsupport::pick_any_deadline(31 * trial + 7, tl);
    const PenaltyProblem pp =
        make_problem(tl, deadline, std::pow(10.0, mu_pick(rng)));
    REQUIRE(pp.dim() <= 8);

    Eigen::VectorXd r(pp.dim());
    for (int i = 0; i < pp.dim(); ++i) r[i] = rate(rng);

    const Derivatives d = evaluate(pp, r);
    const Eigen::VectorXd fd = testsupport::central_gradient(
        [&](const Eigen::VectorXd& x) { return evaluate_value(pp, x); }, r, 1e-7);
    const double err = (d.grad - fd).lpNorm<Eigen::Infinity>() /
                       std::max(1.0, d.grad.lpNorm<Eigen::Infinity>());
    CHECK(err < 1e-6);
    ++checked;
  }
}

TEST_CASE("hessian matches finite differences of the gradient away from kinks") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> rate(-1.5, 3.0);
  int checked = 0;
  for (int trial = 0; checked < 60; ++trial) {
    const auto inst = testsupport::random_instance(1700 + trial, trial % 6 + 1);
    const EventTimeline tl = inst.timeline();
    const double deadline = testsupport::pick_any_deadline(77 * trial + 3, tl);
    const PenaltyProblem pp = make_problem(tl, deadline, 1.0);

    Eigen::VectorXd r(pp.dim());
    for (int i = 0; i < pp.dim(); ++i) r[i] = rate(rng);
    if (kink_distance(pp, r) <= 1e-6) continue;

    // Step small enough that no probe crosses a hinge kink.
    const double step =
        std::clamp(0.4 * kink_distance(pp, r) / hinge_lipschitz(pp, r) /
                       std::max(1.0, r.lpNorm<Eigen::Infinity>()),
                   1e-11, 1e-6);
    const Derivatives d = evaluate(pp, r);
    const Eigen::MatrixXd fd = testsupport::central_hessian(
        [&](const Eigen::VectorXd& x) { return evaluate(pp, x).grad; }, r, step);
    const double err = (d.hess - fd).lpNorm<Eigen::Infinity>() /
                       std::max(1.0, d.hess.lpNorm<Eigen::Infinity>());
    CHECK(err < 1e-4);
    ++checked;
  }
}

TEST_CASE("hessian is exactly symmetric") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> rate(-2.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testsupport::random_instance(2500 + trial, 5);
    const EventTimeline tl = inst.timeline();
    const PenaltyProblem pp =
        make_problem(tl, testsupport::pick_any_deadline(trial, tl), 2.0);
    Eigen::VectorXd r(pp.dim());
    for (int i = 0; i < pp.dim(); ++i) r[i] = rate(rng);
    const Derivatives d = evaluate(pp, r);
    const double asym = (d.hess - d.hess.transpose()).lpNorm<Eigen::Infinity>();
    CHECK(asym <= 1e-12 * std::max(1.0, d.hess.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("objective is convex along random segments") {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> rate(-2.0, 4.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = testsupport::random_instance(3300 + trial, trial % 5 + 1);
    const EventTimeline tl = inst.timeline();
    const PenaltyProblem pp =
        make_problem(tl, testsupport::pick_any_deadline(trial * 13, tl), 1.5);
    Eigen::VectorXd a(pp.dim());
    Eigen::VectorXd b(pp.dim());
    for (int i = 0; i < pp.dim(); ++i) {
      a[i] = rate(rng);
      b[i] = rate(rng);
    }
    const double fa = evaluate_value(pp, a);
    const double fb = evaluate_value(pp, b);
    for (double theta = 0.1; theta < 1.0; theta += 0.1) {
      const double blend = evaluate_value(pp, theta * a + (1.0 - theta) * b);
      CHECK(blend <= theta * fa + (1.0 - theta) * fb + 1e-9);
    }
  }
}

TEST_CASE("penalty vanishes exactly when no constraint is violated") {
  const PenaltyProblem pp = unit_problem();
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> rate(-0.5, 2.0);
  for (int i = 0; i < 500; ++i) {
    const Eigen::VectorXd r = vec({rate(rng)});
    const bool zero_penalty = penalty_value(pp, r) == 0.0;
    const ResidualReport rep = constraint_residuals(pp, r);
    const bool clean = rep.max_violation == 0.0;
    CHECK(zero_penalty == clean);
  }
  // The feasible completion point is exactly on the boundary.
  CHECK(penalty_value(pp, vec({1.0})) == 0.0);
  CHECK(constraint_residuals(pp, vec({1.0})).max_violation == 0.0);
}
