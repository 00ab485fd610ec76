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

#include "ehsched/linkmodel.hpp"

#include <cmath>
#include <stdexcept>

#include "ehsched/errors.hpp"

namespace ehsched {

namespace {

// ln 4, so that 2^{2r} = exp(r * kLn4) without base-conversion drift.
constexpr double kLn4 = 2.0 * M_LN2;

void require_gain(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("channel power gain must be finite and > 0");
  }
}

}  // namespace

double power_of_rate(double r, double h) {
  require_gain(h);
  // expm1 keeps full precision for small |r|, where 2^{2r} - 1 ~ r ln 4.
  return std::expm1(r * kLn4) / h;
}

double rate_of_power(double p, double h) {
  require_gain(h);
  if (p < 0.0) {
    throw NegativePowerError("rate_of_power: power must be nonnegative");
  }
  return std::log1p(h * p) / kLn4;
}

PowerDerivatives power_derivatives(double r, double h) {
  require_gain(h);
  const double scaled = std::exp(r * kLn4) / h;
  return {kLn4 * scaled, kLn4 * kLn4 * scaled};
}

double min_energy_per_bit(double h) {
  require_gain(h);
  return kLn4 / h;
}

}  // namespace ehsched
