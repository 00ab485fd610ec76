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

#ifndef EHSCHED_LINKMODEL_HPP
#define EHSCHED_LINKMODEL_HPP

namespace ehsched {

/// Rate-power conversion for a fading AWGN link with power gain h.
///
/// The transmit power needed to sustain a (bandwidth-normalized) rate r is
///   power_of_rate(r, h) = (2^{2r} - 1) / h,
/// strictly convex and increasing in r. All functions are pure and
/// stateless. Rates may be negative: power_of_rate is evaluated as written
/// (it is smooth and convex on all of R), which the penalty solver relies
/// on for infeasible iterates.

/// Power (watts) required to transmit at rate r with power gain h > 0.
double power_of_rate(double r, double h);

/// Rate sustained by power p >= 0 at gain h > 0. Inverse of power_of_rate.
/// Throws NegativePowerError if p < 0.
double rate_of_power(double p, double h);

/// First and second derivatives of power_of_rate with respect to r.
struct PowerDerivatives {
  double first;
  double second;
};
PowerDerivatives power_derivatives(double r, double h);

/// Greatest lower bound of energy per bit at gain h: the limit of
/// power_of_rate(r, h) / r as r -> 0+. The bound is never attained for
/// r > 0, so an instance whose energy budget sits exactly at the bound
/// cannot finish in finite time.
double min_energy_per_bit(double h);

}  // namespace ehsched

#endif  // EHSCHED_LINKMODEL_HPP
