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

#ifndef EHSCHED_ERRORS_HPP
#define EHSCHED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ehsched {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The instance carries no data at all; there is nothing to schedule.
class NoDataError : public Error {
 public:
  using Error::Error;
};

/// No channel gain is defined at time zero and no initial gain was given.
class NoGainError : public Error {
 public:
  using Error::Error;
};

class NegativePowerError : public Error {
 public:
  using Error::Error;
};

/// Requested deadline lies before the last data arrival, so completing all
/// data by the deadline is impossible by construction.
class DeadlineBeforeDataError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class SingularHessianError : public Error {
 public:
  using Error::Error;
};

class NonFiniteObjectiveError : public Error {
 public:
  using Error::Error;
};

/// The instance admits no finite completion time.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class BoundSearchExhaustedError : public Error {
 public:
  using Error::Error;
};

class NoFeasibleGridPointError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance or result file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ehsched

#endif  // EHSCHED_ERRORS_HPP
