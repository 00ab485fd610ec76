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

#ifndef EHSCHED_CLI_HPP
#define EHSCHED_CLI_HPP

#include <optional>
#include <string>

namespace ehsched::cli {

enum class Verb { Solve, MinEnergy, Validate, Oracle, Trace };

/// Batch run description. Paths may be empty, in which case results print
/// to stdout. Unset overrides fall back to the preset or the defaults.
struct RunConfig {
  Verb verb = Verb::Solve;
  std::string instance_path;
  std::string output_path;
  std::string schedule_path;  // validate: the result file to check
  std::optional<double> deadline;
  std::optional<double> mu0;
  std::optional<double> eta;
  std::optional<double> eps_newton;
  std::optional<double> eps_sumt;
  std::optional<double> eps_bisect;
  std::optional<double> feas_tol;
  std::optional<double> grid_step;  // oracle verb
  bool trace_enabled = false;
  bool use_paper_preset = false;
};

/// The parameter set reported in the literature for this solver family.
struct SolverPreset {
  double mu0 = 1.0;
  double eta = 2.0;
  double eps_newton = 1e-8;
  double eps_sumt = 1e-10;
  double eps_bisect = 1e-3;
};

SolverPreset paper_preset();

/// Exit codes: 0 success, 2 parse error, 3 infeasible instance, 4 solver
/// non-convergence, 5 validation failure, 1 unexpected error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitSolver = 4;
inline constexpr int kExitValidation = 5;

/// Runs one batch job; never throws. Verbosity via EHSCHED_LOG
/// (quiet|normal|debug, default normal).
int run(const RunConfig& cfg);

}  // namespace ehsched::cli

#endif  // EHSCHED_CLI_HPP
