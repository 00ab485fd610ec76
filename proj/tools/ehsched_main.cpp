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

#include <CLI11.hpp>

#include "ehsched/cli.hpp"

namespace {

void add_solver_flags(CLI::App* sub, ehsched::cli::RunConfig& cfg) {
  sub->add_option("--input,-i", cfg.instance_path, "instance JSON file")
      ->required();
  sub->add_option("--output,-o", cfg.output_path,
                  "output file (stdout when omitted)");
  sub->add_option("--mu0", cfg.mu0, "initial penalty coefficient (default auto)");
  sub->add_option("--eta", cfg.eta, "penalty growth factor");
  sub->add_option("--eps-newton", cfg.eps_newton, "Newton decrement threshold");
  sub->add_option("--eps-sumt", cfg.eps_sumt, "outer stop threshold on 1/mu");
  sub->add_option("--eps-bisect", cfg.eps_bisect, "bisection bracket width (s)");
  sub->add_option("--feas-tol", cfg.feas_tol, "feasibility tolerance");
  sub->add_flag_callback(
      "--preset",
      [&cfg] { cfg.use_paper_preset = true; },
      "use the published parameter preset (mu0=1, eta=2, 1e-8/1e-10/1e-3)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offline minimum-completion-time scheduler for an energy "
               "harvesting transmitter on a fading channel"};
  app.require_subcommand(1);

  ehsched::cli::RunConfig cfg;

  CLI::App* solve = app.add_subcommand(
      "solve", "minimize the completion time of all data");
  add_solver_flags(solve, cfg);
  solve->add_flag("--trace", cfg.trace_enabled,
                  "also write a <output>.trace.csv progress log");

  CLI::App* min_energy = app.add_subcommand(
      "min-energy", "minimize energy for a fixed deadline");
  add_solver_flags(min_energy, cfg);
  min_energy->add_option("--deadline,-T", cfg.deadline, "deadline in seconds")
      ->required();
  min_energy->add_flag("--trace", cfg.trace_enabled,
                       "also write a <output>.trace.csv progress log");

  CLI::App* validate = app.add_subcommand(
      "validate", "check a result file against its instance");
  validate->add_option("--input,-i", cfg.instance_path, "instance JSON file")
      ->required();
  validate->add_option("--schedule,-s", cfg.schedule_path, "result JSON file")
      ->required();
  validate->add_option("--feas-tol", cfg.feas_tol, "feasibility tolerance");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "brute-force grid reference for a fixed deadline");
  oracle->add_option("--input,-i", cfg.instance_path, "instance JSON file")
      ->required();
  oracle->add_option("--output,-o", cfg.output_path,
                     "output file (stdout when omitted)");
  oracle->add_option("--deadline,-T", cfg.deadline, "deadline in seconds")
      ->required();
  oracle->add_option("--grid-step", cfg.grid_step, "rate grid step (bits/s)");

  CLI::App* trace = app.add_subcommand(
      "trace", "solve and write the progress CSV to --output");
  add_solver_flags(trace, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ehsched::cli::kExitParse;
  }

  if (solve->parsed()) cfg.verb = ehsched::cli::Verb::Solve;
  if (min_energy->parsed()) cfg.verb = ehsched::cli::Verb::MinEnergy;
  if (validate->parsed()) cfg.verb = ehsched::cli::Verb::Validate;
  if (oracle->parsed()) cfg.verb = ehsched::cli::Verb::Oracle;
  if (trace->parsed()) cfg.verb = ehsched::cli::Verb::Trace;

  return ehsched::cli::run(cfg);
}
