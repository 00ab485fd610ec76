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

#include "ehsched/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "ehsched/errors.hpp"
#include "ehsched/io.hpp"
#include "ehsched/oracle.hpp"
#include "ehsched/scheduler.hpp"

namespace ehsched::cli {

namespace {

int log_level() {
  const char* env = std::getenv("EHSCHED_LOG");
  if (!env) return 1;
  const std::string v(env);
  if (v == "quiet" || v == "0") return 0;
  if (v == "debug" || v == "2") return 2;
  return 1;
}

void info(const std::string& msg) {
  if (log_level() >= 1) std::cout << msg << "\n";
}

struct ResolvedSettings {
  io::ConfigEcho echo;
  ScheduleConfig schedule;
};

ResolvedSettings resolve(const RunConfig& cfg) {
  ResolvedSettings rs;
  if (cfg.use_paper_preset) {
    const SolverPreset p = paper_preset();
    rs.echo.mu0 = p.mu0;
    rs.echo.eta = p.eta;
    rs.echo.eps_newton = p.eps_newton;
    rs.echo.eps_sumt = p.eps_sumt;
    rs.echo.eps_bisect = p.eps_bisect;
  }
  if (cfg.mu0) rs.echo.mu0 = *cfg.mu0;
  if (cfg.eta) rs.echo.eta = *cfg.eta;
  if (cfg.eps_newton) rs.echo.eps_newton = *cfg.eps_newton;
  if (cfg.eps_sumt) rs.echo.eps_sumt = *cfg.eps_sumt;
  if (cfg.eps_bisect) rs.echo.eps_bisect = *cfg.eps_bisect;
  if (cfg.feas_tol) rs.echo.feas_tol = *cfg.feas_tol;

  rs.schedule.eps_bisect = rs.echo.eps_bisect;
  rs.schedule.sumt.mu0 = rs.echo.mu0;
  rs.schedule.sumt.eta = rs.echo.eta;
  rs.schedule.sumt.eps_penalty = rs.echo.eps_sumt;
  rs.schedule.sumt.feas_tol = rs.echo.feas_tol;
  rs.schedule.sumt.newton.eps_decrement = rs.echo.eps_newton;
  return rs;
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.output_path.empty()) {
    std::cout << content;
  } else {
    io::write_file(cfg.output_path, content);
    info("wrote " + cfg.output_path);
  }
}

std::string trace_path_for(const std::string& output_path) {
  return output_path.empty() ? "trace.csv" : output_path + ".trace.csv";
}

int run_solve(const RunConfig& cfg, bool trace_to_output) {
  const io::Instance inst = io::load_instance(cfg.instance_path);
  const EventTimeline tl = io::build_normalized_timeline(inst);
  const ResolvedSettings rs = resolve(cfg);

  TraceSink sink;
  const bool tracing = trace_to_output || cfg.trace_enabled;
  MinTimeSolution sol = solve_min_time(tl, rs.schedule, tracing ? &sink : nullptr);

  if (trace_to_output) {
    std::ostringstream csv;
    sink.write_csv(csv);
    emit(cfg, csv.str());
  } else {
    emit(cfg, io::render_min_time_result(inst, sol.schedule, sol.report, rs.echo));
    if (cfg.trace_enabled) {
      std::ostringstream csv;
      sink.write_csv(csv);
      io::write_file(trace_path_for(cfg.output_path), csv.str());
      info("wrote " + trace_path_for(cfg.output_path));
    }
  }
  std::ostringstream summary;
  summary << "min completion time " << io::to_precise_string(sol.schedule.completion_time)
          << " s, energy " << io::to_precise_string(sol.schedule.consumed_energy)
          << " J (" << sol.report.bisections << " bisections, "
          << sol.report.bound_search_solves << " bound solves, "
          << sol.report.total_newton_steps << " Newton steps, "
          << sol.report.wall_seconds * 1e3 << " ms)";
  info(summary.str());
  return kExitOk;
}

int run_min_energy(const RunConfig& cfg) {
  if (!cfg.deadline) {
    throw ParseError("min-energy requires --deadline");
  }
  const io::Instance inst = io::load_instance(cfg.instance_path);
  const EventTimeline tl = io::build_normalized_timeline(inst);
  const ResolvedSettings rs = resolve(cfg);

  TraceSink sink;
  SumtResult res = solve_min_energy(tl, *cfg.deadline, rs.schedule.sumt,
                                    cfg.trace_enabled ? &sink : nullptr);
  const Schedule s =
      build_schedule(tl, *cfg.deadline, res, rs.schedule.sumt.feas_tol);
  emit(cfg, io::render_min_energy_result(inst, *cfg.deadline, s, res, rs.echo));
  if (cfg.trace_enabled) {
    std::ostringstream csv;
    sink.write_csv(csv);
    io::write_file(trace_path_for(cfg.output_path), csv.str());
  }
  std::ostringstream summary;
  summary << "deadline " << io::to_precise_string(*cfg.deadline) << " s "
          << (res.feasible ? "feasible" : "infeasible") << ", energy "
          << io::to_precise_string(res.energy) << " J, max violation "
          << io::to_precise_string(res.max_violation);
  info(summary.str());
  return res.feasible ? kExitOk : kExitInfeasible;
}

int run_validate(const RunConfig& cfg) {
  const io::Instance inst = io::load_instance(cfg.instance_path);
  const EventTimeline tl = io::build_normalized_timeline(inst);
  const io::ResultFile rf = io::load_result(cfg.schedule_path);
  const Schedule s = io::to_normalized_schedule(rf, inst, tl);
  const double tol = cfg.feas_tol.value_or(1e-6);

  const oracle::ValidationReport rep = oracle::validate_schedule(tl, s, tol);
  std::ostringstream summary;
  summary << (rep.pass ? "valid" : "INVALID") << " schedule, max violation "
          << io::to_precise_string(rep.max_violation);
  for (const std::string& f : rep.failures) summary << "; failed: " << f;
  info(summary.str());
  return rep.pass ? kExitOk : kExitValidation;
}

int run_oracle(const RunConfig& cfg) {
  if (!cfg.deadline) {
    throw ParseError("oracle requires --deadline");
  }
  const io::Instance inst = io::load_instance(cfg.instance_path);
  const EventTimeline tl = io::build_normalized_timeline(inst);
  oracle::OracleConfig ocfg;
  if (cfg.grid_step) ocfg.grid_resolution = *cfg.grid_step;

  const oracle::GridResult gr = oracle::grid_min_energy(tl, *cfg.deadline, ocfg);
  emit(cfg, io::render_oracle_result(inst, *cfg.deadline, gr.rates, gr.energy,
                                     ocfg.grid_resolution));
  return kExitOk;
}

}  // namespace

SolverPreset paper_preset() { return SolverPreset{}; }

int run(const RunConfig& cfg) {
  try {
    switch (cfg.verb) {
      case Verb::Solve:
        return run_solve(cfg, /*trace_to_output=*/false);
      case Verb::Trace:
        return run_solve(cfg, /*trace_to_output=*/true);
      case Verb::MinEnergy:
        return run_min_energy(cfg);
      case Verb::Validate:
        return run_validate(cfg);
      case Verb::Oracle:
        return run_oracle(cfg);
    }
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const NoDataError& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return kExitParse;
  } catch (const NoGainError& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return kExitParse;
  } catch (const DeadlineBeforeDataError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const BoundSearchExhaustedError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const NoFeasibleGridPointError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const SingularHessianError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const NonFiniteObjectiveError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ehsched::cli
