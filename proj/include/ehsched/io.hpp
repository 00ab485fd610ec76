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

#ifndef EHSCHED_IO_HPP
#define EHSCHED_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "ehsched/scheduler.hpp"
#include "ehsched/sumt.hpp"
#include "ehsched/timeline.hpp"

namespace ehsched::io {

/// Formats a double with 17 significant digits, enough to round-trip
/// bit-exactly, so identical solves produce byte-identical files.
std::string to_precise_string(double v);

/// An instance file as given: times in seconds, harvests in joules, data
/// in bits, gains dimensionless. Data values are stored unnormalized; the
/// optional bandwidth only scales rates and data at the I/O boundary.
struct Instance {
  std::vector<Event> events;
  std::optional<double> initial_gain;
  double bandwidth_hz = 1.0;
};

Instance parse_instance_text(const std::string& text);
Instance load_instance(const std::string& path);

/// Builds the solver timeline: data values are divided by the bandwidth so
/// internal rates are per unit bandwidth.
EventTimeline build_normalized_timeline(const Instance& inst);

/// Echo of the solver configuration written into result files.
struct ConfigEcho {
  std::optional<double> mu0;  // unset = auto
  double eta = 2.0;
  double eps_newton = 1e-8;
  double eps_sumt = 1e-10;
  double eps_bisect = 1e-3;
  double feas_tol = 1e-6;
};

/// Deterministic result renderers. Rates are multiplied by the bandwidth
/// on the way out; powers and energies are unscaled. Wall time never
/// appears in a result file.
std::string render_min_time_result(const Instance& inst, const Schedule& s,
                                   const SolveReport& report,
                                   const ConfigEcho& config);
std::string render_min_energy_result(const Instance& inst, double deadline,
                                     const Schedule& s, const SumtResult& raw,
                                     const ConfigEcho& config);
std::string render_oracle_result(const Instance& inst, double deadline,
                                 const std::vector<double>& rates, double energy,
                                 double grid_step);

/// A result file read back (either flavor), rates still in file units.
struct ResultFile {
  double completion_time = 0.0;
  std::vector<double> start_times;
  std::vector<double> durations;
  std::vector<double> rates;
  double bandwidth_hz = 1.0;
};

ResultFile parse_result_text(const std::string& text);
ResultFile load_result(const std::string& path);

/// Reconstructs the bandwidth-normalized schedule a result file describes,
/// using the instance's bandwidth and the timeline's gains for powers.
Schedule to_normalized_schedule(const ResultFile& rf, const Instance& inst,
                                const EventTimeline& tl);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace ehsched::io

#endif  // EHSCHED_IO_HPP
