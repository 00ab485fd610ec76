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

#include "ehsched/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ehsched/errors.hpp"
#include "ehsched/linkmodel.hpp"

namespace ehsched::io {

using nlohmann::json;

std::string to_precise_string(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ParseError(std::string("missing or non-numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

EventKind kind_from_string(const std::string& s) {
  if (s == "harvest") return EventKind::Harvest;
  if (s == "data") return EventKind::Data;
  if (s == "channel") return EventKind::Channel;
  throw ParseError("unknown event kind '" + s + "'");
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("not valid JSON");
  return j;
}

}  // namespace

Instance parse_instance_text(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("events") || !j["events"].is_array()) {
    throw ParseError("instance must be an object with an 'events' array");
  }

  Instance inst;
  if (j.contains("initial_gain")) {
    if (!j["initial_gain"].is_number()) {
      throw ParseError("'initial_gain' must be a number");
    }
    inst.initial_gain = j["initial_gain"].get<double>();
  }
  if (j.contains("bandwidth_hz")) {
    if (!j["bandwidth_hz"].is_number() || !(j["bandwidth_hz"].get<double>() > 0.0)) {
      throw ParseError("'bandwidth_hz' must be a positive number");
    }
    inst.bandwidth_hz = j["bandwidth_hz"].get<double>();
  }
  for (const json& e : j["events"]) {
    if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string()) {
      throw ParseError("every event needs a string 'kind'");
    }
    inst.events.push_back({number_field(e, "t"),
                           kind_from_string(e["kind"].get<std::string>()),
                           number_field(e, "value")});
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  return parse_instance_text(read_file(path));
}

EventTimeline build_normalized_timeline(const Instance& inst) {
  std::vector<Event> events = inst.events;
  for (Event& e : events) {
    if (e.kind == EventKind::Data) e.value /= inst.bandwidth_hz;
  }
  try {
    return EventTimeline::build(std::move(events), inst.initial_gain);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("invalid instance: ") + ex.what());
  }
}

namespace {

void append_instance_echo(std::ostringstream& os, const Instance& inst) {
  os << "  \"bandwidth_hz\": " << to_precise_string(inst.bandwidth_hz) << ",\n";
}

void append_schedule(std::ostringstream& os, const Instance& inst,
                     const Schedule& s) {
  os << "  \"schedule\": [\n";
  for (std::size_t i = 0; i < s.rates.size(); ++i) {
    os << "    {\"start\": " << to_precise_string(s.start_times[i])
       << ", \"duration\": " << to_precise_string(s.durations[i])
       << ", \"rate\": " << to_precise_string(s.rates[i] * inst.bandwidth_hz)
       << ", \"power\": " << to_precise_string(s.powers[i]) << "}"
       << (i + 1 < s.rates.size() ? "," : "") << "\n";
  }
  os << "  ],\n";
}

void append_config(std::ostringstream& os, const ConfigEcho& c) {
  os << "  \"config\": {\"mu0\": ";
  if (c.mu0) {
    os << to_precise_string(*c.mu0);
  } else {
    os << "\"auto\"";
  }
  os << ", \"eta\": " << to_precise_string(c.eta)
     << ", \"eps_newton\": " << to_precise_string(c.eps_newton)
     << ", \"eps_sumt\": " << to_precise_string(c.eps_sumt)
     << ", \"eps_bisect\": " << to_precise_string(c.eps_bisect)
     << ", \"feas_tol\": " << to_precise_string(c.feas_tol) << "}\n";
}

template <typename T>
void append_int_array(std::ostringstream& os, const std::vector<T>& v) {
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << v[i] << (i + 1 < v.size() ? ", " : "");
  }
  os << "]";
}

}  // namespace

std::string render_min_time_result(const Instance& inst, const Schedule& s,
                                   const SolveReport& report,
                                   const ConfigEcho& config) {
  std::ostringstream os;
  os << "{\n  \"type\": \"min-time-result\",\n";
  append_instance_echo(os, inst);
  os << "  \"completion_time\": " << to_precise_string(s.completion_time) << ",\n"
     << "  \"consumed_energy\": " << to_precise_string(s.consumed_energy) << ",\n";
  append_schedule(os, inst, s);
  os << "  \"report\": {\n"
     << "    \"bisections\": " << report.bisections << ",\n"
     << "    \"bisection_bound\": " << report.bisection_bound << ",\n"
     << "    \"bound_search_solves\": " << report.bound_search_solves << ",\n"
     << "    \"bracket\": [" << to_precise_string(report.bracket_lo) << ", "
     << to_precise_string(report.bracket_hi) << "],\n"
     << "    \"sumt_iterations\": ";
  append_int_array(os, report.sumt_iterations);
  os << ",\n"
     << "    \"sumt_iteration_bound\": " << report.sumt_iteration_bound << ",\n"
     << "    \"total_newton_steps\": " << report.total_newton_steps << ",\n"
     << "    \"max_newton_steps\": " << report.max_newton_steps << ",\n"
     << "    \"newton_step_bound\": \"" << report.newton_step_bound << "\"\n"
     << "  },\n";
  append_config(os, config);
  os << "}\n";
  return os.str();
}

std::string render_min_energy_result(const Instance& inst, double deadline,
                                     const Schedule& s, const SumtResult& raw,
                                     const ConfigEcho& config) {
  std::ostringstream os;
  os << "{\n  \"type\": \"min-energy-result\",\n";
  append_instance_echo(os, inst);
  os << "  \"deadline\": " << to_precise_string(deadline) << ",\n"
     << "  \"completion_time\": " << to_precise_string(s.completion_time) << ",\n"
     << "  \"consumed_energy\": " << to_precise_string(s.consumed_energy) << ",\n"
     << "  \"feasible\": " << (raw.feasible ? "true" : "false") << ",\n"
     << "  \"max_violation\": " << to_precise_string(raw.max_violation) << ",\n";
  append_schedule(os, inst, s);
  os << "  \"report\": {\n"
     << "    \"mu0_used\": " << to_precise_string(raw.mu0_used) << ",\n"
     << "    \"sumt_iterations\": " << raw.iterations << ",\n"
     << "    \"newton_steps\": ";
  append_int_array(os, raw.newton_steps);
  os << "\n  },\n";
  append_config(os, config);
  os << "}\n";
  return os.str();
}

std::string render_oracle_result(const Instance& inst, double deadline,
                                 const std::vector<double>& rates, double energy,
                                 double grid_step) {
  std::ostringstream os;
  os << "{\n  \"type\": \"oracle-result\",\n";
  append_instance_echo(os, inst);
  os << "  \"deadline\": " << to_precise_string(deadline) << ",\n"
     << "  \"grid_step\": " << to_precise_string(grid_step) << ",\n"
     << "  \"energy\": " << to_precise_string(energy) << ",\n"
     << "  \"rates\": [";
  for (std::size_t i = 0; i < rates.size(); ++i) {
    os << to_precise_string(rates[i] * inst.bandwidth_hz)
       << (i + 1 < rates.size() ? ", " : "");
  }
  os << "]\n}\n";
  return os.str();
}

ResultFile parse_result_text(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("schedule") || !j["schedule"].is_array()) {
    throw ParseError("result must be an object with a 'schedule' array");
  }
  ResultFile rf;
  rf.completion_time = number_field(j, "completion_time");
  if (j.contains("bandwidth_hz")) rf.bandwidth_hz = number_field(j, "bandwidth_hz");
  for (const json& seg : j["schedule"]) {
    rf.start_times.push_back(number_field(seg, "start"));
    rf.durations.push_back(number_field(seg, "duration"));
    rf.rates.push_back(number_field(seg, "rate"));
  }
  return rf;
}

ResultFile load_result(const std::string& path) {
  return parse_result_text(read_file(path));
}

Schedule to_normalized_schedule(const ResultFile& rf, const Instance& inst,
                                const EventTimeline& tl) {
  Schedule s;
  s.completion_time = rf.completion_time;
  s.start_times = rf.start_times;
  s.durations = rf.durations;
  s.rates.reserve(rf.rates.size());
  for (std::size_t i = 0; i < rf.rates.size(); ++i) {
    const double rate = rf.rates[i] / inst.bandwidth_hz;
    s.rates.push_back(rate);
    // Power re-derived from the rate; gains looked up per segment start.
    const auto& times = tl.event_times();
    std::size_t k = 0;
    while (k + 1 < times.size() && times[k + 1] <= s.start_times[i]) ++k;
    s.powers.push_back(power_of_rate(rate, tl.epoch_gains()[k]));
    s.consumed_energy += s.powers.back() * s.durations[i];
  }
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ehsched::io
