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

#include "ehsched/trace.hpp"

#include "ehsched/io.hpp"

namespace ehsched {

namespace {

void append_cell(std::ostream& os, const std::optional<double>& v) {
  os << ',';
  if (v) os << io::to_precise_string(*v);
}

}  // namespace

void TraceSink::write_csv(std::ostream& os) const {
  os << "phase,iteration,mu,T_candidate,F,objective,max_violation,newton_steps\n";
  for (const TraceRow& row : rows_) {
    os << row.phase << ',' << row.iteration;
    append_cell(os, row.mu);
    append_cell(os, row.deadline_candidate);
    append_cell(os, row.objective_with_penalty);
    append_cell(os, row.objective);
    append_cell(os, row.max_violation);
    os << ',';
    if (row.newton_steps) os << *row.newton_steps;
    os << '\n';
  }
}

}  // namespace ehsched
