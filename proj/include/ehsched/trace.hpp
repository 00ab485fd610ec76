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

#ifndef EHSCHED_TRACE_HPP
#define EHSCHED_TRACE_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ehsched {

/// One progress record. Unset fields serialize as empty CSV cells.
struct TraceRow {
  std::string phase;  // "bound", "bisect" or "sumt"
  int iteration = 0;
  std::optional<double> mu;
  std::optional<double> deadline_candidate;
  std::optional<double> objective_with_penalty;  // F
  std::optional<double> objective;               // bare consumed energy
  std::optional<double> max_violation;
  std::optional<int> newton_steps;
};

/// Collects solver progress for plot-ready CSV output. Deterministic:
/// rows appear in solve order and numbers print with 17 significant digits.
class TraceSink {
 public:
  void add(TraceRow row) { rows_.push_back(std::move(row)); }
  const std::vector<TraceRow>& rows() const { return rows_; }

  void write_csv(std::ostream& os) const;

 private:
  std::vector<TraceRow> rows_;
};

}  // namespace ehsched

#endif  // EHSCHED_TRACE_HPP
