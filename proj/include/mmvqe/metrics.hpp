// Copyright 2026 The mmvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMVQE_METRICS_HPP
#define MMVQE_METRICS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "mmvqe/grouping.hpp"
#include "mmvqe/vqe.hpp"

namespace mmvqe {

/// Columns of the per-iteration metrics table, in order.
const std::vector<std::string>& metrics_columns();

/// Comma-separated per-iteration records, header first.
class MetricsWriter {
 public:
  explicit MetricsWriter(std::ostream& out);
  void write(const RunRecord& run, std::size_t run_index);

 private:
  std::ostream& out_;
};

/// Columns of the benchmark table, in order.
const std::vector<std::string>& bench_columns();
void write_bench_table(std::ostream& out, const BenchTable& table);

struct GroupSummary {
  GroupingMode mode = GroupingMode::kQubitWise;
  std::size_t n_qubits = 0;
  std::size_t total_terms = 0;  // including the identity term
  std::size_t groups = 0;
  std::vector<std::size_t> terms_per_group;
  std::size_t max_two_qubit_gates = 0;
  bool valid = false;
};

GroupSummary summarize(const GroupedHamiltonian& gh, const Hamiltonian& source);
void write_group_summary(std::ostream& out, const GroupSummary& summary);
void write_group_summary_json(std::ostream& out, const GroupSummary& summary);

}  // namespace mmvqe

#endif  // MMVQE_METRICS_HPP
