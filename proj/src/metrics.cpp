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

#include "mmvqe/metrics.hpp"

#include <algorithm>
#include <ostream>

#include "json.hpp"
#include "mmvqe/hamiltonian_io.hpp"

namespace mmvqe {

namespace {

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

const std::vector<std::string>& metrics_columns() {
  static const std::vector<std::string> kColumns = {
      "run",          "iteration",       "scheme",         "n_qubits",
      "group_mode",   "energy",          "wall_time_total", "wall_time_postprocessing",
      "hash_probes",  "string_compares", "group_evals",    "shots_seen",
      "distinct_seen", "memory_size"};
  return kColumns;
}

MetricsWriter::MetricsWriter(std::ostream& out) : out_(out) { write_row(out_, metrics_columns()); }

void MetricsWriter::write(const RunRecord& run, std::size_t run_index) {
  for (const auto& it : run.iterations) {
    write_row(out_, {std::to_string(run_index), std::to_string(it.iteration),
                     std::string(to_string(run.scheme)), std::to_string(run.n_qubits),
                     std::string(to_string(run.mode)), format_real(it.energy),
                     format_real(it.wall_time_total), format_real(it.wall_time_postprocessing),
                     std::to_string(it.stats.hash_probes),
                     std::to_string(it.stats.string_compares),
                     std::to_string(it.stats.group_evals), std::to_string(it.stats.shots_seen),
                     std::to_string(it.stats.distinct_seen), std::to_string(it.memory_size)});
  }
  out_.flush();
}

const std::vector<std::string>& bench_columns() {
  static const std::vector<std::string> kColumns = {
      "n_qubits",          "scheme",         "repetitions",
      "mean_postprocessing_s", "std_postprocessing_s", "mean_total_s",
      "std_total_s",       "mean_group_evals", "mean_final_energy",
      "baseline_postprocessing_s", "percentage_saved"};
  return kColumns;
}

void write_bench_table(std::ostream& out, const BenchTable& table) {
  write_row(out, bench_columns());
  for (const auto& r : table.rows) {
    write_row(out, {std::to_string(r.n_qubits), std::string(to_string(r.scheme)),
                    std::to_string(r.repetitions), format_real(r.mean_postprocessing),
                    format_real(r.std_postprocessing), format_real(r.mean_total),
                    format_real(r.std_total), format_real(r.mean_group_evals),
                    format_real(r.mean_final_energy), format_real(r.baseline_postprocessing),
                    format_real(r.percentage_saved)});
  }
}

GroupSummary summarize(const GroupedHamiltonian& gh, const Hamiltonian& source) {
  GroupSummary s;
  s.mode = gh.mode;
  s.n_qubits = gh.n_qubits;
  s.total_terms = source.size();
  s.groups = gh.groups.size();
  for (const auto& g : gh.groups) {
    s.terms_per_group.push_back(g.size());
    const auto& gates = g.basis_circuit().gates;
    const auto two = static_cast<std::size_t>(std::count_if(
        gates.begin(), gates.end(), [](const CliffordGate& c) { return c.is_two_qubit(); }));
    s.max_two_qubit_gates = std::max(s.max_two_qubit_gates, two);
  }
  s.valid = validate_grouping(gh, source);
  return s;
}

void write_group_summary(std::ostream& out, const GroupSummary& s) {
  out << "mode: " << to_string(s.mode) << '\n';
  out << "qubits: " << s.n_qubits << '\n';
  out << "terms: " << s.total_terms << '\n';
  out << "groups: " << s.groups << '\n';
  out << "terms_per_group:";
  for (auto t : s.terms_per_group) out << ' ' << t;
  out << '\n';
  out << "max_two_qubit_gates: " << s.max_two_qubit_gates << '\n';
  out << "valid: " << (s.valid ? "yes" : "no") << '\n';
}

void write_group_summary_json(std::ostream& out, const GroupSummary& s) {
  nlohmann::json j;
  j["mode"] = to_string(s.mode);
  j["n_qubits"] = s.n_qubits;
  j["terms"] = s.total_terms;
  j["groups"] = s.groups;
  j["terms_per_group"] = s.terms_per_group;
  j["max_two_qubit_gates"] = s.max_two_qubit_gates;
  j["valid"] = s.valid;
  out << j.dump(2) << '\n';
}

}  // namespace mmvqe
