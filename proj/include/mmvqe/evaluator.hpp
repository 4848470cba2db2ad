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

#ifndef MMVQE_EVALUATOR_HPP
#define MMVQE_EVALUATOR_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "mmvqe/grouping.hpp"
#include "mmvqe/pauli.hpp"
#include "mmvqe/state_sim.hpp"

namespace mmvqe {

/// kNaive evaluates every shot; kSorted histograms the shots first and
/// evaluates each distinct string once; kMm looks each shot up in a
/// memory that persists across evaluations.
enum class Scheme { kNaive, kSorted, kMm };

std::string_view to_string(Scheme scheme);
/// Accepts "naive", "sorted" and "mm".
Scheme parse_scheme(std::string_view text);

/// Cost counters, incremented at modelled events rather than at real
/// hash-table internals:
///   hash_probes      one per shot looked up (an O(N) hash),
///   string_compares  one per lookup that lands on an occupied slot,
///   group_evals      one per evaluation of <b|G|b> (O(N T)),
///   distinct_seen    L, distinct strings among the shots (not tracked by
///                    naive evaluation, which never hashes),
///   memory_hits      lookups answered from the memory (m - L + l).
struct EvalStats {
  std::uint64_t hash_probes = 0;
  std::uint64_t string_compares = 0;
  std::uint64_t group_evals = 0;
  std::uint64_t shots_seen = 0;
  std::uint64_t distinct_seen = 0;
  std::uint64_t memory_hits = 0;
  double wall_time = 0.0;  // seconds

  EvalStats& operator+=(const EvalStats& other);
};

/// Counter totals in units of single-qubit operations: hash probes and
/// compares cost N each, a group evaluation costs N * n_terms.
std::uint64_t cost_units(const EvalStats& stats, std::size_t n_qubits, std::size_t n_terms);

struct GroupExpectation {
  double value = 0.0;
  EvalStats stats;
};

class MeasurementMemory;

/// M_k: bit string -> <b|G_k|b> for one group.
class MemoryDictionary {
 public:
  struct Entry {
    double value;
    std::uint64_t last_pass;  // evaluation pass that last touched the entry
  };
  using Map = absl::flat_hash_map<BitString, Entry, std::hash<BitString>>;

  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  /// Stored value, or nullptr.
  const double* find(const BitString& b) const;
  const Map& entries() const { return map_; }

 private:
  friend GroupExpectation eval_mm(const CommutingGroup&, const SampleSet&, MeasurementMemory&);
  Map map_;
  std::uint64_t pass_ = 0;
};

class MemoryLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One dictionary per group, kept for a whole VQE run. Entries are never
/// evicted; exceeding `max_entries` (summed over groups) throws
/// MemoryLimitError.
class MeasurementMemory {
 public:
  static constexpr std::size_t kDefaultMaxEntries = std::size_t{1} << 26;

  explicit MeasurementMemory(std::size_t n_groups,
                             std::size_t max_entries = kDefaultMaxEntries);

  std::size_t num_groups() const { return dicts_.size(); }
  std::size_t max_entries() const { return max_entries_; }
  std::size_t total_entries() const { return total_; }
  MemoryDictionary& group(std::size_t k);
  const MemoryDictionary& group(std::size_t k) const;

 private:
  friend GroupExpectation eval_mm(const CommutingGroup&, const SampleSet&, MeasurementMemory&);
  std::vector<MemoryDictionary> dicts_;
  std::size_t max_entries_;
  std::size_t total_ = 0;
};

/// sum_j c_j (-1)^popcount(z_j & b) over the group's diagonal terms.
/// Adds one to stats.group_evals. Throws if the group was not diagonalized.
double eval_bitstring(const CommutingGroup& g, const BitString& b, EvalStats& stats);

GroupExpectation eval_naive(const CommutingGroup& g, const SampleSet& s);
GroupExpectation eval_sorted(const CommutingGroup& g, const SampleSet& s);
/// Uses the dictionary of group `s.group_index` from `mem`. Shots are
/// looked up in their raw order; nothing is pre-sorted.
GroupExpectation eval_mm(const CommutingGroup& g, const SampleSet& s, MeasurementMemory& mem);

/// sum_b p_b <b|G|b> over exact outcome probabilities.
GroupExpectation eval_exact(const CommutingGroup& g, std::span<const WeightedOutcome> probs);

struct HamiltonianExpectation {
  double value = 0.0;
  EvalStats stats;
};

/// sum_k E_k plus gh.constant. `samples[k]` must belong to group k; `mem` is
/// required for Scheme::kMm and ignored otherwise.
HamiltonianExpectation eval_hamiltonian(const GroupedHamiltonian& gh,
                                        std::span<const SampleSet> samples,
                                        MeasurementMemory* mem, Scheme scheme);

/// Exact-probability variant: one outcome distribution per group.
HamiltonianExpectation eval_hamiltonian_exact(
    const GroupedHamiltonian& gh, std::span<const std::vector<WeightedOutcome>> probs);

/// Expected number of distinct strings among m uniform draws from 2^N.
double expected_distinct(std::size_t n_qubits, std::uint64_t m);

}  // namespace mmvqe

#endif  // MMVQE_EVALUATOR_HPP
