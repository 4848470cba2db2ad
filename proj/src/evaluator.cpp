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

#include "mmvqe/evaluator.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <string>

#include "mmvqe/cpu_clock.hpp"

namespace mmvqe {

namespace {

using Clock = ThreadCpuClock;

void require_shots(const SampleSet& s) {
  if (s.shots.empty()) throw std::invalid_argument("sample set has no shots");
}

// The hot loop: one popcount per diagonal term.
inline double diagonal_value(std::span<const std::uint64_t> masks,
                             std::span<const double> coeffs, std::uint64_t bits) {
  double acc = 0.0;
  for (std::size_t j = 0; j < masks.size(); ++j) {
    const double c = coeffs[j];
    acc += (std::popcount(masks[j] & bits) & 1) ? -c : c;
  }
  return acc;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kNaive:
      return "naive";
    case Scheme::kSorted:
      return "sorted";
    case Scheme::kMm:
      return "mm";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "naive") return Scheme::kNaive;
  if (text == "sorted") return Scheme::kSorted;
  if (text == "mm") return Scheme::kMm;
  throw std::invalid_argument("unknown scheme '" + std::string(text) +
                              "' (expected naive, sorted or mm)");
}

EvalStats& EvalStats::operator+=(const EvalStats& other) {
  hash_probes += other.hash_probes;
  string_compares += other.string_compares;
  group_evals += other.group_evals;
  shots_seen += other.shots_seen;
  distinct_seen += other.distinct_seen;
  memory_hits += other.memory_hits;
  wall_time += other.wall_time;
  return *this;
}

std::uint64_t cost_units(const EvalStats& stats, std::size_t n_qubits, std::size_t n_terms) {
  const std::uint64_t n = n_qubits;
  return (stats.hash_probes + stats.string_compares) * n + stats.group_evals * n * n_terms;
}

const double* MemoryDictionary::find(const BitString& b) const {
  auto it = map_.find(b);
  return it == map_.end() ? nullptr : &it->second.value;
}

MeasurementMemory::MeasurementMemory(std::size_t n_groups, std::size_t max_entries)
    : dicts_(n_groups), max_entries_(max_entries) {}

MemoryDictionary& MeasurementMemory::group(std::size_t k) {
  if (k >= dicts_.size()) {
    throw std::out_of_range("no memory dictionary for group " + std::to_string(k));
  }
  return dicts_[k];
}

const MemoryDictionary& MeasurementMemory::group(std::size_t k) const {
  if (k >= dicts_.size()) {
    throw std::out_of_range("no memory dictionary for group " + std::to_string(k));
  }
  return dicts_[k];
}

double eval_bitstring(const CommutingGroup& g, const BitString& b, EvalStats& stats) {
  if (!g.diagonalized() || g.z_masks().size() != g.size()) {
    throw std::invalid_argument("group has no diagonal form to evaluate");
  }
  if (b.n_qubits() != g.n_qubits()) {
    throw std::invalid_argument("bit string has " + std::to_string(b.n_qubits()) +
                                " qubits, group has " + std::to_string(g.n_qubits()));
  }
  ++stats.group_evals;
  return diagonal_value(g.z_masks(), g.diagonal_coeffs(), b.bits());
}

GroupExpectation eval_naive(const CommutingGroup& g, const SampleSet& s) {
  require_shots(s);
  const auto start = Clock::now();
  GroupExpectation out;
  const double inv_m = 1.0 / static_cast<double>(s.shots.size());
  for (const auto& b : s.shots) {
    out.value += eval_bitstring(g, b, out.stats) * inv_m;
  }
  out.stats.shots_seen = s.shots.size();
  out.stats.wall_time = seconds_since(start);
  return out;
}

GroupExpectation eval_sorted(const CommutingGroup& g, const SampleSet& s) {
  require_shots(s);
  const auto start = Clock::now();
  GroupExpectation out;
  auto& st = out.stats;

  // Histogram in first-occurrence order.
  absl::flat_hash_map<BitString, std::uint32_t, std::hash<BitString>> slot;
  std::vector<BitString> distinct;
  std::vector<std::uint64_t> counts;
  for (const auto& b : s.shots) {
    ++st.hash_probes;
    auto [it, inserted] = slot.try_emplace(b, static_cast<std::uint32_t>(distinct.size()));
    if (inserted) {
      distinct.push_back(b);
      counts.push_back(1);
    } else {
      ++st.string_compares;
      ++counts[it->second];
    }
  }

  const double m = static_cast<double>(s.shots.size());
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    out.value += (static_cast<double>(counts[i]) / m) * eval_bitstring(g, distinct[i], st);
  }
  st.shots_seen = s.shots.size();
  st.distinct_seen = distinct.size();
  st.wall_time = seconds_since(start);
  return out;
}

GroupExpectation eval_mm(const CommutingGroup& g, const SampleSet& s, MeasurementMemory& mem) {
  require_shots(s);
  const auto start = Clock::now();
  MemoryDictionary& dict = mem.group(s.group_index);
  GroupExpectation out;
  auto& st = out.stats;
  const std::uint64_t pass = ++dict.pass_;
  const double inv_m = 1.0 / static_cast<double>(s.shots.size());

  for (const auto& b : s.shots) {
    ++st.hash_probes;
    auto [it, inserted] = dict.map_.try_emplace(b, MemoryDictionary::Entry{0.0, pass});
    if (inserted) {
      if (mem.total_ >= mem.max_entries_) {
        dict.map_.erase(it);
        throw MemoryLimitError("measurement memory exceeded " +
                               std::to_string(mem.max_entries_) + " entries");
      }
      ++mem.total_;
      it->second.value = eval_bitstring(g, b, st);
      ++st.distinct_seen;
    } else {
      ++st.string_compares;
      ++st.memory_hits;
      if (it->second.last_pass != pass) {
        it->second.last_pass = pass;
        ++st.distinct_seen;
      }
    }
    out.value += it->second.value * inv_m;
  }
  st.shots_seen = s.shots.size();
  st.wall_time = seconds_since(start);
  return out;
}

GroupExpectation eval_exact(const CommutingGroup& g, std::span<const WeightedOutcome> probs) {
  const auto start = Clock::now();
  GroupExpectation out;
  for (const auto& o : probs) {
    out.value += o.probability * eval_bitstring(g, o.bits, out.stats);
  }
  out.stats.distinct_seen = probs.size();
  out.stats.wall_time = seconds_since(start);
  return out;
}

HamiltonianExpectation eval_hamiltonian(const GroupedHamiltonian& gh,
                                        std::span<const SampleSet> samples,
                                        MeasurementMemory* mem, Scheme scheme) {
  if (samples.size() != gh.groups.size()) {
    throw std::invalid_argument("got " + std::to_string(samples.size()) +
                                " sample sets for " + std::to_string(gh.groups.size()) +
                                " groups");
  }
  if (scheme == Scheme::kMm && mem == nullptr) {
    throw std::invalid_argument("measurement memory required for the mm scheme");
  }
  HamiltonianExpectation out;
  out.value = gh.constant;
  for (std::size_t k = 0; k < gh.groups.size(); ++k) {
    if (samples[k].group_index != k) {
      throw std::invalid_argument("sample set " + std::to_string(k) + " was measured for group " +
                                  std::to_string(samples[k].group_index));
    }
    GroupExpectation e;
    switch (scheme) {
      case Scheme::kNaive:
        e = eval_naive(gh.groups[k], samples[k]);
        break;
      case Scheme::kSorted:
        e = eval_sorted(gh.groups[k], samples[k]);
        break;
      case Scheme::kMm:
        e = eval_mm(gh.groups[k], samples[k], *mem);
        break;
    }
    out.value += e.value;
    out.stats += e.stats;
  }
  return out;
}

HamiltonianExpectation eval_hamiltonian_exact(
    const GroupedHamiltonian& gh, std::span<const std::vector<WeightedOutcome>> probs) {
  if (probs.size() != gh.groups.size()) {
    throw std::invalid_argument("got " + std::to_string(probs.size()) +
                                " distributions for " + std::to_string(gh.groups.size()) +
                                " groups");
  }
  HamiltonianExpectation out;
  out.value = gh.constant;
  for (std::size_t k = 0; k < gh.groups.size(); ++k) {
    auto e = eval_exact(gh.groups[k], probs[k]);
    out.value += e.value;
    out.stats += e.stats;
  }
  return out;
}

double expected_distinct(std::size_t n_qubits, std::uint64_t m) {
  if (m == 0) return 0.0;
  const double space = std::ldexp(1.0, static_cast<int>(n_qubits));
  // 2^N (1 - (1 - 2^-N)^m), written to stay accurate when 2^-N is tiny.
  return -space * std::expm1(static_cast<double>(m) * std::log1p(-1.0 / space));
}

}  // namespace mmvqe
