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

#include "mmvqe/vqe.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "mmvqe/cpu_clock.hpp"

namespace mmvqe {

namespace {

using Clock = ThreadCpuClock;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

Hamiltonian generate_ising(const IsingSpec& spec) {
  const std::size_t n = spec.n_qubits;
  if (n < 2) throw std::invalid_argument("Ising model needs at least 2 qubits");
  if (n > BitString::kMaxQubits) throw std::invalid_argument("Ising model limited to 64 qubits");
  std::mt19937_64 rng(spec.seed);
  auto draw = [&rng] {
    double c = 0.0;
    while (c == 0.0) c = 2.0 * uniform01(rng) - 1.0;
    return c;
  };

  Hamiltonian h(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      PauliString op(n);
      op.set_z(i, true);
      op.set_z(j, true);
      h.add_term(std::move(op), draw());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    PauliString op(n);
    op.set_z(i, true);
    h.add_term(std::move(op), draw());
  }
  return h;
}

std::size_t ShotSchedule::shots(std::size_t n_qubits) const {
  const double n = static_cast<double>(n_qubits);
  const double raw = scaling == ShotScaling::kQuadratic ? constant * n * n : constant * n;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(raw)));
}

void VqeConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (!(shots.constant > 0.0) || !std::isfinite(shots.constant)) {
    throw std::invalid_argument("shot constant must be positive");
  }
  if (ansatz.n_qubits < 1) throw std::invalid_argument("ansatz needs at least one qubit");
}

std::uint64_t evaluation_seed(std::uint64_t master, std::uint64_t iteration,
                              std::uint64_t evaluation, std::uint64_t group) {
  return mix(mix(mix(master, iteration), evaluation), group);
}

EnergyEstimator::EnergyEstimator(const GroupedHamiltonian& gh, const VqeConfig& cfg,
                                 std::vector<Scheme> schemes)
    : gh_(gh), cfg_(cfg), schemes_(std::move(schemes)) {
  cfg_.validate();
  if (schemes_.empty()) throw std::invalid_argument("at least one scheme is required");
  if (gh.n_qubits != cfg_.ansatz.n_qubits) {
    throw std::invalid_argument("ansatz has " + std::to_string(cfg_.ansatz.n_qubits) +
                                " qubits, Hamiltonian has " + std::to_string(gh.n_qubits));
  }
  for (Scheme s : schemes_) {
    if (s == Scheme::kMm) {
      memories_.emplace_back(std::in_place, gh.groups.size());
    } else {
      memories_.emplace_back(std::nullopt);
    }
  }
}

const MeasurementMemory* EnergyEstimator::memory(std::size_t i) const {
  return memories_.at(i) ? &*memories_[i] : nullptr;
}

EnergyEstimator::Result EnergyEstimator::evaluate(std::span<const double> params,
                                                  std::uint64_t iteration,
                                                  std::uint64_t evaluation) {
  ++evaluations_;
  Result result;
  result.per_scheme.resize(schemes_.size());
  const auto sim_start = Clock::now();
  const StateVector base = prepare_state(cfg_.ansatz, params);
  const std::size_t n_groups = gh_.groups.size();

  auto measured_state = [&](std::size_t k) {
    StateVector sv = base;
    apply_clifford(sv, gh_.groups[k].basis_circuit());
    return sv;
  };

  if (cfg_.exact) {
    std::vector<std::vector<WeightedOutcome>> probs(n_groups);
    for (std::size_t k = 0; k < n_groups; ++k) {
      probs[k] = gh_.groups[k].basis_circuit().gates.empty()
                     ? exact_probabilities(base)
                     : exact_probabilities(measured_state(k));
    }
    result.simulation_time = seconds_since(sim_start);
    for (auto& r : result.per_scheme) r = eval_hamiltonian_exact(gh_, probs);
    return result;
  }

  const std::size_t m = cfg_.shots.shots(gh_.n_qubits);
  std::vector<SampleSet> samples(n_groups);
  for (std::size_t k = 0; k < n_groups; ++k) {
    const std::uint64_t seed = evaluation_seed(cfg_.seed, iteration, evaluation, k);
    samples[k] = gh_.groups[k].basis_circuit().gates.empty()
                     ? sample(base, m, seed, k)
                     : sample(measured_state(k), m, seed, k);
  }
  result.simulation_time = seconds_since(sim_start);

  // Rotate which scheme runs first so none systematically gets warm caches.
  const std::size_t s_count = schemes_.size();
  for (std::size_t i = 0; i < s_count; ++i) {
    const std::size_t slot = (i + evaluation) % s_count;
    MeasurementMemory* mem = memories_[slot] ? &*memories_[slot] : nullptr;
    result.per_scheme[slot] = eval_hamiltonian(gh_, samples, mem, schemes_[slot]);
  }
  return result;
}

std::vector<double> parameter_shift_gradient(EnergyEstimator& est,
                                             std::span<const double> params,
                                             std::uint64_t iteration, EvaluationTally* tally) {
  constexpr double kShift = std::numbers::pi / 2;
  const std::size_t d = params.size();
  std::vector<double> grad(d, 0.0);
  std::vector<double> shifted(params.begin(), params.end());

  auto record = [&](const EnergyEstimator::Result& r) {
    if (!tally) return;
    tally->stats.resize(r.per_scheme.size());
    for (std::size_t s = 0; s < r.per_scheme.size(); ++s) tally->stats[s] += r.per_scheme[s].stats;
    tally->simulation_time += r.simulation_time;
    ++tally->evaluations;
  };

  for (std::size_t x = 0; x < d; ++x) {
    shifted[x] = params[x] + kShift;
    const auto plus = est.evaluate(shifted, iteration, 2 * x);
    shifted[x] = params[x] - kShift;
    const auto minus = est.evaluate(shifted, iteration, 2 * x + 1);
    shifted[x] = params[x];
    grad[x] = (plus.per_scheme[0].value - minus.per_scheme[0].value) / 2.0;
    record(plus);
    record(minus);
  }
  return grad;
}

std::vector<RunRecord> run_vqe_schemes(const VqeConfig& cfg, const GroupedHamiltonian& gh,
                                       std::vector<Scheme> schemes,
                                       std::span<const double> initial_params) {
  if (initial_params.size() != cfg.ansatz.n_params()) {
    throw std::invalid_argument("initial parameters have length " +
                                std::to_string(initial_params.size()) + ", ansatz needs " +
                                std::to_string(cfg.ansatz.n_params()));
  }
  EnergyEstimator est(gh, cfg, std::move(schemes));
  const std::size_t s_count = est.schemes().size();
  const std::size_t d = initial_params.size();

  std::vector<RunRecord> records(s_count);
  for (std::size_t s = 0; s < s_count; ++s) {
    records[s].scheme = est.schemes()[s];
    records[s].mode = gh.mode;
    records[s].n_qubits = gh.n_qubits;
    records[s].iterations.reserve(cfg.iterations);
  }

  std::vector<double> params(initial_params.begin(), initial_params.end());
  double sim_time = 0.0;
  std::vector<double> post_time(s_count, 0.0);

  for (std::size_t t = 0; t < cfg.iterations; ++t) {
    EvaluationTally tally;
    tally.stats.resize(s_count);
    const auto grad = parameter_shift_gradient(est, params, t, &tally);
    for (std::size_t x = 0; x < d; ++x) params[x] -= cfg.learning_rate * grad[x];

    const auto after = est.evaluate(params, t, 2 * d);
    tally.simulation_time += after.simulation_time;
    ++tally.evaluations;
    sim_time += tally.simulation_time;

    for (std::size_t s = 0; s < s_count; ++s) {
      tally.stats[s] += after.per_scheme[s].stats;
      post_time[s] += tally.stats[s].wall_time;
      const auto* mem = est.memory(s);
      records[s].iterations.push_back(IterationRecord{
          t, after.per_scheme[s].value, tally.evaluations, sim_time + post_time[s],
          post_time[s], tally.stats[s], mem ? mem->total_entries() : 0});
      records[s].totals += tally.stats[s];
    }
  }

  for (std::size_t s = 0; s < s_count; ++s) {
    auto& rec = records[s];
    rec.final_params = params;
    rec.final_energy = rec.iterations.back().energy;
    rec.postprocessing_time = post_time[s];
    rec.total_time = sim_time + post_time[s];
    const auto* mem = est.memory(s);
    if (mem && gh.groups.size() == 1 && !mem->group(0).empty()) {
      rec.best = best_measured_state(*mem, gh);
    }
  }
  return records;
}

RunRecord run_vqe(const VqeConfig& cfg, const Hamiltonian& h, GroupingMode mode,
                  std::span<const double> initial_params) {
  const GroupedHamiltonian gh = group_hamiltonian(h, mode);
  return std::move(run_vqe_schemes(cfg, gh, {cfg.scheme}, initial_params).front());
}

BestState best_measured_state(const MeasurementMemory& mem, const GroupedHamiltonian& gh) {
  if (gh.groups.size() != 1 || mem.num_groups() != 1) {
    throw std::invalid_argument(
        "best measured state is only defined for single-group Hamiltonians");
  }
  const auto& entries = mem.group(0).entries();
  if (entries.empty()) throw std::invalid_argument("measurement memory is empty");
  auto best = entries.begin();
  for (auto it = entries.begin(); it != entries.end(); ++it) {
    // Ties go to the smaller bit pattern so the answer is independent of
    // hash-table iteration order.
    if (it->second.value < best->second.value ||
        (it->second.value == best->second.value && it->first < best->first)) {
      best = it;
    }
  }
  return BestState{best->first, best->second.value + gh.constant};
}

std::vector<double> initial_guess(std::size_t n_params, std::uint64_t seed, std::size_t index) {
  std::mt19937_64 rng(mix(seed, index));
  std::vector<double> out(n_params);
  for (auto& v : out) v = std::numbers::pi * (2.0 * uniform01(rng) - 1.0);
  return out;
}

BenchTable benchmark_suite(const BenchConfig& cfg, const BenchProgress& progress) {
  if (cfg.schemes.empty()) throw std::invalid_argument("benchmark needs at least one scheme");
  if (cfg.repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  BenchTable table;
  table.baseline = cfg.baseline;
  const std::size_t s_count = cfg.schemes.size();

  for (std::size_t n : cfg.sizes) {
    const Hamiltonian h = generate_ising({n, mix(cfg.hamiltonian_seed, n)});
    const GroupedHamiltonian gh = group_hamiltonian(h, GroupingMode::kGeneral);

    std::vector<std::vector<double>> post(s_count), total(s_count), evals(s_count),
        energy(s_count);
    for (std::size_t r = 0; r < cfg.repetitions; ++r) {
      if (progress) progress(n, r);
      VqeConfig vc;
      vc.ansatz = AnsatzSpec{n};
      vc.iterations = cfg.iterations;
      vc.learning_rate = cfg.learning_rate;
      vc.shots = cfg.shots;
      vc.scheme = cfg.schemes.front();
      vc.seed = mix(mix(cfg.sample_seed, n), r);
      const auto guess = initial_guess(vc.ansatz.n_params(), cfg.guess_seed, r);
      const auto records = run_vqe_schemes(vc, gh, cfg.schemes, guess);
      for (std::size_t s = 0; s < s_count; ++s) {
        post[s].push_back(records[s].postprocessing_time);
        total[s].push_back(records[s].total_time);
        evals[s].push_back(static_cast<double>(records[s].totals.group_evals));
        energy[s].push_back(records[s].final_energy);
      }
    }

    double baseline_time = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t s = 0; s < s_count; ++s) {
      if (cfg.schemes[s] == cfg.baseline) baseline_time = mean(post[s]);
    }
    for (std::size_t s = 0; s < s_count; ++s) {
      BenchRow row;
      row.n_qubits = n;
      row.scheme = cfg.schemes[s];
      row.repetitions = cfg.repetitions;
      row.mean_postprocessing = mean(post[s]);
      row.std_postprocessing = stddev(post[s]);
      row.mean_total = mean(total[s]);
      row.std_total = stddev(total[s]);
      row.mean_group_evals = mean(evals[s]);
      row.mean_final_energy = mean(energy[s]);
      row.baseline_postprocessing = baseline_time;
      row.percentage_saved = (baseline_time - row.mean_postprocessing) / baseline_time;
      table.rows.push_back(row);
    }
  }
  return table;
}

}  // namespace mmvqe
