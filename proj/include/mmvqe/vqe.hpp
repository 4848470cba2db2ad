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

#ifndef MMVQE_VQE_HPP
#define MMVQE_VQE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mmvqe/evaluator.hpp"
#include "mmvqe/grouping.hpp"
#include "mmvqe/pauli.hpp"
#include "mmvqe/state_sim.hpp"

namespace mmvqe {

struct IsingSpec {
  std::size_t n_qubits = 0;
  std::uint64_t seed = 0;
};

/// Fully connected Ising model: every Z_i Z_j (i < j) followed by every Z_i,
/// coefficients uniform on [-1, 1] and never zero. Throws for N < 2.
Hamiltonian generate_ising(const IsingSpec& spec);

enum class ShotScaling { kQuadratic, kLinear };

/// Shots per group per evaluation: ceil(c N^2) or ceil(c N).
struct ShotSchedule {
  ShotScaling scaling = ShotScaling::kQuadratic;
  double constant = 25.0;

  static ShotSchedule ising(double c = 25.0) { return {ShotScaling::kQuadratic, c}; }
  static ShotSchedule molecular(double c = 100.0) { return {ShotScaling::kLinear, c}; }
  std::size_t shots(std::size_t n_qubits) const;
};

struct VqeConfig {
  AnsatzSpec ansatz;
  std::size_t iterations = 200;
  double learning_rate = 0.05;
  ShotSchedule shots;
  Scheme scheme = Scheme::kMm;
  std::uint64_t seed = 0;
  /// Use exact outcome probabilities instead of sampled shots.
  bool exact = false;

  /// Throws std::invalid_argument for a config that cannot run.
  void validate() const;
};

/// Seed for the shots of one group in one evaluation.
std::uint64_t evaluation_seed(std::uint64_t master, std::uint64_t iteration,
                              std::uint64_t evaluation, std::uint64_t group);

/// Prepares states, draws shots and evaluates them with one or more schemes.
///
/// Every scheme sees the same shots. Each mm scheme owns a memory that lives
/// as long as the estimator, so it persists over all evaluations of a run.
class EnergyEstimator {
 public:
  EnergyEstimator(const GroupedHamiltonian& gh, const VqeConfig& cfg,
                  std::vector<Scheme> schemes);
  EnergyEstimator(const GroupedHamiltonian& gh, const VqeConfig& cfg)
      : EnergyEstimator(gh, cfg, {cfg.scheme}) {}

  struct Result {
    std::vector<HamiltonianExpectation> per_scheme;  // parallel to schemes()
    double simulation_time = 0.0;                     // state prep and sampling
  };

  Result evaluate(std::span<const double> params, std::uint64_t iteration,
                  std::uint64_t evaluation);

  const std::vector<Scheme>& schemes() const { return schemes_; }
  const GroupedHamiltonian& grouped() const { return gh_; }
  /// Memory of scheme slot `i`, or nullptr when that scheme keeps none.
  const MeasurementMemory* memory(std::size_t i) const;
  std::size_t evaluations() const { return evaluations_; }

 private:
  const GroupedHamiltonian& gh_;
  VqeConfig cfg_;
  std::vector<Scheme> schemes_;
  std::vector<std::optional<MeasurementMemory>> memories_;
  std::size_t evaluations_ = 0;
};

/// Per-scheme accumulators filled by parameter_shift_gradient.
struct EvaluationTally {
  std::vector<EvalStats> stats;  // parallel to the estimator's schemes
  double simulation_time = 0.0;
  std::size_t evaluations = 0;
};

/// d/dtheta_x f = [f(theta + pi/2 e_x) - f(theta - pi/2 e_x)] / 2, with
/// evaluations 2x and 2x+1 of `iteration`. Uses the first scheme's values.
std::vector<double> parameter_shift_gradient(EnergyEstimator& est,
                                             std::span<const double> params,
                                             std::uint64_t iteration,
                                             EvaluationTally* tally = nullptr);

struct BestState {
  BitString bits;
  double value = 0.0;
};

struct IterationRecord {
  std::size_t iteration = 0;
  double energy = 0.0;
  std::size_t evaluations = 0;
  double wall_time_total = 0.0;           // cumulative seconds
  double wall_time_postprocessing = 0.0;  // cumulative seconds
  EvalStats stats;                        // this iteration only
  std::size_t memory_size = 0;
};

struct RunRecord {
  Scheme scheme = Scheme::kMm;
  GroupingMode mode = GroupingMode::kQubitWise;
  std::size_t n_qubits = 0;
  std::vector<IterationRecord> iterations;
  std::vector<double> final_params;
  double final_energy = 0.0;
  std::optional<BestState> best;  // mm runs on single-group Hamiltonians
  double total_time = 0.0;
  double postprocessing_time = 0.0;
  EvalStats totals;
};

/// Gradient descent for cfg.iterations steps: gradient at theta, update
/// theta -= eta * grad, then evaluate f(theta), giving 2d + 1 evaluations
/// per iteration.
RunRecord run_vqe(const VqeConfig& cfg, const Hamiltonian& h, GroupingMode mode,
                  std::span<const double> initial_params);

/// One optimization trajectory (driven by schemes[0]) with every scheme
/// evaluating the same shots. Returns one record per scheme; timings are
/// per scheme post-processing plus the shared simulation time.
std::vector<RunRecord> run_vqe_schemes(const VqeConfig& cfg, const GroupedHamiltonian& gh,
                                       std::vector<Scheme> schemes,
                                       std::span<const double> initial_params);

/// Minimum entry of the single group's memory, with the constant offset
/// added so the value is <b|H|b>. Throws for an empty memory or a
/// Hamiltonian with more than one group.
BestState best_measured_state(const MeasurementMemory& mem, const GroupedHamiltonian& gh);

/// Parameters uniform on [-pi, pi]; guesses with the same (seed, index)
/// share a prefix across sizes.
std::vector<double> initial_guess(std::size_t n_params, std::uint64_t seed, std::size_t index);

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::vector<Scheme> schemes{Scheme::kSorted, Scheme::kMm};
  std::size_t repetitions = 10;
  std::size_t iterations = 200;
  double learning_rate = 0.05;
  ShotSchedule shots = ShotSchedule::ising();
  std::uint64_t hamiltonian_seed = 1;
  std::uint64_t guess_seed = 2;
  std::uint64_t sample_seed = 3;
  Scheme baseline = Scheme::kSorted;
};

struct BenchRow {
  std::size_t n_qubits = 0;
  Scheme scheme = Scheme::kMm;
  std::size_t repetitions = 0;
  double mean_postprocessing = 0.0;
  double std_postprocessing = 0.0;
  double mean_total = 0.0;
  double std_total = 0.0;
  double mean_group_evals = 0.0;
  double mean_final_energy = 0.0;
  double baseline_postprocessing = 0.0;  // NaN when the baseline was not run
  double percentage_saved = 0.0;         // (t_baseline - t) / t_baseline
};

struct BenchTable {
  Scheme baseline = Scheme::kSorted;
  std::vector<BenchRow> rows;
};

using BenchProgress = std::function<void(std::size_t n_qubits, std::size_t repetition)>;

/// Ising benchmark: for each size one fixed Hamiltonian, for each
/// repetition one fixed initial guess, all schemes fed the same shots.
BenchTable benchmark_suite(const BenchConfig& cfg, const BenchProgress& progress = {});

}  // namespace mmvqe

#endif  // MMVQE_VQE_HPP
