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

#ifndef MMVQE_STATE_SIM_HPP
#define MMVQE_STATE_SIM_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "mmvqe/grouping.hpp"
#include "mmvqe/pauli.hpp"

namespace mmvqe {

/// Dense statevector. Amplitude index bit q is qubit q.
class StateVector {
 public:
  static constexpr std::size_t kMaxQubits = 24;

  /// |0...0> on `n_qubits` qubits; throws above kMaxQubits.
  explicit StateVector(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }
  std::span<std::complex<double>> amplitudes() { return amps_; }
  double norm_squared() const;

  void apply_ry(std::size_t q, double angle);
  void apply_rz(std::size_t q, double angle);
  void apply_h(std::size_t q);
  void apply_s(std::size_t q);
  void apply_sdg(std::size_t q);
  void apply_cnot(std::size_t control, std::size_t target);
  void apply_cz(std::size_t a, std::size_t b);

 private:
  void check_qubit(std::size_t q) const;

  std::size_t n_qubits_;
  std::vector<std::complex<double>> amps_;
};

/// RY layer, CNOT chain q -> q+1, RY layer. Parameters are ordered
/// first layer (qubit 0..N-1) then second layer.
struct AnsatzSpec {
  std::size_t n_qubits = 0;
  std::size_t n_params() const { return 2 * n_qubits; }
};

/// Throws std::invalid_argument if params.size() != ansatz.n_params().
StateVector prepare_state(const AnsatzSpec& ansatz, std::span<const double> params);

/// Applies the gates in order. Throws std::invalid_argument on a qubit
/// count mismatch or out-of-range index.
void apply_clifford(StateVector& sv, const CliffordCircuit& circuit);

struct SampleSet {
  std::vector<BitString> shots;
  std::size_t group_index = 0;
  std::uint64_t seed = 0;
};

/// `m` independent computational-basis measurements, inverse-CDF with one
/// binary search per shot. Deterministic in `seed`.
SampleSet sample(const StateVector& sv, std::size_t m, std::uint64_t seed,
                 std::size_t group_index = 0);

struct WeightedOutcome {
  BitString bits;
  double probability;
};

/// |amp_b|^2 for each basis state with nonzero probability, in index order.
std::vector<WeightedOutcome> exact_probabilities(const StateVector& sv);

}  // namespace mmvqe

#endif  // MMVQE_STATE_SIM_HPP
