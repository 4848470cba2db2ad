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

#ifndef MMVQE_GROUPING_HPP
#define MMVQE_GROUPING_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmvqe/pauli.hpp"

namespace mmvqe {

enum class GroupingMode { kQubitWise, kGeneral };

std::string_view to_string(GroupingMode mode);
/// Accepts "qwc" / "gc" (case-insensitive).
GroupingMode parse_grouping_mode(std::string_view text);

struct CliffordGate {
  enum class Kind : std::uint8_t { kH, kS, kSdg, kCnot, kCz };
  Kind kind;
  std::uint32_t q0;
  std::uint32_t q1 = 0;  // target / second qubit for two-qubit gates

  bool is_two_qubit() const { return kind == Kind::kCnot || kind == Kind::kCz; }
  friend bool operator==(const CliffordGate&, const CliffordGate&) = default;
};

/// Gates in the order they act on the state.
struct CliffordCircuit {
  std::size_t n_qubits = 0;
  std::vector<CliffordGate> gates;

  bool single_qubit_only() const;
  std::string str() const;
  friend bool operator==(const CliffordCircuit&, const CliffordCircuit&) = default;
};

/// Heisenberg image of `op` under `circuit`: U op U^dagger = sign * result.
/// Returns the image with its sign (+1 or -1).
std::pair<PauliString, int> conjugate(const PauliString& op, const CliffordCircuit& circuit);

class NonCommutingError : public std::invalid_argument {
 public:
  NonCommutingError(std::size_t first, std::size_t second, const std::string& what)
      : std::invalid_argument(what), first_(first), second_(second) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/// Basis change U and the Z-string images of `terms`, with the conjugation
/// signs multiplied into the coefficients.
///
/// Pairwise qubit-wise commuting inputs get one rotation per qubit. Other
/// inputs go through symplectic Gaussian elimination and may produce CNOT
/// and CZ gates. Throws NonCommutingError naming the first offending pair.
std::pair<CliffordCircuit, std::vector<PauliTerm>> diagonalize_group(
    std::span<const PauliTerm> terms);

/// One simultaneously measurable block G_k of a Hamiltonian.
class CommutingGroup {
 public:
  CommutingGroup() = default;
  CommutingGroup(std::vector<PauliTerm> terms, CliffordCircuit basis_circuit,
                 std::vector<PauliTerm> diagonal_terms);

  /// Diagonalizes `terms` and builds the group.
  static CommutingGroup from_terms(std::vector<PauliTerm> terms);

  std::size_t n_qubits() const { return basis_circuit_.n_qubits; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  const CliffordCircuit& basis_circuit() const { return basis_circuit_; }
  const std::vector<PauliTerm>& diagonal_terms() const { return diagonal_terms_; }
  bool diagonalized() const { return !diagonal_terms_.empty() || terms_.empty(); }

  /// Packed z masks of the diagonal terms, parallel to diagonal_coeffs().
  std::span<const std::uint64_t> z_masks() const { return z_masks_; }
  std::span<const double> diagonal_coeffs() const { return coeffs_; }

 private:
  std::vector<PauliTerm> terms_;
  CliffordCircuit basis_circuit_;
  std::vector<PauliTerm> diagonal_terms_;
  std::vector<std::uint64_t> z_masks_;
  std::vector<double> coeffs_;
};

struct GroupedHamiltonian {
  std::size_t n_qubits = 0;
  GroupingMode mode = GroupingMode::kQubitWise;
  std::vector<CommutingGroup> groups;
  /// Coefficient of the stripped identity term.
  double constant = 0.0;

  std::size_t num_terms() const;
};

/// First-fit greedy coloring in descending |coeff| order (ties by index).
/// The identity term is moved into `constant`. Throws for an empty
/// Hamiltonian.
GroupedHamiltonian group_hamiltonian(const Hamiltonian& h, GroupingMode mode);

/// True iff every intra-group pair satisfies the mode's relation, every
/// group is diagonalized, and the groups partition `source` (identity term
/// accounted for by `constant`).
bool validate_grouping(const GroupedHamiltonian& gh, const Hamiltonian& source);

bool compatible(const PauliString& a, const PauliString& b, GroupingMode mode);

}  // namespace mmvqe

#endif  // MMVQE_GROUPING_HPP
