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

#ifndef MMVQE_PAULI_HPP
#define MMVQE_PAULI_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mmvqe {

/// Tensor product of single-qubit Paulis in symplectic form.
///
/// Qubit q is bit (q % 64) of word (q / 64) in both the x and z vectors.
/// X sets x, Z sets z, Y sets both. The text form lists qubit 0 first.
/// No phase is stored: a string always denotes the Hermitian operator
/// whose factors are the letters of its text form.
class PauliString {
 public:
  PauliString() = default;

  /// Identity on `n_qubits` qubits.
  explicit PauliString(std::size_t n_qubits);

  /// Throws std::invalid_argument on length mismatch or a letter outside IXYZ.
  static PauliString parse(std::string_view text, std::size_t n_qubits);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t num_words() const { return x_.size(); }

  bool x(std::size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
  bool z(std::size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }
  void set_x(std::size_t q, bool v);
  void set_z(std::size_t q, bool v);

  /// 'I', 'X', 'Y' or 'Z'.
  char factor(std::size_t q) const;
  std::string str() const;

  bool is_identity() const;
  /// True when every factor is I or Z.
  bool is_diagonal() const;
  /// Number of non-identity factors.
  std::size_t weight() const;

  std::span<const std::uint64_t> x_words() const { return x_; }
  std::span<const std::uint64_t> z_words() const { return z_; }

  /// In-place product of the bit vectors (phase discarded).
  PauliString& operator*=(const PauliString& other);

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend std::strong_ordering operator<=>(const PauliString&,
                                          const PauliString&) = default;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

PauliString parse_pauli(std::string_view text, std::size_t n_qubits);

/// General commutation: the symplectic product <a.x,b.z> + <a.z,b.x> is even.
bool commutes(const PauliString& a, const PauliString& b);

/// Per-qubit factors are equal or at least one of them is the identity.
bool qubit_wise_commutes(const PauliString& a, const PauliString& b);

struct PauliTerm {
  PauliString op;
  double coeff = 0.0;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// Weighted sum of distinct Pauli strings on a fixed number of qubits.
///
/// Terms keep insertion order. Adding a string that is already present
/// merges the coefficients, and a term whose coefficient becomes exactly
/// zero is removed.
class Hamiltonian {
 public:
  Hamiltonian() = default;
  explicit Hamiltonian(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  /// Throws std::invalid_argument for a qubit-count mismatch or a
  /// non-finite coefficient.
  void add_term(PauliString op, double coeff);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  /// Coefficient of the all-identity term, or 0.
  double identity_coeff() const;

  friend bool operator==(const Hamiltonian& a, const Hamiltonian& b) {
    return a.n_qubits_ == b.n_qubits_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
  std::map<PauliString, std::size_t> index_;
};

/// Measured computational-basis outcome; bit q is the outcome of qubit q.
///
/// Packed into one machine word, so at most 64 qubits.
class BitString {
 public:
  static constexpr std::size_t kMaxQubits = 64;

  BitString() = default;
  BitString(std::size_t n_qubits, std::uint64_t bits);

  /// Parses "0110..." with qubit 0 first.
  static BitString parse(std::string_view text);

  std::size_t n_qubits() const { return n_qubits_; }
  std::uint64_t bits() const { return bits_; }
  bool operator[](std::size_t q) const { return (bits_ >> q) & 1; }
  std::string str() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString&,
                                          const BitString&) = default;

 private:
  std::uint32_t n_qubits_ = 0;
  std::uint64_t bits_ = 0;
};

/// (-1)^popcount(op.z AND b) for a diagonal (I/Z only) operator.
/// Throws std::invalid_argument if op has an X or Y factor or the qubit
/// counts differ.
int z_string_eigenvalue(const PauliString& op, const BitString& b);

}  // namespace mmvqe

template <>
struct std::hash<mmvqe::BitString> {
  std::size_t operator()(const mmvqe::BitString& b) const noexcept {
    // splitmix64 finalizer
    std::uint64_t h = b.bits() + 0x9e3779b97f4a7c15ULL * (b.n_qubits() + 1);
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

#endif  // MMVQE_PAULI_HPP
