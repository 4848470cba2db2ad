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

#include "mmvqe/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mmvqe {

namespace {

std::size_t words_for(std::size_t n_qubits) { return (n_qubits + 63) / 64; }

void require_same_size(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("Pauli strings act on different qubit counts: " +
                                std::to_string(a.n_qubits()) + " vs " +
                                std::to_string(b.n_qubits()));
  }
}

}  // namespace

PauliString::PauliString(std::size_t n_qubits)
    : n_qubits_(n_qubits), x_(words_for(n_qubits), 0), z_(words_for(n_qubits), 0) {}

PauliString PauliString::parse(std::string_view text, std::size_t n_qubits) {
  if (text.size() != n_qubits) {
    throw std::invalid_argument("Pauli string '" + std::string(text) + "' has length " +
                                std::to_string(text.size()) + ", expected " +
                                std::to_string(n_qubits));
  }
  PauliString result(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) {
    switch (text[q]) {
      case 'I':
        break;
      case 'X':
        result.set_x(q, true);
        break;
      case 'Y':
        result.set_x(q, true);
        result.set_z(q, true);
        break;
      case 'Z':
        result.set_z(q, true);
        break;
      default:
        throw std::invalid_argument("illegal Pauli letter '" + std::string(1, text[q]) +
                                    "' at position " + std::to_string(q));
    }
  }
  return result;
}

void PauliString::set_x(std::size_t q, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (q & 63);
  if (v) {
    x_[q >> 6] |= mask;
  } else {
    x_[q >> 6] &= ~mask;
  }
}

void PauliString::set_z(std::size_t q, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (q & 63);
  if (v) {
    z_[q >> 6] |= mask;
  } else {
    z_[q >> 6] &= ~mask;
  }
}

char PauliString::factor(std::size_t q) const {
  static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  return kLetters[static_cast<int>(x(q)) | (static_cast<int>(z(q)) << 1)];
}

std::string PauliString::str() const {
  std::string out(n_qubits_, 'I');
  for (std::size_t q = 0; q < n_qubits_; ++q) {
    out[q] = factor(q);
  }
  return out;
}

bool PauliString::is_identity() const {
  for (std::size_t w = 0; w < x_.size(); ++w) {
    if (x_[w] | z_[w]) return false;
  }
  return true;
}

bool PauliString::is_diagonal() const {
  for (std::uint64_t w : x_) {
    if (w) return false;
  }
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(x_[w] | z_[w]));
  }
  return total;
}

PauliString& PauliString::operator*=(const PauliString& other) {
  require_same_size(*this, other);
  for (std::size_t w = 0; w < x_.size(); ++w) {
    x_[w] ^= other.x_[w];
    z_[w] ^= other.z_[w];
  }
  return *this;
}

PauliString parse_pauli(std::string_view text, std::size_t n_qubits) {
  return PauliString::parse(text, n_qubits);
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  const auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
  std::uint64_t parity = 0;
  for (std::size_t w = 0; w < ax.size(); ++w) {
    parity ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
  }
  return (std::popcount(parity) & 1) == 0;
}

bool qubit_wise_commutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  const auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
  for (std::size_t w = 0; w < ax.size(); ++w) {
    const std::uint64_t both = (ax[w] | az[w]) & (bx[w] | bz[w]);
    const std::uint64_t differ = (ax[w] ^ bx[w]) | (az[w] ^ bz[w]);
    if (both & differ) return false;
  }
  return true;
}

void Hamiltonian::add_term(PauliString op, double coeff) {
  if (op.n_qubits() != n_qubits_) {
    throw std::invalid_argument("term acts on " + std::to_string(op.n_qubits()) +
                                " qubits, Hamiltonian has " + std::to_string(n_qubits_));
  }
  if (!std::isfinite(coeff)) {
    throw std::invalid_argument("non-finite coefficient for term " + op.str());
  }
  if (auto it = index_.find(op); it != index_.end()) {
    const std::size_t pos = it->second;
    terms_[pos].coeff += coeff;
    if (terms_[pos].coeff == 0.0) {
      index_.erase(it);
      terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(pos));
      for (auto& [key, idx] : index_) {
        if (idx > pos) --idx;
      }
    }
    return;
  }
  if (coeff == 0.0) return;
  index_.emplace(op, terms_.size());
  terms_.push_back(PauliTerm{std::move(op), coeff});
}

double Hamiltonian::identity_coeff() const {
  for (const auto& t : terms_) {
    if (t.op.is_identity()) return t.coeff;
  }
  return 0.0;
}

BitString::BitString(std::size_t n_qubits, std::uint64_t bits)
    : n_qubits_(static_cast<std::uint32_t>(n_qubits)), bits_(bits) {
  if (n_qubits > kMaxQubits) {
    throw std::invalid_argument("bit strings are limited to 64 qubits, got " +
                                std::to_string(n_qubits));
  }
  if (n_qubits < kMaxQubits && (bits >> n_qubits) != 0) {
    throw std::invalid_argument("bits set beyond qubit count " + std::to_string(n_qubits));
  }
}

BitString BitString::parse(std::string_view text) {
  if (text.size() > kMaxQubits) {
    throw std::invalid_argument("bit strings are limited to 64 qubits");
  }
  std::uint64_t bits = 0;
  for (std::size_t q = 0; q < text.size(); ++q) {
    if (text[q] == '1') {
      bits |= std::uint64_t{1} << q;
    } else if (text[q] != '0') {
      throw std::invalid_argument("illegal bit '" + std::string(1, text[q]) + "'");
    }
  }
  return BitString(text.size(), bits);
}

std::string BitString::str() const {
  std::string out(n_qubits_, '0');
  for (std::size_t q = 0; q < n_qubits_; ++q) {
    if ((*this)[q]) out[q] = '1';
  }
  return out;
}

int z_string_eigenvalue(const PauliString& op, const BitString& b) {
  if (op.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("operator and bit string sizes differ");
  }
  if (!op.is_diagonal()) {
    throw std::invalid_argument("operator " + op.str() + " is not a Z-string");
  }
  if (op.n_qubits() == 0) return 1;
  return (std::popcount(op.z_words()[0] & b.bits()) & 1) ? -1 : 1;
}

}  // namespace mmvqe
