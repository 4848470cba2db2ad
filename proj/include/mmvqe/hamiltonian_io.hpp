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

#ifndef MMVQE_HAMILTONIAN_IO_HPP
#define MMVQE_HAMILTONIAN_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "mmvqe/pauli.hpp"

namespace mmvqe {

/// Malformed input; `line()` is 1-based, 0 when not tied to a line.
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Hamiltonian text format:
///
///   # comment
///   n_qubits 4
///   name h2
///   -0.098863969335458296 IIII
///   0.17120128499424654 ZIII
///
/// Both header keys come before the first term. Each term line is a
/// decimal coefficient and a Pauli string (qubit 0 first). Repeated
/// strings are summed and exact-zero sums dropped.
struct HamiltonianFile {
  std::string name;
  Hamiltonian hamiltonian;
};

HamiltonianFile read_hamiltonian(std::istream& in);
HamiltonianFile load_hamiltonian(const std::filesystem::path& path);

void write_hamiltonian(std::ostream& out, const HamiltonianFile& file);
void save_hamiltonian(const std::filesystem::path& path, const HamiltonianFile& file);

/// 17 significant digits, enough for an exact double round trip.
std::string format_real(double value);

}  // namespace mmvqe

#endif  // MMVQE_HAMILTONIAN_IO_HPP
