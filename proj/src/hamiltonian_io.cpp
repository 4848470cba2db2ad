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

#include "mmvqe/hamiltonian_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace mmvqe {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

DataError::DataError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

HamiltonianFile read_hamiltonian(std::istream& in) {
  HamiltonianFile file;
  std::optional<std::size_t> n_qubits;
  bool have_name = false;
  std::string line;
  std::size_t line_no = 0;
  bool in_terms = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tok = split_ws(line);
    if (tok.empty()) continue;

    if (tok[0] == "n_qubits" || tok[0] == "name") {
      if (in_terms) throw DataError("header key '" + tok[0] + "' after first term", line_no);
      if (tok.size() != 2) throw DataError("expected '" + tok[0] + " <value>'", line_no);
      if (tok[0] == "name") {
        file.name = tok[1];
        have_name = true;
        continue;
      }
      std::size_t n = 0;
      const auto [ptr, ec] = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), n);
      if (ec != std::errc() || ptr != tok[1].data() + tok[1].size()) {
        throw DataError("bad qubit count '" + tok[1] + "'", line_no);
      }
      n_qubits = n;
      file.hamiltonian = Hamiltonian(n);
      continue;
    }

    if (!n_qubits) throw DataError("term before 'n_qubits' header", line_no);
    if (!have_name) throw DataError("term before 'name' header", line_no);
    in_terms = true;
    if (tok.size() != 2) throw DataError("expected '<coeff> <pauli>'", line_no);
    double coeff = 0.0;
    try {
      std::size_t used = 0;
      coeff = std::stod(tok[0], &used);
      if (used != tok[0].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw DataError("bad coefficient '" + tok[0] + "'", line_no);
    }
    try {
      file.hamiltonian.add_term(PauliString::parse(tok[1], *n_qubits), coeff);
    } catch (const std::invalid_argument& e) {
      throw DataError(e.what(), line_no);
    }
  }
  if (!n_qubits) throw DataError("missing 'n_qubits' header");
  if (!have_name) throw DataError("missing 'name' header");
  return file;
}

HamiltonianFile load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return read_hamiltonian(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_hamiltonian(std::ostream& out, const HamiltonianFile& file) {
  out << "n_qubits " << file.hamiltonian.n_qubits() << '\n';
  out << "name " << (file.name.empty() ? "unnamed" : file.name) << '\n';
  for (const auto& t : file.hamiltonian.terms()) {
    out << format_real(t.coeff) << ' ' << t.op.str() << '\n';
  }
}

void save_hamiltonian(const std::filesystem::path& path, const HamiltonianFile& file) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_hamiltonian(out, file);
  if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace mmvqe
