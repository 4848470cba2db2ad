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

#include "mmvqe/grouping.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace mmvqe {

std::string_view to_string(GroupingMode mode) {
  return mode == GroupingMode::kQubitWise ? "qwc" : "gc";
}

GroupingMode parse_grouping_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "qwc") return GroupingMode::kQubitWise;
  if (lower == "gc") return GroupingMode::kGeneral;
  throw std::invalid_argument("unknown grouping mode '" + std::string(text) +
                              "' (expected qwc or gc)");
}

bool CliffordCircuit::single_qubit_only() const {
  return std::none_of(gates.begin(), gates.end(),
                      [](const CliffordGate& g) { return g.is_two_qubit(); });
}

std::string CliffordCircuit::str() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& g : gates) {
    if (!first) out << ' ';
    first = false;
    switch (g.kind) {
      case CliffordGate::Kind::kH:
        out << "H(" << g.q0 << ')';
        break;
      case CliffordGate::Kind::kS:
        out << "S(" << g.q0 << ')';
        break;
      case CliffordGate::Kind::kSdg:
        out << "SDG(" << g.q0 << ')';
        break;
      case CliffordGate::Kind::kCnot:
        out << "CNOT(" << g.q0 << ',' << g.q1 << ')';
        break;
      case CliffordGate::Kind::kCz:
        out << "CZ(" << g.q0 << ',' << g.q1 << ')';
        break;
    }
  }
  return out.str();
}

namespace {

// Each helper maps op -> g op g^dagger and returns true when the image
// picks up a factor of -1.
bool conj_h(PauliString& p, std::size_t q) {
  const bool x = p.x(q), z = p.z(q);
  p.set_x(q, z);
  p.set_z(q, x);
  return x && z;
}

bool conj_s(PauliString& p, std::size_t q) {
  const bool x = p.x(q), z = p.z(q);
  p.set_z(q, z != x);
  return x && z;
}

bool conj_sdg(PauliString& p, std::size_t q) {
  const bool x = p.x(q), z = p.z(q);
  p.set_z(q, z != x);
  return x && !z;
}

bool conj_cnot(PauliString& p, std::size_t c, std::size_t t) {
  const bool xc = p.x(c), zc = p.z(c), xt = p.x(t), zt = p.z(t);
  p.set_x(t, xt != xc);
  p.set_z(c, zc != zt);
  return xc && zt && (xt == zc);
}

bool conj_gate(PauliString& p, const CliffordGate& g) {
  switch (g.kind) {
    case CliffordGate::Kind::kH:
      return conj_h(p, g.q0);
    case CliffordGate::Kind::kS:
      return conj_s(p, g.q0);
    case CliffordGate::Kind::kSdg:
      return conj_sdg(p, g.q0);
    case CliffordGate::Kind::kCnot:
      return conj_cnot(p, g.q0, g.q1);
    case CliffordGate::Kind::kCz: {
      // CZ = H_b CNOT_ab H_b
      bool flip = conj_h(p, g.q1);
      flip ^= conj_cnot(p, g.q0, g.q1);
      flip ^= conj_h(p, g.q1);
      return flip;
    }
  }
  return false;
}

void check_gate(const CliffordGate& g, std::size_t n_qubits) {
  if (g.q0 >= n_qubits || (g.is_two_qubit() && (g.q1 >= n_qubits || g.q1 == g.q0))) {
    throw std::invalid_argument("gate qubit index out of range");
  }
}

void require_commuting(std::span<const PauliTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (!commutes(terms[i].op, terms[j].op)) {
        throw NonCommutingError(i, j,
                                "terms " + std::to_string(i) + " (" + terms[i].op.str() +
                                    ") and " + std::to_string(j) + " (" +
                                    terms[j].op.str() + ") do not commute");
      }
    }
  }
}

bool all_qubit_wise(std::span<const PauliTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (!qubit_wise_commutes(terms[i].op, terms[j].op)) return false;
    }
  }
  return true;
}

CliffordCircuit single_qubit_basis(std::span<const PauliTerm> terms, std::size_t n_qubits) {
  CliffordCircuit circuit{n_qubits, {}};
  for (std::size_t q = 0; q < n_qubits; ++q) {
    char letter = 'I';
    for (const auto& t : terms) {
      const char f = t.op.factor(q);
      if (f != 'I') {
        letter = f;
        break;
      }
    }
    const auto qq = static_cast<std::uint32_t>(q);
    if (letter == 'X') {
      circuit.gates.push_back({CliffordGate::Kind::kH, qq});
    } else if (letter == 'Y') {
      circuit.gates.push_back({CliffordGate::Kind::kSdg, qq});
      circuit.gates.push_back({CliffordGate::Kind::kH, qq});
    }
  }
  return circuit;
}

// Symplectic Gaussian elimination over the generators of the group.
// Pivots are chosen lowest qubit first, searching the X block before the
// Z block.
class TableauReducer {
 public:
  TableauReducer(std::span<const PauliTerm> terms, std::size_t n_qubits)
      : circuit_{n_qubits, {}} {
    for (const auto& t : terms) rows_.push_back(t.op);
  }

  CliffordCircuit run() {
    const std::size_t n = circuit_.n_qubits;
    std::vector<bool> is_pivot_col(n, false);

    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (const auto& [row, col] : pivots_) {
        if (rows_[i].x(col)) rows_[i] *= rows_[row];
      }
      std::size_t col = n;
      for (std::size_t q = 0; q < n; ++q) {
        if (rows_[i].x(q)) {
          col = q;
          break;
        }
      }
      if (col == n) {
        for (std::size_t q = 0; q < n; ++q) {
          if (rows_[i].z(q) && !is_pivot_col[q]) {
            col = q;
            break;
          }
        }
        if (col == n) {
          if (!rows_[i].is_identity()) {
            throw std::logic_error("tableau elimination met a non-commuting row");
          }
          continue;  // dependent on earlier generators
        }
        apply({CliffordGate::Kind::kH, static_cast<std::uint32_t>(col)});
      }
      for (std::size_t j = 0; j < rows_.size(); ++j) {
        if (j != i && rows_[j].x(col)) rows_[j] *= rows_[i];
      }
      pivots_.emplace_back(i, col);
      is_pivot_col[col] = true;
    }

    // Clear X outside the pivot columns.
    for (const auto& [row, col] : pivots_) {
      for (std::size_t q = 0; q < n; ++q) {
        if (!is_pivot_col[q] && rows_[row].x(q)) {
          apply({CliffordGate::Kind::kCnot, static_cast<std::uint32_t>(col),
                 static_cast<std::uint32_t>(q)});
        }
      }
    }
    // Clear Z outside the pivot columns.
    for (const auto& [row, col] : pivots_) {
      for (std::size_t q = 0; q < n; ++q) {
        if (!is_pivot_col[q] && rows_[row].z(q)) {
          apply({CliffordGate::Kind::kCz, static_cast<std::uint32_t>(col),
                 static_cast<std::uint32_t>(q)});
        }
      }
    }
    // The Z block on pivot columns is symmetric; clear its off-diagonal part.
    for (std::size_t a = 0; a < pivots_.size(); ++a) {
      for (std::size_t b = a + 1; b < pivots_.size(); ++b) {
        if (rows_[pivots_[a].first].z(pivots_[b].second)) {
          apply({CliffordGate::Kind::kCz, static_cast<std::uint32_t>(pivots_[a].second),
                 static_cast<std::uint32_t>(pivots_[b].second)});
        }
      }
    }
    for (const auto& [row, col] : pivots_) {
      if (rows_[row].z(col)) apply({CliffordGate::Kind::kSdg, static_cast<std::uint32_t>(col)});
    }
    for (const auto& [row, col] : pivots_) {
      apply({CliffordGate::Kind::kH, static_cast<std::uint32_t>(col)});
    }
    return circuit_;
  }

 private:
  void apply(const CliffordGate& g) {
    circuit_.gates.push_back(g);
    for (auto& r : rows_) conj_gate(r, g);
  }

  CliffordCircuit circuit_;
  std::vector<PauliString> rows_;
  std::vector<std::pair<std::size_t, std::size_t>> pivots_;
};

}  // namespace

std::pair<PauliString, int> conjugate(const PauliString& op, const CliffordCircuit& circuit) {
  if (op.n_qubits() != circuit.n_qubits) {
    throw std::invalid_argument("circuit and operator qubit counts differ");
  }
  PauliString image = op;
  bool flip = false;
  for (const auto& g : circuit.gates) {
    check_gate(g, circuit.n_qubits);
    flip ^= conj_gate(image, g);
  }
  return {std::move(image), flip ? -1 : 1};
}

std::pair<CliffordCircuit, std::vector<PauliTerm>> diagonalize_group(
    std::span<const PauliTerm> terms) {
  if (terms.empty()) return {CliffordCircuit{}, {}};
  const std::size_t n = terms.front().op.n_qubits();
  for (const auto& t : terms) {
    if (t.op.n_qubits() != n) throw std::invalid_argument("group terms differ in qubit count");
  }
  require_commuting(terms);

  CliffordCircuit circuit =
      all_qubit_wise(terms) ? single_qubit_basis(terms, n) : TableauReducer(terms, n).run();

  std::vector<PauliTerm> diagonal;
  diagonal.reserve(terms.size());
  for (const auto& t : terms) {
    auto [image, sign] = conjugate(t.op, circuit);
    if (!image.is_diagonal()) {
      throw std::logic_error("basis circuit failed to diagonalize " + t.op.str());
    }
    diagonal.push_back(PauliTerm{std::move(image), sign * t.coeff});
  }
  return {std::move(circuit), std::move(diagonal)};
}

CommutingGroup::CommutingGroup(std::vector<PauliTerm> terms, CliffordCircuit basis_circuit,
                               std::vector<PauliTerm> diagonal_terms)
    : terms_(std::move(terms)),
      basis_circuit_(std::move(basis_circuit)),
      diagonal_terms_(std::move(diagonal_terms)) {
  if (!diagonal_terms_.empty() && diagonal_terms_.size() != terms_.size()) {
    throw std::invalid_argument("diagonal terms must parallel the group terms");
  }
  if (basis_circuit_.n_qubits == 0 && !terms_.empty()) {
    basis_circuit_.n_qubits = terms_.front().op.n_qubits();
  }
  if (basis_circuit_.n_qubits > BitString::kMaxQubits) return;
  for (const auto& t : diagonal_terms_) {
    if (!t.op.is_diagonal()) {
      throw std::invalid_argument("diagonal term " + t.op.str() + " has X or Y factors");
    }
    z_masks_.push_back(t.op.num_words() ? t.op.z_words()[0] : 0);
    coeffs_.push_back(t.coeff);
  }
}

CommutingGroup CommutingGroup::from_terms(std::vector<PauliTerm> terms) {
  auto [circuit, diagonal] = diagonalize_group(terms);
  return CommutingGroup(std::move(terms), std::move(circuit), std::move(diagonal));
}

std::size_t GroupedHamiltonian::num_terms() const {
  std::size_t total = 0;
  for (const auto& g : groups) total += g.size();
  return total;
}

bool compatible(const PauliString& a, const PauliString& b, GroupingMode mode) {
  return mode == GroupingMode::kQubitWise ? qubit_wise_commutes(a, b) : commutes(a, b);
}

GroupedHamiltonian group_hamiltonian(const Hamiltonian& h, GroupingMode mode) {
  if (h.empty()) throw std::invalid_argument("cannot group an empty Hamiltonian");
  GroupedHamiltonian result;
  result.n_qubits = h.n_qubits();
  result.mode = mode;

  const auto& terms = h.terms();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].op.is_identity()) {
      result.constant += terms[i].coeff;
    } else {
      order.push_back(i);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(terms[a].coeff) > std::abs(terms[b].coeff);
  });

  std::vector<std::vector<std::size_t>> members;
  for (std::size_t idx : order) {
    bool placed = false;
    for (auto& group : members) {
      const bool fits = std::all_of(group.begin(), group.end(), [&](std::size_t other) {
        return compatible(terms[idx].op, terms[other].op, mode);
      });
      if (fits) {
        group.push_back(idx);
        placed = true;
        break;
      }
    }
    if (!placed) members.push_back({idx});
  }

  result.groups.reserve(members.size());
  for (const auto& group : members) {
    std::vector<PauliTerm> group_terms;
    group_terms.reserve(group.size());
    for (std::size_t idx : group) group_terms.push_back(terms[idx]);
    result.groups.push_back(CommutingGroup::from_terms(std::move(group_terms)));
  }
  return result;
}

bool validate_grouping(const GroupedHamiltonian& gh, const Hamiltonian& source) {
  if (gh.n_qubits != source.n_qubits()) return false;
  std::map<PauliString, double> expected;
  for (const auto& t : source.terms()) {
    if (!t.op.is_identity()) expected.emplace(t.op, t.coeff);
  }
  if (gh.constant != source.identity_coeff()) return false;

  std::size_t seen = 0;
  for (const auto& group : gh.groups) {
    if (group.terms().empty() || !group.diagonalized()) return false;
    const auto& members = group.terms();
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (members[i].op.n_qubits() != gh.n_qubits) return false;
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (!compatible(members[i].op, members[j].op, gh.mode)) return false;
      }
      auto it = expected.find(members[i].op);
      if (it == expected.end() || it->second != members[i].coeff) return false;
      expected.erase(it);  // a second occurrence would now fail the lookup
      ++seen;

      auto [image, sign] = conjugate(members[i].op, group.basis_circuit());
      const auto& diag = group.diagonal_terms()[i];
      if (!image.is_diagonal() || image != diag.op || sign * members[i].coeff != diag.coeff) {
        return false;
      }
    }
    if (gh.mode == GroupingMode::kQubitWise && !group.basis_circuit().single_qubit_only()) {
      return false;
    }
  }
  return expected.empty() && seen + (source.identity_coeff() != 0.0) == source.size();
}

}  // namespace mmvqe
