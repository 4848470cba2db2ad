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

#include "mmvqe/state_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace mmvqe {

namespace {

using cplx = std::complex<double>;

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Visits (i0, i1) index pairs differing only in bit q, i0 having the bit clear.
template <typename F>
void for_each_pair(std::size_t dim, std::size_t q, F&& f) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      f(i, i + stride);
    }
  }
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits > kMaxQubits) {
    throw std::invalid_argument("statevector limited to " + std::to_string(kMaxQubits) +
                                " qubits, got " + std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

void StateVector::check_qubit(std::size_t q) const {
  if (q >= n_qubits_) {
    throw std::invalid_argument("qubit " + std::to_string(q) + " out of range for " +
                                std::to_string(n_qubits_) + "-qubit state");
  }
}

void StateVector::apply_ry(std::size_t q, double angle) {
  check_qubit(q);
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
    const cplx a0 = amps_[i0], a1 = amps_[i1];
    amps_[i0] = c * a0 - s * a1;
    amps_[i1] = s * a0 + c * a1;
  });
}

void StateVector::apply_rz(std::size_t q, double angle) {
  check_qubit(q);
  const cplx p0 = std::polar(1.0, -angle / 2), p1 = std::polar(1.0, angle / 2);
  for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
    amps_[i0] *= p0;
    amps_[i1] *= p1;
  });
}

void StateVector::apply_h(std::size_t q) {
  check_qubit(q);
  for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
    const cplx a0 = amps_[i0], a1 = amps_[i1];
    amps_[i0] = kInvSqrt2 * (a0 + a1);
    amps_[i1] = kInvSqrt2 * (a0 - a1);
  });
}

void StateVector::apply_s(std::size_t q) {
  check_qubit(q);
  for_each_pair(amps_.size(), q,
                [&](std::size_t, std::size_t i1) { amps_[i1] *= cplx{0.0, 1.0}; });
}

void StateVector::apply_sdg(std::size_t q) {
  check_qubit(q);
  for_each_pair(amps_.size(), q,
                [&](std::size_t, std::size_t i1) { amps_[i1] *= cplx{0.0, -1.0}; });
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw std::invalid_argument("CNOT control equals target");
  const std::size_t cmask = std::size_t{1} << control;
  for_each_pair(amps_.size(), target, [&](std::size_t i0, std::size_t i1) {
    if (i0 & cmask) std::swap(amps_[i0], amps_[i1]);
  });
}

void StateVector::apply_cz(std::size_t a, std::size_t b) {
  check_qubit(a);
  check_qubit(b);
  if (a == b) throw std::invalid_argument("CZ on a single qubit");
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

StateVector prepare_state(const AnsatzSpec& ansatz, std::span<const double> params) {
  if (params.size() != ansatz.n_params()) {
    throw std::invalid_argument("ansatz expects " + std::to_string(ansatz.n_params()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  const std::size_t n = ansatz.n_qubits;
  StateVector sv(n);
  for (std::size_t q = 0; q < n; ++q) sv.apply_ry(q, params[q]);
  for (std::size_t q = 0; q + 1 < n; ++q) sv.apply_cnot(q, q + 1);
  for (std::size_t q = 0; q < n; ++q) sv.apply_ry(q, params[n + q]);
  return sv;
}

void apply_clifford(StateVector& sv, const CliffordCircuit& circuit) {
  if (circuit.n_qubits != sv.n_qubits() && !circuit.gates.empty()) {
    throw std::invalid_argument("circuit acts on " + std::to_string(circuit.n_qubits) +
                                " qubits, state has " + std::to_string(sv.n_qubits()));
  }
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case CliffordGate::Kind::kH:
        sv.apply_h(g.q0);
        break;
      case CliffordGate::Kind::kS:
        sv.apply_s(g.q0);
        break;
      case CliffordGate::Kind::kSdg:
        sv.apply_sdg(g.q0);
        break;
      case CliffordGate::Kind::kCnot:
        sv.apply_cnot(g.q0, g.q1);
        break;
      case CliffordGate::Kind::kCz:
        sv.apply_cz(g.q0, g.q1);
        break;
    }
  }
}

SampleSet sample(const StateVector& sv, std::size_t m, std::uint64_t seed,
                 std::size_t group_index) {
  if (m == 0) throw std::invalid_argument("shot count must be at least 1");
  const auto amps = sv.amplitudes();
  std::vector<double> cdf(amps.size());
  double running = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    running += std::norm(amps[i]);
    cdf[i] = running;
  }

  SampleSet out;
  out.group_index = group_index;
  out.seed = seed;
  out.shots.reserve(m);
  std::mt19937_64 rng(seed);
  const std::size_t last = amps.size() - 1;
  for (std::size_t s = 0; s < m; ++s) {
    // 53 random mantissa bits give a uniform double in [0, 1).
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // u < running, so the first entry above u has nonzero probability.
    const std::size_t idx = std::min(static_cast<std::size_t>(it - cdf.begin()), last);
    out.shots.emplace_back(sv.n_qubits(), static_cast<std::uint64_t>(idx));
  }
  return out;
}

std::vector<WeightedOutcome> exact_probabilities(const StateVector& sv) {
  std::vector<WeightedOutcome> out;
  const auto amps = sv.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p > 0.0) out.push_back({BitString(sv.n_qubits(), i), p});
  }
  return out;
}

}  // namespace mmvqe
