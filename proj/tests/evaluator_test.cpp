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

#include "mmvqe/evaluator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <unordered_set>

#include "dense_oracle.hpp"
#include "mmvqe/vqe.hpp"
#include "test_util.hpp"

using namespace mmvqe;

namespace {

PauliTerm term(const char* text, double c) {
  const std::string s(text);
  return {PauliString::parse(s, s.size()), c};
}

SampleSet shots(std::initializer_list<const char*> texts, std::size_t group = 0) {
  SampleSet s;
  for (const char* t : texts) s.shots.push_back(BitString::parse(t));
  s.group_index = group;
  return s;
}

// <b| U G U^dagger |b> computed densely from the original terms.
double dense_value(const CommutingGroup& g, const BitString& b) {
  const auto u = oracle::unitary(g.basis_circuit());
  const auto gm = oracle::matrix(g.n_qubits(), g.terms());
  const oracle::Mat rotated = u * gm * u.adjoint();
  return rotated(static_cast<Eigen::Index>(b.bits()), static_cast<Eigen::Index>(b.bits())).real();
}

// Sum over shots of <b|H|b> computed term by term on the original operators.
double direct_diagonal_mean(const Hamiltonian& h, const SampleSet& s) {
  double acc = 0.0;
  for (const auto& b : s.shots) {
    for (const auto& t : h.terms()) acc += t.coeff * z_string_eigenvalue(t.op, b);
  }
  return acc / static_cast<double>(s.shots.size());
}

}  // namespace

TEST(eval_bitstring, examples) {
  auto g = CommutingGroup::from_terms({term("ZZ", 0.5), term("ZI", 0.25)});
  EvalStats st;
  EXPECT_DOUBLE_EQ(eval_bitstring(g, BitString::parse("00"), st), 0.75);
  EXPECT_DOUBLE_EQ(eval_bitstring(g, BitString::parse("11"), st), 0.25);
  EXPECT_DOUBLE_EQ(eval_bitstring(g, BitString::parse("10"), st), -0.75);
  EXPECT_DOUBLE_EQ(eval_bitstring(g, BitString::parse("01"), st), -0.25);
  EXPECT_EQ(st.group_evals, 4u);
  EXPECT_THROW(eval_bitstring(g, BitString::parse("000"), st), std::invalid_argument);
}

TEST(eval_bitstring, matches_dense_rotated_group) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + trial % 4;
    auto terms = testing_util::random_commuting_terms(n, 6, rng, trial % 2 == 0);
    if (terms.empty()) continue;
    auto g = CommutingGroup::from_terms(terms);
    EvalStats st;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      const BitString bs(n, b);
      EXPECT_NEAR(eval_bitstring(g, bs, st), dense_value(g, bs), 1e-12);
    }
  }
}

TEST(eval_naive, examples) {
  auto g = CommutingGroup::from_terms({term("Z", 1.0)});
  EXPECT_DOUBLE_EQ(eval_naive(g, shots({"0", "0", "1", "1"})).value, 0.0);
  EXPECT_DOUBLE_EQ(eval_naive(g, shots({"0"})).value, 1.0);
  const auto e = eval_naive(g, shots({"1", "1", "1"}));
  EXPECT_DOUBLE_EQ(e.value, -1.0);
  EXPECT_EQ(e.stats.group_evals, 3u);
  EXPECT_EQ(e.stats.shots_seen, 3u);
  EXPECT_EQ(e.stats.hash_probes, 0u);
  EXPECT_THROW(eval_naive(g, SampleSet{}), std::invalid_argument);
}

TEST(eval_sorted, examples) {
  auto g = CommutingGroup::from_terms({term("ZZ", 0.5), term("ZI", 0.25)});
  const auto e = eval_sorted(g, shots({"00", "00", "01"}));
  EXPECT_DOUBLE_EQ(e.value, (2 * 0.75 - 0.25) / 3);
  EXPECT_EQ(e.stats.group_evals, 2u);
  EXPECT_EQ(e.stats.distinct_seen, 2u);
  EXPECT_EQ(e.stats.hash_probes, 3u);
  EXPECT_EQ(e.stats.string_compares, 1u);
  EXPECT_THROW(eval_sorted(g, SampleSet{}), std::invalid_argument);
}

TEST(eval_sorted, all_distinct_costs_naive_plus_hashing) {
  std::mt19937_64 rng(3);
  const std::size_t n = 6;
  auto terms = testing_util::random_commuting_terms(n, 5, rng, true);
  auto g = CommutingGroup::from_terms(terms);
  SampleSet s;
  for (std::uint64_t b = 0; b < 64; ++b) s.shots.emplace_back(n, (b * 37) % 64);
  const auto naive = eval_naive(g, s);
  const auto sorted = eval_sorted(g, s);
  const std::size_t m = s.shots.size(), t = g.size();
  EXPECT_EQ(sorted.stats.distinct_seen, m);
  EXPECT_EQ(sorted.stats.group_evals, m);
  EXPECT_EQ(cost_units(naive.stats, n, t), m * n * t);
  EXPECT_EQ(cost_units(sorted.stats, n, t), cost_units(naive.stats, n, t) + m * n);
}

TEST(eval_mm, cold_then_warm) {
  auto g = CommutingGroup::from_terms({term("ZZ", 0.5), term("ZI", 0.25)});
  MeasurementMemory mem(1);
  const auto s = shots({"00", "01", "00"});
  const auto cold = eval_mm(g, s, mem);
  EXPECT_DOUBLE_EQ(cold.value, (2 * 0.75 - 0.25) / 3);
  EXPECT_EQ(cold.stats.group_evals, 2u);
  EXPECT_EQ(cold.stats.distinct_seen, 2u);
  EXPECT_EQ(cold.stats.memory_hits, 1u);
  EXPECT_EQ(mem.group(0).size(), 2u);

  const auto warm = eval_mm(g, s, mem);
  EXPECT_DOUBLE_EQ(warm.value, cold.value);
  EXPECT_EQ(warm.stats.group_evals, 0u);
  EXPECT_EQ(warm.stats.distinct_seen, 2u);
  EXPECT_EQ(warm.stats.memory_hits, 3u);
  EXPECT_EQ(mem.group(0).size(), 2u);

  EXPECT_THROW(eval_mm(g, shots({"00"}, 1), mem), std::out_of_range);
  EXPECT_THROW(eval_mm(g, SampleSet{}, mem), std::invalid_argument);
}

TEST(eval_mm, memory_entry_limit) {
  auto g = CommutingGroup::from_terms({term("ZZ", 0.5)});
  MeasurementMemory mem(1, 2);
  EXPECT_NO_THROW(eval_mm(g, shots({"00", "01", "00"}), mem));
  EXPECT_THROW(eval_mm(g, shots({"00", "11"}), mem), MemoryLimitError);
  EXPECT_EQ(mem.total_entries(), 2u);
  EXPECT_EQ(mem.group(0).find(BitString::parse("11")), nullptr);
}

TEST(schemes, agree_on_random_samples) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 7;
    auto terms = testing_util::random_commuting_terms(n, 8, rng, trial % 2 == 1);
    auto g = CommutingGroup::from_terms(terms);
    const auto s = testing_util::random_samples(n, 1000, rng, 1 + rng() % 40);
    MeasurementMemory mem(1);
    const auto a = eval_naive(g, s);
    const auto b = eval_sorted(g, s);
    const auto c = eval_mm(g, s, mem);
    EXPECT_NEAR(a.value, b.value, 1e-12);
    EXPECT_NEAR(a.value, c.value, 1e-12);
    // Cold memory does exactly the work of sort-and-evaluate.
    EXPECT_EQ(b.stats.hash_probes, c.stats.hash_probes);
    EXPECT_EQ(b.stats.string_compares, c.stats.string_compares);
    EXPECT_EQ(b.stats.group_evals, c.stats.group_evals);
    EXPECT_EQ(b.stats.distinct_seen, c.stats.distinct_seen);
    EXPECT_LE(c.stats.group_evals, c.stats.distinct_seen);
    EXPECT_LE(c.stats.distinct_seen, c.stats.shots_seen);
    EXPECT_EQ(a.stats.group_evals, s.shots.size());
  }
}

TEST(cost_model, sorted_and_warm_memory_identities) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 6;
    auto terms = testing_util::random_commuting_terms(n, 6, rng);
    auto g = CommutingGroup::from_terms(terms);
    const std::uint64_t t = g.size();
    const auto s = testing_util::random_samples(n, 200 + rng() % 300, rng, 1 + rng() % 60);
    const std::uint64_t m = s.shots.size();

    std::unordered_set<BitString> distinct(s.shots.begin(), s.shots.end());
    const std::uint64_t L = distinct.size();
    const auto sorted = eval_sorted(g, s);
    EXPECT_EQ(cost_units(sorted.stats, n, t), L * (n + n * t) + (m - L) * 2 * n);

    // Warm the memory with a subset of the distinct strings, then count the
    // strings of `s` that were already known.
    MeasurementMemory mem(1);
    SampleSet warmup = testing_util::random_samples(n, 50, rng, 1 + rng() % 60);
    eval_mm(g, warmup, mem);
    std::unordered_set<BitString> known(warmup.shots.begin(), warmup.shots.end());
    std::uint64_t ell = 0;
    for (const auto& b : distinct) ell += known.count(b);
    const auto warm = eval_mm(g, s, mem);
    EXPECT_EQ(warm.stats.distinct_seen, L);
    EXPECT_EQ(warm.stats.group_evals, L - ell);
    EXPECT_EQ(cost_units(warm.stats, n, t),
              (L - ell) * (n + n * t) + (m - L + ell) * 2 * n);
  }
}

TEST(eval_mm, stored_values_are_fresh_evaluations) {
  std::mt19937_64 rng(12);
  const std::size_t n = 7;
  auto terms = testing_util::random_commuting_terms(n, 10, rng);
  auto g = CommutingGroup::from_terms(terms);
  MeasurementMemory mem(1);
  for (int pass = 0; pass < 20; ++pass) {
    eval_mm(g, testing_util::random_samples(n, 100, rng), mem);
  }
  EvalStats st;
  for (const auto& [b, entry] : mem.group(0).entries()) {
    EXPECT_EQ(entry.value, eval_bitstring(g, b, st));
  }
}

TEST(eval_mm, evaluations_drop_as_memory_fills) {
  // Shots from one fixed state: after the support is covered, no new work.
  std::vector<double> params{0.4, 1.3, -0.7, 0.2, 0.9, -1.1};
  const auto sv = prepare_state({3}, params);
  auto g = CommutingGroup::from_terms({term("ZZI", 0.7), term("IZZ", -0.4), term("ZII", 0.3)});
  MeasurementMemory mem(1);
  std::vector<std::uint64_t> evals;
  for (std::uint64_t i = 0; i < 10; ++i) {
    evals.push_back(eval_mm(g, sample(sv, 200, 1000 + i), mem).stats.group_evals);
  }
  for (std::size_t i = 1; i < evals.size(); ++i) EXPECT_LE(evals[i], evals[i - 1]);
  EXPECT_EQ(evals.back(), 0u);
  EXPECT_LE(mem.total_entries(), 8u);
}

TEST(eval_hamiltonian, single_group_ising_matches_direct_sum) {
  const auto h = generate_ising({5, 9});
  const auto gh = group_hamiltonian(h, GroupingMode::kGeneral);
  ASSERT_EQ(gh.groups.size(), 1u);
  std::mt19937_64 rng(2);
  std::vector<SampleSet> samples{testing_util::random_samples(5, 500, rng)};
  MeasurementMemory mem(1);
  const double direct = direct_diagonal_mean(h, samples[0]);
  for (auto scheme : {Scheme::kNaive, Scheme::kSorted, Scheme::kMm}) {
    EXPECT_NEAR(eval_hamiltonian(gh, samples, &mem, scheme).value, direct, 1e-12);
  }
}

TEST(eval_hamiltonian, exact_mode_matches_dense_expectation) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3;
    Hamiltonian h(n);
    h.add_term(PauliString(n), 0.3);
    for (int i = 0; i < 12; ++i) h.add_term(testing_util::random_pauli(n, rng), testing_util::random_coeff(rng));
    std::vector<double> params(2 * n);
    for (auto& p : params) p = angle(rng);
    const auto state = prepare_state({n}, params);
    for (auto mode : {GroupingMode::kQubitWise, GroupingMode::kGeneral}) {
      const auto gh = group_hamiltonian(h, mode);
      std::vector<std::vector<WeightedOutcome>> probs;
      for (const auto& g : gh.groups) {
        auto rotated = state;
        apply_clifford(rotated, g.basis_circuit());
        probs.push_back(exact_probabilities(rotated));
      }
      const double expected =
          oracle::expectation(oracle::matrix(h), oracle::ansatz_state(n, params));
      EXPECT_NEAR(eval_hamiltonian_exact(gh, probs).value, expected, 1e-10);
    }
  }
}

TEST(eval_hamiltonian, constant_only) {
  Hamiltonian h(2);
  h.add_term(PauliString(2), -1.5);
  const auto gh = group_hamiltonian(h, GroupingMode::kQubitWise);
  const auto e = eval_hamiltonian(gh, {}, nullptr, Scheme::kNaive);
  EXPECT_DOUBLE_EQ(e.value, -1.5);
  EXPECT_EQ(e.stats.group_evals, 0u);
}

TEST(eval_hamiltonian, errors) {
  const auto gh = group_hamiltonian(generate_ising({3, 1}), GroupingMode::kQubitWise);
  std::vector<SampleSet> none;
  EXPECT_THROW(eval_hamiltonian(gh, none, nullptr, Scheme::kNaive), std::invalid_argument);
  std::vector<SampleSet> one{shots({"000"})};
  EXPECT_THROW(eval_hamiltonian(gh, one, nullptr, Scheme::kMm), std::invalid_argument);
  std::vector<SampleSet> wrong{shots({"000"}, 3)};
  EXPECT_THROW(eval_hamiltonian(gh, wrong, nullptr, Scheme::kNaive), std::invalid_argument);
}

TEST(expected_distinct, closed_form_examples) {
  EXPECT_EQ(expected_distinct(3, 0), 0.0);
  EXPECT_NEAR(expected_distinct(1, 2), 1.5, 1e-15);
  EXPECT_NEAR(expected_distinct(2, 4), 175.0 / 64.0, 1e-14);
  EXPECT_NEAR(expected_distinct(40, 1), 1.0, 1e-9);
  EXPECT_NEAR(expected_distinct(4, 1000000), 16.0, 1e-9);
}

TEST(expected_distinct, exhaustive_enumeration) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const std::uint64_t space = std::uint64_t{1} << n;
    for (std::uint64_t m = 1; m <= 5; ++m) {
      std::uint64_t total = 0, sequences = 1;
      for (std::uint64_t i = 0; i < m; ++i) sequences *= space;
      for (std::uint64_t seq = 0; seq < sequences; ++seq) {
        std::set<std::uint64_t> seen;
        std::uint64_t rest = seq;
        for (std::uint64_t i = 0; i < m; ++i, rest /= space) seen.insert(rest % space);
        total += seen.size();
      }
      EXPECT_NEAR(expected_distinct(n, m),
                  static_cast<double>(total) / static_cast<double>(sequences), 1e-12);
    }
  }
}

TEST(expected_distinct, monte_carlo) {
  std::mt19937_64 rng(7);
  const std::size_t n = 4, m = 50, trials = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::uint32_t seen = 0;
    for (std::size_t i = 0; i < m; ++i) seen |= 1u << (rng() & 15);
    const double d = std::popcount(seen);
    sum += d;
    sum_sq += d * d;
  }
  const double mean = sum / trials;
  const double sem = std::sqrt((sum_sq / trials - mean * mean) / trials);
  EXPECT_NEAR(mean, expected_distinct(n, m), 3 * sem);
}
