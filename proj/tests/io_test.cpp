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

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "json.hpp"
#include "mmvqe/hamiltonian_io.hpp"
#include "mmvqe/metrics.hpp"
#include "mmvqe/vqe.hpp"
#include "test_util.hpp"

using namespace mmvqe;

namespace {

HamiltonianFile parse(const std::string& text) {
  std::istringstream in(text);
  return read_hamiltonian(in);
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t expect_line_error(const std::string& text) {
  try {
    parse(text);
  } catch (const DataError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return 0;
}

}  // namespace

TEST(hamiltonian_file, parses_example) {
  const auto f = parse(
      "# comment line\n"
      "n_qubits 2\n"
      "name toy\n"
      "\n"
      "-0.5 II\n"
      "0.25 ZI  # trailing comment\n"
      "1e-3 XY\n");
  EXPECT_EQ(f.name, "toy");
  EXPECT_EQ(f.hamiltonian.n_qubits(), 2u);
  EXPECT_EQ(f.hamiltonian.size(), 3u);
  EXPECT_DOUBLE_EQ(f.hamiltonian.identity_coeff(), -0.5);
}

TEST(hamiltonian_file, merges_duplicates_and_drops_zero) {
  const auto f = parse("n_qubits 1\nname t\n0.5 Z\n0.25 Z\n1 X\n-1 X\n");
  ASSERT_EQ(f.hamiltonian.size(), 1u);
  EXPECT_EQ(f.hamiltonian.terms()[0].op.str(), "Z");
  EXPECT_DOUBLE_EQ(f.hamiltonian.terms()[0].coeff, 0.75);
}

TEST(hamiltonian_file, errors_carry_line_numbers) {
  EXPECT_EQ(expect_line_error("n_qubits 2\nname t\n0.5 ZZZ\n"), 3u);
  EXPECT_EQ(expect_line_error("n_qubits 2\nname t\n0.5 ZQ\n"), 3u);
  EXPECT_EQ(expect_line_error("n_qubits 2\nname t\n\nabc ZZ\n"), 4u);
  EXPECT_EQ(expect_line_error("n_qubits 2\nname t\n0.5\n"), 3u);
  EXPECT_EQ(expect_line_error("n_qubits 2\nname t\n0.5 ZZ extra\n"), 3u);
  EXPECT_EQ(expect_line_error("n_qubits x\n"), 1u);
  EXPECT_EQ(expect_line_error("0.5 Z\n"), 1u);
  EXPECT_EQ(expect_line_error("n_qubits 1\n0.5 Z\n"), 2u);
  EXPECT_EQ(expect_line_error("n_qubits 1\nname t\n0.5 Z\nname u\n"), 4u);
  EXPECT_EQ(expect_line_error("n_qubits 1\nname t\nnan Z\n"), 3u);
  EXPECT_THROW(parse(""), DataError);
  EXPECT_THROW(parse("n_qubits 1\n"), DataError);
  try {
    parse("n_qubits 2\nname t\n0.5 ZQ\n");
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(hamiltonian_file, random_round_trip) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 70;
    Hamiltonian h(n);
    for (int i = 0; i < 30; ++i) {
      std::uniform_real_distribution<double> mag(-300, 300);
      h.add_term(testing_util::random_pauli(n, rng),
                 testing_util::random_coeff(rng) * std::pow(10.0, mag(rng) / 10.0));
    }
    HamiltonianFile f{"h" + std::to_string(trial), h};
    std::ostringstream out;
    write_hamiltonian(out, f);
    const auto back = parse(out.str());
    EXPECT_EQ(back.name, f.name);
    EXPECT_EQ(back.hamiltonian, h);
  }
}

TEST(hamiltonian_file, save_and_load) {
  const auto dir = std::filesystem::temp_directory_path() / "mmvqe_io_test";
  std::filesystem::create_directories(dir);
  const HamiltonianFile f{"ising", generate_ising({5, 3})};
  save_hamiltonian(dir / "ising.ham", f);
  const auto back = load_hamiltonian(dir / "ising.ham");
  EXPECT_EQ(back.hamiltonian, f.hamiltonian);
  EXPECT_THROW(load_hamiltonian(dir / "missing.ham"), DataError);
  std::filesystem::remove_all(dir);
}

TEST(hamiltonian_file, molecular_fixture_term_counts) {
  const std::filesystem::path data(MMVQE_DATA_DIR);
  const std::pair<const char*, std::size_t> cases[] = {
      {"h2.ham", 15}, {"h4.ham", 185}, {"lih.ham", 631}, {"h2o.ham", 1086}};
  for (const auto& [file, terms] : cases) {
    const auto f = load_hamiltonian(data / file);
    EXPECT_EQ(f.hamiltonian.size(), terms) << file;
  }
}

TEST(format_real, round_trips) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) / 3.0;
    EXPECT_EQ(std::stod(format_real(v)), v);
  }
}

TEST(metrics_writer, columns_and_rows) {
  VqeConfig cfg;
  cfg.ansatz = AnsatzSpec{3};
  cfg.iterations = 3;
  cfg.seed = 4;
  const auto rec = run_vqe(cfg, generate_ising({3, 1}), GroupingMode::kGeneral,
                           initial_guess(6, 1, 0));
  std::ostringstream out;
  MetricsWriter w(out);
  w.write(rec, 0);
  w.write(rec, 1);
  const auto rows = read_csv(out.str());
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], metrics_columns());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), metrics_columns().size());
    EXPECT_EQ(rows[i][2], "mm");
    EXPECT_EQ(rows[i][3], "3");
    EXPECT_EQ(rows[i][4], "gc");
  }
  EXPECT_EQ(rows[1][0], "0");
  EXPECT_EQ(rows[4][0], "1");
  EXPECT_EQ(std::stod(rows[3][5]), rec.final_energy);
  EXPECT_EQ(std::stoull(rows[1][10]), rec.iterations[0].stats.group_evals);
}

TEST(bench_table, percentage_saved_recomputable) {
  BenchTable t;
  t.rows.push_back({6, Scheme::kSorted, 3, 0.3, 0.01, 0.9, 0.02, 100, -1.0, 0.3, 0.0});
  t.rows.push_back({6, Scheme::kMm, 3, 0.1 / 3.0, 0.001, 0.7, 0.02, 20, -1.0, 0.3,
                    (0.3 - 0.1 / 3.0) / 0.3});
  std::ostringstream out;
  write_bench_table(out, t);
  const auto rows = read_csv(out.str());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], bench_columns());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double mean = std::stod(rows[i][3]);
    const double base = std::stod(rows[i][9]);
    EXPECT_NEAR(std::stod(rows[i][10]), (base - mean) / base, 1e-12);
  }
}

TEST(group_summary, text_and_json) {
  Hamiltonian h(2);
  h.add_term(PauliString(2), 1.0);
  h.add_term(PauliString::parse("XX", 2), 0.5);
  h.add_term(PauliString::parse("ZZ", 2), 0.5);
  h.add_term(PauliString::parse("ZI", 2), 0.2);
  const auto gh = group_hamiltonian(h, GroupingMode::kGeneral);
  const auto s = summarize(gh, h);
  EXPECT_EQ(s.total_terms, 4u);
  EXPECT_TRUE(s.valid);
  std::ostringstream text;
  write_group_summary(text, s);
  EXPECT_NE(text.str().find("groups: " + std::to_string(s.groups)), std::string::npos);
  std::ostringstream js;
  write_group_summary_json(js, s);
  const auto j = nlohmann::json::parse(js.str());
  EXPECT_EQ(j["groups"].get<std::size_t>(), s.groups);
  EXPECT_EQ(j["mode"], "gc");
  EXPECT_TRUE(j["valid"].get<bool>());
  std::size_t total = 0;
  for (auto v : j["terms_per_group"]) total += v.get<std::size_t>();
  EXPECT_EQ(total, 3u);
}
