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

// mmvqe: generate Ising Hamiltonians, group Hamiltonians, run VQE with a
// chosen post-processing scheme, and benchmark the schemes against each
// other.
//
// Exit status: 0 success, 1 usage error, 2 data or runtime error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mmvqe/grouping.hpp"
#include "mmvqe/hamiltonian_io.hpp"
#include "mmvqe/metrics.hpp"
#include "mmvqe/vqe.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Relative output paths land in $MMVQE_OUTPUT_DIR when it is set.
std::filesystem::path output_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("MMVQE_OUTPUT_DIR"); dir && *dir) {
      std::filesystem::create_directories(dir);
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(output_path(path));
  if (!out) throw mmvqe::DataError("cannot write " + output_path(path).string());
  return out;
}

mmvqe::ShotScaling parse_scaling(const std::string& text, const mmvqe::Hamiltonian& h) {
  if (text == "quadratic") return mmvqe::ShotScaling::kQuadratic;
  if (text == "linear") return mmvqe::ShotScaling::kLinear;
  // auto: diagonal (Ising-type) Hamiltonians get c N^2, others c N per group.
  for (const auto& t : h.terms()) {
    if (!t.op.is_diagonal()) return mmvqe::ShotScaling::kLinear;
  }
  return mmvqe::ShotScaling::kQuadratic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-memory VQE experiments"};
  app.require_subcommand(1);

  // generate-ising
  auto* gen = app.add_subcommand("generate-ising", "Write a random fully connected Ising model");
  std::size_t gen_qubits = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_output;
  gen->add_option("-n,--qubits", gen_qubits, "Number of qubits (>= 2)")->required();
  gen->add_option("-s,--seed", gen_seed, "RNG seed")->required();
  gen->add_option("-o,--output", gen_output, "Output Hamiltonian file")->required();

  // group
  auto* grp = app.add_subcommand("group", "Partition a Hamiltonian into commuting groups");
  std::string grp_input, grp_mode = "qwc";
  bool grp_json = false;
  grp->add_option("-i,--input", grp_input, "Hamiltonian file")->required();
  grp->add_option("-m,--mode", grp_mode, "qwc or gc")->check(CLI::IsMember({"qwc", "gc"}));
  grp->add_flag("--json", grp_json, "Emit JSON instead of text");

  // run
  auto* run = app.add_subcommand("run", "Run VQE and stream per-iteration metrics");
  std::string run_input, run_scheme = "mm", run_mode = "qwc", run_metrics, run_scaling = "auto";
  std::size_t run_iterations = 200, run_guess = 0;
  double run_c = 0.0, run_lr = 0.05;
  std::uint64_t run_seed = 0;
  bool run_exact = false;
  run->add_option("-i,--input", run_input, "Hamiltonian file")->required();
  run->add_option("--scheme", run_scheme, "naive, sorted or mm")
      ->check(CLI::IsMember({"naive", "sorted", "mm"}));
  run->add_option("-m,--mode", run_mode, "qwc or gc")->check(CLI::IsMember({"qwc", "gc"}));
  run->add_option("-T,--iterations", run_iterations, "Optimization steps");
  run->add_option("-c,--shots-constant", run_c,
                  "Shot constant c (default 25 for c N^2, 100 for c N)");
  run->add_option("--shot-scaling", run_scaling, "quadratic, linear or auto")
      ->check(CLI::IsMember({"quadratic", "linear", "auto"}));
  run->add_option("-s,--seed", run_seed, "Master seed for shots");
  run->add_option("--guess", run_guess, "Index of the fixed initial guess");
  run->add_option("--learning-rate", run_lr, "Gradient-descent step size");
  run->add_flag("--exact", run_exact, "Use exact probabilities instead of shots");
  run->add_option("--metrics", run_metrics, "Per-iteration metrics CSV")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Benchmark schemes on Ising models");
  std::vector<std::size_t> bench_sizes{6, 8, 10, 12, 14, 16};
  std::vector<std::string> bench_schemes{"sorted", "mm"};
  std::size_t bench_reps = 10, bench_iterations = 200;
  double bench_c = 25.0, bench_lr = 0.05;
  std::uint64_t bench_seed = 1;
  std::string bench_output, bench_baseline = "sorted";
  bench->add_option("--sizes", bench_sizes, "Qubit counts")->delimiter(',');
  bench->add_option("--schemes", bench_schemes, "Schemes to time")
      ->delimiter(',')
      ->check(CLI::IsMember({"naive", "sorted", "mm"}));
  bench->add_option("-r,--repetitions", bench_reps, "Initial guesses per size");
  bench->add_option("-T,--iterations", bench_iterations, "Optimization steps");
  bench->add_option("-c,--shots-constant", bench_c, "Shot constant c in c N^2");
  bench->add_option("--learning-rate", bench_lr, "Gradient-descent step size");
  bench->add_option("-s,--seed", bench_seed, "Seed for Hamiltonians, guesses and shots");
  bench->add_option("--baseline", bench_baseline, "Scheme percentage_saved is relative to")
      ->check(CLI::IsMember({"naive", "sorted"}));
  bench->add_option("-o,--output", bench_output, "Benchmark table CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      mmvqe::HamiltonianFile file{"ising" + std::to_string(gen_qubits) + "_seed" +
                                      std::to_string(gen_seed),
                                  mmvqe::generate_ising({gen_qubits, gen_seed})};
      auto out = open_output(gen_output);
      mmvqe::write_hamiltonian(out, file);
      std::cout << "wrote " << file.hamiltonian.size() << " terms to "
                << output_path(gen_output).string() << '\n';
    } else if (*grp) {
      const auto file = mmvqe::load_hamiltonian(grp_input);
      const auto gh =
          mmvqe::group_hamiltonian(file.hamiltonian, mmvqe::parse_grouping_mode(grp_mode));
      const auto summary = mmvqe::summarize(gh, file.hamiltonian);
      if (grp_json) {
        mmvqe::write_group_summary_json(std::cout, summary);
      } else {
        std::cout << "name: " << file.name << '\n';
        mmvqe::write_group_summary(std::cout, summary);
      }
      return summary.valid ? 0 : kExitData;
    } else if (*run) {
      const auto file = mmvqe::load_hamiltonian(run_input);
      const auto& h = file.hamiltonian;
      mmvqe::VqeConfig cfg;
      cfg.ansatz = mmvqe::AnsatzSpec{h.n_qubits()};
      cfg.iterations = run_iterations;
      cfg.learning_rate = run_lr;
      cfg.shots.scaling = parse_scaling(run_scaling, h);
      cfg.shots.constant =
          run_c > 0.0 ? run_c : (cfg.shots.scaling == mmvqe::ShotScaling::kQuadratic ? 25.0 : 100.0);
      cfg.scheme = mmvqe::parse_scheme(run_scheme);
      cfg.seed = run_seed;
      cfg.exact = run_exact;
      const auto guess = mmvqe::initial_guess(cfg.ansatz.n_params(), run_seed, run_guess);
      const auto record =
          mmvqe::run_vqe(cfg, h, mmvqe::parse_grouping_mode(run_mode), guess);
      auto out = open_output(run_metrics);
      mmvqe::MetricsWriter writer(out);
      writer.write(record, 0);
      std::cout << "final_energy: " << mmvqe::format_real(record.final_energy) << '\n';
      std::cout << "postprocessing_s: " << mmvqe::format_real(record.postprocessing_time) << '\n';
      std::cout << "group_evals: " << record.totals.group_evals << '\n';
      if (record.best) {
        std::cout << "best_state: " << record.best->bits.str() << ' '
                  << mmvqe::format_real(record.best->value) << '\n';
      }
    } else if (*bench) {
      mmvqe::BenchConfig cfg;
      cfg.sizes = bench_sizes;
      cfg.schemes.clear();
      for (const auto& s : bench_schemes) cfg.schemes.push_back(mmvqe::parse_scheme(s));
      cfg.repetitions = bench_reps;
      cfg.iterations = bench_iterations;
      cfg.learning_rate = bench_lr;
      cfg.shots = mmvqe::ShotSchedule::ising(bench_c);
      cfg.hamiltonian_seed = bench_seed;
      cfg.guess_seed = bench_seed + 1;
      cfg.sample_seed = bench_seed + 2;
      cfg.baseline = mmvqe::parse_scheme(bench_baseline);
      const auto table = mmvqe::benchmark_suite(cfg, [](std::size_t n, std::size_t r) {
        std::cerr << "N=" << n << " repetition " << r << '\n';
      });
      auto out = open_output(bench_output);
      mmvqe::write_bench_table(out, table);
      mmvqe::write_bench_table(std::cout, table);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
