// Copyright 2026 The qchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qchan/cli.hpp"

namespace {

void add_channel_flags(CLI::App* cmd, qchan::RunConfig& cfg) {
  cmd->add_option("--channel", cfg.channel_path, "Channel JSON file");
  cmd->add_option("--family", cfg.family,
                  "Channel family: identity, depolarizing, unitary_mixture, amplitude_damping");
  cmd->add_option("--dim", cfg.dim, "Hilbert space dimension N")->check(CLI::PositiveNumber);
  cmd->add_option("--p", cfg.p, "Depolarizing probability (or damping rate eta)");
  cmd->add_option("--k", cfg.k, "Number of unitaries in a random mixture");
}

void add_common_flags(CLI::App* cmd, qchan::RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Random seed");
  cmd->add_option("--out", cfg.out_path, "Output file (default: stdout)");
  cmd->add_option("--tol-herm", cfg.tol.herm);
  cmd->add_option("--tol-trace", cfg.tol.trace);
  cmd->add_option("--tol-psd", cfg.tol.psd);
  cmd->add_option("--tol-eig", cfg.tol.eig);
  cmd->add_option("--tol-fix", cfg.tol.fix);
  cmd->add_option("--tol-audit", cfg.tol.audit);
  cmd->add_option("--tol-bound", cfg.tol.bound);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qchan: analysis of bistochastic quantum channels in Kraus form"};
  app.set_version_flag("--version", qchan::kToolVersion);
  app.require_subcommand(1);
  qchan::RunConfig cfg;

  auto* analyze = app.add_subcommand("analyze", "Certify a channel and report gap, contraction rate and bounds");
  add_channel_flags(analyze, cfg);
  add_common_flags(analyze, cfg);
  analyze->add_option("--restarts", cfg.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  analyze->add_option("--trials", cfg.trials, "Audit samples")->check(CLI::PositiveNumber);
  analyze->add_flag("--timing", cfg.timing, "Embed runtime_ms in the report");

  auto* simulate = app.add_subcommand("simulate", "Iterate the channel and log relaxation metrics as CSV");
  add_channel_flags(simulate, cfg);
  add_common_flags(simulate, cfg);
  simulate->add_option("--steps", cfg.n_max, "Number of steps")->check(CLI::PositiveNumber);
  simulate->add_option("--state", cfg.state, "pure_0, maximally_mixed, random:SEED or a state JSON file");
  simulate->add_option("--restarts", cfg.restarts, "Optimizer restarts when C must be estimated");
  simulate->add_option("--summary", cfg.summary_path, "Summary JSON file (default: stderr)");

  auto* verify = app.add_subcommand("verify", "Check the entropy-production bounds over a seeded ensemble");
  verify->add_option("--family", cfg.family, "qubit_random, depolarizing, unitary_mixture, qubit_product")
      ->required();
  verify->add_option("--dim", cfg.dim, "Dimension (depolarizing, unitary_mixture)")->check(CLI::PositiveNumber);
  verify->add_option("--p", cfg.p, "Single depolarizing probability instead of the default grid");
  verify->add_option("--k", cfg.k, "Unitaries per random mixture");
  verify->add_option("--count", cfg.count, "Channels in the ensemble");
  verify->add_option("--states", cfg.states, "Random states per channel");
  verify->add_option("--restarts", cfg.restarts, "Optimizer restarts for estimated rates");
  verify->add_option("--trials", cfg.trials, "Audit samples for product rates");
  add_common_flags(verify, cfg);

  auto* gen = app.add_subcommand("gen", "Write a channel JSON file for a named family");
  gen->add_option("--family", cfg.family, "identity, depolarizing, unitary_mixture, amplitude_damping")->required();
  gen->add_option("--dim", cfg.dim, "Hilbert space dimension N")->check(CLI::PositiveNumber);
  gen->add_option("--p", cfg.p, "Depolarizing probability (or damping rate eta)");
  gen->add_option("--k", cfg.k, "Number of unitaries in a random mixture");
  add_common_flags(gen, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(qchan::ExitCode::invalid_input);
  }

  if (analyze->parsed()) cfg.command = qchan::Command::analyze;
  if (simulate->parsed()) cfg.command = qchan::Command::simulate;
  if (verify->parsed()) cfg.command = qchan::Command::verify;
  if (gen->parsed()) cfg.command = qchan::Command::gen;
  return qchan::run(cfg, std::cout, std::cerr);
}
