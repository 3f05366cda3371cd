// SPDX-License-Identifier: Apache-2.0
//
// ofdmsinr: exact per-subcarrier SINR and achievable-rate analysis for CP-
// and ZP-OFDM over FIR channels of arbitrary order, with a time-domain
// Monte Carlo cross-check, TEQ design, and rate sweeps.

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"per-subcarrier SINR / achievable-rate toolkit for CP- and ZP-OFDM"};
  app.require_subcommand(1);

  ofdm::cli::CommonOptions opt;
  int (*run)(const ofdm::cli::CommonOptions&) = nullptr;

  auto add_common = [&](CLI::App* sub, bool with_threads = false) {
    sub->add_option("--config", opt.config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--cir", opt.cir_override, "channel impulse response file (overrides config)");
    sub->add_option("--out", opt.out_override, "output path (overrides config)");
    sub->add_option("--format", opt.format_override, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", opt.seed_override, "RNG seed (overrides config)");
    if (with_threads)
      sub->add_option("--threads", opt.threads, "worker threads for sweeps")
          ->check(CLI::PositiveNumber);
  };

  auto* analyze = app.add_subcommand("analyze", "per-tone interference powers, SINR and rate");
  add_common(analyze);
  analyze->callback([&] { run = ofdm::cli::cmd_analyze; });

  auto* simulate =
      app.add_subcommand("simulate", "time-domain Monte Carlo SINR next to the analytic values");
  add_common(simulate);
  simulate->callback([&] { run = ofdm::cli::cmd_simulate; });

  auto* sweep = app.add_subcommand("sweep", "rate vs TEQ length or CP length, both analysis modes");
  add_common(sweep, true);
  sweep->callback([&] { run = ofdm::cli::cmd_sweep; });

  auto* teq = app.add_subcommand("teq-design", "maximum-shortening-SNR TEQ design");
  add_common(teq);
  teq->callback([&] { run = ofdm::cli::cmd_teq_design; });

  auto* gen = app.add_subcommand("gen-channel", "write a synthetic channel impulse response file");
  add_common(gen);
  gen->callback([&] { run = ofdm::cli::cmd_gen_channel; });

  CLI11_PARSE(app, argc, argv);

  try {
    return run(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
