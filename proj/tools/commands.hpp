// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "run_config.hpp"

namespace ofdm::cli {

struct CommonOptions {
  std::string config_path;
  std::string cir_override;
  std::string out_override;
  std::string format_override;  // "", "csv" or "json"
  long seed_override = -1;      // <0 = keep config value
  int threads = 1;
};

int cmd_analyze(const CommonOptions& opt);
int cmd_simulate(const CommonOptions& opt);
int cmd_sweep(const CommonOptions& opt);
int cmd_teq_design(const CommonOptions& opt);
int cmd_gen_channel(const CommonOptions& opt);

}  // namespace ofdm::cli
