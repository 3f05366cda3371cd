// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ofdm/montecarlo.hpp"
#include "ofdm/rate.hpp"
#include "ofdm/teq.hpp"
#include "ofdm/types.hpp"

namespace ofdm::cli {

enum class OutputFormat { Csv, Json };

struct SimSection {
  long n_blocks = 0;
  uint64_t seed = 0;
  long warmup_blocks = 0;
  ConstellationKind constellation = ConstellationKind::QPSK;
};

struct SweepSection {
  SweepSpec spec;
  Index conventional_max_len = 0;  // 0 = default to N
};

struct TeqSection {
  Index teq_len = 1;
  Index window_len = 0;  // 0 = redundancy + 1
  Index delay = 0;
};

struct GenSection {
  std::string type;  // "exponential" | "two_ray"
  Index nu = 0;
  double decay_rate = 0.0;
  uint64_t seed = 0;
  Index delay = 0;
  double gain = 0.0;
  double rate_hz = 1.0;
};

/// Parsed and schema-validated run configuration. Sections are optional in
/// the file; each command checks for the ones it needs.
struct RunConfig {
  std::optional<OFDMConfig> ofdm;
  std::optional<SignalStats> signal;
  std::optional<RateParams> rate;
  std::optional<SimSection> sim;
  std::optional<SweepSection> sweep;
  std::optional<TeqSection> teq;
  std::optional<GenSection> gen;
  std::string cir_path;
  Index truncate_len = 0;  // 0 = no truncation
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
  // Provenance note carried into summaries when PSD-based powers are used.
  bool powers_from_psd = false;
  double psd_reference_ohm = 100.0;
};

/// Loads the JSON config and validates it against the documented schema.
/// Unknown keys, wrong types, and out-of-range values are reported with the
/// offending key path.
RunConfig load_run_config(const std::string& path);

const RateParams& require_rate(const RunConfig& rc);
const OFDMConfig& require_ofdm(const RunConfig& rc);
const SignalStats& require_signal(const RunConfig& rc);

}  // namespace ofdm::cli
