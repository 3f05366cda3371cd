// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "ofdm/types.hpp"

namespace ofdm {

enum class ConstellationKind { QPSK, QAM16, QAM64 };

/// Unit-average-power symbol alphabet.
struct Constellation {
  CVector points;
  ConstellationKind label;

  static Constellation make(ConstellationKind kind);
};

struct SimConfig {
  long n_blocks;                // measured blocks L (>= 1000)
  uint64_t seed;
  long warmup_blocks = 0;       // extra edge blocks; at least M+2 are always used
  SignalStats stats{1.0, 0.0};
  Constellation constellation = Constellation::make(ConstellationKind::QPSK);
};

/// Empirical per-tone estimates from a time-domain stream simulation.
struct SimResult {
  RVector p_signal;
  RVector p_interference_plus_noise;
  RVector sinr;
  CVector b_des_hat;  // estimated per-tone desired gain
  long n_blocks_used;
};

/// Time-domain oracle: modulates an i.i.d. symbol stream block by block,
/// convolves with the FIR channel, adds circularly symmetric white Gaussian
/// noise, and demodulates receiver frames starting at sample l*N0 + delta.
/// Per tone, the desired gain is estimated by cross-correlation
/// (b_hat_k = <Y_k X_k*> / sigma_x^2) and the interference-plus-noise power
/// from the residual Y_k - b_hat_k X_k. Edge blocks (max(warmup_blocks, M+2)
/// on each side) are excluded so every measured frame sees a fully populated
/// interference context.
///
/// Symbols and noise are drawn from independent substreams of the seed, so
/// disabling noise (sigma_q^2 = 0) does not change the symbol sequence.
/// Identical SimConfig values produce bit-identical results.
SimResult simulate_stream(const OFDMConfig& cfg, const ChannelModel& ch, const SimConfig& sim);

}  // namespace ofdm
