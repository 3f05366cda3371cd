// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ofdm/analysis.hpp"
#include "ofdm/rate.hpp"
#include "ofdm/types.hpp"

namespace ofdm {

/// Full linear convolution of two tap vectors (length a + b - 1).
CVector convolve(const CVector& a, const CVector& b);

/// Channel-shortening FIR prefilter. Taps have unit norm (the shortening
/// objective is scale-invariant); they are real-valued whenever the channel
/// is real.
struct TeqDesign {
  CVector taps;
  Index delay;        // start of the target window in the shortened response
  Index window_len;
  double shortening_snr_db;
};

/// Maximum–shortening-SNR design: picks unit-norm w maximizing the energy of
/// h*w inside the window [delay, delay+window_len) relative to the energy
/// outside it. Solved as a generalized eigenproblem: Cholesky-whitening of
/// the (epsilon-regularized) wall Gram matrix followed by power iteration.
TeqDesign design_mssnr(const ChannelModel& ch, Index teq_len, Index window_len, Index delay);

/// In-window over out-of-window energy ratio of h*w for a given w (linear).
double shortening_ratio(const ChannelModel& ch, const CVector& w, Index window_len, Index delay);

/// Interference accounting mode: Actual keeps the full shortened response;
/// Conventional truncates it to a fixed maximum length first.
enum class AnalysisMode { Conventional, Actual };

inline const char* to_string(AnalysisMode m) {
  return m == AnalysisMode::Actual ? "actual" : "conventional";
}

struct SweepSpec {
  enum class Kind { TeqLen, CpLen };
  Kind kind;
  std::vector<Index> values;      // TEQ lengths, or CP lengths
  Index fixed_teq_len = 1;        // TEQ length used by CP sweeps
  std::vector<Index> delay_grid;  // candidate time offsets (and sync delays)
};

struct SweepRow {
  Index value;
  Index delay;  // best delay over the grid for this point
  double rate_bps;
  double shortening_snr_db;
};

/// For every grid value: design the TEQ at each candidate delay, form the
/// overall impulse response h*w (truncated first in Conventional mode), run
/// the interference analysis and the rate computation with sync delay equal
/// to the window delay, and keep the delay with the highest rate.
/// Candidates that violate a component precondition are skipped; a grid
/// value with no valid candidate throws. Grid points are independent and may
/// be evaluated on `threads` workers; row order follows spec.values.
std::vector<SweepRow> sweep_rate(const ChannelModel& ch, const OFDMConfig& cfg_base,
                                 const SignalStats& stats, const RateParams& rate_params,
                                 const SweepSpec& spec, AnalysisMode mode,
                                 Index conventional_max_len, int threads = 1);

}  // namespace ofdm
