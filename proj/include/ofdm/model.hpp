// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ofdm/types.hpp"

namespace ofdm {

/// Normalized n-point DFT matrix, entry (k, n') = exp(-j*2*pi*k*n'/n)/sqrt(n).
/// Built directly; O(n^2) construction is the reference semantics.
CMatrix dft_matrix(Index n);

struct RedundancyMatrices {
  CMatrix gamma;    // N0 x N, inserts redundancy
  CMatrix upsilon;  // N x N0, removes/folds redundancy
};

/// The redundancy insertion/removal pair (Gamma, Upsilon).
/// CP:     Gamma stacks the last mu rows of I_N above I_N; Upsilon drops the
///         first mu received samples.
/// ZP-OLA: Gamma appends mu zero rows; Upsilon folds the mu tail samples back
///         onto the block head (overlap-and-add).
RedundancyMatrices redundancy_matrices(const OFDMConfig& cfg);

/// Transmitter matrix T = Gamma * W_N^H (N0 x N).
CMatrix transmit_matrix(const OFDMConfig& cfg);

/// Receiver front W_N * Upsilon (N x N0); the one-tap equalizer is not
/// included.
CMatrix receive_front(const OFDMConfig& cfg);

/// The set of N0 x N0 channel block matrices H_(-m), m = -1, 0, ..., M.
/// Block m maps the block transmitted m block-periods earlier onto the
/// current receiver frame:
///
///   frame[l] = sum_m H_(-m) * x[l - m],
///   [H_(-m)]_{b,c} = h_{m*N0 + b - c + delta}   (0 when the index is
///                                                outside [0, nu]).
///
/// M = ceil(nu / N0); for nu >= 1, nu = (M-1)*N0 + rho + 1 with
/// rho in {0, ..., N0-1}. For a single-tap channel (nu = 0), M = 0 and rho
/// is stored as the sentinel -1.
struct ChannelBlockSet {
  std::vector<CMatrix> blocks;  // index i holds block m = i - 1
  Index m_span = 0;             // M
  Index rho = -1;               // -1 sentinel when nu == 0

  const CMatrix& block(Index m) const { return blocks.at(static_cast<size_t>(m + 1)); }

  /// Number of blocks with at least one nonzero entry.
  Index nonzero_block_count() const;
};

ChannelBlockSet channel_blocks(const OFDMConfig& cfg, const ChannelModel& ch);

/// Number of block matrices that are structurally nonzero for a channel with
/// all taps nonzero: M+2 when 1 <= delta <= rho, otherwise M+1. At nu = 0 the
/// remainder decomposition continues naturally with rho = N0 - 1, which is
/// what this prediction uses (the stored sentinel stays -1).
Index predicted_nonzero_blocks(const OFDMConfig& cfg, const ChannelModel& ch);

}  // namespace ofdm
