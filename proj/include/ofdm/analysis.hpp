// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ofdm/model.hpp"
#include "ofdm/types.hpp"

namespace ofdm {

/// Frequency-domain interference operators for one (config, channel) pair,
/// all taken before the one-tap equalizer:
///
///   Y[l] = B_full * X[l] + sum_{m != 0} A_m * X[l-m] + G * q[l]
///
/// with A_m = W * Upsilon * H_(-m) * Gamma * W^H for m in {-1, 1, ..., M},
/// B_full = W * Upsilon * H_(0) * Gamma * W^H and G = W * Upsilon.
/// b_des holds the diagonal of B_full (the per-tone desired gain); b_ici1 is
/// B_full with its diagonal removed, so it carries only the same-block
/// cross-tone leakage.
struct InterferenceMatrices {
  struct ABlock {
    Index m;      // block offset, never 0
    CMatrix mat;  // N x N
  };
  std::vector<ABlock> a_blocks;  // M+1 entries, m = -1, 1, ..., M
  CMatrix b_full;                // N x N
  CVector b_des;                 // diagonal of b_full
  CMatrix b_ici1;                // b_full - diag(b_des), zero diagonal
  CMatrix g_noise;               // N x N0
};

InterferenceMatrices interference_matrices(const OFDMConfig& cfg, const ChannelModel& ch);

/// Covariance matrices of the desired signal, the total ISI/ICI, and the
/// noise at the receiver-front output (all N x N, Hermitian PSD):
///   C_s = sigma_x^2 * diag(b_des) * diag(b_des)^H
///   C_i = sigma_x^2 * (B_ici1 * B_ici1^H + sum_m A_m * A_m^H)
///   C_n = sigma_q^2 * G * G^H
struct Covariances {
  CMatrix c_s, c_i, c_n;
};

Covariances covariances(const InterferenceMatrices& im, const SignalStats& stats);

/// Per-subcarrier power split and SINR. All vectors have length N.
/// ISI collects the same-tone leakage from other blocks (diagonals of the
/// A_m), ICI1 the cross-tone leakage within the block (off-diagonals of
/// B_full), ICI2 the cross-tone leakage from other blocks (off-diagonals of
/// the A_m).
struct InterferenceReport {
  RVector p_signal, p_isi, p_ici1, p_ici2, p_noise;
  RVector sinr;  // linear; 0 at tones with no desired power
};

InterferenceReport analyze(const InterferenceMatrices& im, const SignalStats& stats);
InterferenceReport analyze(const OFDMConfig& cfg, const ChannelModel& ch,
                           const SignalStats& stats);

}  // namespace ofdm
