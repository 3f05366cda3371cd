// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ofdm/types.hpp"

namespace ofdm {

enum class EqualizerKind { ZF, MMSE, Identity };

/// One-tap (diagonal) frequency-domain equalizer.
struct DiagonalEqualizer {
  CVector coeffs;
  EqualizerKind kind;
};

/// Per-tone channel gains D_k = sum_j h_j exp(-j*2*pi*k*j/n), i.e.
/// sqrt(n) * W_n * [h; 0]. Requires nu <= n-1 so the taps fit in one block;
/// for longer channels build the equalizer from the diagonal of the
/// full-channel operator instead (see docs/math-notes.md).
CVector channel_diagonal(const ChannelModel& ch, Index n);

/// ZF: 1/d_k per tone (throws, naming the tone, on a spectral null).
/// MMSE: conj(d_k) / (|d_k|^2 + 1/snr) with snr = sigma_x^2 / sigma_q^2.
/// Identity: all-ones.
DiagonalEqualizer make_equalizer(EqualizerKind kind, const CVector& d, double snr = 0.0);

}  // namespace ofdm
