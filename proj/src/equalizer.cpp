// SPDX-License-Identifier: Apache-2.0
#include "ofdm/equalizer.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ofdm {

CVector channel_diagonal(const ChannelModel& ch, Index n) {
  const Index nu = ch.order();
  if (nu >= n)
    throw std::invalid_argument("channel_diagonal: channel order " + std::to_string(nu) +
                                " does not fit in block size " + std::to_string(n));
  CVector d = CVector::Zero(n);
  const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
  for (Index k = 0; k < n; ++k) {
    Complex acc = 0.0;
    for (Index j = 0; j <= nu; ++j)
      acc += ch.taps(j) * std::polar(1.0, step * static_cast<double>((k * j) % n));
    d(k) = acc;
  }
  return d;
}

DiagonalEqualizer make_equalizer(EqualizerKind kind, const CVector& d, double snr) {
  const Index n = d.size();
  DiagonalEqualizer eq;
  eq.kind = kind;
  switch (kind) {
    case EqualizerKind::Identity:
      eq.coeffs = CVector::Ones(n);
      break;
    case EqualizerKind::ZF:
      eq.coeffs.resize(n);
      for (Index k = 0; k < n; ++k) {
        if (std::abs(d(k)) == 0.0)
          throw std::invalid_argument("make_equalizer: ZF undefined, spectral null at tone " +
                                      std::to_string(k));
        eq.coeffs(k) = 1.0 / d(k);
      }
      break;
    case EqualizerKind::MMSE:
      if (!(snr > 0.0)) throw std::invalid_argument("make_equalizer: MMSE requires snr > 0");
      eq.coeffs = d.conjugate().array() / (d.cwiseAbs2().array() + 1.0 / snr);
      break;
  }
  return eq;
}

}  // namespace ofdm
