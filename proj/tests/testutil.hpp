// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "ofdm/channels.hpp"
#include "ofdm/rng.hpp"
#include "ofdm/types.hpp"

namespace testutil {

inline ofdm::CVector random_taps(ofdm::SubstreamRng& rng, ofdm::Index len) {
  ofdm::CVector h(len);
  for (ofdm::Index i = 0; i < len; ++i) h(i) = rng.next_complex_normal();
  return h;
}

inline double db(double x) { return 10.0 * std::log10(x); }

/// Random decaying channel rescaled so that exactly `tail_fraction` of its
/// energy lies at tap indices >= cut.
inline ofdm::ChannelModel make_tail_heavy_channel(ofdm::Index nu, ofdm::Index cut,
                                                  double tail_fraction, uint64_t seed) {
  using namespace ofdm;
  ChannelModel base = synth_exponential(nu, 1.5 / static_cast<double>(nu), seed);
  CVector taps = base.taps;
  const double head = taps.head(cut).cwiseAbs2().sum();
  const double tail = taps.tail(taps.size() - cut).cwiseAbs2().sum();
  const double alpha = std::sqrt(tail_fraction * head / ((1.0 - tail_fraction) * tail));
  taps.tail(taps.size() - cut) *= alpha;
  return ChannelModel{taps};
}

}  // namespace testutil
