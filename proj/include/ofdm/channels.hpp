// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "ofdm/types.hpp"

namespace ofdm {

/// On-disk impulse-response file: plain text, one tap per line as "re,im" or
/// "re", '#' comments, optional "rate_hz=<float>" header. Values are written
/// with 17 significant digits so a save/load round trip is bit-exact.
struct CirFile {
  ChannelModel channel;
  std::string description;
};

CirFile load_cir_file(const std::string& path);
ChannelModel load_cir(const std::string& path);
void save_cir(const std::string& path, const ChannelModel& ch,
              const std::string& description = "");

/// Channel truncated to its first max_len taps, plus the energy fraction the
/// truncation discarded.
struct TruncatedChannel {
  ChannelModel channel;
  double discarded_energy_fraction;  // in [0, 1]
};

TruncatedChannel truncate_cir(const ChannelModel& ch, Index max_len);

/// Random long-tail channel: h_j = g_j * exp(-decay_rate * j) with g_j i.i.d.
/// unit complex Gaussian, deterministic in the seed.
ChannelModel synth_exponential(Index nu, double decay_rate, uint64_t seed);

/// Two-path channel: h_0 = 1 plus a single echo of the given gain.
ChannelModel synth_two_ray(Index delay, double gain);

}  // namespace ofdm
