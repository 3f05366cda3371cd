// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace ofdm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index   = Eigen::Index;

/// Redundancy scheme: cyclic prefix, or zero padding with overlap-and-add
/// at the receiver.
enum class Scheme { CP, ZP_OLA };

inline const char* to_string(Scheme s) {
  return s == Scheme::CP ? "CP" : "ZP-OLA";
}

/// Block-transmission parameters: N subcarriers, mu redundant samples per
/// block (so the transmitted block length is N0 = N + mu), and the receiver
/// synchronization delay delta in samples.
struct OFDMConfig {
  Index n_subcarriers;  // N
  Index redundancy;     // mu
  Scheme scheme;
  Index sync_delay;     // delta, in {0, ..., N0-1}

  OFDMConfig(Index n, Index mu, Scheme sch, Index delta = 0)
      : n_subcarriers(n), redundancy(mu), scheme(sch), sync_delay(delta) {
    if (n < 1) throw std::invalid_argument("OFDMConfig: n_subcarriers must be >= 1");
    if (mu < 0 || mu >= n)
      throw std::invalid_argument("OFDMConfig: redundancy must satisfy 0 <= mu < N");
    if (delta < 0 || delta >= n + mu)
      throw std::invalid_argument("OFDMConfig: sync_delay must lie in {0, ..., N0-1}");
  }

  /// Transmitted block length N0 = N + mu.
  Index block_len() const { return n_subcarriers + redundancy; }
};

/// Causal FIR channel h_0 ... h_nu. The sampling rate is carried as metadata
/// and enters only the data-rate computation.
struct ChannelModel {
  CVector taps;
  double sampling_rate_hz;

  explicit ChannelModel(CVector h, double fs = 1.0)
      : taps(std::move(h)), sampling_rate_hz(fs) {
    if (taps.size() < 1) throw std::invalid_argument("ChannelModel: need at least one tap");
    if (!taps.allFinite()) throw std::invalid_argument("ChannelModel: taps must be finite");
    if (taps.isZero(0.0)) throw std::invalid_argument("ChannelModel: taps must not be all zero");
    if (!(fs > 0.0)) throw std::invalid_argument("ChannelModel: sampling_rate_hz must be > 0");
  }

  /// Channel order nu (number of taps minus one).
  Index order() const { return taps.size() - 1; }
};

/// Second-order statistics of the transmitted symbols and the additive
/// noise, both modeled as zero-mean white WSS sequences.
struct SignalStats {
  double sigma2_x = 1.0;  // symbol variance
  double sigma2_q = 0.0;  // noise variance

  SignalStats(double sx, double sq) : sigma2_x(sx), sigma2_q(sq) {
    if (!(sx > 0.0)) throw std::invalid_argument("SignalStats: sigma2_x must be > 0");
    if (!(sq >= 0.0)) throw std::invalid_argument("SignalStats: sigma2_q must be >= 0");
  }
};

}  // namespace ofdm
