// SPDX-License-Identifier: Apache-2.0
#include "ofdm/model.hpp"

#include <cmath>
#include <numbers>

namespace ofdm {

CMatrix dft_matrix(Index n) {
  if (n < 1) throw std::invalid_argument("dft_matrix: n must be >= 1");
  CMatrix w(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
  for (Index k = 0; k < n; ++k) {
    for (Index c = 0; c < n; ++c) {
      // Reduce k*c mod n before forming the angle; keeps the phase accurate
      // for large products.
      const Index r = (k * c) % n;
      w(k, c) = std::polar(scale, step * static_cast<double>(r));
    }
  }
  return w;
}

RedundancyMatrices redundancy_matrices(const OFDMConfig& cfg) {
  const Index n = cfg.n_subcarriers;
  const Index mu = cfg.redundancy;
  const Index n0 = cfg.block_len();
  RedundancyMatrices rm;
  rm.gamma = CMatrix::Zero(n0, n);
  rm.upsilon = CMatrix::Zero(n, n0);
  if (cfg.scheme == Scheme::CP) {
    rm.gamma.topRows(mu) = CMatrix::Identity(n, n).bottomRows(mu);
    rm.gamma.bottomRows(n).setIdentity();
    rm.upsilon.rightCols(n).setIdentity();
  } else {  // ZP-OLA
    rm.gamma.topRows(n).setIdentity();
    rm.upsilon.leftCols(n).setIdentity();
    rm.upsilon.block(0, n, mu, mu).setIdentity();
  }
  return rm;
}

CMatrix transmit_matrix(const OFDMConfig& cfg) {
  return redundancy_matrices(cfg).gamma * dft_matrix(cfg.n_subcarriers).adjoint();
}

CMatrix receive_front(const OFDMConfig& cfg) {
  return dft_matrix(cfg.n_subcarriers) * redundancy_matrices(cfg).upsilon;
}

Index ChannelBlockSet::nonzero_block_count() const {
  Index count = 0;
  for (const auto& b : blocks)
    if (!b.isZero(0.0)) ++count;
  return count;
}

ChannelBlockSet channel_blocks(const OFDMConfig& cfg, const ChannelModel& ch) {
  const Index n0 = cfg.block_len();
  const Index delta = cfg.sync_delay;
  const Index nu = ch.order();
  const Index m_span = (nu + n0 - 1) / n0;  // ceil(nu / N0)

  ChannelBlockSet set;
  set.m_span = m_span;
  set.rho = nu >= 1 ? nu - 1 - (m_span - 1) * n0 : -1;
  set.blocks.reserve(static_cast<size_t>(m_span + 2));
  for (Index m = -1; m <= m_span; ++m) {
    CMatrix blk = CMatrix::Zero(n0, n0);
    for (Index b = 0; b < n0; ++b) {
      for (Index c = 0; c < n0; ++c) {
        const Index tap = m * n0 + b - c + delta;
        if (tap >= 0 && tap <= nu) blk(b, c) = ch.taps(tap);
      }
    }
    set.blocks.push_back(std::move(blk));
  }
  return set;
}

Index predicted_nonzero_blocks(const OFDMConfig& cfg, const ChannelModel& ch) {
  const Index n0 = cfg.block_len();
  const Index nu = ch.order();
  const Index m_span = (nu + n0 - 1) / n0;
  const Index rho_eff = nu >= 1 ? nu - 1 - (m_span - 1) * n0 : n0 - 1;
  const bool both_edges = cfg.sync_delay >= 1 && cfg.sync_delay <= rho_eff;
  return m_span + (both_edges ? 2 : 1);
}

}  // namespace ofdm
