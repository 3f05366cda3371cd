// SPDX-License-Identifier: Apache-2.0
#include "ofdm/analysis.hpp"

#include <limits>

namespace ofdm {

InterferenceMatrices interference_matrices(const OFDMConfig& cfg, const ChannelModel& ch) {
  const Index n = cfg.n_subcarriers;
  const auto rm = redundancy_matrices(cfg);
  const CMatrix w = dft_matrix(n);
  const CMatrix front = w * rm.upsilon;          // N x N0
  const CMatrix back = rm.gamma * w.adjoint();   // N0 x N
  const ChannelBlockSet blocks = channel_blocks(cfg, ch);

  InterferenceMatrices im;
  im.g_noise = front;
  im.a_blocks.reserve(static_cast<size_t>(blocks.m_span + 1));
  for (Index m = -1; m <= blocks.m_span; ++m) {
    CMatrix op = front * (blocks.block(m) * back);
    if (m == 0) {
      im.b_full = std::move(op);
    } else {
      im.a_blocks.push_back({m, std::move(op)});
    }
  }
  im.b_des = im.b_full.diagonal();
  im.b_ici1 = im.b_full;
  im.b_ici1.diagonal().setZero();
  return im;
}

Covariances covariances(const InterferenceMatrices& im, const SignalStats& stats) {
  const Index n = im.b_full.rows();
  Covariances cov;
  cov.c_s = CMatrix::Zero(n, n);
  cov.c_s.diagonal() = (stats.sigma2_x * im.b_des.cwiseAbs2()).cast<Complex>();
  cov.c_i = CMatrix::Zero(n, n);
  cov.c_i.noalias() += im.b_ici1 * im.b_ici1.adjoint();
  for (const auto& a : im.a_blocks) cov.c_i.noalias() += a.mat * a.mat.adjoint();
  cov.c_i *= stats.sigma2_x;
  cov.c_n = stats.sigma2_q * (im.g_noise * im.g_noise.adjoint());
  return cov;
}

InterferenceReport analyze(const InterferenceMatrices& im, const SignalStats& stats) {
  const Index n = im.b_full.rows();
  const double sx = stats.sigma2_x;

  InterferenceReport rep;
  rep.p_signal = sx * im.b_des.cwiseAbs2();
  rep.p_ici1 = sx * im.b_ici1.cwiseAbs2().rowwise().sum();
  rep.p_isi = RVector::Zero(n);
  rep.p_ici2 = RVector::Zero(n);
  for (const auto& a : im.a_blocks) {
    const RVector diag2 = a.mat.diagonal().cwiseAbs2();
    rep.p_isi += sx * diag2;
    rep.p_ici2 += sx * (a.mat.cwiseAbs2().rowwise().sum() - diag2);
  }
  rep.p_noise = stats.sigma2_q * im.g_noise.cwiseAbs2().rowwise().sum();

  rep.sinr = RVector::Zero(n);
  for (Index k = 0; k < n; ++k) {
    const double denom = rep.p_isi(k) + rep.p_ici1(k) + rep.p_ici2(k) + rep.p_noise(k);
    if (rep.p_signal(k) == 0.0) {
      rep.sinr(k) = 0.0;  // spectral null: report 0 rather than NaN
    } else if (denom == 0.0) {
      rep.sinr(k) = std::numeric_limits<double>::infinity();
    } else {
      rep.sinr(k) = rep.p_signal(k) / denom;
    }
  }
  return rep;
}

InterferenceReport analyze(const OFDMConfig& cfg, const ChannelModel& ch,
                           const SignalStats& stats) {
  return analyze(interference_matrices(cfg, ch), stats);
}

}  // namespace ofdm
