// SPDX-License-Identifier: Apache-2.0
#include "ofdm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ofdm/model.hpp"
#include "ofdm/rng.hpp"

namespace ofdm {
namespace {

struct KahanComplex {
  Complex sum{0.0, 0.0};
  Complex comp{0.0, 0.0};
  void add(Complex v) {
    const Complex y = v - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct KahanReal {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

constexpr uint64_t kSymbolStream = 0;
constexpr uint64_t kNoiseStream = 1;
constexpr Index kChunkBlocks = 1024;

// Streams the transmission chunk by chunk and hands each measured block's
// pre-equalizer tone vector Y[l], together with the transmitted symbols
// X[l], to `consume`. Both passes of the estimator replay exactly the same
// stream because symbols and noise sit on their own substreams.
template <typename Consumer>
void run_stream(const OFDMConfig& cfg, const ChannelModel& ch, const SimConfig& sim,
                long warmup, long total, Consumer&& consume) {
  const Index n = cfg.n_subcarriers;
  const Index n0 = cfg.block_len();
  const Index mu = cfg.redundancy;
  const Index delta = cfg.sync_delay;
  const Index nu = ch.order();
  const Index hist = nu + n0;  // samples carried across chunk boundaries

  const CMatrix idft = dft_matrix(n).adjoint();
  const CMatrix recv = receive_front(cfg);
  const double sym_scale = std::sqrt(sim.stats.sigma2_x);
  const double noise_scale = std::sqrt(sim.stats.sigma2_q);

  SubstreamRng sym_rng(sim.seed, kSymbolStream);
  SubstreamRng noise_rng(sim.seed, kNoiseStream);
  const CVector points = sym_scale * sim.constellation.points;
  const Index n_points = points.size();

  CVector xbuf(hist + kChunkBlocks * n0);
  xbuf.head(hist).setZero();  // stream is zero before block 0
  CMatrix symbols(n, kChunkBlocks);
  CMatrix time_blocks(n, kChunkBlocks);
  CVector ybuf(kChunkBlocks * n0);
  CMatrix y_tones(n, kChunkBlocks);
  CMatrix prev_symbols = CMatrix::Zero(n, 1);

  const long frame_lag = delta > 0 ? 1 : 0;  // frame l needs x into block l+1
  long next_frame = 0;
  for (long b0 = 0; b0 < total; b0 += kChunkBlocks) {
    const long b1 = std::min<long>(b0 + kChunkBlocks, total);
    const Index nb = static_cast<Index>(b1 - b0);

    for (Index col = 0; col < nb; ++col)
      for (Index k = 0; k < n; ++k)
        symbols(k, col) = points(sym_rng.next_index(n_points));
    time_blocks.leftCols(nb).noalias() = idft * symbols.leftCols(nb);

    for (Index col = 0; col < nb; ++col) {
      auto block = xbuf.segment(hist + col * n0, n0);
      const auto s = time_blocks.col(col);
      if (cfg.scheme == Scheme::CP) {
        block.head(mu) = s.tail(mu);
        block.tail(n) = s;
      } else {
        block.head(n) = s;
        block.tail(mu).setZero();
      }
    }

    // Frames whose full channel context is inside the buffer.
    const long f1 = std::min<long>(b1 - frame_lag, warmup + sim.n_blocks);
    const long f0 = std::max<long>(next_frame, warmup);
    if (f1 > f0) {
      const Index nf = static_cast<Index>(f1 - f0);
      const Index base = static_cast<Index>(b0) * n0 - hist;  // global index of xbuf(0)
      const Index start = static_cast<Index>(f0) * n0 + delta - base;
      auto yseg = ybuf.head(nf * n0);
      yseg.setZero();
      for (Index j = 0; j <= nu; ++j)
        yseg += ch.taps(j) * xbuf.segment(start - j, nf * n0);
      if (noise_scale > 0.0)
        for (Index i = 0; i < nf * n0; ++i)
          yseg(i) += noise_scale * noise_rng.next_complex_normal();

      Eigen::Map<const CMatrix> frames(ybuf.data(), n0, nf);
      y_tones.leftCols(nf).noalias() = recv * frames;
      for (Index i = 0; i < nf; ++i) {
        const long l = f0 + i;
        const auto x_col =
            l >= b0 ? symbols.col(static_cast<Index>(l - b0)) : prev_symbols.col(0);
        consume(y_tones.col(i), x_col);
      }
    }
    next_frame = std::max(next_frame, f1);

    prev_symbols.col(0) = symbols.col(nb - 1);
    const CVector tail = xbuf.segment(nb * n0, hist);  // may overlap the head
    xbuf.head(hist) = tail;
  }
}

}  // namespace

Constellation Constellation::make(ConstellationKind kind) {
  Constellation c;
  c.label = kind;
  auto square_grid = [](Index per_axis, double norm) {
    CVector pts(per_axis * per_axis);
    Index idx = 0;
    for (Index a = 0; a < per_axis; ++a)
      for (Index b = 0; b < per_axis; ++b)
        pts(idx++) = Complex(static_cast<double>(2 * a - per_axis + 1),
                             static_cast<double>(2 * b - per_axis + 1)) /
                     norm;
    return pts;
  };
  switch (kind) {
    case ConstellationKind::QPSK:
      c.points = square_grid(2, std::sqrt(2.0));
      break;
    case ConstellationKind::QAM16:
      c.points = square_grid(4, std::sqrt(10.0));
      break;
    case ConstellationKind::QAM64:
      c.points = square_grid(8, std::sqrt(42.0));
      break;
  }
  return c;
}

SimResult simulate_stream(const OFDMConfig& cfg, const ChannelModel& ch, const SimConfig& sim) {
  if (sim.n_blocks < 1000)
    throw std::invalid_argument("simulate_stream: n_blocks must be >= 1000 for power estimation");
  const double mean_power = sim.constellation.points.cwiseAbs2().mean();
  if (std::abs(mean_power - 1.0) > 1e-9)
    throw std::invalid_argument("simulate_stream: constellation must have unit average power");

  const Index n = cfg.n_subcarriers;
  const Index n0 = cfg.block_len();
  const Index m_span = (ch.order() + n0 - 1) / n0;
  const long warmup = std::max<long>(sim.warmup_blocks, m_span + 2);
  if (warmup >= sim.n_blocks)
    throw std::invalid_argument("simulate_stream: warmup (" + std::to_string(warmup) +
                                " blocks) reaches n_blocks; increase n_blocks");
  const long total = sim.n_blocks + 2 * warmup;
  const double inv_count = 1.0 / static_cast<double>(sim.n_blocks);

  // Pass 1: cross-correlation estimate of the per-tone desired gain.
  std::vector<KahanComplex> s_yx(static_cast<size_t>(n));
  run_stream(cfg, ch, sim, warmup, total, [&](const auto& y, const auto& x) {
    for (Index k = 0; k < n; ++k) s_yx[static_cast<size_t>(k)].add(y(k) * std::conj(x(k)));
  });
  CVector b_hat(n);
  for (Index k = 0; k < n; ++k)
    b_hat(k) = s_yx[static_cast<size_t>(k)].sum * inv_count / sim.stats.sigma2_x;

  // Pass 2: residual power about the estimated desired component.
  std::vector<KahanReal> resid(static_cast<size_t>(n));
  run_stream(cfg, ch, sim, warmup, total, [&](const auto& y, const auto& x) {
    for (Index k = 0; k < n; ++k) resid[static_cast<size_t>(k)].add(std::norm(y(k) - b_hat(k) * x(k)));
  });

  SimResult res;
  res.n_blocks_used = sim.n_blocks;
  res.b_des_hat = b_hat;
  res.p_signal = sim.stats.sigma2_x * b_hat.cwiseAbs2();
  res.p_interference_plus_noise.resize(n);
  res.sinr.resize(n);
  for (Index k = 0; k < n; ++k) {
    const double pin = resid[static_cast<size_t>(k)].sum * inv_count;
    res.p_interference_plus_noise(k) = pin;
    if (res.p_signal(k) == 0.0)
      res.sinr(k) = 0.0;
    else if (pin == 0.0)
      res.sinr(k) = std::numeric_limits<double>::infinity();
    else
      res.sinr(k) = res.p_signal(k) / pin;
  }
  return res;
}

}  // namespace ofdm
