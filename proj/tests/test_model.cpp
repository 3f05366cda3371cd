// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ofdm/model.hpp"
#include "ofdm/rng.hpp"

using namespace ofdm;

namespace {

CVector random_taps(SubstreamRng& rng, Index len) {
  CVector h(len);
  for (Index i = 0; i < len; ++i) h(i) = rng.next_complex_normal();
  return h;
}

// Brute-force reference: the receiver frame for block l is a slice of the
// stream-level convolution y = h * x at rows [l*N0 + delta, ... + N0). The
// tile of that operator acting on block s must match H_(l-s).
CMatrix conv_tile(const CVector& h, Index n0, Index delta, Index l, Index s) {
  CMatrix tile = CMatrix::Zero(n0, n0);
  const Index nu = h.size() - 1;
  for (Index b = 0; b < n0; ++b) {
    const Index row = l * n0 + delta + b;  // stream output index
    for (Index c = 0; c < n0; ++c) {
      const Index col = s * n0 + c;  // stream input index
      const Index lag = row - col;
      if (lag >= 0 && lag <= nu) tile(b, c) = h(lag);
    }
  }
  return tile;
}

}  // namespace

TEST_CASE("dft_matrix small cases") {
  const CMatrix w1 = dft_matrix(1);
  CHECK(w1.rows() == 1);
  CHECK(w1(0, 0) == Complex(1.0, 0.0));

  const CMatrix w2 = dft_matrix(2);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(w2(0, 0) - Complex(s, 0)) < 1e-15);
  CHECK(std::abs(w2(0, 1) - Complex(s, 0)) < 1e-15);
  CHECK(std::abs(w2(1, 0) - Complex(s, 0)) < 1e-15);
  CHECK(std::abs(w2(1, 1) - Complex(-s, 0)) < 1e-15);

  const CMatrix w8 = dft_matrix(8);
  const CMatrix eye = w8 * w8.adjoint();
  CHECK((eye - CMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("dft_matrix unitary for n = 1..64") {
  for (Index n = 1; n <= 64; ++n) {
    const CMatrix w = dft_matrix(n);
    const double err = (w * w.adjoint() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    CHECK(err < 1e-13);
  }
}

TEST_CASE("redundancy matrices, CP") {
  const OFDMConfig cfg(4, 1, Scheme::CP);
  const auto rm = redundancy_matrices(cfg);
  REQUIRE(rm.gamma.rows() == 5);
  REQUIRE(rm.gamma.cols() == 4);
  CHECK(rm.gamma.row(0) == Eigen::RowVector4cd(0, 0, 0, 1));
  CHECK(rm.gamma.bottomRows(4) == CMatrix::Identity(4, 4));
  CHECK(rm.upsilon.leftCols(1) == CMatrix::Zero(4, 1));
  CHECK(rm.upsilon.rightCols(4) == CMatrix::Identity(4, 4));
}

TEST_CASE("redundancy matrices, ZP-OLA") {
  const OFDMConfig cfg(4, 1, Scheme::ZP_OLA);
  const auto rm = redundancy_matrices(cfg);
  CHECK(rm.gamma.topRows(4) == CMatrix::Identity(4, 4));
  CHECK(rm.gamma.row(4) == Eigen::RowVector4cd(0, 0, 0, 0));
  CHECK(rm.upsilon.leftCols(4) == CMatrix::Identity(4, 4));
  CHECK(rm.upsilon.col(4) == CMatrix::Identity(4, 4).col(0));
}

TEST_CASE("redundancy matrices degenerate to identity at mu = 0") {
  for (const Scheme s : {Scheme::CP, Scheme::ZP_OLA}) {
    const auto rm = redundancy_matrices(OFDMConfig(6, 0, s));
    CHECK(rm.gamma == CMatrix::Identity(6, 6));
    CHECK(rm.upsilon == CMatrix::Identity(6, 6));
  }
}

TEST_CASE("transmit and receive-front structure") {
  CHECK((transmit_matrix(OFDMConfig(2, 0, Scheme::CP)) - dft_matrix(2).adjoint())
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  const OFDMConfig cfg(4, 1, Scheme::CP);
  const CMatrix t = transmit_matrix(cfg);
  CHECK((t.row(0) - t.row(4)).cwiseAbs().maxCoeff() < 1e-15);  // CP repeats the tail sample

  const CMatrix round_trip = receive_front(cfg) * t;
  CHECK((round_trip - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("channel_blocks: identity channel") {
  const OFDMConfig cfg(4, 2, Scheme::CP);
  const ChannelModel ch{CVector::Ones(1)};
  const auto set = channel_blocks(cfg, ch);
  CHECK(set.m_span == 0);
  CHECK(set.rho == -1);
  REQUIRE(set.blocks.size() == 2);
  CHECK(set.block(0) == CMatrix::Identity(6, 6));
  CHECK(set.block(-1) == CMatrix::Zero(6, 6));
}

TEST_CASE("channel_blocks: one-block pure delay") {
  const OFDMConfig cfg(4, 1, Scheme::CP);  // N0 = 5
  CVector h = CVector::Zero(6);
  h(5) = 1.0;  // impulse at lag N0
  const auto set = channel_blocks(cfg, ChannelModel{h});
  CHECK(set.m_span == 1);
  CHECK(set.block(0) == CMatrix::Zero(5, 5));
  CHECK(set.block(1) == CMatrix::Identity(5, 5));
}

TEST_CASE("channel_blocks match tiles of the stream convolution operator") {
  SubstreamRng rng(2024, 0);
  const OFDMConfig cfg(4, 1, Scheme::CP, 2);  // N0 = 5
  const ChannelModel ch{random_taps(rng, 14)};  // nu = 13, M = 3
  const auto set = channel_blocks(cfg, ch);
  REQUIRE(set.m_span == 3);
  CHECK(set.rho == 13 - 1 - 2 * 5);  // nu = (M-1)*N0 + rho + 1

  const Index l = set.m_span + 2;
  for (Index m = -1; m <= set.m_span; ++m) {
    const CMatrix tile = conv_tile(ch.taps, cfg.block_len(), cfg.sync_delay, l, l - m);
    CHECK((tile - set.block(m)).cwiseAbs().maxCoeff() <= 1e-15);
  }
  // Blocks outside {-1, ..., M} carry nothing.
  CHECK(conv_tile(ch.taps, cfg.block_len(), cfg.sync_delay, l, l + 2).isZero(0.0));
  CHECK(conv_tile(ch.taps, cfg.block_len(), cfg.sync_delay, l, l - set.m_span - 1).isZero(0.0));
}

TEST_CASE("Frobenius energy identity over random instances") {
  SubstreamRng rng(7, 0);
  for (int trial = 0; trial < 120; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.next_index(15));
    const Index mu = static_cast<Index>(rng.next_index(n));
    const Index n0 = n + mu;
    const Index nu = static_cast<Index>(rng.next_index(5 * n0 + 1));
    const Index delta = static_cast<Index>(rng.next_index(n0));
    const OFDMConfig cfg(n, mu, trial % 2 ? Scheme::CP : Scheme::ZP_OLA, delta);
    const ChannelModel ch{random_taps(rng, nu + 1)};

    double total = 0.0;
    for (const auto& blk : channel_blocks(cfg, ch).blocks) total += blk.squaredNorm();
    const double expected = static_cast<double>(n0) * ch.taps.squaredNorm();
    CHECK(total == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("blocks are banded by the tap-index rule") {
  SubstreamRng rng(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.next_index(7));
    const Index mu = static_cast<Index>(rng.next_index(n));
    const Index n0 = n + mu;
    const Index nu = static_cast<Index>(rng.next_index(3 * n0 + 1));
    const Index delta = static_cast<Index>(rng.next_index(n0));
    const OFDMConfig cfg(n, mu, Scheme::CP, delta);
    const ChannelModel ch{random_taps(rng, nu + 1)};
    const auto set = channel_blocks(cfg, ch);
    for (Index m = -1; m <= set.m_span; ++m)
      for (Index b = 0; b < n0; ++b)
        for (Index c = 0; c < n0; ++c) {
          const Index tap = m * n0 + b - c + delta;
          if (tap < 0 || tap > nu) CHECK(set.block(m)(b, c) == Complex(0.0, 0.0));
        }
  }
}

TEST_CASE("nonzero-block count follows the delta/rho rule (moderate sweep)") {
  for (Index n = 1; n <= 6; ++n) {
    for (Index mu = 0; mu < n; ++mu) {
      const Index n0 = n + mu;
      for (Index nu = 0; nu <= 3 * n0; ++nu) {
        CVector taps = CVector::Ones(nu + 1);  // all taps nonzero
        const ChannelModel ch{taps};
        for (Index delta = 0; delta < n0; ++delta) {
          const OFDMConfig cfg(n, mu, Scheme::CP, delta);
          const auto set = channel_blocks(cfg, ch);
          CHECK(set.nonzero_block_count() == predicted_nonzero_blocks(cfg, ch));
        }
      }
    }
  }
}

TEST_CASE("invariant violations are rejected") {
  CHECK_THROWS_AS(OFDMConfig(4, 4, Scheme::CP), std::invalid_argument);   // mu >= N
  CHECK_THROWS_AS(OFDMConfig(4, 1, Scheme::CP, 5), std::invalid_argument);  // delta >= N0
  CHECK_THROWS_AS(OFDMConfig(0, 0, Scheme::CP), std::invalid_argument);
  CHECK_THROWS_AS(ChannelModel{CVector()}, std::invalid_argument);
  CHECK_THROWS_AS(ChannelModel{CVector::Zero(3)}, std::invalid_argument);
  CHECK_THROWS_AS(dft_matrix(0), std::invalid_argument);
}
