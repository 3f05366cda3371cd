// SPDX-License-Identifier: Apache-2.0
#include "ofdm/teq.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <utility>

#include "ofdm/channels.hpp"
#include "ofdm/rng.hpp"

namespace ofdm {
namespace {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Dominant generalized eigenvector of (win_gram, wall_gram): whiten with the
// Cholesky factor of the regularized wall Gram, then run power iteration on
// the whitened matrix. Returns the unit-norm w and the achieved (regularized)
// objective value.
template <typename Scalar>
std::pair<VectorX<Scalar>, double> dominant_ratio_vector(const MatrixX<Scalar>& win_gram,
                                                         MatrixX<Scalar> wall_gram) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  const Index t = win_gram.rows();
  const Real eps = 1e-12 * std::real(wall_gram.trace()) / static_cast<Real>(t) +
                   1e-30 * std::real(win_gram.trace()) / static_cast<Real>(t);
  wall_gram.diagonal().array() += eps;

  Eigen::LLT<MatrixX<Scalar>> llt(wall_gram);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("design_mssnr: wall Gram matrix is singular even after regularization");
  const auto& l_factor = llt.matrixL();

  SubstreamRng rng(0x9d2c5680u, 0);  // fixed start keeps the design deterministic
  VectorX<Scalar> z(t);
  for (Index i = 0; i < t; ++i) {
    const Complex g = rng.next_complex_normal();
    if constexpr (Eigen::NumTraits<Scalar>::IsComplex)
      z(i) = Scalar(g.real(), g.imag());
    else
      z(i) = Scalar(g.real());
  }
  z.normalize();

  double lambda = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    VectorX<Scalar> v = l_factor.adjoint().solve(z);
    VectorX<Scalar> u = win_gram * v;
    VectorX<Scalar> next = l_factor.solve(u);
    const double lambda_new = std::real(z.dot(next));
    const double norm = next.norm();
    if (norm == 0.0) break;  // window carries no energy at all
    z = next / norm;
    if (std::abs(lambda_new - lambda) <= 1e-10 * std::max(1.0, std::abs(lambda_new))) {
      lambda = lambda_new;
      break;
    }
    lambda = lambda_new;
  }
  VectorX<Scalar> w = l_factor.adjoint().solve(z);
  w.normalize();
  return {w, lambda};
}

template <typename Scalar>
std::pair<CVector, double> mssnr_taps(const VectorX<Scalar>& taps, Index teq_len,
                                      Index window_len, Index delay) {
  const Index nu = taps.size() - 1;
  const Index rows = nu + teq_len;  // support of h*w
  // Convolution matrix: row i of C maps w to (h*w)_i.
  MatrixX<Scalar> conv_rows = MatrixX<Scalar>::Zero(rows, teq_len);
  for (Index i = 0; i < rows; ++i)
    for (Index j = std::max<Index>(0, i - nu); j < std::min(teq_len, i + 1); ++j)
      conv_rows(i, j) = taps(i - j);

  MatrixX<Scalar> win_gram = MatrixX<Scalar>::Zero(teq_len, teq_len);
  MatrixX<Scalar> wall_gram = MatrixX<Scalar>::Zero(teq_len, teq_len);
  for (Index i = 0; i < rows; ++i) {
    const bool in_window = i >= delay && i < delay + window_len;
    auto& gram = in_window ? win_gram : wall_gram;
    gram.noalias() += conv_rows.row(i).adjoint() * conv_rows.row(i);
  }

  auto [w, lambda] = dominant_ratio_vector<Scalar>(win_gram, wall_gram);
  (void)lambda;
  const VectorX<Scalar> c = conv_rows * w;
  double win = 0.0, wall = 0.0;
  for (Index i = 0; i < rows; ++i) {
    const double e = std::norm(c(i));
    (i >= delay && i < delay + window_len ? win : wall) += e;
  }
  const double floor = 1e-12 * wall + 1e-30 * win;  // matches the design regularization
  const double snr_db = 10.0 * std::log10(win / (wall + floor));

  CVector w_complex(teq_len);
  for (Index i = 0; i < teq_len; ++i) {
    if constexpr (Eigen::NumTraits<Scalar>::IsComplex)
      w_complex(i) = w(i);
    else
      w_complex(i) = Complex(w(i), 0.0);
  }
  return {std::move(w_complex), snr_db};
}

}  // namespace

CVector convolve(const CVector& a, const CVector& b) {
  CVector c = CVector::Zero(a.size() + b.size() - 1);
  for (Index i = 0; i < a.size(); ++i)
    for (Index j = 0; j < b.size(); ++j) c(i + j) += a(i) * b(j);
  return c;
}

TeqDesign design_mssnr(const ChannelModel& ch, Index teq_len, Index window_len, Index delay) {
  const Index nu = ch.order();
  if (teq_len < 1) throw std::invalid_argument("design_mssnr: teq_len must be >= 1");
  if (window_len < 1) throw std::invalid_argument("design_mssnr: window_len must be >= 1");
  if (delay < 0 || delay + window_len > nu + teq_len)
    throw std::invalid_argument("design_mssnr: invalid delay " + std::to_string(delay) +
                                " for window " + std::to_string(window_len) + " and response length " +
                                std::to_string(nu + teq_len));

  TeqDesign design;
  design.delay = delay;
  design.window_len = window_len;
  if (ch.taps.imag().isZero(0.0)) {
    const VectorX<double> real_taps = ch.taps.real();
    std::tie(design.taps, design.shortening_snr_db) =
        mssnr_taps<double>(real_taps, teq_len, window_len, delay);
  } else {
    std::tie(design.taps, design.shortening_snr_db) =
        mssnr_taps<Complex>(ch.taps, teq_len, window_len, delay);
  }
  return design;
}

double shortening_ratio(const ChannelModel& ch, const CVector& w, Index window_len, Index delay) {
  if (delay < 0) throw std::invalid_argument("shortening_ratio: delay must be >= 0");
  const CVector c = convolve(ch.taps, w);
  double win = 0.0, wall = 0.0;
  for (Index i = 0; i < c.size(); ++i) {
    const double e = std::norm(c(i));
    (i >= delay && i < delay + window_len ? win : wall) += e;
  }
  if (wall == 0.0) return std::numeric_limits<double>::infinity();
  return win / wall;
}

std::vector<SweepRow> sweep_rate(const ChannelModel& ch, const OFDMConfig& cfg_base,
                                 const SignalStats& stats, const RateParams& rate_params,
                                 const SweepSpec& spec, AnalysisMode mode,
                                 Index conventional_max_len, int threads) {
  if (spec.values.empty()) throw std::invalid_argument("sweep_rate: empty value grid");
  if (spec.delay_grid.empty()) throw std::invalid_argument("sweep_rate: empty delay grid");
  if (mode == AnalysisMode::Conventional && conventional_max_len < 1)
    throw std::invalid_argument("sweep_rate: conventional_max_len must be >= 1");

  auto eval_point = [&](Index value) -> SweepRow {
    const Index teq_len = spec.kind == SweepSpec::Kind::TeqLen ? value : spec.fixed_teq_len;
    const Index mu = spec.kind == SweepSpec::Kind::CpLen ? value : cfg_base.redundancy;
    const Index window_len = mu + 1;
    SweepRow best{value, -1, 0.0, 0.0};
    std::string last_error = "no candidate delays";
    for (Index d : spec.delay_grid) {
      try {
        const TeqDesign design = design_mssnr(ch, teq_len, window_len, d);
        ChannelModel oir(convolve(ch.taps, design.taps), ch.sampling_rate_hz);
        if (mode == AnalysisMode::Conventional)
          oir = truncate_cir(oir, conventional_max_len).channel;
        const OFDMConfig cfg(cfg_base.n_subcarriers, mu, cfg_base.scheme, d);
        const double rate = achievable_rate(analyze(cfg, oir, stats), cfg, rate_params);
        if (best.delay < 0 || rate > best.rate_bps)
          best = SweepRow{value, d, rate, design.shortening_snr_db};
      } catch (const std::exception& e) {
        last_error = e.what();  // candidate invalid for this grid point; skip
      }
    }
    if (best.delay < 0)
      throw std::runtime_error("sweep_rate: no valid delay for grid value " +
                               std::to_string(value) + " (" + last_error + ")");
    return best;
  };

  std::vector<SweepRow> rows(spec.values.size());
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(spec.values.size())));
  if (workers == 1) {
    for (size_t i = 0; i < spec.values.size(); ++i) rows[i] = eval_point(spec.values[i]);
  } else {
    std::atomic<size_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
      for (;;) {
        const size_t i = cursor.fetch_add(1);
        if (i >= spec.values.size()) return;
        try {
          rows[i] = eval_point(spec.values[i]);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  return rows;
}

}  // namespace ofdm
