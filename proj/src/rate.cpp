// SPDX-License-Identifier: Apache-2.0
#include "ofdm/rate.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ofdm {
namespace {

// Lower-tail rational approximation of the standard normal quantile
// (Acklam's coefficients), valid for p in (0, 0.02425]. The central branch
// handles the rest. Accuracy ~1e-9 before refinement.
double norm_quantile_estimate(double p) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) return -norm_quantile_estimate(1.0 - p);
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double q_func(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

}  // namespace

double inverse_q(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("inverse_q: argument must lie in (0, 1)");
  // Q^{-1}(p) = -Phi^{-1}(p); polish with Newton on Q(x) - p. Two steps take
  // the rational estimate to machine accuracy.
  double x = -norm_quantile_estimate(p);
  for (int i = 0; i < 2; ++i) {
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    if (pdf == 0.0) break;
    x += (q_func(x) - p) / pdf;
  }
  return x;
}

double gamma_m(double ser) {
  if (!(ser > 0.0 && ser < 1.0))
    throw std::invalid_argument("gamma_m: ser must lie in (0, 1)");
  const double z = inverse_q(ser / 4.0);
  return z * z / 3.0;
}

double snr_gap(const RateParams& p) {
  const double gap_db =
      p.design_margin_db - p.coding_gain_db + db_from_linear(gamma_m(p.ser_target));
  return linear_from_db(gap_db);
}

double tone_capacity(double sinr, double gap) {
  if (!(sinr >= 0.0)) throw std::invalid_argument("tone_capacity: sinr must be >= 0");
  if (!(gap > 0.0)) throw std::invalid_argument("tone_capacity: gap must be > 0");
  return std::log2(1.0 + sinr / gap);
}

double achievable_rate(const InterferenceReport& report, const OFDMConfig& cfg,
                       const RateParams& p) {
  const Index n = report.sinr.size();
  if (n != cfg.n_subcarriers)
    throw std::invalid_argument("achievable_rate: report dimension does not match config");
  const double gap = snr_gap(p);
  double bits = 0.0;
  for (Index k : p.active_tones) {
    if (k < 0 || k >= n)
      throw std::out_of_range("achievable_rate: active tone " + std::to_string(k) +
                              " out of range for N = " + std::to_string(n));
    bits += tone_capacity(report.sinr(k), gap);
  }
  return p.sampling_rate_hz * static_cast<double>(cfg.n_subcarriers) /
         static_cast<double>(cfg.block_len()) * bits;
}

}  // namespace ofdm
