// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ofdm/analysis.hpp"
#include "ofdm/types.hpp"

namespace ofdm {

/// Parameters of the SNR-gap rate computation.
struct RateParams {
  double ser_target;        // target symbol error rate, in (0, 1)
  double design_margin_db;  // gamma_dm
  double coding_gain_db;    // gamma_c
  double sampling_rate_hz;  // f_s
  std::vector<Index> active_tones;

  RateParams(double ser, double margin_db, double coding_db, double fs,
             std::vector<Index> tones)
      : ser_target(ser),
        design_margin_db(margin_db),
        coding_gain_db(coding_db),
        sampling_rate_hz(fs),
        active_tones(std::move(tones)) {
    if (!(ser > 0.0 && ser < 1.0))
      throw std::invalid_argument("RateParams: ser_target must lie in (0, 1)");
    if (!(fs > 0.0)) throw std::invalid_argument("RateParams: sampling_rate_hz must be > 0");
    if (active_tones.empty())
      throw std::invalid_argument("RateParams: active_tones must not be empty");
  }
};

/// Inverse of the standard normal tail function Q(x) = 0.5*erfc(x/sqrt(2)).
/// Rational initial guess refined by Newton steps on erfc; relative error
/// below 1e-12 over (0, 1).
double inverse_q(double p);

/// Modulation gap Gamma_m = (1/3) * [Q^{-1}(ser/4)]^2, linear scale.
double gamma_m(double ser);

/// Total SNR gap: design margin minus coding gain plus the modulation gap,
/// assembled in dB and returned linear.
double snr_gap(const RateParams& p);

/// Per-tone capacity log2(1 + sinr/gap) in bits per symbol.
double tone_capacity(double sinr, double gap);

/// Aggregate rate R = f_s * (N/N0) * sum over active tones of the per-tone
/// capacity, in bits/s. Throws if an active tone index is out of range.
double achievable_rate(const InterferenceReport& report, const OFDMConfig& cfg,
                       const RateParams& p);

inline double db_from_linear(double x) { return 10.0 * std::log10(x); }
inline double linear_from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace ofdm
