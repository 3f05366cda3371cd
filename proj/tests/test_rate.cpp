// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ofdm/analysis.hpp"
#include "ofdm/rate.hpp"

using namespace ofdm;

namespace {

// Independent high-accuracy route for the oracle: long-double tail function
// and bisection for its inverse.
long double q_ref(long double x) { return 0.5L * erfcl(x / std::numbers::sqrt2_v<long double>); }

double q_inv_bisect(double p) {
  long double lo = -40.0L, hi = 40.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (q_ref(mid) > static_cast<long double>(p) ? lo : hi) = mid;
  }
  return static_cast<double>(0.5L * (lo + hi));
}

RateParams params_s5(double fs = 2.208e6) {
  std::vector<Index> tones;
  for (Index k = 7; k <= 256; ++k) tones.push_back(k);
  return RateParams(1e-7, 6.0, 4.2, fs, std::move(tones));
}

InterferenceReport flat_report(Index n, double sinr) {
  InterferenceReport rep;
  rep.sinr = RVector::Constant(n, sinr);
  return rep;
}

}  // namespace

TEST_CASE("gamma_m at SER 1e-7 lands on the quoted 9.8 dB figure") {
  const double gm_db = db_from_linear(gamma_m(1e-7));
  CHECK(std::abs(gm_db - 9.8) <= 0.2);
}

TEST_CASE("gamma_m inversion identity: SER = 4*Q(sqrt(3)) gives a unit gap") {
  const double ser = 4.0 * 0.5 * std::erfc(std::sqrt(3.0) / std::numbers::sqrt2);
  CHECK(gamma_m(ser) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("inverse_q agrees with the bisection oracle") {
  for (const double p : {1e-12, 2.5e-8, 1e-7, 1e-5, 2.5e-4, 1e-3, 0.04, 0.16, 0.5, 0.9, 0.999}) {
    const double ref = q_inv_bisect(p);
    const double got = inverse_q(p);
    if (std::abs(ref) > 1e-12)
      CHECK(std::abs(got - ref) <= 1e-10 * std::abs(ref));
    else
      CHECK(std::abs(got - ref) <= 1e-12);
  }
  const double gm = gamma_m(1e-3);
  const double z = q_inv_bisect(0.25e-3);
  CHECK(gm == doctest::Approx(z * z / 3.0).epsilon(1e-8));
  CHECK_THROWS_AS(inverse_q(0.0), std::invalid_argument);
  CHECK_THROWS_AS(inverse_q(1.0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_m(-0.1), std::invalid_argument);
}

TEST_CASE("snr_gap assembles margins in dB") {
  CHECK(std::abs(db_from_linear(snr_gap(params_s5())) - 11.6) <= 0.2);

  const double ser_unit = 4.0 * 0.5 * std::erfc(std::sqrt(3.0) / std::numbers::sqrt2);
  const RateParams no_margin(ser_unit, 0.0, 0.0, 1.0, {0});
  CHECK(snr_gap(no_margin) == doctest::Approx(1.0).epsilon(1e-9));

  const RateParams cancel(1e-4, 3.0, 3.0, 1.0, {0});
  CHECK(snr_gap(cancel) == doctest::Approx(gamma_m(1e-4)).epsilon(1e-12));
}

TEST_CASE("tone_capacity") {
  CHECK(tone_capacity(0.0, 3.2) == 0.0);
  CHECK(tone_capacity(7.5, 7.5) == doctest::Approx(1.0).epsilon(1e-15));
  const double gap = std::pow(10.0, 1.16);
  CHECK(tone_capacity(1000.0, gap) == doctest::Approx(std::log2(1.0 + 1000.0 / gap)));
  CHECK(tone_capacity(1000.0, gap) == doctest::Approx(6.1338).epsilon(1e-3));
  CHECK_THROWS_AS(tone_capacity(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("achievable_rate basics") {
  const OFDMConfig cfg(8, 2, Scheme::CP);
  const RateParams p(1e-7, 6.0, 4.2, 1.0, {0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(achievable_rate(flat_report(8, 0.0), cfg, p) == 0.0);

  // One active tone at SINR = gap, f_s = N0/N: exactly 1 bit/s.
  const RateParams single(1e-7, 6.0, 4.2, 10.0 / 8.0, {3});
  InterferenceReport rep = flat_report(8, snr_gap(single));
  CHECK(achievable_rate(rep, cfg, single) == doctest::Approx(1.0).epsilon(1e-12));

  const RateParams bad(1e-7, 6.0, 4.2, 1.0, {8});
  CHECK_THROWS_AS(achievable_rate(flat_report(8, 1.0), cfg, bad), std::out_of_range);
}

TEST_CASE("achievable_rate on a flat channel matches the closed form") {
  const OFDMConfig cfg(512, 32, Scheme::CP);
  const double fs = 2.208e6;
  const double sigma2_x = std::pow(10.0, (23.0 - 30.0) / 10.0) * fs;
  const double sigma2_q = std::pow(10.0, (-140.0 - 30.0) / 10.0) * fs;
  const RateParams p = params_s5(fs);

  const double sinr = sigma2_x / sigma2_q;
  const double rate = achievable_rate(flat_report(512, sinr), cfg, p);
  const double expected = fs * 512.0 / 544.0 * 250.0 * tone_capacity(sinr, snr_gap(p));
  CHECK(rate == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("rate properties: monotonicity, f_s scaling, mu penalty") {
  const OFDMConfig cfg(8, 2, Scheme::CP);
  const RateParams p(1e-5, 4.0, 2.0, 3.0, {0, 2, 5});
  InterferenceReport rep = flat_report(8, 12.0);
  const double base = achievable_rate(rep, cfg, p);

  InterferenceReport bumped = rep;
  bumped.sinr(2) += 1.0;
  CHECK(achievable_rate(bumped, cfg, p) > base);

  const RateParams wider_gap(1e-7, 4.0, 2.0, 3.0, {0, 2, 5});  // smaller SER -> larger gap
  REQUIRE(snr_gap(wider_gap) > snr_gap(p));
  CHECK(achievable_rate(rep, cfg, wider_gap) < base);

  const RateParams doubled(1e-5, 4.0, 2.0, 6.0, {0, 2, 5});
  CHECK(achievable_rate(rep, cfg, doubled) == doctest::Approx(2.0 * base).epsilon(1e-14));

  const OFDMConfig longer_cp(8, 4, Scheme::CP);
  CHECK(achievable_rate(rep, longer_cp, p) < base);
}
