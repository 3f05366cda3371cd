// SPDX-License-Identifier: Apache-2.0
#include "ofdm/channels.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "ofdm/rng.hpp"

namespace ofdm {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& path, long line_no) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": cannot parse number '" +
                             text + "'");
  if (!std::isfinite(value))
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": non-finite value");
  return value;
}

}  // namespace

CirFile load_cir_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CIR file: " + path);

  std::vector<Complex> taps;
  std::string description;
  double rate_hz = 1.0;
  std::string raw;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = trim(line.substr(1));
      if (!body.empty()) {
        if (!description.empty()) description += '\n';
        description += body;
      }
      continue;
    }
    if (line.rfind("rate_hz=", 0) == 0) {
      rate_hz = parse_double(trim(line.substr(8)), path, line_no);
      if (!(rate_hz > 0.0))
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": rate_hz must be > 0");
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      taps.emplace_back(parse_double(line, path, line_no), 0.0);
    } else {
      const double re = parse_double(trim(line.substr(0, comma)), path, line_no);
      const double im = parse_double(trim(line.substr(comma + 1)), path, line_no);
      taps.emplace_back(re, im);
    }
  }
  if (taps.empty()) throw std::runtime_error(path + ": no taps found");
  CVector h(static_cast<Index>(taps.size()));
  for (size_t i = 0; i < taps.size(); ++i) h(static_cast<Index>(i)) = taps[i];
  return CirFile{ChannelModel(std::move(h), rate_hz), std::move(description)};
}

ChannelModel load_cir(const std::string& path) { return load_cir_file(path).channel; }

void save_cir(const std::string& path, const ChannelModel& ch, const std::string& description) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write CIR file: " + path);
  if (!description.empty()) out << "# " << description << "\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "rate_hz=%.17g\n", ch.sampling_rate_hz);
  out << buf;
  for (Index j = 0; j < ch.taps.size(); ++j) {
    const Complex t = ch.taps(j);
    if (t.imag() == 0.0)
      std::snprintf(buf, sizeof buf, "%.17g\n", t.real());
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t.real(), t.imag());
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

TruncatedChannel truncate_cir(const ChannelModel& ch, Index max_len) {
  if (max_len < 1) throw std::invalid_argument("truncate_cir: max_len must be >= 1");
  const Index keep = std::min(max_len, ch.taps.size());
  const double total = ch.taps.cwiseAbs2().sum();
  const double kept = ch.taps.head(keep).cwiseAbs2().sum();
  return TruncatedChannel{ChannelModel(ch.taps.head(keep), ch.sampling_rate_hz),
                          1.0 - kept / total};
}

ChannelModel synth_exponential(Index nu, double decay_rate, uint64_t seed) {
  if (nu < 0) throw std::invalid_argument("synth_exponential: nu must be >= 0");
  if (!(decay_rate > 0.0)) throw std::invalid_argument("synth_exponential: decay_rate must be > 0");
  SubstreamRng rng(seed, 0x43495245ULL);  // generator-specific stream tag
  CVector taps(nu + 1);
  for (Index j = 0; j <= nu; ++j)
    taps(j) = rng.next_complex_normal() * std::exp(-decay_rate * static_cast<double>(j));
  return ChannelModel(std::move(taps));
}

ChannelModel synth_two_ray(Index delay, double gain) {
  if (delay < 0) throw std::invalid_argument("synth_two_ray: delay must be >= 0");
  if (!(std::abs(gain) <= 1.0)) throw std::invalid_argument("synth_two_ray: |gain| must be <= 1");
  CVector taps = CVector::Zero(delay + 1);
  taps(0) += 1.0;
  taps(delay) += gain;
  return ChannelModel(std::move(taps));
}

}  // namespace ofdm
