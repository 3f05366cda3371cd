// SPDX-License-Identifier: Apache-2.0
#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

namespace ofdm::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error("config: " + where + ": " + what);
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items())
    if (!known.count(key)) fail(where + "." + key, "unknown key");
}

const json& member(const json& obj, const std::string& where, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing required key '" + key + "'");
  return *it;
}

double num(const json& obj, const std::string& where, const std::string& key) {
  const json& v = member(obj, where, key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  return v.get<double>();
}

double num_or(const json& obj, const std::string& where, const std::string& key, double dflt) {
  if (!obj.contains(key)) return dflt;
  return num(obj, where, key);
}

long integer(const json& obj, const std::string& where, const std::string& key) {
  const json& v = member(obj, where, key);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<long>();
}

long integer_or(const json& obj, const std::string& where, const std::string& key, long dflt) {
  if (!obj.contains(key)) return dflt;
  return integer(obj, where, key);
}

std::string str(const json& obj, const std::string& where, const std::string& key) {
  const json& v = member(obj, where, key);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

// Tone/index lists accept either an explicit array or an inclusive
// {"first": a, "last": b} range.
std::vector<Index> index_list(const json& v, const std::string& where) {
  std::vector<Index> out;
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number_integer()) fail(where, "expected integers");
      out.push_back(e.get<Index>());
    }
  } else if (v.is_object()) {
    check_keys(v, where, {"first", "last"});
    const long first = integer(v, where, "first");
    const long last = integer(v, where, "last");
    if (last < first) fail(where, "last must be >= first");
    for (long i = first; i <= last; ++i) out.push_back(static_cast<Index>(i));
  } else {
    fail(where, "expected an array or a {first, last} range");
  }
  if (out.empty()) fail(where, "must not be empty");
  return out;
}

OFDMConfig parse_ofdm(const json& o) {
  const std::string where = "ofdm";
  check_keys(o, where, {"n_subcarriers", "redundancy", "scheme", "sync_delay"});
  const long n = integer(o, where, "n_subcarriers");
  const long mu = integer(o, where, "redundancy");
  const long delta = integer_or(o, where, "sync_delay", 0);
  const std::string scheme = str(o, where, "scheme");
  Scheme s;
  if (scheme == "CP")
    s = Scheme::CP;
  else if (scheme == "ZP-OLA")
    s = Scheme::ZP_OLA;
  else
    fail(where + ".scheme", "expected \"CP\" or \"ZP-OLA\"");
  try {
    return OFDMConfig(n, mu, s, delta);
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
}

// Either direct variances or PSD levels in dBm/Hz; PSD values are converted
// with sigma^2 = 10^((P_dBm/Hz - 30)/10) * f_s. The conventional 100-ohm
// reference of such PSD figures is metadata, not part of the math.
SignalStats parse_signal(const json& o, double sampling_rate_hz, bool* from_psd) {
  const std::string where = "signal";
  check_keys(o, where, {"sigma2_x", "sigma2_q", "signal_psd_dbm_hz", "noise_psd_dbm_hz"});
  const bool direct = o.contains("sigma2_x") || o.contains("sigma2_q");
  const bool psd = o.contains("signal_psd_dbm_hz") || o.contains("noise_psd_dbm_hz");
  if (direct && psd) fail(where, "give either sigma2_* or *_psd_dbm_hz, not both");
  try {
    if (psd) {
      if (!(sampling_rate_hz > 0.0))
        fail(where, "PSD powers need rate.sampling_rate_hz to be set");
      const double sx =
          std::pow(10.0, (num(o, where, "signal_psd_dbm_hz") - 30.0) / 10.0) * sampling_rate_hz;
      const double sq =
          std::pow(10.0, (num(o, where, "noise_psd_dbm_hz") - 30.0) / 10.0) * sampling_rate_hz;
      *from_psd = true;
      return SignalStats(sx, sq);
    }
    return SignalStats(num_or(o, where, "sigma2_x", 1.0), num_or(o, where, "sigma2_q", 0.0));
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
}

RateParams parse_rate(const json& o) {
  const std::string where = "rate";
  check_keys(o, where,
             {"ser_target", "design_margin_db", "coding_gain_db", "sampling_rate_hz",
              "active_tones"});
  try {
    return RateParams(num(o, where, "ser_target"), num_or(o, where, "design_margin_db", 0.0),
                      num_or(o, where, "coding_gain_db", 0.0), num(o, where, "sampling_rate_hz"),
                      index_list(member(o, where, "active_tones"), where + ".active_tones"));
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
}

SimSection parse_sim(const json& o) {
  const std::string where = "sim";
  check_keys(o, where, {"n_blocks", "seed", "warmup_blocks", "constellation"});
  SimSection s;
  s.n_blocks = integer(o, where, "n_blocks");
  if (s.n_blocks < 1) fail(where + ".n_blocks", "must be >= 1");
  const long seed = integer_or(o, where, "seed", 0);
  if (seed < 0) fail(where + ".seed", "must be >= 0");
  s.seed = static_cast<uint64_t>(seed);
  s.warmup_blocks = integer_or(o, where, "warmup_blocks", 0);
  if (s.warmup_blocks < 0) fail(where + ".warmup_blocks", "must be >= 0");
  if (o.contains(std::string("constellation"))) {
    const std::string c = str(o, where, "constellation");
    if (c == "QPSK")
      s.constellation = ConstellationKind::QPSK;
    else if (c == "QAM16")
      s.constellation = ConstellationKind::QAM16;
    else if (c == "QAM64")
      s.constellation = ConstellationKind::QAM64;
    else
      fail(where + ".constellation", "expected QPSK, QAM16 or QAM64");
  }
  return s;
}

SweepSection parse_sweep(const json& o) {
  const std::string where = "sweep";
  check_keys(o, where, {"kind", "values", "teq_len", "delay_grid", "conventional_max_len"});
  SweepSection s;
  const std::string kind = str(o, where, "kind");
  if (kind == "teq")
    s.spec.kind = SweepSpec::Kind::TeqLen;
  else if (kind == "cp")
    s.spec.kind = SweepSpec::Kind::CpLen;
  else
    fail(where + ".kind", "expected \"teq\" or \"cp\"");
  s.spec.values = index_list(member(o, where, "values"), where + ".values");
  s.spec.fixed_teq_len = static_cast<Index>(integer_or(o, where, "teq_len", 1));
  if (s.spec.fixed_teq_len < 1) fail(where + ".teq_len", "must be >= 1");
  if (o.contains("delay_grid")) {
    s.spec.delay_grid = index_list(o.at("delay_grid"), where + ".delay_grid");
  } else {
    for (Index d = 2; d <= 50; ++d) s.spec.delay_grid.push_back(d);
  }
  s.conventional_max_len = static_cast<Index>(integer_or(o, where, "conventional_max_len", 0));
  if (s.conventional_max_len < 0) fail(where + ".conventional_max_len", "must be >= 1");
  return s;
}

TeqSection parse_teq(const json& o) {
  const std::string where = "teq";
  check_keys(o, where, {"teq_len", "window_len", "delay"});
  TeqSection t;
  t.teq_len = static_cast<Index>(integer(o, where, "teq_len"));
  if (t.teq_len < 1) fail(where + ".teq_len", "must be >= 1");
  t.window_len = static_cast<Index>(integer_or(o, where, "window_len", 0));
  t.delay = static_cast<Index>(integer_or(o, where, "delay", 0));
  if (t.delay < 0) fail(where + ".delay", "must be >= 0");
  return t;
}

GenSection parse_gen(const json& o) {
  const std::string where = "gen";
  check_keys(o, where, {"type", "nu", "decay_rate", "seed", "delay", "gain", "rate_hz"});
  GenSection g;
  g.type = str(o, where, "type");
  if (g.type != "exponential" && g.type != "two_ray")
    fail(where + ".type", "expected \"exponential\" or \"two_ray\"");
  g.nu = static_cast<Index>(integer_or(o, where, "nu", 0));
  g.decay_rate = num_or(o, where, "decay_rate", 0.0);
  g.seed = static_cast<uint64_t>(integer_or(o, where, "seed", 0));
  g.delay = static_cast<Index>(integer_or(o, where, "delay", 0));
  g.gain = num_or(o, where, "gain", 0.0);
  g.rate_hz = num_or(o, where, "rate_hz", 1.0);
  if (!(g.rate_hz > 0.0)) fail(where + ".rate_hz", "must be > 0");
  return g;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config: " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("config: top level must be an object");
  check_keys(doc, "(top)",
             {"ofdm", "signal", "rate", "sim", "sweep", "teq", "gen", "cir", "truncate_len",
              "output", "psd_reference_ohm"});

  RunConfig rc;
  if (doc.contains("rate")) rc.rate = parse_rate(doc.at("rate"));
  if (doc.contains("ofdm")) rc.ofdm = parse_ofdm(doc.at("ofdm"));
  if (doc.contains("signal"))
    rc.signal = parse_signal(doc.at("signal"),
                             rc.rate ? rc.rate->sampling_rate_hz : 0.0, &rc.powers_from_psd);
  if (doc.contains("sim")) rc.sim = parse_sim(doc.at("sim"));
  if (doc.contains("sweep")) rc.sweep = parse_sweep(doc.at("sweep"));
  if (doc.contains("teq")) rc.teq = parse_teq(doc.at("teq"));
  if (doc.contains("gen")) rc.gen = parse_gen(doc.at("gen"));
  if (doc.contains("cir")) rc.cir_path = str(doc, "(top)", "cir");
  rc.truncate_len = static_cast<Index>(integer_or(doc, "(top)", "truncate_len", 0));
  if (rc.truncate_len < 0) throw std::runtime_error("config: truncate_len: must be >= 1");
  rc.psd_reference_ohm = num_or(doc, "(top)", "psd_reference_ohm", 100.0);
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    check_keys(o, "output", {"path", "format"});
    if (o.contains("path")) rc.output_path = str(o, "output", "path");
    if (o.contains("format")) {
      const std::string f = str(o, "output", "format");
      if (f == "csv")
        rc.format = OutputFormat::Csv;
      else if (f == "json")
        rc.format = OutputFormat::Json;
      else
        fail("output.format", "expected \"csv\" or \"json\"");
    }
  }
  return rc;
}

const RateParams& require_rate(const RunConfig& rc) {
  if (!rc.rate) throw std::runtime_error("config: missing required section 'rate'");
  return *rc.rate;
}

const OFDMConfig& require_ofdm(const RunConfig& rc) {
  if (!rc.ofdm) throw std::runtime_error("config: missing required section 'ofdm'");
  return *rc.ofdm;
}

const SignalStats& require_signal(const RunConfig& rc) {
  if (!rc.signal) throw std::runtime_error("config: missing required section 'signal'");
  return *rc.signal;
}

}  // namespace ofdm::cli
