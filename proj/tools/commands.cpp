// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <variant>
#include <vector>

#include "ofdm/analysis.hpp"
#include "ofdm/channels.hpp"
#include "ofdm/model.hpp"
#include "ofdm/montecarlo.hpp"
#include "ofdm/rate.hpp"
#include "ofdm/teq.hpp"

namespace ofdm::cli {
namespace {

// All numbers go out with 17 significant digits so that parsing them back
// recovers the exact double.
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_int(long v) { return std::to_string(v); }

using Cell = std::variant<long, double, std::string>;

struct Table {
  std::string command;                                  // version tag in the header
  std::vector<std::pair<std::string, Cell>> summary;    // ordered key/value pairs
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_cell(const Cell& c) {
  if (std::holds_alternative<long>(c)) return fmt_int(std::get<long>(c));
  if (std::holds_alternative<double>(c)) return fmt17(std::get<double>(c));
  return std::get<std::string>(c);
}

std::string json_cell(const Cell& c) {
  if (std::holds_alternative<long>(c)) return fmt_int(std::get<long>(c));
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    if (!std::isfinite(v)) return "null";  // JSON has no +-inf
    return fmt17(v);
  }
  return "\"" + std::get<std::string>(c) + "\"";
}

std::string render_csv(const Table& t) {
  std::string out = "# ofdmsinr " + t.command + " v1\n";
  for (const auto& [key, value] : t.summary) out += "# " + key + "=" + csv_cell(value) + "\n";
  for (size_t i = 0; i < t.columns.size(); ++i)
    out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += "\n";
  }
  return out;
}

std::string render_json(const Table& t) {
  std::string out = "{\n  \"command\": \"" + t.command + "\",\n  \"summary\": {";
  for (size_t i = 0; i < t.summary.size(); ++i) {
    out += (i ? ", " : "");
    out += "\"" + t.summary[i].first + "\": " + json_cell(t.summary[i].second);
  }
  out += "},\n  \"columns\": [";
  for (size_t i = 0; i < t.columns.size(); ++i)
    out += (i ? ", " : "") + ("\"" + t.columns[i] + "\"");
  out += "],\n  \"rows\": [\n";
  for (size_t r = 0; r < t.rows.size(); ++r) {
    out += "    [";
    for (size_t i = 0; i < t.rows[r].size(); ++i)
      out += (i ? ", " : "") + json_cell(t.rows[r][i]);
    out += r + 1 < t.rows.size() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

// Output is staged in memory and written through a rename so a crash cannot
// leave a half-written table behind.
void write_atomically(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write output file: " + tmp.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

struct LoadedInputs {
  RunConfig rc;
  std::string out_path;
  OutputFormat format;
};

LoadedInputs load_common(const CommonOptions& opt) {
  RunConfig rc = load_run_config(opt.config_path);
  if (!opt.cir_override.empty()) rc.cir_path = opt.cir_override;
  if (opt.seed_override >= 0 && rc.sim)
    rc.sim->seed = static_cast<uint64_t>(opt.seed_override);
  std::string out_path = !opt.out_override.empty() ? opt.out_override : rc.output_path;
  if (out_path.empty()) throw std::runtime_error("no output path: give output.path or --out");
  OutputFormat format = rc.format;
  if (opt.format_override == "csv") format = OutputFormat::Csv;
  if (opt.format_override == "json") format = OutputFormat::Json;
  return {std::move(rc), std::move(out_path), format};
}

void emit(const Table& t, const std::string& path, OutputFormat format) {
  write_atomically(path, format == OutputFormat::Csv ? render_csv(t) : render_json(t));
}

ChannelModel load_channel(const RunConfig& rc) {
  if (rc.cir_path.empty())
    throw std::runtime_error("no channel: give the 'cir' config key or --cir");
  return load_cir(rc.cir_path);
}

double sinr_db_or_neg_inf(double sinr) {
  return sinr > 0.0 ? db_from_linear(sinr) : -std::numeric_limits<double>::infinity();
}

}  // namespace

int cmd_analyze(const CommonOptions& opt) {
  auto [rc, out_path, format] = load_common(opt);
  const OFDMConfig& cfg = require_ofdm(rc);
  const SignalStats& stats = require_signal(rc);
  const RateParams& rp = require_rate(rc);

  ChannelModel ch = load_channel(rc);
  double discarded = 0.0;
  if (rc.truncate_len > 0) {
    TruncatedChannel tc = truncate_cir(ch, rc.truncate_len);
    discarded = tc.discarded_energy_fraction;
    ch = std::move(tc.channel);
  }

  const ChannelBlockSet blocks = channel_blocks(cfg, ch);
  const InterferenceReport report = analyze(cfg, ch, stats);
  const double gap = snr_gap(rp);
  const double rate_bps = achievable_rate(report, cfg, rp);

  Table t;
  t.command = "analyze";
  t.summary = {{"scheme", std::string(to_string(cfg.scheme))},
               {"n_subcarriers", static_cast<long>(cfg.n_subcarriers)},
               {"redundancy", static_cast<long>(cfg.redundancy)},
               {"sync_delay", static_cast<long>(cfg.sync_delay)},
               {"channel_order", static_cast<long>(ch.order())},
               {"m_span", static_cast<long>(blocks.m_span)},
               {"rho", static_cast<long>(blocks.rho)},
               {"snr_gap_db", db_from_linear(gap)},
               {"rate_bps", rate_bps}};
  if (rc.truncate_len > 0)
    t.summary.emplace_back("discarded_energy_fraction", discarded);
  if (rc.powers_from_psd)
    t.summary.emplace_back("psd_reference_ohm", rc.psd_reference_ohm);
  t.columns = {"tone", "p_signal", "p_isi", "p_ici1", "p_ici2", "p_noise", "sinr_db", "bits"};
  for (Index k = 0; k < cfg.n_subcarriers; ++k)
    t.rows.push_back({static_cast<long>(k), report.p_signal(k), report.p_isi(k),
                      report.p_ici1(k), report.p_ici2(k), report.p_noise(k),
                      sinr_db_or_neg_inf(report.sinr(k)), tone_capacity(report.sinr(k), gap)});
  emit(t, out_path, format);
  return 0;
}

int cmd_simulate(const CommonOptions& opt) {
  auto [rc, out_path, format] = load_common(opt);
  const OFDMConfig& cfg = require_ofdm(rc);
  const SignalStats& stats = require_signal(rc);
  if (!rc.sim) throw std::runtime_error("config: missing required section 'sim'");
  const ChannelModel ch = load_channel(rc);

  SimConfig sim;
  sim.n_blocks = rc.sim->n_blocks;
  sim.seed = rc.sim->seed;
  sim.warmup_blocks = rc.sim->warmup_blocks;
  sim.stats = stats;
  sim.constellation = Constellation::make(rc.sim->constellation);

  const SimResult mc = simulate_stream(cfg, ch, sim);
  const InterferenceReport report = analyze(cfg, ch, stats);

  Table t;
  t.command = "simulate";
  t.summary = {{"scheme", std::string(to_string(cfg.scheme))},
               {"n_subcarriers", static_cast<long>(cfg.n_subcarriers)},
               {"redundancy", static_cast<long>(cfg.redundancy)},
               {"sync_delay", static_cast<long>(cfg.sync_delay)},
               {"channel_order", static_cast<long>(ch.order())},
               {"n_blocks", static_cast<long>(mc.n_blocks_used)},
               {"seed", static_cast<long>(sim.seed)}};
  t.columns = {"tone", "p_signal_mc", "p_int_noise_mc", "sinr_db_mc", "sinr_db_analytic",
               "delta_db"};
  for (Index k = 0; k < cfg.n_subcarriers; ++k) {
    const double mc_db = sinr_db_or_neg_inf(mc.sinr(k));
    const double an_db = sinr_db_or_neg_inf(report.sinr(k));
    t.rows.push_back({static_cast<long>(k), mc.p_signal(k), mc.p_interference_plus_noise(k),
                      mc_db, an_db, mc_db - an_db});
  }
  emit(t, out_path, format);
  return 0;
}

int cmd_sweep(const CommonOptions& opt) {
  auto [rc, out_path, format] = load_common(opt);
  const OFDMConfig& cfg = require_ofdm(rc);
  const SignalStats& stats = require_signal(rc);
  const RateParams& rp = require_rate(rc);
  if (!rc.sweep) throw std::runtime_error("config: missing required section 'sweep'");
  const ChannelModel ch = load_channel(rc);

  const Index max_len = rc.sweep->conventional_max_len > 0 ? rc.sweep->conventional_max_len
                                                           : cfg.n_subcarriers;
  Table t;
  t.command = "sweep";
  t.summary = {{"kind",
                std::string(rc.sweep->spec.kind == SweepSpec::Kind::TeqLen ? "teq" : "cp")},
               {"scheme", std::string(to_string(cfg.scheme))},
               {"n_subcarriers", static_cast<long>(cfg.n_subcarriers)},
               {"channel_order", static_cast<long>(ch.order())},
               {"conventional_max_len", static_cast<long>(max_len)}};
  t.columns = {"mode", "value", "delay", "rate_bps", "shortening_snr_db"};
  for (const AnalysisMode mode : {AnalysisMode::Conventional, AnalysisMode::Actual}) {
    const auto rows = sweep_rate(ch, cfg, stats, rp, rc.sweep->spec, mode, max_len, opt.threads);
    for (const auto& row : rows)
      t.rows.push_back({std::string(to_string(mode)), static_cast<long>(row.value),
                        static_cast<long>(row.delay), row.rate_bps, row.shortening_snr_db});
  }
  emit(t, out_path, format);
  return 0;
}

int cmd_teq_design(const CommonOptions& opt) {
  auto [rc, out_path, format] = load_common(opt);
  if (!rc.teq) throw std::runtime_error("config: missing required section 'teq'");
  const ChannelModel ch = load_channel(rc);
  Index window_len = rc.teq->window_len;
  if (window_len <= 0) {
    if (!rc.ofdm) throw std::runtime_error("config: teq.window_len or the ofdm section required");
    window_len = rc.ofdm->redundancy + 1;
  }
  const TeqDesign design = design_mssnr(ch, rc.teq->teq_len, window_len, rc.teq->delay);

  Table t;
  t.command = "teq-design";
  t.summary = {{"teq_len", static_cast<long>(design.taps.size())},
               {"window_len", static_cast<long>(design.window_len)},
               {"delay", static_cast<long>(design.delay)},
               {"shortening_snr_db", design.shortening_snr_db}};
  t.columns = {"index", "tap_re", "tap_im"};
  for (Index i = 0; i < design.taps.size(); ++i)
    t.rows.push_back({static_cast<long>(i), design.taps(i).real(), design.taps(i).imag()});
  emit(t, out_path, format);
  return 0;
}

int cmd_gen_channel(const CommonOptions& opt) {
  RunConfig rc = load_run_config(opt.config_path);
  if (!rc.gen) throw std::runtime_error("config: missing required section 'gen'");
  const std::string out_path = !opt.out_override.empty() ? opt.out_override : rc.output_path;
  if (out_path.empty()) throw std::runtime_error("no output path: give output.path or --out");

  const GenSection& g = *rc.gen;
  uint64_t seed = g.seed;
  if (opt.seed_override >= 0) seed = static_cast<uint64_t>(opt.seed_override);
  ChannelModel ch = g.type == "exponential"
                        ? synth_exponential(g.nu, g.decay_rate, seed)
                        : synth_two_ray(g.delay, g.gain);
  ch.sampling_rate_hz = g.rate_hz;
  const std::string description =
      g.type == "exponential"
          ? "synthetic exponential-decay channel, nu=" + std::to_string(g.nu) +
                ", decay_rate=" + fmt17(g.decay_rate) + ", seed=" + std::to_string(seed)
          : "synthetic two-ray channel, delay=" + std::to_string(g.delay) +
                ", gain=" + fmt17(g.gain);
  // CIR files are small; write through the same temp-and-rename path.
  {
    const std::string tmp = out_path + ".tmp";
    save_cir(tmp, ch, description);
    std::filesystem::rename(tmp, out_path);
  }
  return 0;
}

}  // namespace ofdm::cli
