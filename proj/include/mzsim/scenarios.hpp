// Copyright 2026 The mzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mzsim/analysis.hpp"
#include "mzsim/correlation.hpp"
#include "mzsim/io.hpp"
#include "mzsim/montecarlo.hpp"

namespace mzsim {

/// Flat run configuration, loadable from a JSON document. All angles in
/// degrees, all times in ns; converted at this boundary only.
struct ConfigFile {
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  double switch_time_ns = 80.0;
  std::optional<double> decay_constant_ns;  // default: calibrated, see below
  double coherence_time_ns = 400.0;         // nominal packet duration
  std::vector<double> phi_grid_deg;         // default -90..270 step 15
  std::vector<double> alpha_grid_deg;       // default 0..90 step 15, plus 57.3
  double gamma_deg = 0.0;
  double v_pi_volts = 198.0;
  double eom_axis_deg = 22.5;
  double ramp_ns = 15.0;
  std::string envelope = "exponential";     // "exponential" | "table:<path>"
  double detector_efficiency = 1.0;
  double multi_pair_prob = 0.115;
  double g2_cross_peak = 39.0;
  int workers = 1;
};

inline ConfigFile default_config() {
  ConfigFile cfg;
  for (int deg = -90; deg <= 270; deg += 15) {
    cfg.phi_grid_deg.push_back(static_cast<double>(deg));
  }
  for (int deg = 0; deg <= 90; deg += 15) {
    cfg.alpha_grid_deg.push_back(static_cast<double>(deg));
    if (deg == 45) cfg.alpha_grid_deg.push_back(57.3);
  }
  return cfg;
}

/// Decay constant actually used: the explicit key, or the value calibrated
/// so the configured switch time splits the packet at cos^2(57.3 deg).
inline double effective_decay_constant(const ConfigFile& cfg) {
  if (cfg.decay_constant_ns) return *cfg.decay_constant_ns;
  const double c = std::cos(deg_to_rad(57.3));
  return solve_decay_constant(cfg.switch_time_ns, c * c);
}

inline EnvelopeModel make_envelope(const ConfigFile& cfg) {
  if (cfg.envelope == "exponential") {
    return EnvelopeModel::exponential(effective_decay_constant(cfg),
                                      cfg.coherence_time_ns);
  }
  if (cfg.envelope.rfind("table:", 0) == 0) {
    return load_envelope_table(cfg.envelope.substr(6));
  }
  throw std::invalid_argument("ConfigFile: envelope must be 'exponential' or 'table:<path>'");
}

inline nlohmann::json config_to_json(const ConfigFile& cfg) {
  return {{"seed", cfg.seed},
          {"trials", cfg.trials},
          {"switch_time_ns", cfg.switch_time_ns},
          {"decay_constant_ns", effective_decay_constant(cfg)},
          {"coherence_time_ns", cfg.coherence_time_ns},
          {"phi_grid", cfg.phi_grid_deg},
          {"alpha_grid", cfg.alpha_grid_deg},
          {"gamma_deg", cfg.gamma_deg},
          {"v_pi_volts", cfg.v_pi_volts},
          {"eom_axis_deg", cfg.eom_axis_deg},
          {"ramp_ns", cfg.ramp_ns},
          {"envelope", cfg.envelope},
          {"detector_efficiency", cfg.detector_efficiency},
          {"multi_pair_prob", cfg.multi_pair_prob},
          {"g2_cross_peak", cfg.g2_cross_peak},
          {"workers", cfg.workers}};
}

/// Parses and validates a flat JSON config. Unknown keys and out-of-range
/// values are all collected and reported in one error.
inline ConfigFile config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("config must be a JSON object");
  }
  ConfigFile cfg = default_config();
  std::vector<std::string> bad;

  auto take = [&](const char* key, auto&& setter) {
    if (!j.contains(key)) return;
    try {
      setter(j.at(key));
    } catch (const nlohmann::json::exception&) {
      bad.push_back(std::string(key) + " (wrong type)");
    }
  };
  auto angle_list = [&bad](const nlohmann::json& v, std::vector<double>& out,
                           const char* key, double lo, double hi) {
    std::vector<double> grid = v.get<std::vector<double>>();
    if (grid.empty()) {
      bad.push_back(std::string(key) + " (empty list)");
      return;
    }
    for (double deg : grid) {
      if (!std::isfinite(deg) || deg < lo || deg > hi) {
        bad.push_back(std::string(key) + " (value out of range)");
        return;
      }
    }
    out = std::move(grid);
  };

  // nlohmann casts negative integers straight to unsigned, so check the sign
  // of the stored value instead of letting -5 become 2^64 - 5.
  auto nonneg_u64 = [](const nlohmann::json& v, std::uint64_t& out) {
    if (v.is_number_unsigned()) {
      out = v.get<std::uint64_t>();
      return true;
    }
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
      out = static_cast<std::uint64_t>(v.get<std::int64_t>());
      return true;
    }
    return false;
  };

  take("seed", [&](const nlohmann::json& v) {
    if (!nonneg_u64(v, cfg.seed)) {
      bad.push_back("seed (must be a non-negative integer)");
    }
  });
  take("trials", [&](const nlohmann::json& v) {
    if (!nonneg_u64(v, cfg.trials)) {
      bad.push_back("trials (must be a non-negative integer)");
    }
  });
  take("switch_time_ns",
       [&](const nlohmann::json& v) { cfg.switch_time_ns = v.get<double>(); });
  take("decay_constant_ns",
       [&](const nlohmann::json& v) { cfg.decay_constant_ns = v.get<double>(); });
  take("coherence_time_ns",
       [&](const nlohmann::json& v) { cfg.coherence_time_ns = v.get<double>(); });
  take("phi_grid", [&](const nlohmann::json& v) {
    angle_list(v, cfg.phi_grid_deg, "phi_grid", -180.0, 360.0);
  });
  take("alpha_grid", [&](const nlohmann::json& v) {
    angle_list(v, cfg.alpha_grid_deg, "alpha_grid", 0.0, 90.0);
  });
  take("gamma_deg", [&](const nlohmann::json& v) { cfg.gamma_deg = v.get<double>(); });
  take("v_pi_volts", [&](const nlohmann::json& v) { cfg.v_pi_volts = v.get<double>(); });
  take("eom_axis_deg",
       [&](const nlohmann::json& v) { cfg.eom_axis_deg = v.get<double>(); });
  take("ramp_ns", [&](const nlohmann::json& v) { cfg.ramp_ns = v.get<double>(); });
  take("envelope", [&](const nlohmann::json& v) { cfg.envelope = v.get<std::string>(); });
  take("detector_efficiency",
       [&](const nlohmann::json& v) { cfg.detector_efficiency = v.get<double>(); });
  take("multi_pair_prob",
       [&](const nlohmann::json& v) { cfg.multi_pair_prob = v.get<double>(); });
  take("g2_cross_peak",
       [&](const nlohmann::json& v) { cfg.g2_cross_peak = v.get<double>(); });
  take("workers", [&](const nlohmann::json& v) {
    std::uint64_t w = 0;
    if (!nonneg_u64(v, w) || w > 64) {
      bad.push_back("workers (must be in [1, 64])");
      return;
    }
    cfg.workers = static_cast<int>(w);
  });

  static const std::set<std::string> known = {
      "seed",           "trials",           "switch_time_ns",
      "decay_constant_ns", "coherence_time_ns", "phi_grid",
      "alpha_grid",     "gamma_deg",        "v_pi_volts",
      "eom_axis_deg",   "ramp_ns",          "envelope",
      "detector_efficiency", "multi_pair_prob", "g2_cross_peak",
      "workers"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) bad.push_back(item.key() + " (unknown key)");
  }

  if (cfg.trials < 1) bad.push_back("trials (must be >= 1)");
  if (!(cfg.switch_time_ns > 0.0) || !std::isfinite(cfg.switch_time_ns)) {
    bad.push_back("switch_time_ns (must be finite and > 0)");
  }
  if (cfg.decay_constant_ns && !(*cfg.decay_constant_ns > 0.0)) {
    bad.push_back("decay_constant_ns (must be > 0)");
  }
  if (!(cfg.coherence_time_ns > 0.0)) bad.push_back("coherence_time_ns (must be > 0)");
  if (!std::isfinite(cfg.gamma_deg) || cfg.gamma_deg < -180.0 || cfg.gamma_deg > 360.0) {
    bad.push_back("gamma_deg (must be in [-180, 360])");
  }
  if (!(cfg.v_pi_volts > 0.0)) bad.push_back("v_pi_volts (must be > 0)");
  if (!std::isfinite(cfg.eom_axis_deg)) bad.push_back("eom_axis_deg (must be finite)");
  if (!(cfg.ramp_ns >= 0.0)) bad.push_back("ramp_ns (must be >= 0)");
  if (cfg.envelope != "exponential" && cfg.envelope.rfind("table:", 0) != 0) {
    bad.push_back("envelope (must be 'exponential' or 'table:<path>')");
  }
  if (!(cfg.detector_efficiency >= 0.0) || !(cfg.detector_efficiency <= 1.0)) {
    bad.push_back("detector_efficiency (must be in [0, 1])");
  }
  if (!(cfg.multi_pair_prob >= 0.0) || !(cfg.multi_pair_prob < 1.0)) {
    bad.push_back("multi_pair_prob (must be in [0, 1))");
  }
  if (!(cfg.g2_cross_peak >= 0.0)) bad.push_back("g2_cross_peak (must be >= 0)");
  if (cfg.workers < 1 || cfg.workers > 64) bad.push_back("workers (must be in [1, 64])");

  if (!bad.empty()) {
    std::string msg = "invalid config:";
    for (const std::string& b : bad) msg += " " + b + ";";
    msg.pop_back();
    throw std::invalid_argument(msg);
  }
  return cfg;
}

inline ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

enum class ScenarioKind { fig2a, fig2b, fig3a, fig3b, source_stats, ramp_influence };

inline ScenarioKind parse_scenario(const std::string& name) {
  if (name == "fig2a") return ScenarioKind::fig2a;
  if (name == "fig2b") return ScenarioKind::fig2b;
  if (name == "fig3a") return ScenarioKind::fig3a;
  if (name == "fig3b") return ScenarioKind::fig3b;
  if (name == "source-stats") return ScenarioKind::source_stats;
  if (name == "ramp-influence") return ScenarioKind::ramp_influence;
  throw std::invalid_argument(
      "unknown scenario '" + name +
      "' (expected fig2a|fig2b|fig3a|fig3b|source-stats|ramp-influence)");
}

inline const char* scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::fig2a: return "fig2a";
    case ScenarioKind::fig2b: return "fig2b";
    case ScenarioKind::fig3a: return "fig3a";
    case ScenarioKind::fig3b: return "fig3b";
    case ScenarioKind::source_stats: return "source-stats";
    case ScenarioKind::ramp_influence: return "ramp-influence";
  }
  throw std::invalid_argument("unknown scenario kind");
}

enum class OutputFormat { csv, json };

inline OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown format '" + name + "' (expected csv|json)");
}

struct ScenarioResult {
  ScenarioKind kind = ScenarioKind::fig2a;
  std::vector<std::string> files;  // paths written, manifest last
  nlohmann::json summary;          // headline numbers, also stored in the manifest
};

namespace detail {

/// RunConfig for the configured operating point; per-run seed supplied by
/// the caller.
inline RunConfig base_run_config(const ConfigFile& cfg, const EnvelopeModel& envelope) {
  RunConfig rc;
  rc.n_trials = cfg.trials;
  rc.master_seed = cfg.seed;
  rc.bin_width = 1.0;
  rc.params.alpha = std::acos(std::sqrt(envelope.cdf(cfg.switch_time_ns)));
  rc.params.gamma = deg_to_rad(cfg.gamma_deg);
  rc.interferometer.eom_axis = deg_to_rad(cfg.eom_axis_deg);
  rc.interferometer.schedule = EomSchedule::step(cfg.switch_time_ns, cfg.v_pi_volts);
  rc.envelope = envelope;
  rc.detector_efficiency = cfg.detector_efficiency;
  return rc;
}

/// Switch time that realizes a target alpha on this envelope: the early
/// window must carry cos^2(alpha) of the packet.
inline double switch_time_for_alpha(const EnvelopeModel& envelope, double alpha_rad) {
  const double c = std::cos(alpha_rad);
  return envelope.quantile(c * c);
}

/// D0 fringe against the phi grid at fixed hardware; conditional on a click.
inline FringeScan scan_fringe(RunConfig rc, const std::vector<double>& phi_grid_deg,
                              SeedSequence& seeds) {
  FringeScan scan;
  scan.points.reserve(phi_grid_deg.size());
  for (double phi_deg : phi_grid_deg) {
    rc.params.phi = deg_to_rad(phi_deg);
    rc.master_seed = seeds.next();
    const ClickCounts counts = count_trials(rc);
    scan.points.push_back(
        {rc.params.phi, counts.d0_fraction(), counts.clicks()});
  }
  return scan;
}

inline std::string output_path(const std::string& out_dir, const std::string& stem,
                               OutputFormat format) {
  const char* ext = format == OutputFormat::csv ? ".csv" : ".json";
  return (std::filesystem::path(out_dir) / (stem + ext)).string();
}

/// Writes tabular rows either as CSV or as a JSON array of row objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void write(const std::string& path, OutputFormat format) const {
    if (format == OutputFormat::csv) {
      auto out = open_output(path);
      for (std::size_t c = 0; c < columns.size(); ++c) {
        out << columns[c] << (c + 1 < columns.size() ? ',' : '\n');
      }
      for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          out << format_double(row[c]) << (c + 1 < row.size() ? ',' : '\n');
        }
      }
      return;
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json obj;
      for (std::size_t c = 0; c < row.size(); ++c) obj[columns[c]] = row[c];
      arr.push_back(obj);
    }
    write_json(path, arr);
  }
};

}  // namespace detail

/// Per-phi 1-ns time histograms at the configured operating point.
inline ScenarioResult run_fig2a(const ConfigFile& cfg, const std::string& out_dir,
                                OutputFormat format) {
  const EnvelopeModel envelope = make_envelope(cfg);
  RunConfig rc = detail::base_run_config(cfg, envelope);
  SeedSequence seeds(cfg.seed);

  detail::Table table;
  table.columns = {"phi_deg", "bin_start_ns", "d0", "d1"};
  std::uint64_t total_clicks = 0;
  for (double phi_deg : cfg.phi_grid_deg) {
    rc.params.phi = deg_to_rad(phi_deg);
    rc.master_seed = seeds.next();
    const auto records = run_trials(rc, cfg.workers);
    total_clicks += records.size();
    const Histogram h = histogram(records, rc.bin_width);
    for (std::size_t k = 0; k < h.size(); ++k) {
      table.rows.push_back({phi_deg, h.bin_start(k),
                            static_cast<double>(h.counts_d0[k]),
                            static_cast<double>(h.counts_d1[k])});
    }
  }

  ScenarioResult result;
  result.kind = ScenarioKind::fig2a;
  const std::string path = detail::output_path(out_dir, "fig2a", format);
  table.write(path, format);
  result.files.push_back(path);
  result.summary = {{"phi_points", cfg.phi_grid_deg.size()},
                    {"trials_per_point", cfg.trials},
                    {"total_clicks", total_clicks}};
  return result;
}

/// Early/late/full-window fringes and their fitted visibilities.
inline ScenarioResult run_fig2b(const ConfigFile& cfg, const std::string& out_dir,
                                OutputFormat /*format*/) {
  const EnvelopeModel envelope = make_envelope(cfg);
  RunConfig rc = detail::base_run_config(cfg, envelope);
  SeedSequence seeds(cfg.seed);

  FringeScan early_scan, late_scan, full_scan;
  for (double phi_deg : cfg.phi_grid_deg) {
    rc.params.phi = deg_to_rad(phi_deg);
    rc.master_seed = seeds.next();
    const auto records = run_trials(rc, cfg.workers);
    std::uint64_t e0 = 0, e1 = 0, l0 = 0, l1 = 0;
    for (const DetectionRecord& r : records) {
      const bool early = r.time < cfg.switch_time_ns;
      const bool d0 = r.detector == Detector::d0;
      (early ? (d0 ? e0 : e1) : (d0 ? l0 : l1)) += 1;
    }
    const auto point = [&](std::uint64_t a, std::uint64_t b) {
      return FringePoint{rc.params.phi,
                         static_cast<double>(a) / static_cast<double>(a + b), a + b};
    };
    early_scan.points.push_back(point(e0, e1));
    late_scan.points.push_back(point(l0, l1));
    full_scan.points.push_back(point(e0 + l0, e1 + l1));
  }

  const FringeFit early_fit = fit_fringe(early_scan);
  const FringeFit late_fit = fit_fringe(late_scan);
  const FringeFit full_fit = fit_fringe(full_scan);

  auto window_json = [](const FringeFit& fit, const FringeScan& scan) {
    nlohmann::json points = nlohmann::json::array();
    for (const FringePoint& p : scan.points) {
      points.push_back({{"phi_deg", rad_to_deg(p.phi)}, {"p_d0", p.p_d0}, {"n", p.n}});
    }
    return nlohmann::json{{"visibility", fit.visibility.value},
                          {"visibility_err", fit.visibility.error},
                          {"offset", fit.offset},
                          {"amplitude", fit.amplitude},
                          {"points", points}};
  };

  ScenarioResult result;
  result.kind = ScenarioKind::fig2b;
  result.summary = {{"alpha_deg", rad_to_deg(rc.params.alpha)},
                    {"V_early", early_fit.visibility.value},
                    {"V_late", late_fit.visibility.value},
                    {"V_full", full_fit.visibility.value}};
  const std::string path = detail::output_path(out_dir, "fig2b", OutputFormat::json);
  write_json(path, {{"alpha_deg", rad_to_deg(rc.params.alpha)},
                    {"windows",
                     {{"early", window_json(early_fit, early_scan)},
                      {"late", window_json(late_fit, late_scan)},
                      {"full", window_json(full_fit, full_scan)}}}});
  result.files.push_back(path);
  return result;
}

/// Monte Carlo vs closed-form D0 probability over the (alpha, phi) grid.
inline ScenarioResult run_fig3a(const ConfigFile& cfg, const std::string& out_dir,
                                OutputFormat format) {
  const EnvelopeModel envelope = make_envelope(cfg);
  RunConfig rc = detail::base_run_config(cfg, envelope);
  SeedSequence seeds(cfg.seed);

  detail::Table table;
  table.columns = {"alpha_deg", "phi_deg", "p_d0_mc", "p_d0_analytic"};
  double max_abs_dev = 0.0;
  for (double alpha_deg : cfg.alpha_grid_deg) {
    rc.params.alpha = deg_to_rad(alpha_deg);
    rc.interferometer.schedule =
        EomSchedule::step(detail::switch_time_for_alpha(envelope, rc.params.alpha),
                          cfg.v_pi_volts);
    for (double phi_deg : cfg.phi_grid_deg) {
      rc.params.phi = deg_to_rad(phi_deg);
      rc.master_seed = seeds.next();
      const ClickCounts counts = count_trials(rc);
      const double p_mc = counts.d0_fraction();
      const double p_th = analytic_intensity(rc.params);
      max_abs_dev = std::max(max_abs_dev, std::abs(p_mc - p_th));
      table.rows.push_back({alpha_deg, phi_deg, p_mc, p_th});
    }
  }

  ScenarioResult result;
  result.kind = ScenarioKind::fig3a;
  const std::string path = detail::output_path(out_dir, "fig3a", format);
  table.write(path, format);
  result.files.push_back(path);
  result.summary = {{"grid_points", table.rows.size()},
                    {"trials_per_point", cfg.trials},
                    {"max_abs_deviation", max_abs_dev}};
  return result;
}

/// Visibility and blocked-arm distinguishability per alpha, against the
/// duality bound.
inline ScenarioResult run_fig3b(const ConfigFile& cfg, const std::string& out_dir,
                                OutputFormat format) {
  const EnvelopeModel envelope = make_envelope(cfg);
  RunConfig rc = detail::base_run_config(cfg, envelope);
  SeedSequence seeds(cfg.seed);

  detail::Table table;
  table.columns = {"alpha_deg", "V",  "V2",    "D",    "D2",
                   "eg_sum",    "V_err", "D_err", "satisfied"};
  bool all_satisfied = true;
  double max_eg_sum = 0.0;
  for (double alpha_deg : cfg.alpha_grid_deg) {
    rc.params.alpha = deg_to_rad(alpha_deg);
    rc.params.phi = 0.0;
    rc.interferometer.schedule =
        EomSchedule::step(detail::switch_time_for_alpha(envelope, rc.params.alpha),
                          cfg.v_pi_volts);

    const Measurement v = fit_fringe(detail::scan_fringe(rc, cfg.phi_grid_deg, seeds))
                              .visibility;
    RunConfig blocked = rc;
    blocked.master_seed = seeds.next();
    const ClickCounts block1 = blocked_arm_counts(blocked, BlockedArm::path1);
    blocked.master_seed = seeds.next();
    const ClickCounts block0 = blocked_arm_counts(blocked, BlockedArm::path0);
    const Measurement d = distinguishability(block1.n_d0, block0.n_d0);
    const EgCheck check = eg_check(v, d);

    all_satisfied = all_satisfied && check.satisfied;
    max_eg_sum = std::max(max_eg_sum, check.sum);
    table.rows.push_back({alpha_deg, v.value, v.value * v.value, d.value,
                          d.value * d.value, check.sum, v.error, d.error,
                          check.satisfied ? 1.0 : 0.0});
  }

  ScenarioResult result;
  result.kind = ScenarioKind::fig3b;
  const std::string path = detail::output_path(out_dir, "fig3b", format);
  table.write(path, format);
  result.files.push_back(path);
  result.summary = {{"alpha_points", cfg.alpha_grid_deg.size()},
                    {"max_eg_sum", max_eg_sum},
                    {"all_satisfied", all_satisfied}};
  return result;
}

/// Heralded-source statistics: simulated conditional g2 plus the configured
/// cross-correlation peak and its Cauchy-Schwarz factor.
inline ScenarioResult run_source_stats(const ConfigFile& cfg, const std::string& out_dir,
                                       OutputFormat /*format*/) {
  SourceStats stats;
  stats.multi_pair_prob = cfg.multi_pair_prob;
  validate(stats);
  SeedSequence seeds(cfg.seed);
  const HeraldedCounts counts =
      simulate_heralded_hbt(cfg.trials, cfg.multi_pair_prob, seeds.next());
  const CorrelationReport report = make_correlation_report(cfg.g2_cross_peak, counts);

  ScenarioResult result;
  result.kind = ScenarioKind::source_stats;
  result.summary = {{"g2_conditional", report.g2_conditional},
                    {"cs_factor", report.cs_factor}};
  const std::string path = detail::output_path(out_dir, "source-stats", OutputFormat::json);
  nlohmann::json j = to_json(report);
  j["counts"] = {{"n_heralds", counts.n_heralds},
                 {"n_h1", counts.n_h1},
                 {"n_h2", counts.n_h2},
                 {"n_h12", counts.n_h12}};
  j["multi_pair_prob"] = cfg.multi_pair_prob;
  j["g2_conditional_expected"] = g2_conditional_expected(cfg.multi_pair_prob);
  j["pair_rate_per_s"] = stats.pair_rate;
  j["duty_cycle"] = duty_cycle(stats);
  j["time_averaged_rate_per_s"] = time_averaged_rate(stats);
  write_json(path, j);
  result.files.push_back(path);
  return result;
}

/// Largest D0-probability shift the finite voltage ramp causes anywhere on
/// the (alpha, phi) grid, by deterministic quadrature of the per-time law.
inline ScenarioResult run_ramp_influence(const ConfigFile& cfg, const std::string& out_dir,
                                         OutputFormat /*format*/) {
  const EnvelopeModel envelope = make_envelope(cfg);
  const WavepacketState input = make_input_state(envelope, 1.0);

  double max_dev = 0.0;
  double argmax_alpha = 0.0;
  double argmax_phi = 0.0;
  PreparationParams params;
  params.gamma = deg_to_rad(cfg.gamma_deg);
  InterferometerConfig ideal;
  InterferometerConfig ramped;
  ideal.eom_axis = ramped.eom_axis = deg_to_rad(cfg.eom_axis_deg);

  for (double alpha_deg : cfg.alpha_grid_deg) {
    params.alpha = deg_to_rad(alpha_deg);
    const double t_switch = detail::switch_time_for_alpha(envelope, params.alpha);
    ideal.schedule = EomSchedule::step(t_switch, cfg.v_pi_volts);
    ramped.schedule = EomSchedule::ramped(t_switch, cfg.ramp_ns, cfg.v_pi_volts);
    for (double phi_deg : cfg.phi_grid_deg) {
      params.phi = deg_to_rad(phi_deg);
      const double p_step = born_intensities(propagate(input, params, ideal)).p0;
      const double p_ramp = born_intensities(propagate(input, params, ramped)).p0;
      const double dev = std::abs(p_ramp - p_step);
      if (dev > max_dev) {
        max_dev = dev;
        argmax_alpha = alpha_deg;
        argmax_phi = phi_deg;
      }
    }
  }

  ScenarioResult result;
  result.kind = ScenarioKind::ramp_influence;
  result.summary = {{"ramp_ns", cfg.ramp_ns}, {"max_abs_difference", max_dev}};
  const std::string path =
      detail::output_path(out_dir, "ramp-influence", OutputFormat::json);
  write_json(path, {{"ramp_ns", cfg.ramp_ns},
                    {"max_abs_difference", max_dev},
                    {"argmax", {{"alpha_deg", argmax_alpha}, {"phi_deg", argmax_phi}}},
                    {"grid_points", cfg.alpha_grid_deg.size() * cfg.phi_grid_deg.size()}});
  result.files.push_back(path);
  return result;
}

/// Runs one scenario into out_dir and drops a run manifest (JSON echo of the
/// effective config plus the emitted files) alongside the outputs.
inline ScenarioResult run_scenario(ScenarioKind kind, const ConfigFile& cfg,
                                   const std::string& out_dir,
                                   OutputFormat format = OutputFormat::csv) {
  std::filesystem::create_directories(out_dir);
  ScenarioResult result;
  switch (kind) {
    case ScenarioKind::fig2a: result = run_fig2a(cfg, out_dir, format); break;
    case ScenarioKind::fig2b: result = run_fig2b(cfg, out_dir, format); break;
    case ScenarioKind::fig3a: result = run_fig3a(cfg, out_dir, format); break;
    case ScenarioKind::fig3b: result = run_fig3b(cfg, out_dir, format); break;
    case ScenarioKind::source_stats:
      result = run_source_stats(cfg, out_dir, format);
      break;
    case ScenarioKind::ramp_influence:
      result = run_ramp_influence(cfg, out_dir, format);
      break;
  }

  const std::string manifest_path =
      (std::filesystem::path(out_dir) /
       (std::string(scenario_name(kind)) + "_manifest.json"))
          .string();
  write_json(manifest_path, {{"scenario", scenario_name(kind)},
                             {"format", format == OutputFormat::csv ? "csv" : "json"},
                             {"files", result.files},
                             {"summary", result.summary},
                             {"config", config_to_json(cfg)}});
  result.files.push_back(manifest_path);
  return result;
}

}  // namespace mzsim
