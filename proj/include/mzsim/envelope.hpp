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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzsim/angles.hpp"
#include "mzsim/rng.hpp"
#include "mzsim/time_grid.hpp"
#include "mzsim/wavepacket.hpp"

namespace mzsim {

/// Temporal intensity profile |f(t)|^2 of the heralded photon, normalized to
/// unit integral. Two kinds:
///  - exponential: pdf(t) = exp(-t/tau)/tau on [0, inf). `duration` is the
///    nominal packet length used for display extents only; the density is
///    not truncated.
///  - table: piecewise-constant density over bins read from measured data;
///    normalized on load.
class EnvelopeModel {
 public:
  enum class Kind { exponential, table };

  static EnvelopeModel exponential(double decay_constant, double duration = 400.0) {
    if (!(decay_constant > 0.0) || !std::isfinite(decay_constant)) {
      throw std::invalid_argument("EnvelopeModel: decay constant must be finite and > 0");
    }
    if (!(duration > 0.0)) {
      throw std::invalid_argument("EnvelopeModel: duration must be > 0");
    }
    EnvelopeModel m;
    m.kind_ = Kind::exponential;
    m.decay_constant_ = decay_constant;
    m.duration_ = duration;
    return m;
  }

  /// Table rows are (bin start time, relative intensity); bin widths come
  /// from consecutive time differences (the last bin reuses the previous
  /// width, 1 ns for a single-row table). Intensities are normalized so the
  /// density integrates to 1.
  static EnvelopeModel table(std::vector<double> times, std::vector<double> intensities) {
    if (times.empty() || times.size() != intensities.size()) {
      throw std::invalid_argument("EnvelopeModel: table needs matching non-empty columns");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (!std::isfinite(times[i]) || times[i] < 0.0) {
        throw std::invalid_argument("EnvelopeModel: table times must be finite and >= 0");
      }
      if (i > 0 && !(times[i] > times[i - 1])) {
        throw std::invalid_argument("EnvelopeModel: table times must be strictly increasing");
      }
      if (!std::isfinite(intensities[i]) || intensities[i] < 0.0) {
        throw std::invalid_argument("EnvelopeModel: table intensities must be finite and >= 0");
      }
    }
    EnvelopeModel m;
    m.kind_ = Kind::table;
    m.times_ = std::move(times);
    m.widths_.resize(m.times_.size());
    for (std::size_t i = 0; i + 1 < m.times_.size(); ++i) {
      m.widths_[i] = m.times_[i + 1] - m.times_[i];
    }
    m.widths_.back() = m.widths_.size() > 1 ? m.widths_[m.widths_.size() - 2] : 1.0;
    double total = 0.0;
    for (std::size_t i = 0; i < intensities.size(); ++i) {
      total += intensities[i] * m.widths_[i];
    }
    if (!(total > 0.0)) {
      throw std::invalid_argument("EnvelopeModel: table has zero total intensity");
    }
    m.density_.resize(intensities.size());
    for (std::size_t i = 0; i < intensities.size(); ++i) {
      m.density_[i] = intensities[i] / total;
    }
    m.cumulative_.resize(m.density_.size() + 1);
    m.cumulative_[0] = 0.0;
    for (std::size_t i = 0; i < m.density_.size(); ++i) {
      m.cumulative_[i + 1] = m.cumulative_[i] + m.density_[i] * m.widths_[i];
    }
    m.cumulative_.back() = 1.0;
    m.duration_ = m.times_.back() + m.widths_.back() - m.times_.front();
    return m;
  }

  Kind kind() const { return kind_; }
  double decay_constant() const { return decay_constant_; }
  double duration() const { return duration_; }

  /// Probability density |f(t)|^2 at time t.
  double pdf(double t) const {
    if (kind_ == Kind::exponential) {
      return t < 0.0 ? 0.0 : std::exp(-t / decay_constant_) / decay_constant_;
    }
    if (t < times_.front() || t >= support_end()) return 0.0;
    const std::size_t i = bin_index(t);
    return density_[i];
  }

  /// P(detection time < t).
  double cdf(double t) const {
    if (kind_ == Kind::exponential) {
      return t <= 0.0 ? 0.0 : -std::expm1(-t / decay_constant_);
    }
    if (t <= times_.front()) return 0.0;
    if (t >= support_end()) return 1.0;
    const std::size_t i = bin_index(t);
    return cumulative_[i] + density_[i] * (t - bin_start(i));
  }

  /// Inverse CDF; u in [0, 1]. quantile(cdf(t)) = t on the support.
  double quantile(double u) const {
    if (!(u >= 0.0) || !(u <= 1.0)) {
      throw std::domain_error("EnvelopeModel: quantile argument must be in [0, 1]");
    }
    if (kind_ == Kind::exponential) {
      if (u >= 1.0) return std::numeric_limits<double>::infinity();
      return -decay_constant_ * std::log1p(-u);
    }
    if (u >= 1.0) return support_end();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t i = std::min<std::size_t>(
        std::distance(cumulative_.begin(), it) - 1, density_.size() - 1);
    if (density_[i] <= 0.0) return bin_start(i);
    return bin_start(i) + (u - cumulative_[i]) / density_[i];
  }

  double support_start() const {
    return kind_ == Kind::exponential ? 0.0 : times_.front();
  }

  /// End of the representable support: where all but `tail_mass` of the
  /// probability lies. Exact table end for tables.
  double support_end(double tail_mass = 1e-10) const {
    if (kind_ == Kind::exponential) {
      return std::max(duration_, -decay_constant_ * std::log(tail_mass));
    }
    return times_.back() + widths_.back();
  }

 private:
  std::size_t bin_index(double t) const {
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    return static_cast<std::size_t>(std::distance(times_.begin(), it)) - 1;
  }
  double bin_start(std::size_t i) const { return times_[i]; }

  Kind kind_ = Kind::exponential;
  double decay_constant_ = 231.8;
  double duration_ = 400.0;
  std::vector<double> times_;       // bin start times
  std::vector<double> widths_;      // bin widths
  std::vector<double> density_;     // normalized pdf per bin
  std::vector<double> cumulative_;  // cdf at bin starts, size density_+1
};

/// Loads a table envelope from a two-column text file (time_ns,
/// relative_intensity; comma or whitespace separated, '#' comments).
inline EnvelopeModel load_envelope_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_envelope_table: cannot open " + path);
  }
  std::vector<double> times;
  std::vector<double> intensities;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',' || c == '\t') c = ' ';
    }
    std::istringstream row(line);
    double t = 0.0;
    double v = 0.0;
    if (!(row >> t)) continue;  // blank line
    if (!(row >> v)) {
      throw std::invalid_argument("load_envelope_table: " + path + ":" +
                                  std::to_string(line_no) + ": expected two columns");
    }
    times.push_back(t);
    intensities.push_back(v);
  }
  if (times.empty()) {
    throw std::invalid_argument("load_envelope_table: " + path + " has no data rows");
  }
  return EnvelopeModel::table(std::move(times), std::move(intensities));
}

/// Decay constant tau with 1 - exp(-switch_time/tau) = early_fraction, i.e.
/// the exponential model that puts `early_fraction` of the packet before the
/// switch. Exact inverse of the exponential window fraction.
inline double solve_decay_constant(double switch_time, double early_fraction) {
  if (!(early_fraction > 0.0) || !(early_fraction < 1.0)) {
    throw std::domain_error("solve_decay_constant: early fraction must be in (0, 1)");
  }
  if (!(switch_time > 0.0)) {
    throw std::domain_error("solve_decay_constant: switch time must be > 0");
  }
  return -switch_time / std::log1p(-early_fraction);
}

/// Decay constant for which an 80-ns switch puts cos^2(57.3 deg) of the
/// packet in the early window, the operating point used by the default
/// scenarios.
inline double default_decay_constant() {
  const double c = std::cos(deg_to_rad(57.3));
  return solve_decay_constant(80.0, c * c);
}

/// Draws a detection time from the envelope density.
inline double sample_detection_time(const EnvelopeModel& model, TrialRng& rng) {
  return model.quantile(rng.next_unit());
}

/// Grid covering the envelope support at the given resolution, starting on a
/// whole-dt boundary so 1-ns histogram bins line up with grid bins.
inline TimeGrid envelope_grid(const EnvelopeModel& model, double dt = 1.0) {
  const double start = std::floor(model.support_start() / dt) * dt;
  const int n = static_cast<int>(std::ceil((model.support_end() - start) / dt));
  return {start, dt, std::max(n, 2)};
}

/// Single-path input state (all amplitude on path 0, zero phase) whose
/// intensity follows the envelope, renormalized to unit norm on the grid.
/// The grid must cover essentially all of the envelope mass.
inline WavepacketState make_input_state(const EnvelopeModel& model, const TimeGrid& grid) {
  validate(grid);
  WavepacketState state;
  state.grid = grid;
  state.samples.resize(grid.n);
  double norm = 0.0;
  for (int k = 0; k < grid.n; ++k) {
    const double p = model.pdf(grid.sample_time(k));
    state.samples[k].a0 = std::sqrt(p);
    norm += p;
  }
  norm *= grid.dt;
  if (!(norm > 0.99)) {
    throw std::invalid_argument(
        "make_input_state: grid covers only " + std::to_string(norm) +
        " of the envelope mass; extend it over the support");
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (PathAmplitudes& s : state.samples) s.a0 *= scale;
  return state;
}

inline WavepacketState make_input_state(const EnvelopeModel& model, double dt = 1.0) {
  return make_input_state(model, envelope_grid(model, dt));
}

}  // namespace mzsim
