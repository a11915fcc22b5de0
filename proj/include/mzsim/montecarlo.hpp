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
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "mzsim/envelope.hpp"
#include "mzsim/interferometer.hpp"
#include "mzsim/rng.hpp"

namespace mzsim {

enum class Detector { d0 = 0, d1 = 1 };

/// Everything one Monte Carlo run needs. Identical configs (same seed)
/// produce bit-identical outcomes regardless of worker count.
struct RunConfig {
  std::uint64_t n_trials = 100000;
  std::uint64_t master_seed = 1;
  double bin_width = 1.0;  // ns, histogram binning
  PreparationParams params;
  InterferometerConfig interferometer;
  EnvelopeModel envelope = EnvelopeModel::exponential(default_decay_constant());
  double detector_efficiency = 1.0;
};

inline void validate(const RunConfig& config) {
  if (config.n_trials < 1) {
    throw std::invalid_argument("RunConfig: n_trials must be >= 1");
  }
  if (!(config.bin_width > 0.0) || !std::isfinite(config.bin_width)) {
    throw std::invalid_argument("RunConfig: bin_width must be finite and > 0");
  }
  if (!(config.detector_efficiency >= 0.0) || !(config.detector_efficiency <= 1.0)) {
    throw std::invalid_argument("RunConfig: detector_efficiency must be in [0, 1]");
  }
  validate(config.params);
  validate(config.interferometer);
}

/// One detector click.
struct DetectionRecord {
  std::uint64_t trial_id = 0;
  Detector detector = Detector::d0;
  double time = 0.0;  // ns
};

/// Detector intensities as a function of time, with the two constant
/// regimes (before the switch, after the ramp) precomputed. Exact: inside
/// the ramp it falls through to the full element chain.
class PerTimeLaw {
 public:
  PerTimeLaw(const PreparationParams& params, const InterferometerConfig& config)
      : params_(params),
        config_(config),
        ramp_start_(config.schedule.switch_time),
        ramp_end_(config.schedule.switch_time + config.schedule.ramp_duration) {
    const double t_before =
        std::isfinite(ramp_start_) ? ramp_start_ - 1.0 : 0.0;
    before_ = detector_intensities_at(t_before, params_, config_);
    after_ = std::isfinite(ramp_end_)
                 ? detector_intensities_at(ramp_end_, params_, config_)
                 : before_;
  }

  BornIntensities at(double t) const {
    if (t < ramp_start_) return before_;
    if (t >= ramp_end_) return after_;
    return detector_intensities_at(t, params_, config_);
  }

 private:
  PreparationParams params_;
  InterferometerConfig config_;
  double ramp_start_;
  double ramp_end_;
  BornIntensities before_{};
  BornIntensities after_{};
};

namespace detail {

/// Trial kernel shared by every runner: detection-time-first sampling (the
/// envelope factors out of the path dynamics), then one uniform draw picks
/// D0 / D1 / no-click against the per-time intensities. Calls
/// sink(trial_id, detector, time) for clicks, sink(trial_id) for vacuum.
template <typename ClickSink, typename VacuumSink>
void run_range(const RunConfig& config, const PerTimeLaw& law, std::uint64_t lo,
               std::uint64_t hi, ClickSink&& on_click, VacuumSink&& on_vacuum) {
  const double eta = config.detector_efficiency;
  for (std::uint64_t trial = lo; trial < hi; ++trial) {
    TrialRng rng(config.master_seed, trial);
    const double t = config.envelope.quantile(rng.next_unit());
    const BornIntensities w = law.at(t);
    const double i0 = eta * w.p0;
    const double i1 = eta * w.p1;
    const double u = rng.next_unit();
    if (u < i0) {
      on_click(trial, Detector::d0, t);
    } else if (u < i0 + i1) {
      on_click(trial, Detector::d1, t);
    } else {
      on_vacuum(trial);
    }
  }
}

}  // namespace detail

/// Runs all trials and returns the click records in trial order. n_workers
/// splits the trial range into contiguous chunks run on separate threads;
/// the result is identical for any worker count.
inline std::vector<DetectionRecord> run_trials(const RunConfig& config,
                                               int n_workers = 1) {
  validate(config);
  if (n_workers < 1) {
    throw std::invalid_argument("run_trials: n_workers must be >= 1");
  }
  const PerTimeLaw law(config.params, config.interferometer);
  const std::uint64_t n = config.n_trials;
  const auto workers = static_cast<std::uint64_t>(n_workers);

  std::vector<std::vector<DetectionRecord>> parts(workers);
  auto run_chunk = [&](std::uint64_t w) {
    const std::uint64_t lo = n * w / workers;
    const std::uint64_t hi = n * (w + 1) / workers;
    auto& out = parts[w];
    out.reserve(static_cast<std::size_t>(hi - lo));
    detail::run_range(
        config, law, lo, hi,
        [&out](std::uint64_t trial, Detector d, double t) {
          out.push_back({trial, d, t});
        },
        [](std::uint64_t) {});
  };

  if (workers == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back(run_chunk, w);
    }
    for (std::thread& th : pool) th.join();
  }

  std::vector<DetectionRecord> records;
  records.reserve(static_cast<std::size_t>(n));
  for (auto& part : parts) {
    records.insert(records.end(), part.begin(), part.end());
  }
  return records;
}

/// Click totals without materializing records; same trial stream as
/// run_trials, so the two agree exactly under one config.
struct ClickCounts {
  std::uint64_t n_d0 = 0;
  std::uint64_t n_d1 = 0;
  std::uint64_t n_vacuum = 0;

  std::uint64_t clicks() const { return n_d0 + n_d1; }
  double d0_fraction() const {
    if (clicks() == 0) {
      throw std::domain_error("ClickCounts: no clicks recorded");
    }
    return static_cast<double>(n_d0) / static_cast<double>(clicks());
  }
};

inline ClickCounts count_trials(const RunConfig& config) {
  validate(config);
  const PerTimeLaw law(config.params, config.interferometer);
  ClickCounts counts;
  detail::run_range(
      config, law, 0, config.n_trials,
      [&counts](std::uint64_t, Detector d, double) {
        (d == Detector::d0 ? counts.n_d0 : counts.n_d1) += 1;
      },
      [&counts](std::uint64_t) { counts.n_vacuum += 1; });
  return counts;
}

/// Same run with one arm blocked; photons that took the blocked arm are
/// lost and show up as vacuum trials (n_d0 + n_d1 + n_vacuum = n_trials).
inline ClickCounts blocked_arm_counts(const RunConfig& config, BlockedArm arm) {
  if (arm == BlockedArm::none) {
    throw std::invalid_argument("blocked_arm_counts: pick path0 or path1");
  }
  RunConfig blocked = config;
  blocked.interferometer.blocked_arm = arm;
  return count_trials(blocked);
}

/// 1-ns-style binned counts per detector. Bin k covers
/// [k*bin_width, (k+1)*bin_width); sums equal the record count exactly.
struct Histogram {
  double bin_width = 1.0;
  std::vector<std::uint64_t> counts_d0;
  std::vector<std::uint64_t> counts_d1;

  std::size_t size() const { return counts_d0.size(); }
  double bin_start(std::size_t k) const { return static_cast<double>(k) * bin_width; }
};

inline Histogram histogram(const std::vector<DetectionRecord>& records,
                           double bin_width = 1.0) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw std::invalid_argument("histogram: bin_width must be finite and > 0");
  }
  Histogram h;
  h.bin_width = bin_width;
  for (const DetectionRecord& r : records) {
    if (r.time < 0.0) {
      throw std::invalid_argument("histogram: negative detection time");
    }
    const auto k = static_cast<std::size_t>(r.time / bin_width);
    if (k >= h.counts_d0.size()) {
      h.counts_d0.resize(k + 1, 0);
      h.counts_d1.resize(k + 1, 0);
    }
    (r.detector == Detector::d0 ? h.counts_d0 : h.counts_d1)[k] += 1;
  }
  return h;
}

}  // namespace mzsim
