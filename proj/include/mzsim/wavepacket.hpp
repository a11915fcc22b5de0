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
#include <complex>
#include <stdexcept>
#include <vector>

#include "mzsim/time_grid.hpp"

namespace mzsim {

/// Complex amplitudes of the two interferometer paths at one time sample.
struct PathAmplitudes {
  std::complex<double> a0{0.0, 0.0};
  std::complex<double> a1{0.0, 0.0};
};

/// Time-resolved two-path state of a single photon. Samples are amplitude
/// densities: sum_k (|a0_k|^2 + |a1_k|^2) * dt is the state norm, which is
/// 1 for an unblocked lossless photon. Treat as immutable after construction;
/// sharing read-only copies across threads is safe.
struct WavepacketState {
  TimeGrid grid;
  std::vector<PathAmplitudes> samples;
};

namespace detail {

inline void check_shape(const WavepacketState& state) {
  validate(state.grid);
  if (state.samples.size() != static_cast<std::size_t>(state.grid.n)) {
    throw std::invalid_argument(
        "WavepacketState: sample count " + std::to_string(state.samples.size()) +
        " does not match grid n = " + std::to_string(state.grid.n));
  }
}

}  // namespace detail

/// Shape plus finiteness check; throws std::invalid_argument on violation.
inline void validate(const WavepacketState& state) {
  detail::check_shape(state);
  for (const PathAmplitudes& s : state.samples) {
    if (!std::isfinite(s.a0.real()) || !std::isfinite(s.a0.imag()) ||
        !std::isfinite(s.a1.real()) || !std::isfinite(s.a1.imag())) {
      throw std::invalid_argument("WavepacketState: non-finite amplitude");
    }
  }
}

/// Total probability weight sum_k (|a0|^2 + |a1|^2) * dt.
inline double total_norm(const WavepacketState& state) {
  detail::check_shape(state);
  double acc = 0.0;
  for (const PathAmplitudes& s : state.samples) {
    acc += std::norm(s.a0) + std::norm(s.a1);
  }
  return acc * state.grid.dt;
}

/// Probability weight of the half-open window [t_a, t_b): sums the samples
/// whose bin centre falls inside. For a unit-norm state and the early window
/// this is cos^2(alpha). Throws std::out_of_range if the window is not
/// contained in the grid span.
inline double window_fraction(const WavepacketState& state, double t_a, double t_b) {
  detail::check_shape(state);
  if (!(t_a < t_b)) {
    throw std::out_of_range("window_fraction: need t_a < t_b");
  }
  const TimeGrid& g = state.grid;
  constexpr double kEdgeTol = 1e-9;
  if (t_a < g.t_start - kEdgeTol || t_b > g.t_end() + kEdgeTol) {
    throw std::out_of_range("window_fraction: window [" + std::to_string(t_a) +
                            ", " + std::to_string(t_b) + ") outside grid span");
  }
  double acc = 0.0;
  for (int k = 0; k < g.n; ++k) {
    const double t = g.sample_time(k);
    if (t >= t_a && t < t_b) {
      acc += std::norm(state.samples[k].a0) + std::norm(state.samples[k].a1);
    }
  }
  return acc * g.dt;
}

/// Detector-basis probabilities of a post-interferometer state:
/// path 0 maps to D0, path 1 to D1. p0 + p1 equals total_norm.
struct BornIntensities {
  double p0 = 0.0;
  double p1 = 0.0;
};

inline BornIntensities born_intensities(const WavepacketState& state) {
  detail::check_shape(state);
  double p0 = 0.0;
  double p1 = 0.0;
  for (const PathAmplitudes& s : state.samples) {
    p0 += std::norm(s.a0);
    p1 += std::norm(s.a1);
  }
  return {p0 * state.grid.dt, p1 * state.grid.dt};
}

}  // namespace mzsim
