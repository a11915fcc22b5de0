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
#include <stdexcept>
#include <string>

namespace mzsim {

/// Uniform time grid in nanoseconds. Sample k covers the half-open bin
/// [t_start + k*dt, t_start + (k+1)*dt) and is evaluated at the bin centre,
/// so bin-edge-aligned windows partition the samples exactly.
struct TimeGrid {
  double t_start = 0.0;  ///< ns
  double dt = 1.0;       ///< ns, > 0
  int n = 0;             ///< sample count, >= 2

  double sample_time(int k) const { return t_start + (k + 0.5) * dt; }
  double t_end() const { return t_start + n * dt; }

  bool operator==(const TimeGrid&) const = default;
};

inline void validate(const TimeGrid& grid) {
  if (!(grid.dt > 0.0) || !std::isfinite(grid.dt)) {
    throw std::invalid_argument("TimeGrid: dt must be finite and > 0, got " +
                                std::to_string(grid.dt));
  }
  if (grid.n < 2) {
    throw std::invalid_argument("TimeGrid: need at least 2 samples, got " +
                                std::to_string(grid.n));
  }
  if (!std::isfinite(grid.t_start)) {
    throw std::invalid_argument("TimeGrid: t_start must be finite");
  }
}

}  // namespace mzsim
