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
#include <numbers>
#include <stdexcept>

namespace mzsim {

/// Voltage-versus-time program of the electro-optic modulator. The voltage
/// holds level_before until switch_time, ramps linearly over ramp_duration,
/// then holds level_after. At v_pi the EOM acts as a half-wave plate and the
/// output splitter is "present"; at 0 V it is "absent".
///
/// switch_time = +infinity means the level never changes (always closed for
/// the defaults); switch_time <= t_start means the packet sees level_after.
struct EomSchedule {
  double v_pi = 198.0;          ///< half-wave voltage, V
  double switch_time = 80.0;    ///< ns
  double ramp_duration = 15.0;  ///< ns, >= 0
  double level_before = 198.0;  ///< V
  double level_after = 0.0;     ///< V

  double voltage_at(double t) const {
    if (t < switch_time) return level_before;
    if (t >= switch_time + ramp_duration || ramp_duration <= 0.0) return level_after;
    const double x = (t - switch_time) / ramp_duration;
    return level_before + (level_after - level_before) * x;
  }

  /// Instantaneous switch from v_pi to 0 V at switch_time.
  static EomSchedule step(double switch_time, double v_pi = 198.0) {
    return {v_pi, switch_time, 0.0, v_pi, 0.0};
  }

  /// Linear ramp from v_pi to 0 V starting at switch_time.
  static EomSchedule ramped(double switch_time, double ramp_duration, double v_pi = 198.0) {
    return {v_pi, switch_time, ramp_duration, v_pi, 0.0};
  }
};

inline void validate(const EomSchedule& schedule) {
  if (!(schedule.v_pi > 0.0)) {
    throw std::invalid_argument("EomSchedule: v_pi must be > 0");
  }
  if (!(schedule.ramp_duration >= 0.0)) {
    throw std::invalid_argument("EomSchedule: ramp_duration must be >= 0");
  }
}

/// Waveplate retardance induced at time t: pi * voltage(t) / v_pi.
inline double eom_retardance(const EomSchedule& schedule, double t) {
  validate(schedule);
  return std::numbers::pi * schedule.voltage_at(t) / schedule.v_pi;
}

}  // namespace mzsim
