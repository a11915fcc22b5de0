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
#include <optional>
#include <stdexcept>

#include "mzsim/angles.hpp"
#include "mzsim/eom.hpp"
#include "mzsim/jones.hpp"
#include "mzsim/wavepacket.hpp"

namespace mzsim {

/// The (alpha, phi, gamma) triple describing the prepared wave/particle
/// superposition: alpha weights wave vs particle, phi is the arm phase,
/// gamma the relative phase between the early and late packet segments.
struct PreparationParams {
  double alpha = 0.0;  // rad, in [0, pi/2]
  double phi = 0.0;    // rad
  double gamma = 0.0;  // rad
};

inline void validate(const PreparationParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.phi) || !std::isfinite(p.gamma)) {
    throw std::invalid_argument("PreparationParams: angles must be finite");
  }
  if (p.alpha < 0.0 || p.alpha > std::numbers::pi / 2 + 1e-12) {
    throw std::invalid_argument("PreparationParams: alpha must be in [0, pi/2]");
  }
  const double lo = -std::numbers::pi - 1e-12;
  const double hi = 2.0 * std::numbers::pi + 1e-12;
  if (p.phi < lo || p.phi > hi || p.gamma < lo || p.gamma > hi) {
    throw std::invalid_argument("PreparationParams: phi and gamma must be in [-pi, 2*pi]");
  }
}

/// Copy with phi and gamma wrapped to (-pi, pi].
inline PreparationParams normalized(const PreparationParams& p) {
  validate(p);
  return {p.alpha, wrap_angle(p.phi), wrap_angle(p.gamma)};
}

enum class BlockedArm { none, path0, path1 };

/// Hardware description of the interferometer: the input splitter is fixed
/// 50/50; the output splitter is the EOM waveplate driven by `schedule`.
/// `phase_phi`, when set, overrides the phi of the preparation (a fixed
/// phase plate in the apparatus).
struct InterferometerConfig {
  double eom_axis = deg_to_rad(22.5);  // rad; pi retardance then rotates by 45 deg
  std::optional<double> phase_phi;     // rad
  EomSchedule schedule = EomSchedule::step(80.0);
  BlockedArm blocked_arm = BlockedArm::none;
};

inline void validate(const InterferometerConfig& config) {
  if (!std::isfinite(config.eom_axis)) {
    throw std::invalid_argument("InterferometerConfig: eom_axis must be finite");
  }
  if (config.phase_phi && !std::isfinite(*config.phase_phi)) {
    throw std::invalid_argument("InterferometerConfig: phase_phi must be finite");
  }
  validate(config.schedule);
}

inline double effective_phi(const PreparationParams& params,
                            const InterferometerConfig& config) {
  return config.phase_phi ? *config.phase_phi : params.phi;
}

/// Full element chain at one sample time, pre-BS_in amplitudes in, detector
/// basis out (path 0 -> D0, path 1 -> D1): 50/50 split, e^{i gamma} on the
/// post-switch segment, phase shifter phi on path 1, optional arm block,
/// then the EOM waveplate at the retardance the schedule gives for t.
inline PathAmplitudes sample_transfer(const PathAmplitudes& in, double t,
                                      double phi, double gamma,
                                      const InterferometerConfig& config) {
  PathAmplitudes s = beam_splitter_5050().apply(in);
  if (t >= config.schedule.switch_time) {
    const std::complex<double> late_phase = std::exp(std::complex<double>(0.0, gamma));
    s.a0 *= late_phase;
    s.a1 *= late_phase;
  }
  s.a1 *= std::exp(std::complex<double>(0.0, phi));
  if (config.blocked_arm == BlockedArm::path0) s.a0 = 0.0;
  if (config.blocked_arm == BlockedArm::path1) s.a1 = 0.0;
  return waveplate(config.eom_axis, eom_retardance(config.schedule, t)).apply(s);
}

/// Runs the whole envelope through the interferometer. Unitary (norm
/// conserving) unless an arm is blocked; then the blocked amplitude is lost.
inline WavepacketState propagate(const WavepacketState& input,
                                 const PreparationParams& params,
                                 const InterferometerConfig& config) {
  validate(input);
  validate(params);
  validate(config);
  const double phi = effective_phi(params, config);
  WavepacketState out;
  out.grid = input.grid;
  out.samples.resize(input.samples.size());
  for (int k = 0; k < input.grid.n; ++k) {
    out.samples[static_cast<std::size_t>(k)] =
        sample_transfer(input.samples[static_cast<std::size_t>(k)],
                        input.grid.sample_time(k), phi, params.gamma, config);
  }
  return out;
}

/// Detector intensities for unit input amplitude arriving at time t (the
/// envelope |f(t)|^2 factors out). p0 + p1 = 1 with no arm blocked, 1/2 with
/// one arm blocked.
inline BornIntensities detector_intensities_at(double t,
                                               const PreparationParams& params,
                                               const InterferometerConfig& config) {
  validate(params);
  validate(config);
  const PathAmplitudes out = sample_transfer(
      {1.0, 0.0}, t, effective_phi(params, config), params.gamma, config);
  return {std::norm(out.a0), std::norm(out.a1)};
}

/// Closed-form D0 probability cos^2(phi/2) cos^2(alpha) + sin^2(alpha)/2.
/// Independent of gamma.
inline double analytic_intensity(const PreparationParams& params) {
  validate(params);
  const double c_half = std::cos(params.phi / 2.0);
  const double ca = std::cos(params.alpha);
  const double sa = std::sin(params.alpha);
  return c_half * c_half * ca * ca + 0.5 * sa * sa;
}

enum class StateKind { wave, particle, superposition };

/// Two-path amplitudes per time-bin label: the discrete early/late picture
/// of the packet after the output splitter.
struct TimeBinState {
  PathAmplitudes early;
  PathAmplitudes late;
};

inline double total_norm(const TimeBinState& s) {
  return std::norm(s.early.a0) + std::norm(s.early.a1) + std::norm(s.late.a0) +
         std::norm(s.late.a1);
}

/// Normalized two-bin amplitude tables:
///   wave          |e> (x) (cos(phi/2)|0> - i sin(phi/2)|1>)
///   particle      |l> (x) (|0> + e^{i phi}|1>)/sqrt(2)
///   superposition cos(alpha) * wave + e^{i gamma} sin(alpha) * particle
inline TimeBinState analytic_state(const PreparationParams& params, StateKind kind) {
  validate(params);
  const std::complex<double> i_unit(0.0, 1.0);
  const PathAmplitudes wave_bin{std::cos(params.phi / 2.0),
                                -i_unit * std::sin(params.phi / 2.0)};
  constexpr double kInvSqrt2 = 0.7071067811865476;
  const PathAmplitudes particle_bin{
      kInvSqrt2, kInvSqrt2 * std::exp(i_unit * params.phi)};
  switch (kind) {
    case StateKind::wave:
      return {wave_bin, {0.0, 0.0}};
    case StateKind::particle:
      return {{0.0, 0.0}, particle_bin};
    case StateKind::superposition: {
      const double ca = std::cos(params.alpha);
      const std::complex<double> late_weight =
          std::sin(params.alpha) * std::exp(i_unit * params.gamma);
      return {{ca * wave_bin.a0, ca * wave_bin.a1},
              {late_weight * particle_bin.a0, late_weight * particle_bin.a1}};
    }
  }
  throw std::invalid_argument("analytic_state: unknown state kind");
}

}  // namespace mzsim
