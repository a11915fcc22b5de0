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

#include "mzsim/wavepacket.hpp"

namespace mzsim {

/// 2x2 complex transfer matrix of a lossless optical element acting on the
/// two path/polarization amplitudes. All constructors below yield unitaries.
struct JonesMatrix {
  std::complex<double> m00{1.0, 0.0};
  std::complex<double> m01{0.0, 0.0};
  std::complex<double> m10{0.0, 0.0};
  std::complex<double> m11{1.0, 0.0};

  PathAmplitudes apply(const PathAmplitudes& in) const {
    return {m00 * in.a0 + m01 * in.a1, m10 * in.a0 + m11 * in.a1};
  }

  JonesMatrix operator*(const JonesMatrix& rhs) const {
    return {m00 * rhs.m00 + m01 * rhs.m10, m00 * rhs.m01 + m01 * rhs.m11,
            m10 * rhs.m00 + m11 * rhs.m10, m10 * rhs.m01 + m11 * rhs.m11};
  }

  static JonesMatrix identity() { return {}; }
};

/// Waveplate with fast axis at `axis` (radians from path 0) and the given
/// retardance: R(axis) * diag(1, e^{-i retardance}) * R(-axis).
/// retardance = pi gives a half-wave plate; axis = 22.5 deg then maps
/// (1,0) -> (1,1)/sqrt(2).
inline JonesMatrix waveplate(double axis, double retardance) {
  const double c = std::cos(axis);
  const double s = std::sin(axis);
  const std::complex<double> e = std::exp(std::complex<double>(0.0, -retardance));
  const std::complex<double> one(1.0, 0.0);
  return {c * c + s * s * e, c * s * (one - e),
          c * s * (one - e), s * s + c * c * e};
}

/// Symmetric 50/50 mixer used for BS_in and the closed output splitter:
/// a half-wave plate at 22.5 deg, i.e. ((1,1),(1,-1))/sqrt(2).
inline JonesMatrix beam_splitter_5050() {
  constexpr double kInvSqrt2 = 0.7071067811865476;
  return {{kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}, {-kInvSqrt2, 0.0}};
}

/// Relative phase phi applied to path 1.
inline JonesMatrix phase_shifter(double phi) {
  return {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, std::exp(std::complex<double>(0.0, phi))};
}

/// Max-norm of U^dagger U - I.
inline double unitarity_defect(const JonesMatrix& u) {
  // Gram matrix entries of the two columns.
  const double g00 = std::norm(u.m00) + std::norm(u.m10);
  const double g11 = std::norm(u.m01) + std::norm(u.m11);
  const std::complex<double> g01 = std::conj(u.m00) * u.m01 + std::conj(u.m10) * u.m11;
  double defect = std::abs(g00 - 1.0);
  defect = std::max(defect, std::abs(g11 - 1.0));
  defect = std::max(defect, std::abs(g01));
  return defect;
}

inline bool is_unitary(const JonesMatrix& u, double tol = 1e-9) {
  return unitarity_defect(u) < tol;
}

}  // namespace mzsim
