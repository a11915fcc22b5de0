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
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mzsim {

/// Value with 1-sigma standard error.
struct Measurement {
  double value = 0.0;
  double error = 0.0;
};

struct FringePoint {
  double phi = 0.0;      // rad
  double p_d0 = 0.0;     // observed D0 probability
  std::uint64_t n = 0;   // trials behind the point
};

/// D0 probability sampled against the arm phase.
struct FringeScan {
  std::vector<FringePoint> points;
};

inline void validate(const FringeScan& scan) {
  if (scan.points.size() < 4) {
    throw std::invalid_argument("FringeScan: need at least 4 points");
  }
  double lo = scan.points.front().phi;
  double hi = lo;
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    const FringePoint& p = scan.points[i];
    if (!std::isfinite(p.phi) || !std::isfinite(p.p_d0)) {
      throw std::invalid_argument("FringeScan: non-finite point");
    }
    lo = std::min(lo, p.phi);
    hi = std::max(hi, p.phi);
    for (std::size_t j = i + 1; j < scan.points.size(); ++j) {
      if (std::abs(scan.points[j].phi - p.phi) < 1e-12) {
        throw std::invalid_argument("FringeScan: duplicate phi values");
      }
    }
  }
  if (hi - lo < std::numbers::pi - 1e-9) {
    throw std::invalid_argument("FringeScan: points must span at least pi of phase");
  }
}

/// Least-squares fit of p(phi) = offset + amplitude * cos(phi - phase) with
/// amplitude >= 0; visibility = amplitude / offset with the error propagated
/// from the fit covariance.
struct FringeFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  Measurement visibility;
};

namespace detail {

/// Solves the symmetric 3x3 system m*x = b and writes inverse(m) into inv.
/// Throws if m is numerically singular.
inline std::array<double, 3> solve3(const std::array<std::array<double, 3>, 3>& m,
                                    const std::array<double, 3>& b,
                                    std::array<std::array<double, 3>, 3>& inv) {
  const double det =
      m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
      m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
      m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (!(std::abs(det) > 1e-12)) {
    throw std::runtime_error("fringe fit is rank-deficient");
  }
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return {inv[0][0] * b[0] + inv[0][1] * b[1] + inv[0][2] * b[2],
          inv[1][0] * b[0] + inv[1][1] * b[1] + inv[1][2] * b[2],
          inv[2][0] * b[0] + inv[2][1] * b[1] + inv[2][2] * b[2]};
}

}  // namespace detail

inline FringeFit fit_fringe(const FringeScan& scan) {
  validate(scan);
  // Linear model p = c + A cos(phi) + B sin(phi).
  std::array<std::array<double, 3>, 3> m{};
  std::array<double, 3> rhs{};
  for (const FringePoint& p : scan.points) {
    const std::array<double, 3> x{1.0, std::cos(p.phi), std::sin(p.phi)};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += x[i] * x[j];
      rhs[i] += x[i] * p.p_d0;
    }
  }
  std::array<std::array<double, 3>, 3> cov{};
  const std::array<double, 3> beta = detail::solve3(m, rhs, cov);
  const double c = beta[0];
  const double a = std::hypot(beta[1], beta[2]);

  double ssr = 0.0;
  for (const FringePoint& p : scan.points) {
    const double fit = c + beta[1] * std::cos(p.phi) + beta[2] * std::sin(p.phi);
    ssr += (p.p_d0 - fit) * (p.p_d0 - fit);
  }
  const double dof = static_cast<double>(scan.points.size()) - 3.0;
  const double sigma2 = dof > 0.0 ? ssr / dof : 0.0;
  for (auto& row : cov) {
    for (double& v : row) v *= sigma2;
  }

  if (!(c > 0.0)) {
    throw std::domain_error("fit_fringe: visibility undefined for non-positive mean");
  }
  const double v = a / c;
  // Propagate through V = hypot(A, B) / c.
  double var_v = 0.0;
  if (a > 1e-15) {
    const std::array<double, 3> g{-a / (c * c), beta[1] / (a * c), beta[2] / (a * c)};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) var_v += g[i] * cov[i][j] * g[j];
    }
  } else {
    var_v = std::max(cov[1][1], cov[2][2]) / (c * c);
  }

  FringeFit fit;
  fit.offset = c;
  fit.amplitude = a;
  fit.phase = std::atan2(beta[2], beta[1]);
  fit.visibility = {v, std::sqrt(std::max(var_v, 0.0))};
  return fit;
}

inline Measurement visibility_from_fringe(const FringeScan& scan) {
  return fit_fringe(scan).visibility;
}

/// |n1 - n2| / (n1 + n2) with its binomial standard error.
inline Measurement distinguishability(std::uint64_t n1, std::uint64_t n2) {
  const std::uint64_t total = n1 + n2;
  if (total == 0) {
    throw std::domain_error("distinguishability: undefined for zero counts");
  }
  const double p = static_cast<double>(n1) / static_cast<double>(total);
  const double d = std::abs(2.0 * p - 1.0);
  const double se = 2.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(total));
  return {d, se};
}

/// V^2 + D^2 against the duality bound, with a 2-sigma allowance so
/// statistical fluctuation never reports a false violation.
struct EgCheck {
  double sum = 0.0;
  double tolerance = 0.0;  // 2x propagated standard error
  bool satisfied = false;
};

inline EgCheck eg_check(const Measurement& v, const Measurement& d) {
  if (v.value < 0.0 || d.value < 0.0) {
    throw std::invalid_argument("eg_check: V and D must be >= 0");
  }
  EgCheck check;
  check.sum = v.value * v.value + d.value * d.value;
  check.tolerance =
      2.0 * std::hypot(2.0 * v.value * v.error, 2.0 * d.value * d.error);
  check.satisfied = check.sum <= 1.0 + check.tolerance + 1e-12;
  return check;
}

inline EgCheck eg_check(double v, double d) {
  return eg_check(Measurement{v, 0.0}, Measurement{d, 0.0});
}

/// alpha = arccos(sqrt(early / (early + late))): the early-window weight is
/// cos^2(alpha). Standard error is 1 / (2 sqrt(n)) exactly (the binomial
/// error through the arccos-sqrt chain).
inline Measurement estimate_alpha(std::uint64_t early_counts, std::uint64_t late_counts) {
  const std::uint64_t total = early_counts + late_counts;
  if (total == 0) {
    throw std::domain_error("estimate_alpha: undefined for zero counts");
  }
  const double frac = static_cast<double>(early_counts) / static_cast<double>(total);
  const double alpha = std::acos(std::sqrt(frac));
  const double se = 0.5 / std::sqrt(static_cast<double>(total));
  return {alpha, se};
}

/// The per-alpha figure-of-merit bundle.
struct AnalysisResult {
  Measurement visibility;
  Measurement distinguishability;
  double eg_sum = 0.0;
  bool eg_satisfied = false;
  Measurement alpha_estimate;  // rad
};

inline AnalysisResult make_analysis_result(const Measurement& v, const Measurement& d,
                                           const Measurement& alpha) {
  AnalysisResult r;
  r.visibility = v;
  r.distinguishability = d;
  const EgCheck check = eg_check(v, d);
  r.eg_sum = check.sum;
  r.eg_satisfied = check.satisfied;
  r.alpha_estimate = alpha;
  return r;
}

}  // namespace mzsim
