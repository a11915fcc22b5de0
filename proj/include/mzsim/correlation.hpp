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
#include <stdexcept>

#include "mzsim/rng.hpp"

namespace mzsim {

/// Heralded-source bookkeeping: pair rate inside the generation window, the
/// trap/generation duty cycle, and the multi-pair emission probability
/// epsilon (chance that a herald is accompanied by a second photon).
struct SourceStats {
  double pair_rate = 47230.0;       // pairs/s within the generation window
  double trap_time_ms = 4.5;
  double generation_time_ms = 0.5;
  double multi_pair_prob = 0.0;     // epsilon
};

inline void validate(const SourceStats& s) {
  if (!(s.pair_rate >= 0.0) || !std::isfinite(s.pair_rate)) {
    throw std::invalid_argument("SourceStats: pair_rate must be finite and >= 0");
  }
  if (!(s.trap_time_ms >= 0.0) || !(s.generation_time_ms > 0.0)) {
    throw std::invalid_argument("SourceStats: need trap_time >= 0 and generation_time > 0");
  }
  if (!(s.multi_pair_prob >= 0.0) || !(s.multi_pair_prob < 1.0)) {
    throw std::invalid_argument("SourceStats: multi_pair_prob must be in [0, 1)");
  }
}

/// Fraction of wall time spent generating pairs.
inline double duty_cycle(const SourceStats& s) {
  validate(s);
  return s.generation_time_ms / (s.trap_time_ms + s.generation_time_ms);
}

/// Pair rate averaged over trap + generation cycles.
inline double time_averaged_rate(const SourceStats& s) {
  return s.pair_rate * duty_cycle(s);
}

/// Click totals from a heralded HBT run: the heralded photon meets a 50/50
/// analyzer with threshold detectors on both outputs.
struct HeraldedCounts {
  std::uint64_t n_heralds = 0;
  std::uint64_t n_h1 = 0;   // heralds with a click on output 1
  std::uint64_t n_h2 = 0;   // heralds with a click on output 2
  std::uint64_t n_h12 = 0;  // heralds with clicks on both
};

/// Standard heralded estimator n_heralds * n_h12 / (n_h1 * n_h2). Scale
/// invariant; 1 for Poissonian light, 0 for an ideal single photon.
inline double g2_conditional(const HeraldedCounts& c) {
  if (c.n_heralds == 0 || c.n_h1 == 0 || c.n_h2 == 0) {
    throw std::domain_error("g2_conditional: estimate undefined for zero counts");
  }
  return static_cast<double>(c.n_heralds) * static_cast<double>(c.n_h12) /
         (static_cast<double>(c.n_h1) * static_cast<double>(c.n_h2));
}

/// What the multi-pair model converges to: coincidences happen only when an
/// extra photon (probability epsilon) splits from the heralded one, so
/// p12 = eps/2 and p1 = p2 = 1/2 + eps/4, giving 2 eps / (1 + eps/2)^2.
inline double g2_conditional_expected(double epsilon) {
  if (!(epsilon >= 0.0) || !(epsilon < 1.0)) {
    throw std::domain_error("g2_conditional_expected: epsilon must be in [0, 1)");
  }
  const double half = 1.0 + epsilon / 2.0;
  return 2.0 * epsilon / (half * half);
}

/// Per-herald Monte Carlo of the HBT analyzer: one photon always arrives,
/// a second with probability epsilon, each routed 50/50 independently.
/// Deterministic given the seed.
inline HeraldedCounts simulate_heralded_hbt(std::uint64_t n_heralds, double epsilon,
                                            std::uint64_t seed) {
  if (!(epsilon >= 0.0) || !(epsilon < 1.0)) {
    throw std::invalid_argument("simulate_heralded_hbt: epsilon must be in [0, 1)");
  }
  HeraldedCounts c;
  c.n_heralds = n_heralds;
  for (std::uint64_t trial = 0; trial < n_heralds; ++trial) {
    TrialRng rng(seed, trial);
    bool click1 = false;
    bool click2 = false;
    (rng.next_unit() < 0.5 ? click1 : click2) = true;
    if (epsilon > 0.0 && rng.next_unit() < epsilon) {
      (rng.next_unit() < 0.5 ? click1 : click2) = true;
    }
    c.n_h1 += click1 ? 1 : 0;
    c.n_h2 += click2 ? 1 : 0;
    c.n_h12 += (click1 && click2) ? 1 : 0;
  }
  return c;
}

/// g2_cross^2 / (g_auto,s * g_auto,as) with thermal auto-correlations of 2:
/// the factor by which the field correlations violate the classical bound.
inline double cauchy_schwarz_factor(double g2_cross_peak) {
  if (!(g2_cross_peak >= 0.0)) {
    throw std::domain_error("cauchy_schwarz_factor: g2_cross_peak must be >= 0");
  }
  return g2_cross_peak * g2_cross_peak / 4.0;
}

/// Source-statistics summary: configured cross-correlation peak, simulated
/// conditional g2, and the implied Cauchy-Schwarz violation factor.
struct CorrelationReport {
  double g2_cross_peak = 0.0;
  double g2_conditional = 0.0;
  double cs_factor = 0.0;
};

inline CorrelationReport make_correlation_report(double g2_cross_peak,
                                                 const HeraldedCounts& counts) {
  CorrelationReport r;
  r.g2_cross_peak = g2_cross_peak;
  r.g2_conditional = counts.n_h12 == 0 ? 0.0 : g2_conditional(counts);
  r.cs_factor = cauchy_schwarz_factor(g2_cross_peak);
  return r;
}

}  // namespace mzsim
