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

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include <mzsim/envelope.hpp>
#include <mzsim/time_grid.hpp>
#include <mzsim/wavepacket.hpp>

namespace mzsim {
namespace {

// Rectangular envelope over [0, width), unit norm.
WavepacketState rect_state(double width, double dt, bool split_paths = false) {
  WavepacketState s;
  s.grid = {0.0, dt, static_cast<int>(width / dt)};
  const double density = 1.0 / width;
  const double amp = std::sqrt(split_paths ? density / 2.0 : density);
  s.samples.assign(static_cast<std::size_t>(s.grid.n),
                   split_paths ? PathAmplitudes{amp, amp} : PathAmplitudes{amp, 0.0});
  return s;
}

TEST(TimeGrid, ValidatesFields) {
  EXPECT_NO_THROW(validate(TimeGrid{0.0, 1.0, 2}));
  EXPECT_THROW(validate(TimeGrid{0.0, 0.0, 10}), std::invalid_argument);
  EXPECT_THROW(validate(TimeGrid{0.0, -1.0, 10}), std::invalid_argument);
  EXPECT_THROW(validate(TimeGrid{0.0, 1.0, 1}), std::invalid_argument);
  EXPECT_THROW(validate(TimeGrid{INFINITY, 1.0, 10}), std::invalid_argument);
}

TEST(TimeGrid, BinCentreSampling) {
  const TimeGrid g{0.0, 1.0, 4};
  EXPECT_DOUBLE_EQ(g.sample_time(0), 0.5);
  EXPECT_DOUBLE_EQ(g.sample_time(3), 3.5);
  EXPECT_DOUBLE_EQ(g.t_end(), 4.0);
}

TEST(TotalNorm, NormalizedSinglePhotonIsOne) {
  const auto state = make_input_state(EnvelopeModel::exponential(231.7), 1.0);
  EXPECT_NEAR(total_norm(state), 1.0, 1e-9);
}

TEST(TotalNorm, AllZeroAmplitudesGiveZero) {
  WavepacketState s;
  s.grid = {0.0, 1.0, 16};
  s.samples.assign(16, PathAmplitudes{});
  EXPECT_DOUBLE_EQ(total_norm(s), 0.0);
}

TEST(TotalNorm, BlockingOnePathOfEqualSuperpositionHalves) {
  WavepacketState s = rect_state(400.0, 1.0, /*split_paths=*/true);
  for (PathAmplitudes& a : s.samples) a.a1 = 0.0;
  EXPECT_NEAR(total_norm(s), 0.5, 1e-12);
}

TEST(TotalNorm, ShapeMismatchThrows) {
  WavepacketState s = rect_state(400.0, 1.0);
  s.samples.pop_back();
  EXPECT_THROW(total_norm(s), std::invalid_argument);
}

TEST(Validate, RejectsNonFiniteAmplitudes) {
  WavepacketState s = rect_state(8.0, 1.0);
  s.samples[3].a1 = std::complex<double>(NAN, 0.0);
  EXPECT_THROW(validate(s), std::invalid_argument);
}

TEST(WindowFraction, FullWindowIsOne) {
  const WavepacketState s = rect_state(400.0, 1.0);
  EXPECT_NEAR(window_fraction(s, 0.0, 400.0), 1.0, 1e-12);
}

TEST(WindowFraction, ExponentialEarlyWindow) {
  const auto state = make_input_state(EnvelopeModel::exponential(231.7), 1.0);
  // 1 - exp(-80/231.7); bin-centred sampling reproduces the analytic CDF.
  EXPECT_NEAR(window_fraction(state, state.grid.t_start, 80.0), 0.29197371571850605,
              1e-9);
}

TEST(WindowFraction, RectangularFirstHalf) {
  const WavepacketState s = rect_state(400.0, 1.0);
  EXPECT_NEAR(window_fraction(s, 0.0, 200.0), 0.5, 1e-12);
}

TEST(WindowFraction, AdjacentWindowsAddExactly) {
  const auto state = make_input_state(EnvelopeModel::exponential(231.7), 1.0);
  const double t_end = state.grid.t_end();
  for (double split : {13.0, 80.0, 99.5, 400.0, 1717.25}) {
    const double lhs = window_fraction(state, 0.0, split) +
                       window_fraction(state, split, t_end);
    EXPECT_NEAR(lhs, window_fraction(state, 0.0, t_end), 1e-12) << split;
  }
}

TEST(WindowFraction, WindowOutsideGridThrows) {
  const WavepacketState s = rect_state(400.0, 1.0);
  EXPECT_THROW(window_fraction(s, -5.0, 10.0), std::out_of_range);
  EXPECT_THROW(window_fraction(s, 10.0, 401.0), std::out_of_range);
  EXPECT_THROW(window_fraction(s, 10.0, 10.0), std::out_of_range);
  EXPECT_THROW(window_fraction(s, 20.0, 10.0), std::out_of_range);
}

TEST(BornIntensities, SinglePathCases) {
  const WavepacketState s = rect_state(400.0, 1.0);
  const BornIntensities b = born_intensities(s);
  EXPECT_NEAR(b.p0, 1.0, 1e-12);
  EXPECT_NEAR(b.p1, 0.0, 1e-12);
}

TEST(BornIntensities, EqualSplit) {
  const WavepacketState s = rect_state(400.0, 1.0, /*split_paths=*/true);
  const BornIntensities b = born_intensities(s);
  EXPECT_NEAR(b.p0, 0.5, 1e-12);
  EXPECT_NEAR(b.p1, 0.5, 1e-12);
}

TEST(BornIntensities, ComponentsSumToTotalNorm) {
  const auto state = make_input_state(EnvelopeModel::exponential(100.0), 0.5);
  const BornIntensities b = born_intensities(state);
  EXPECT_GE(b.p0, 0.0);
  EXPECT_LE(b.p0, 1.0 + 1e-12);  // renormalization rounding can land a hair above
  EXPECT_GE(b.p1, 0.0);
  EXPECT_NEAR(b.p0 + b.p1, total_norm(state), 1e-9);
}

TEST(Discretization, RefiningDtBarelyMovesTheNorm) {
  // Raw (un-renormalized) midpoint sums of a smooth envelope.
  const EnvelopeModel model = EnvelopeModel::exponential(231.7);
  auto raw_norm = [&model](double dt) {
    const TimeGrid grid = envelope_grid(model, dt);
    double acc = 0.0;
    for (int k = 0; k < grid.n; ++k) acc += model.pdf(grid.sample_time(k));
    return acc * grid.dt;
  };
  EXPECT_LT(std::abs(raw_norm(1.0) - raw_norm(0.5)), 1e-4);
}

}  // namespace
}  // namespace mzsim
