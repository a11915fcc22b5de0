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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <mzsim/envelope.hpp>

namespace mzsim {
namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

TEST(Exponential, PdfCdfQuantileAreConsistent) {
  const EnvelopeModel m = EnvelopeModel::exponential(231.7);
  EXPECT_DOUBLE_EQ(m.cdf(0.0), 0.0);
  EXPECT_DOUBLE_EQ(m.pdf(-1.0), 0.0);
  EXPECT_NEAR(m.cdf(80.0), 0.29197371571850605, 1e-15);
  for (double t : {1.0, 80.0, 400.0, 2000.0}) {
    EXPECT_NEAR(m.quantile(m.cdf(t)), t, 1e-9 * t);
  }
  EXPECT_DOUBLE_EQ(m.quantile(0.0), 0.0);
  EXPECT_TRUE(std::isinf(m.quantile(1.0)));
  EXPECT_THROW(m.quantile(-0.1), std::domain_error);
  EXPECT_THROW(m.quantile(1.1), std::domain_error);
}

TEST(Exponential, PdfIntegratesToOne) {
  const EnvelopeModel m = EnvelopeModel::exponential(231.7);
  const TimeGrid grid = envelope_grid(m, 0.25);
  double acc = 0.0;
  for (int k = 0; k < grid.n; ++k) acc += m.pdf(grid.sample_time(k));
  EXPECT_NEAR(acc * grid.dt, 1.0, 1e-6);
}

TEST(Exponential, RejectsBadParameters) {
  EXPECT_THROW(EnvelopeModel::exponential(0.0), std::invalid_argument);
  EXPECT_THROW(EnvelopeModel::exponential(-3.0), std::invalid_argument);
  EXPECT_THROW(EnvelopeModel::exponential(100.0, 0.0), std::invalid_argument);
}

TEST(SolveDecayConstant, MatchesClosedFormTargets) {
  EXPECT_NEAR(solve_decay_constant(80.0, 0.2919), 231.76988454896508, 1e-9);
  EXPECT_NEAR(solve_decay_constant(80.0, 0.5), 115.41560327111708, 1e-9);
  const double f = 1.0 - std::exp(-1.0);
  EXPECT_NEAR(solve_decay_constant(123.4, f), 123.4, 1e-9);
  EXPECT_THROW(solve_decay_constant(80.0, 0.0), std::domain_error);
  EXPECT_THROW(solve_decay_constant(80.0, 1.0), std::domain_error);
  EXPECT_THROW(solve_decay_constant(0.0, 0.5), std::domain_error);
}

TEST(SolveDecayConstant, RoundTripsThroughWindowFraction) {
  for (double target : {0.1, 0.2919, 0.5, 0.9}) {
    const double tau = solve_decay_constant(80.0, target);
    const EnvelopeModel m = EnvelopeModel::exponential(tau);
    EXPECT_NEAR(m.cdf(80.0), target, 1e-12);
    const WavepacketState state = make_input_state(m, 1.0);
    EXPECT_NEAR(window_fraction(state, state.grid.t_start, 80.0), target, 1e-9);
  }
}

TEST(SolveDecayConstant, DefaultOperatingPoint) {
  EXPECT_NEAR(default_decay_constant(), 231.80819599865873, 1e-9);
  const EnvelopeModel m = EnvelopeModel::exponential(default_decay_constant());
  const double c = std::cos(deg_to_rad(57.3));
  EXPECT_NEAR(m.cdf(80.0), c * c, 1e-12);
}

TEST(TableEnvelope, DegenerateSingleBinAlwaysSamplesThatBin) {
  const EnvelopeModel m = EnvelopeModel::table({5.0}, {3.0});
  TrialRng rng(42, 0);
  for (int i = 0; i < 1000; ++i) {
    const double t = sample_detection_time(m, rng);
    ASSERT_GE(t, 5.0);
    ASSERT_LT(t, 6.0);
  }
  EXPECT_DOUBLE_EQ(m.pdf(5.5), 1.0);
  EXPECT_DOUBLE_EQ(m.cdf(6.0), 1.0);
}

TEST(TableEnvelope, UniformTableHasSymmetricMean) {
  std::vector<double> times, weights;
  for (int k = 0; k < 400; ++k) {
    times.push_back(static_cast<double>(k));
    weights.push_back(7.0);  // arbitrary scale, normalized on load
  }
  const EnvelopeModel m = EnvelopeModel::table(times, weights);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    TrialRng rng(7, static_cast<std::uint64_t>(i));
    sum += sample_detection_time(m, rng);
  }
  EXPECT_NEAR(sum / n, 200.0, 0.5);
}

TEST(TableEnvelope, QuantileInvertsCdf) {
  const EnvelopeModel m = EnvelopeModel::table({0.0, 1.0, 3.0}, {1.0, 0.0, 2.0});
  for (double u : {0.0, 0.1, 0.25, 0.5, 0.99}) {
    EXPECT_NEAR(m.cdf(m.quantile(u)), u, 1e-12) << u;
  }
  EXPECT_DOUBLE_EQ(m.pdf(1.5), 0.0);  // zero-weight bin
}

TEST(TableEnvelope, RejectsMalformedTables) {
  EXPECT_THROW(EnvelopeModel::table({}, {}), std::invalid_argument);
  EXPECT_THROW(EnvelopeModel::table({0.0, 1.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(EnvelopeModel::table({1.0, 0.5}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(EnvelopeModel::table({0.0, 1.0}, {1.0, -2.0}), std::invalid_argument);
  EXPECT_THROW(EnvelopeModel::table({0.0, 1.0}, {0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(EnvelopeModel::table({-1.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
}

TEST(SampleDetectionTime, ExponentialEarlyFractionConverges) {
  const EnvelopeModel m = EnvelopeModel::exponential(231.7);
  const double p = m.cdf(80.0);
  for (int n : {10000, 1000000}) {
    int early = 0;
    for (int i = 0; i < n; ++i) {
      TrialRng rng(99, static_cast<std::uint64_t>(i));
      if (sample_detection_time(m, rng) < 80.0) ++early;
    }
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    EXPECT_NEAR(static_cast<double>(early) / n, p, 4.0 * sigma) << n;
  }
  // Tighter restatement at scale: a million draws land within +-0.002.
  int early = 0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    TrialRng rng(99, static_cast<std::uint64_t>(i));
    if (sample_detection_time(m, rng) < 80.0) ++early;
  }
  EXPECT_NEAR(static_cast<double>(early) / n, 0.292, 0.002);
}

TEST(LoadEnvelopeTable, ParsesCommentsAndSeparators) {
  const std::string path = write_temp(
      "mzsim_env_ok.txt",
      "# time_ns, relative_intensity\n"
      "0, 4.0\n"
      "1\t2.0\n"
      "2 1.0  # trailing comment\n"
      "\n");
  const EnvelopeModel m = load_envelope_table(path);
  EXPECT_EQ(m.kind(), EnvelopeModel::Kind::table);
  EXPECT_NEAR(m.cdf(1.0), 4.0 / 7.0, 1e-12);
  EXPECT_NEAR(m.support_end(), 3.0, 1e-12);
  std::filesystem::remove(path);
}

TEST(LoadEnvelopeTable, RejectsMissingOrMalformedFiles) {
  EXPECT_THROW(load_envelope_table("/nonexistent/envelope.txt"), std::runtime_error);
  const std::string one_col = write_temp("mzsim_env_bad.txt", "0\n1\n");
  EXPECT_THROW(load_envelope_table(one_col), std::invalid_argument);
  std::filesystem::remove(one_col);
  const std::string empty = write_temp("mzsim_env_empty.txt", "# nothing\n");
  EXPECT_THROW(load_envelope_table(empty), std::invalid_argument);
  std::filesystem::remove(empty);
}

TEST(MakeInputState, NormalizesOnTheGrid) {
  const EnvelopeModel m = EnvelopeModel::exponential(231.7);
  const WavepacketState state = make_input_state(m, 1.0);
  EXPECT_NEAR(total_norm(state), 1.0, 1e-9);
  for (const PathAmplitudes& s : state.samples) {
    EXPECT_EQ(s.a1, std::complex<double>(0.0, 0.0));
  }
}

TEST(MakeInputState, RejectsGridsThatMissTheMass) {
  const EnvelopeModel m = EnvelopeModel::exponential(231.7);
  EXPECT_THROW(make_input_state(m, TimeGrid{0.0, 1.0, 100}), std::invalid_argument);
}

TEST(EnvelopeGrid, CoversTheSupport) {
  const EnvelopeModel m = EnvelopeModel::exponential(231.7);
  const TimeGrid grid = envelope_grid(m, 1.0);
  EXPECT_DOUBLE_EQ(grid.t_start, 0.0);
  EXPECT_GE(grid.t_end(), m.support_end());
  EXPECT_LT(1.0 - m.cdf(grid.t_end()), 1e-9);
}

}  // namespace
}  // namespace mzsim
