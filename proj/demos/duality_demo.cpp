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

// Minimal tour: sweep alpha from wave to particle, comparing Monte Carlo
// fringe visibility and blocked-arm distinguishability against cos^2/sin^2.

#include <cstdio>

#include <mzsim/analysis.hpp>
#include <mzsim/montecarlo.hpp>

int main() {
  using namespace mzsim;

  const EnvelopeModel envelope = EnvelopeModel::exponential(default_decay_constant());
  RunConfig rc;
  rc.n_trials = 20000;
  rc.envelope = envelope;
  SeedSequence seeds(7);

  std::printf("alpha_deg       V   cos^2(a)       D   sin^2(a)   V^2+D^2\n");
  for (double alpha_deg : {0.0, 22.5, 45.0, 57.3, 67.5, 90.0}) {
    rc.params.alpha = deg_to_rad(alpha_deg);
    const double c2 = std::cos(rc.params.alpha) * std::cos(rc.params.alpha);
    rc.interferometer.schedule = EomSchedule::step(envelope.quantile(c2));

    FringeScan scan;
    for (int phi_deg = -90; phi_deg <= 270; phi_deg += 30) {
      rc.params.phi = deg_to_rad(phi_deg);
      rc.master_seed = seeds.next();
      const ClickCounts counts = count_trials(rc);
      scan.points.push_back({rc.params.phi, counts.d0_fraction(), counts.clicks()});
    }
    rc.params.phi = 0.0;
    const Measurement v = visibility_from_fringe(scan);

    rc.master_seed = seeds.next();
    const ClickCounts block1 = blocked_arm_counts(rc, BlockedArm::path1);
    rc.master_seed = seeds.next();
    const ClickCounts block0 = blocked_arm_counts(rc, BlockedArm::path0);
    const Measurement d = distinguishability(block1.n_d0, block0.n_d0);

    std::printf("%9.1f  %6.3f  %9.3f  %6.3f  %9.3f  %8.3f\n", alpha_deg, v.value,
                c2, d.value, 1.0 - c2, v.value * v.value + d.value * d.value);
  }
  return 0;
}
