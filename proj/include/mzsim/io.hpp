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

#include <charconv>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "mzsim/analysis.hpp"
#include "mzsim/angles.hpp"
#include "mzsim/correlation.hpp"
#include "mzsim/montecarlo.hpp"

namespace mzsim {

/// Shortest round-trip decimal form; keeps emitted files byte-stable for a
/// given seed without fixed-width noise.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  return out;
}

inline const char* detector_name(Detector d) {
  return d == Detector::d0 ? "D0" : "D1";
}

inline void write_records_csv(std::ostream& out,
                              const std::vector<DetectionRecord>& records) {
  out << "trial_id,detector,time_ns\n";
  for (const DetectionRecord& r : records) {
    out << r.trial_id << ',' << detector_name(r.detector) << ','
        << format_double(r.time) << '\n';
  }
}

inline void write_records_csv(const std::string& path,
                              const std::vector<DetectionRecord>& records) {
  auto out = open_output(path);
  write_records_csv(out, records);
}

inline void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_start_ns,d0,d1\n";
  for (std::size_t k = 0; k < h.size(); ++k) {
    out << format_double(h.bin_start(k)) << ',' << h.counts_d0[k] << ','
        << h.counts_d1[k] << '\n';
  }
}

inline void write_histogram_csv(const std::string& path, const Histogram& h) {
  auto out = open_output(path);
  write_histogram_csv(out, h);
}

inline nlohmann::json to_json(const Measurement& m) {
  return {{"value", m.value}, {"error", m.error}};
}

inline nlohmann::json to_json(const AnalysisResult& r) {
  return {{"alpha_deg", rad_to_deg(r.alpha_estimate.value)},
          {"alpha_deg_err", rad_to_deg(r.alpha_estimate.error)},
          {"V", r.visibility.value},
          {"V_err", r.visibility.error},
          {"D", r.distinguishability.value},
          {"D_err", r.distinguishability.error},
          {"eg_sum", r.eg_sum},
          {"satisfied", r.eg_satisfied}};
}

inline nlohmann::json to_json(const CorrelationReport& r) {
  return {{"g2_cross_peak", r.g2_cross_peak},
          {"g2_conditional", r.g2_conditional},
          {"cs_factor", r.cs_factor}};
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

}  // namespace mzsim
