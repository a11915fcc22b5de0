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

// Scenario runner: reproduces the interferometer figures and source
// statistics as plot-ready CSV/JSON under a fixed seed.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <mzsim/mzsim.hpp>

namespace {

// Exit codes: 0 success, 2 validation/config, 3 I/O, 1 anything else.
constexpr int kOk = 0;
constexpr int kInternalError = 1;
constexpr int kValidationError = 2;
constexpr int kIoError = 3;

int report_error(const char* kind, const std::string& message, int code) {
  const nlohmann::json j = {
      {"status", "error"}, {"kind", kind}, {"message", message}, {"exit_code", code}};
  std::cout << j.dump(2) << '\n';
  std::cerr << "error: " << message << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mach-Zehnder single-photon interferometer simulator"};
  app.set_version_flag("--version", "mzsim 1.0.0");

  std::string scenario_name;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::string out_dir = "out";
  std::string format_name = "csv";

  app.add_option("--scenario", scenario_name,
                 "fig2a|fig2b|fig3a|fig3b|source-stats|ramp-influence")
      ->envname("MZSIM_SCENARIO")
      ->required();
  app.add_option("--config", config_path, "JSON config file (flat key/value)")
      ->envname("MZSIM_CONFIG");
  app.add_option("--seed", seed, "master seed override")->envname("MZSIM_SEED");
  app.add_option("--trials", trials, "trials-per-point override")
      ->envname("MZSIM_TRIALS");
  app.add_option("--out", out_dir, "output directory (created if missing)")
      ->envname("MZSIM_OUT");
  app.add_option("--format", format_name, "tabular output format: csv|json")
      ->envname("MZSIM_FORMAT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("validation", e.what(), kValidationError);
  }

  try {
    const mzsim::ScenarioKind kind = mzsim::parse_scenario(scenario_name);
    const mzsim::OutputFormat format = mzsim::parse_format(format_name);
    mzsim::ConfigFile cfg = config_path.empty() ? mzsim::default_config()
                                                : mzsim::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (trials) {
      if (*trials < 1) {
        return report_error("validation", "invalid config: trials (must be >= 1)",
                            kValidationError);
      }
      cfg.trials = *trials;
    }

    const mzsim::ScenarioResult result = mzsim::run_scenario(kind, cfg, out_dir, format);

    const nlohmann::json j = {{"status", "ok"},
                              {"scenario", mzsim::scenario_name(result.kind)},
                              {"files", result.files},
                              {"summary", result.summary}};
    std::cout << j.dump(2) << '\n';
    return kOk;
  } catch (const std::invalid_argument& e) {
    return report_error("validation", e.what(), kValidationError);
  } catch (const std::domain_error& e) {
    return report_error("validation", e.what(), kValidationError);
  } catch (const std::filesystem::filesystem_error& e) {
    return report_error("io", e.what(), kIoError);
  } catch (const std::runtime_error& e) {
    return report_error("io", e.what(), kIoError);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), kInternalError);
  }
}
