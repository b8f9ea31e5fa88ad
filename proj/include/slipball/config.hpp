#pragma once

// Run configuration for the command-line tool. A config file is a single
// JSON object:
//
//   {
//     "family": "default",
//     "grid": {"n_r": 32, "n_theta": 48, "n_phi": 96,
//              "margin_r": 0.05, "margin_theta": 0.05},
//     "boundary": {"n_theta": 128, "n_phi": 256},
//     "oracle": {"step": 1e-4, "richardson": true},
//     "epsilons": [0.1, 0.01, 0.001, 0.0001],
//     "viscosity": 1.0,
//     "report": "report.json",
//     "out": "sweep.csv"
//   }
//
// Every key is optional; unknown keys are rejected. Precedence is
// built-in defaults < config file < command-line flags.

#include <string>
#include <string_view>
#include <vector>

#include "slipball/oracle.hpp"
#include "slipball/verify.hpp"

namespace slipball {

struct RunConfig {
  std::string family{"default"};
  GridSpec grid{};
  GridSpec boundary{GridSpec::boundary()};
  FDConfig oracle{};
  std::vector<double> epsilons{1e-1, 1e-2, 1e-3, 1e-4};
  double viscosity{1.0};
  std::string report_path;
  std::string out_path;

  /// Throws ConfigError naming the offending setting.
  void validate() const;
};

/// Applies the keys of a JSON document on top of `base`. Throws ConfigError
/// with line/column for malformed JSON and the key path for bad keys/values.
RunConfig parse_run_config(std::string_view text, RunConfig base = {});

RunConfig load_run_config(const std::string& path, RunConfig base = {});

}  // namespace slipball
