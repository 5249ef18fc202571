#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "resfluo/core.hpp"

namespace resfluo {
namespace cli {

// Fully resolved run description. Fields that have no safe default stay unset and are
// checked per mode inside run(). Precedence when assembling: built-in defaults, then
// config file, then command-line flags.
struct RunConfig {
  std::string mode = "spectrum";

  std::optional<double> omega0;
  std::optional<double> omegaL;
  std::optional<double> gamma;
  double rabiAbs = 0.0;
  double rabiPhase = 0.0;
  long long nPhotons = 1000000;

  std::string couplingKind = "linear";
  double couplingExponent = 1.0;
  double couplingCutoff = 0.0;  // <= 0: none

  std::optional<double> gridMin;  // spectrum: absolute omega; linewidths: detuning
  std::optional<double> gridMax;
  std::optional<int> gridN;

  std::optional<double> tauMax;
  std::optional<int> nSamples;

  std::string outPath;  // empty: stdout
  std::string format = "csv";
  std::string a2Variant = "corrected";
};

// INI-style config: [params] [coupling] [grid] [time] [output] sections, key = value,
// '#'/';' comments. Unknown sections or keys are rejected so typos cannot silently fall
// back to defaults.
void load_config_file(const std::string& path, RunConfig& cfg);

// Executes one run. Data goes to cfg.outPath or dataOut, diagnostics to diagErr.
// Returns the process exit status: 0 success, 2 validation failure, 3 numerical
// failure.
int run(const RunConfig& cfg, std::ostream& dataOut, std::ostream& diagErr);

}  // namespace cli
}  // namespace resfluo
