#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "resfluo/cli.hpp"
#include "resfluo/core.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "resonance fluorescence of a driven two-level atom: closed-form, "
      "master-equation and resolvent routes"};
  app.set_version_flag("--version", resfluo::kVersion);

  std::string configPath;
  std::optional<std::string> mode, coupling, format, outPath, a2Variant;
  std::optional<double> omega0, omegaL, gamma, rabiAbs, rabiPhase;
  std::optional<long long> nPhotons;
  std::optional<double> exponent, cutoff, gridMin, gridMax, tauMax;
  std::optional<int> gridN, nSamples;

  app.add_option("--config", configPath, "INI config file; flags override it");
  app.add_option("--mode", mode,
                 "spectrum | steady-state | correlation | linewidths | compare | "
                 "generator");
  app.add_option("--omega0", omega0, "atomic transition frequency");
  app.add_option("--omegaL", omegaL, "laser frequency");
  app.add_option("--gamma", gamma, "radiative width");
  app.add_option("--rabi-abs", rabiAbs, "Rabi frequency magnitude");
  app.add_option("--rabi-phase", rabiPhase, "Rabi frequency phase (radians)");
  app.add_option("--n-photons", nPhotons, "photon number of the driving mode");
  app.add_option("--coupling", coupling, "flat | linear | power-law");
  app.add_option("--coupling-exponent", exponent, "power-law exponent");
  app.add_option("--coupling-cutoff", cutoff,
                 "power-law exponential cutoff scale (0 disables)");
  app.add_option("--grid-min", gridMin,
                 "grid start (absolute omega; detuning for linewidths)");
  app.add_option("--grid-max", gridMax, "grid end");
  app.add_option("--grid-n", gridN, "grid point count");
  app.add_option("--tau-max", tauMax, "correlation window length");
  app.add_option("--n-samples", nSamples, "correlation sample count");
  app.add_option("--out", outPath, "output file (default stdout)");
  app.add_option("--format", format, "csv | json");
  app.add_option("--a2-variant", a2Variant,
                 "corrected | printed spectral-denominator variant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  resfluo::cli::RunConfig cfg;
  try {
    if (!configPath.empty()) resfluo::cli::load_config_file(configPath, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (mode) cfg.mode = *mode;
  if (omega0) cfg.omega0 = *omega0;
  if (omegaL) cfg.omegaL = *omegaL;
  if (gamma) cfg.gamma = *gamma;
  if (rabiAbs) cfg.rabiAbs = *rabiAbs;
  if (rabiPhase) cfg.rabiPhase = *rabiPhase;
  if (nPhotons) cfg.nPhotons = *nPhotons;
  if (coupling) cfg.couplingKind = *coupling;
  if (exponent) cfg.couplingExponent = *exponent;
  if (cutoff) cfg.couplingCutoff = *cutoff;
  if (gridMin) cfg.gridMin = *gridMin;
  if (gridMax) cfg.gridMax = *gridMax;
  if (gridN) cfg.gridN = *gridN;
  if (tauMax) cfg.tauMax = *tauMax;
  if (nSamples) cfg.nSamples = *nSamples;
  if (outPath) cfg.outPath = *outPath;
  if (format) cfg.format = *format;
  if (a2Variant) cfg.a2Variant = *a2Variant;

  return resfluo::cli::run(cfg, std::cout, std::cerr);
}
