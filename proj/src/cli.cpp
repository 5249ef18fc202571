#include "resfluo/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "resfluo/dynamics.hpp"
#include "resfluo/io.hpp"
#include "resfluo/mollow.hpp"
#include "resfluo/numerics.hpp"
#include "resfluo/resolvent.hpp"
#include "resfluo/selfenergy.hpp"

namespace resfluo {
namespace cli {

namespace {

using nlohmann::ordered_json;

struct Cell {
  bool isNum = true;
  double num = 0.0;
  std::string str;
};

Cell ncell(double v) { return {true, v, {}}; }
Cell scell(std::string s) { return {false, 0.0, std::move(s)}; }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct RunOutput {
  Table table;
  ordered_json meta = ordered_json::object();
  std::vector<std::string> warnings;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParameterError("config value for '" + key + "' is not a number: " + value);
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParameterError("config value for '" + key + "' is not an integer: " + value);
  }
}

SystemParams require_params(const RunConfig& cfg, std::vector<std::string>& warnings,
                            bool needOmegaL = true) {
  if (!cfg.omega0) throw ParameterError("omega0 is required");
  if (!cfg.gamma) throw ParameterError("gamma is required");
  if (needOmegaL && !cfg.omegaL) throw ParameterError("omegaL is required");
  if (cfg.rabiAbs < 0.0) throw ParameterError("rabi magnitude must be non-negative");
  SystemParams p =
      make_params(*cfg.omega0, needOmegaL ? *cfg.omegaL : *cfg.omega0, *cfg.gamma,
                  std::polar(cfg.rabiAbs, cfg.rabiPhase), cfg.nPhotons);
  warnings.insert(warnings.end(), p.warnings.begin(), p.warnings.end());
  return p;
}

selfenergy::CouplingModel require_coupling(const RunConfig& cfg,
                                           const SystemParams& p) {
  selfenergy::CouplingKind kind;
  if (cfg.couplingKind == "flat")
    kind = selfenergy::CouplingKind::Flat;
  else if (cfg.couplingKind == "linear")
    kind = selfenergy::CouplingKind::Linear;
  else if (cfg.couplingKind == "power-law")
    kind = selfenergy::CouplingKind::PowerLaw;
  else
    throw ParameterError("unknown coupling kind: " + cfg.couplingKind +
                         " (expected flat | linear | power-law)");
  return selfenergy::make_coupling(kind, p.gamma, p.omega0, cfg.couplingExponent,
                                   cfg.couplingCutoff);
}

mollow::A2Variant require_variant(const RunConfig& cfg) {
  if (cfg.a2Variant == "corrected") return mollow::A2Variant::Corrected;
  if (cfg.a2Variant == "printed") return mollow::A2Variant::Printed;
  throw ParameterError("unknown a2 variant: " + cfg.a2Variant +
                       " (expected corrected | printed)");
}

void require_grid(const RunConfig& cfg, int minPoints) {
  if (!cfg.gridMin || !cfg.gridMax || !cfg.gridN)
    throw ParameterError("grid min/max/n are required for this mode");
  if (*cfg.gridN < minPoints)
    throw ParameterError("grid needs at least " + std::to_string(minPoints) +
                         " points");
  if (*cfg.gridN > 1 && !(*cfg.gridMin < *cfg.gridMax))
    throw ParameterError("grid needs min < max");
}

double resolved_tau_max(const RunConfig& cfg, const SystemParams& p) {
  if (cfg.tauMax) return *cfg.tauMax;
  if (p.gamma <= 0.0) throw ParameterError("tauMax is required when gamma == 0");
  return 50.0 / p.gamma;
}

int resolved_samples(const RunConfig& cfg) { return cfg.nSamples ? *cfg.nSamples : 5001; }

RunOutput run_spectrum(const RunConfig& cfg) {
  RunOutput out;
  const SystemParams p = require_params(cfg, out.warnings);
  require_grid(cfg, 2);
  const mollow::A2Variant variant = require_variant(cfg);

  const mollow::SpectrumResult ana =
      mollow::spectrum_scan(p, *cfg.gridMin, *cfg.gridMax, *cfg.gridN, variant);
  const mollow::SpectrumResult num = dynamics::spectrum_numeric(
      p, ana.omega, resolved_tau_max(cfg, p), resolved_samples(cfg), &out.warnings);

  out.table.columns = {"omega", "omega_minus_omegaL_over_gamma", "density_analytic",
                       "density_numeric", "abs_diff"};
  double maxDiff = 0.0;
  for (std::size_t i = 0; i < ana.omega.size(); ++i) {
    const double diff = std::abs(ana.density[i] - num.density[i]);
    maxDiff = std::max(maxDiff, diff);
    out.table.rows.push_back({ncell(ana.omega[i]),
                              ncell((ana.omega[i] - p.omegaL) / p.gamma),
                              ncell(ana.density[i]), ncell(num.density[i]),
                              ncell(diff)});
  }
  out.meta["coherent_weight"] = ana.coherentWeight;
  out.meta["max_abs_diff"] = maxDiff;
  return out;
}

RunOutput run_steady_state(const RunConfig& cfg) {
  RunOutput out;
  const SystemParams p = require_params(cfg, out.warnings);
  const mollow::SteadyState ss = mollow::steady_state(p);
  const StateVector solved = dynamics::steady_state_solve(dynamics::mollow_generator(p));
  const double dev = std::max({std::abs(solved.beta - Complex(ss.beta, 0.0)),
                               std::abs(solved.gammaCoh - ss.gammaCoh),
                               std::abs(solved.gammaCohConj - std::conj(ss.gammaCoh))});

  out.table.columns = {"alpha",     "beta",       "gamma_re",          "gamma_im",
                       "gamma_abs", "coherent_weight", "solve_max_abs_dev"};
  out.table.rows.push_back({ncell(ss.alpha), ncell(ss.beta), ncell(ss.gammaCoh.real()),
                            ncell(ss.gammaCoh.imag()), ncell(std::abs(ss.gammaCoh)),
                            ncell(2.0 * M_PI * std::norm(ss.gammaCoh)), ncell(dev)});
  out.meta["solve_max_abs_dev"] = dev;
  return out;
}

RunOutput run_correlation(const RunConfig& cfg) {
  RunOutput out;
  const SystemParams p = require_params(cfg, out.warnings);
  const dynamics::CorrelationSeries series = dynamics::correlation(
      p, resolved_tau_max(cfg, p), resolved_samples(cfg), &out.warnings);

  out.table.columns = {"tau", "tau_times_gamma", "corr_re", "corr_im"};
  for (std::size_t i = 0; i < series.tau.size(); ++i)
    out.table.rows.push_back({ncell(series.tau[i]), ncell(series.tau[i] * p.gamma),
                              ncell(series.value[i].real()),
                              ncell(series.value[i].imag())});
  out.meta["initial_value"] = series.value.front().real();
  out.meta["plateau"] = std::norm(mollow::steady_state(p).gammaCoh);
  return out;
}

RunOutput run_linewidths(const RunConfig& cfg) {
  RunOutput out;
  if (!cfg.omega0) throw ParameterError("omega0 is required");
  if (!cfg.gamma) throw ParameterError("gamma is required");
  if (cfg.rabiAbs < 0.0) throw ParameterError("rabi magnitude must be non-negative");
  require_grid(cfg, 1);

  out.table.columns = {"delta",      "delta_over_gamma", "gamma_natural", "gamma0",
                       "gamma_plus", "gamma_minus",      "lamb_residual"};
  const std::vector<double> deltas =
      numerics::linspace(*cfg.gridMin, *cfg.gridMax, *cfg.gridN);
  for (double d : deltas) {
    SystemParams p = make_params(*cfg.omega0, *cfg.omega0 + d, *cfg.gamma,
                                 std::polar(cfg.rabiAbs, cfg.rabiPhase), cfg.nPhotons);
    const selfenergy::CouplingModel g = require_coupling(cfg, p);
    const selfenergy::WidthReport rep = selfenergy::width_report(g, p);
    out.table.rows.push_back({ncell(d), ncell(d / p.gamma), ncell(rep.gammaNatural),
                              ncell(rep.gamma0), ncell(rep.gammaPlus),
                              ncell(rep.gammaMinus), ncell(rep.lambResidual)});
  }
  return out;
}

// compare and generator both need the generator pair; extraction freezes every shift
// slot at the reference-point width, since the short-time limit probes the on-shell
// point and per-pole widths break the t -> 0 normalization of the residue form.
struct GeneratorPair {
  dynamics::Generator reference;
  dynamics::Generator extracted;
  selfenergy::WidthReport report;
};

GeneratorPair make_generator_pair(const RunConfig& cfg,
                                  std::vector<std::string>& warnings) {
  RunConfig tmp = cfg;
  GeneratorPair gp;
  const SystemParams p = require_params(tmp, warnings);
  const selfenergy::CouplingModel g = require_coupling(cfg, p);
  gp.report = selfenergy::width_report(g, p);
  resolvent::LevelShifts s = gp.report.shifts();
  s.rBplus = s.rBminus = s.rB0;
  gp.reference = dynamics::mollow_generator(p);
  gp.extracted = resolvent::extract_generator(p, s, &warnings);
  return gp;
}

RunOutput run_compare(const RunConfig& cfg) {
  RunOutput out;
  const GeneratorPair gp = make_generator_pair(cfg, out.warnings);

  out.table.columns = {"entry",        "reference_re", "reference_im",
                       "extracted_re", "extracted_im", "abs_dev"};
  double maxDev = 0.0;
  auto push = [&](const std::string& name, Complex ref, Complex got) {
    const double dev = std::abs(got - ref);
    maxDev = std::max(maxDev, dev);
    out.table.rows.push_back({scell(name), ncell(ref.real()), ncell(ref.imag()),
                              ncell(got.real()), ncell(got.imag()), ncell(dev)});
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      push("m" + std::to_string(i) + std::to_string(j), gp.reference.m(i, j),
           gp.extracted.m(i, j));
  for (int i = 0; i < 3; ++i)
    push("b" + std::to_string(i), gp.reference.b(i), gp.extracted.b(i));

  out.meta["max_abs_dev"] = maxDev;
  out.meta["gamma0"] = gp.report.gamma0;
  return out;
}

RunOutput run_generator(const RunConfig& cfg) {
  RunOutput out;
  const GeneratorPair gp = make_generator_pair(cfg, out.warnings);

  out.table.columns = {"source", "entry", "re", "im"};
  auto dump = [&](const std::string& source, const dynamics::Generator& gen) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        out.table.rows.push_back({scell(source),
                                  scell("m" + std::to_string(i) + std::to_string(j)),
                                  ncell(gen.m(i, j).real()), ncell(gen.m(i, j).imag())});
    for (int i = 0; i < 3; ++i)
      out.table.rows.push_back({scell(source), scell("b" + std::to_string(i)),
                                ncell(gen.b(i).real()), ncell(gen.b(i).imag())});
  };
  dump("master-equation", gp.reference);
  dump("resolvent", gp.extracted);
  return out;
}

void write_csv(std::ostream& os, const Table& t) {
  io::CsvWriter w(os);
  w.header(t.columns);
  for (const auto& r : t.rows) {
    std::vector<std::string> fields;
    fields.reserve(r.size());
    for (const Cell& c : r) fields.push_back(c.isNum ? io::format_g17(c.num) : c.str);
    w.row(fields);
  }
}

ordered_json echo_config(const RunConfig& cfg) {
  ordered_json j;
  j["mode"] = cfg.mode;
  auto opt = [](const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
  };
  j["params"] = {{"omega0", opt(cfg.omega0)},
                 {"omegaL", opt(cfg.omegaL)},
                 {"gamma", opt(cfg.gamma)},
                 {"rabi_abs", cfg.rabiAbs},
                 {"rabi_phase", cfg.rabiPhase},
                 {"n_photons", cfg.nPhotons}};
  j["coupling"] = {{"kind", cfg.couplingKind},
                   {"exponent", cfg.couplingExponent},
                   {"cutoff", cfg.couplingCutoff}};
  j["grid"] = {{"min", opt(cfg.gridMin)},
               {"max", opt(cfg.gridMax)},
               {"n", cfg.gridN ? ordered_json(*cfg.gridN) : ordered_json(nullptr)}};
  j["time"] = {{"tau_max", opt(cfg.tauMax)},
               {"n_samples",
                cfg.nSamples ? ordered_json(*cfg.nSamples) : ordered_json(nullptr)}};
  j["output"] = {{"path", cfg.outPath},
                 {"format", cfg.format},
                 {"a2_variant", cfg.a2Variant}};
  return j;
}

void write_json(std::ostream& os, const RunConfig& cfg, const RunOutput& out) {
  ordered_json j;
  j["schema"] = io::kSchemaVersion;
  j["version"] = kVersion;
  j["config"] = echo_config(cfg);
  j["warnings"] = out.warnings;
  j["meta"] = out.meta;
  ordered_json data;
  data["columns"] = out.table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& r : out.table.rows) {
    ordered_json row = ordered_json::array();
    for (const Cell& c : r) {
      if (c.isNum)
        row.push_back(c.num);
      else
        row.push_back(c.str);
    }
    rows.push_back(row);
  }
  data["rows"] = rows;
  j["data"] = data;
  os << j.dump(2) << '\n';
}

}  // namespace

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read config file: " + path);

  std::string line, section;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParameterError("config line " + std::to_string(lineNo) +
                             ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "params" && section != "coupling" && section != "grid" &&
          section != "time" && section != "output")
        throw ParameterError("config: unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError("config line " + std::to_string(lineNo) +
                           ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qual = section + "." + key;

    if (qual == "params.omega0")
      cfg.omega0 = parse_double(qual, value);
    else if (qual == "params.omegaL")
      cfg.omegaL = parse_double(qual, value);
    else if (qual == "params.gamma")
      cfg.gamma = parse_double(qual, value);
    else if (qual == "params.rabi_abs")
      cfg.rabiAbs = parse_double(qual, value);
    else if (qual == "params.rabi_phase")
      cfg.rabiPhase = parse_double(qual, value);
    else if (qual == "params.n_photons")
      cfg.nPhotons = parse_int(qual, value);
    else if (qual == "coupling.kind")
      cfg.couplingKind = value;
    else if (qual == "coupling.exponent")
      cfg.couplingExponent = parse_double(qual, value);
    else if (qual == "coupling.cutoff")
      cfg.couplingCutoff = parse_double(qual, value);
    else if (qual == "grid.min")
      cfg.gridMin = parse_double(qual, value);
    else if (qual == "grid.max")
      cfg.gridMax = parse_double(qual, value);
    else if (qual == "grid.n")
      cfg.gridN = static_cast<int>(parse_int(qual, value));
    else if (qual == "time.tau_max")
      cfg.tauMax = parse_double(qual, value);
    else if (qual == "time.n_samples")
      cfg.nSamples = static_cast<int>(parse_int(qual, value));
    else if (qual == "output.path")
      cfg.outPath = value;
    else if (qual == "output.format")
      cfg.format = value;
    else if (qual == "output.a2_variant")
      cfg.a2Variant = value;
    else
      throw ParameterError("config: unknown key '" + qual + "'");
  }
}

int run(const RunConfig& cfg, std::ostream& dataOut, std::ostream& diagErr) {
  try {
    if (cfg.format != "csv" && cfg.format != "json")
      throw ParameterError("unknown format: " + cfg.format + " (expected csv | json)");

    RunOutput out;
    if (cfg.mode == "spectrum")
      out = run_spectrum(cfg);
    else if (cfg.mode == "steady-state")
      out = run_steady_state(cfg);
    else if (cfg.mode == "correlation")
      out = run_correlation(cfg);
    else if (cfg.mode == "linewidths")
      out = run_linewidths(cfg);
    else if (cfg.mode == "compare")
      out = run_compare(cfg);
    else if (cfg.mode == "generator")
      out = run_generator(cfg);
    else
      throw ParameterError(
          "unknown mode: " + cfg.mode +
          " (expected spectrum | steady-state | correlation | linewidths | compare | "
          "generator)");

    std::ofstream file;
    std::ostream* os = &dataOut;
    if (!cfg.outPath.empty()) {
      file.open(cfg.outPath, std::ios::binary);
      if (!file) throw ParameterError("cannot open output file: " + cfg.outPath);
      os = &file;
    }
    if (cfg.format == "csv")
      write_csv(*os, out.table);
    else
      write_json(*os, cfg, out);

    for (const std::string& w : out.warnings) diagErr << "warning: " << w << '\n';
    for (const auto& item : out.meta.items())
      diagErr << "info: " << item.key() << " = " << item.value().dump() << '\n';
    return 0;
  } catch (const ParameterError& e) {
    diagErr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    diagErr << "error: " << e.what() << " (residual " << e.residual << ")\n";
    return 3;
  } catch (const std::exception& e) {
    diagErr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace cli
}  // namespace resfluo
