#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "resfluo/cli.hpp"
#include "resfluo/io.hpp"

using namespace resfluo;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "resfluo_test_cli";
  fs::create_directories(d);
  return d;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct Captured {
  int status = -1;
  std::string data;
  std::string diag;
};

Captured run_cfg(const cli::RunConfig& cfg) {
  std::ostringstream dataOut, diagErr;
  Captured c;
  c.status = cli::run(cfg, dataOut, diagErr);
  c.data = dataOut.str();
  c.diag = diagErr.str();
  return c;
}

cli::RunConfig resonant_config() {
  cli::RunConfig cfg;
  cfg.omega0 = 1000.0;
  cfg.omegaL = 1000.0;
  cfg.gamma = 1.0;
  cfg.rabiAbs = 1.0;
  return cfg;
}

}  // namespace

TEST_CASE("number formatting round-trips exactly") {
  for (double x : {1.0 / 3.0, 0.1, 1e300, 6.02214076e23, -2.5e-13, 3.141592653589793}) {
    const std::string s = io::format_g17(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(io::format_g17(2.0) == "2");
}

TEST_CASE("csv writer escapes and enforces the header width") {
  CHECK(io::CsvWriter::escape("plain") == "plain");
  CHECK(io::CsvWriter::escape("a,b") == "\"a,b\"");
  CHECK(io::CsvWriter::escape("say \"hi\"") == "\"say \"\"hi\"\"\"");

  std::ostringstream os;
  io::CsvWriter w(os);
  w.header({"a", "b"});
  w.row({"1", "x,y"});
  CHECK(os.str() == "a,b\n1,\"x,y\"\n");
  CHECK_THROWS_AS(w.row({"only-one"}), std::logic_error);
}

TEST_CASE("config file: every key lands in the right slot") {
  const fs::path p = write_file("full.ini",
                                "# full example\n"
                                "[params]\n"
                                "omega0 = 1000.0   ; transition\n"
                                "omegaL = 1002.5\n"
                                "gamma = 0.5\n"
                                "rabi_abs = 3.0\n"
                                "rabi_phase = 0.25\n"
                                "n_photons = 500000\n"
                                "[coupling]\n"
                                "kind = power-law\n"
                                "exponent = 1.5\n"
                                "cutoff = 20.0\n"
                                "[grid]\n"
                                "min = 995.0\n"
                                "max = 1010.0\n"
                                "n = 41\n"
                                "[time]\n"
                                "tau_max = 30.0\n"
                                "n_samples = 1501\n"
                                "[output]\n"
                                "path = out.csv\n"
                                "format = json\n"
                                "a2_variant = printed\n");
  cli::RunConfig cfg;
  cli::load_config_file(p.string(), cfg);
  CHECK(cfg.omega0 == 1000.0);
  CHECK(cfg.omegaL == 1002.5);
  CHECK(cfg.gamma == 0.5);
  CHECK(cfg.rabiAbs == 3.0);
  CHECK(cfg.rabiPhase == 0.25);
  CHECK(cfg.nPhotons == 500000);
  CHECK(cfg.couplingKind == "power-law");
  CHECK(cfg.couplingExponent == 1.5);
  CHECK(cfg.couplingCutoff == 20.0);
  CHECK(cfg.gridMin == 995.0);
  CHECK(cfg.gridMax == 1010.0);
  CHECK(cfg.gridN == 41);
  CHECK(cfg.tauMax == 30.0);
  CHECK(cfg.nSamples == 1501);
  CHECK(cfg.outPath == "out.csv");
  CHECK(cfg.format == "json");
  CHECK(cfg.a2Variant == "printed");
}

TEST_CASE("config file: untouched keys keep their defaults") {
  const fs::path p = write_file("partial.ini", "[params]\nomega0 = 7\n");
  cli::RunConfig cfg;
  cli::load_config_file(p.string(), cfg);
  CHECK(cfg.omega0 == 7.0);
  CHECK(cfg.mode == "spectrum");
  CHECK(cfg.nPhotons == 1000000);
  CHECK(cfg.couplingKind == "linear");
  CHECK(cfg.format == "csv");
  CHECK(!cfg.omegaL.has_value());
  CHECK(!cfg.gridN.has_value());
}

TEST_CASE("config file: malformed input is rejected, never defaulted") {
  cli::RunConfig cfg;
  CHECK_THROWS_AS(cli::load_config_file("/nonexistent/resfluo.ini", cfg),
                  ParameterError);

  auto rejects = [&](const std::string& name, const std::string& text) {
    const fs::path p = write_file(name, text);
    cli::RunConfig fresh;
    CHECK_THROWS_AS(cli::load_config_file(p.string(), fresh), ParameterError);
  };
  rejects("badsec.ini", "[foo]\nbar = 1\n");
  rejects("nobracket.ini", "[params\nomega0 = 1\n");
  rejects("noeq.ini", "[params]\nomega0 3\n");
  rejects("badkey.ini", "[params]\nomegaX = 3\n");
  rejects("nosection.ini", "omega0 = 3\n");
  rejects("baddouble.ini", "[params]\nomega0 = abc\n");
  rejects("trailing.ini", "[params]\nomega0 = 3.5x\n");
  rejects("badint.ini", "[params]\nn_photons = 2.5\n");
}

TEST_CASE("steady-state run: frozen header, resonant values, deterministic bytes") {
  cli::RunConfig cfg = resonant_config();
  cfg.mode = "steady-state";

  const Captured a = run_cfg(cfg);
  REQUIRE(a.status == 0);
  const auto lines = split_lines(a.data);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "alpha,beta,gamma_re,gamma_im,gamma_abs,coherent_weight,solve_max_abs_dev");
  const auto f = split_fields(lines[1]);
  REQUIRE(f.size() == 7);
  CHECK(std::strtod(f[0].c_str(), nullptr) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(std::strtod(f[1].c_str(), nullptr) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(std::strtod(f[3].c_str(), nullptr) ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(std::strtod(f[5].c_str(), nullptr) ==
        doctest::Approx(2.0 * M_PI / 9.0).epsilon(1e-14));
  CHECK(std::strtod(f[6].c_str(), nullptr) < 1e-12);

  const Captured b = run_cfg(cfg);
  CHECK(a.data == b.data);  // same inputs, same bytes
  CHECK(a.diag == b.diag);
}

TEST_CASE("spectrum run: csv table carries both routes in agreement") {
  cli::RunConfig cfg = resonant_config();
  cfg.gridMin = 999.0;
  cfg.gridMax = 1001.0;
  cfg.gridN = 5;
  cfg.tauMax = 40.0;
  cfg.nSamples = 2001;

  const Captured c = run_cfg(cfg);
  REQUIRE(c.status == 0);
  const auto lines = split_lines(c.data);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] ==
        "omega,omega_minus_omegaL_over_gamma,density_analytic,density_numeric,"
        "abs_diff");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    REQUIRE(f.size() == 5);
    CHECK(std::strtod(f[4].c_str(), nullptr) < 1e-4);
  }
  // centre row sits on the laser line
  CHECK(std::strtod(split_fields(lines[3])[1].c_str(), nullptr) == 0.0);
  CHECK(c.diag.find("info: coherent_weight") != std::string::npos);
}

TEST_CASE("json output parses back with schema, config echo and data") {
  cli::RunConfig cfg = resonant_config();
  cfg.mode = "steady-state";
  cfg.format = "json";

  const Captured c = run_cfg(cfg);
  REQUIRE(c.status == 0);
  const nlohmann::json j = nlohmann::json::parse(c.data);
  CHECK(j.at("schema") == io::kSchemaVersion);
  CHECK(j.at("version") == kVersion);
  CHECK(j.at("config").at("mode") == "steady-state");
  CHECK(j.at("config").at("params").at("omega0") == 1000.0);
  CHECK(j.at("config").at("grid").at("n").is_null());
  CHECK(j.at("warnings").is_array());
  CHECK(j.at("meta").contains("solve_max_abs_dev"));
  const auto& data = j.at("data");
  REQUIRE(data.at("columns").size() == 7);
  REQUIRE(data.at("rows").size() == 1);
  CHECK(data.at("rows")[0][1].get<double>() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("output path writes the table to a file instead of the stream") {
  cli::RunConfig cfg = resonant_config();
  cfg.mode = "steady-state";
  cfg.outPath = (scratch_dir() / "ss.csv").string();

  const Captured c = run_cfg(cfg);
  REQUIRE(c.status == 0);
  CHECK(c.data.empty());
  std::ifstream in(cfg.outPath);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header ==
        "alpha,beta,gamma_re,gamma_im,gamma_abs,coherent_weight,solve_max_abs_dev");

  cfg.outPath = "/nonexistent-dir/ss.csv";
  CHECK(run_cfg(cfg).status == 2);
}

TEST_CASE("correlation run: endpoints visible in the table") {
  cli::RunConfig cfg = resonant_config();
  cfg.mode = "correlation";
  cfg.tauMax = 5.0;
  cfg.nSamples = 11;

  const Captured c = run_cfg(cfg);
  REQUIRE(c.status == 0);
  const auto lines = split_lines(c.data);
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "tau,tau_times_gamma,corr_re,corr_im");
  const auto first = split_fields(lines[1]);
  CHECK(std::strtod(first[0].c_str(), nullptr) == 0.0);
  CHECK(std::strtod(first[2].c_str(), nullptr) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("linewidths run: flat coupling gives the natural width on every row") {
  cli::RunConfig cfg;
  cfg.mode = "linewidths";
  cfg.omega0 = 100.0;
  cfg.gamma = 1.0;
  cfg.rabiAbs = 5.0;
  cfg.couplingKind = "flat";
  cfg.gridMin = -2.0;
  cfg.gridMax = 2.0;
  cfg.gridN = 5;

  const Captured c = run_cfg(cfg);
  REQUIRE(c.status == 0);
  const auto lines = split_lines(c.data);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] ==
        "delta,delta_over_gamma,gamma_natural,gamma0,gamma_plus,gamma_minus,"
        "lamb_residual");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    REQUIRE(f.size() == 7);
    for (int k = 2; k <= 5; ++k)
      CHECK(std::strtod(f[k].c_str(), nullptr) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("compare run: resolvent generator reproduces the master equation") {
  cli::RunConfig cfg = resonant_config();
  cfg.mode = "compare";
  cfg.rabiAbs = 2.0;
  cfg.couplingKind = "flat";

  const Captured c = run_cfg(cfg);
  REQUIRE(c.status == 0);
  const auto lines = split_lines(c.data);
  REQUIRE(lines.size() == 13);  // header + 9 matrix entries + 3 inhomogeneous entries
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    REQUIRE(f.size() == 6);
    CHECK(std::strtod(f[5].c_str(), nullptr) < 1e-6);
  }
  CHECK(c.diag.find("info: max_abs_dev") != std::string::npos);
}

TEST_CASE("generator run: both generator dumps appear side by side") {
  cli::RunConfig cfg = resonant_config();
  cfg.mode = "generator";
  cfg.couplingKind = "flat";

  const Captured c = run_cfg(cfg);
  REQUIRE(c.status == 0);
  const auto lines = split_lines(c.data);
  REQUIRE(lines.size() == 25);  // header + 2 sources x 12 entries
  CHECK(split_fields(lines[1])[0] == "master-equation");
  CHECK(split_fields(lines[13])[0] == "resolvent");
}

TEST_CASE("validation failures exit with status 2 and a readable message") {
  auto expect2 = [](cli::RunConfig cfg, const std::string& needle) {
    const Captured c = run_cfg(cfg);
    CHECK(c.status == 2);
    CHECK(c.data.empty());
    INFO("diag: ", c.diag, " needle: ", needle);
    CHECK(c.diag.find(needle) != std::string::npos);
  };

  {
    cli::RunConfig cfg;
    cfg.gamma = 1.0;
    cfg.gridMin = 0.0;
    cfg.gridMax = 1.0;
    cfg.gridN = 3;
    expect2(cfg, "omega0 is required");
  }
  {
    cli::RunConfig cfg = resonant_config();
    cfg.mode = "fourier";
    expect2(cfg, "unknown mode");
  }
  {
    cli::RunConfig cfg = resonant_config();
    cfg.format = "xml";
    expect2(cfg, "unknown format");
  }
  {
    cli::RunConfig cfg = resonant_config();
    cfg.mode = "linewidths";
    cfg.couplingKind = "quadratic";
    cfg.gridMin = 0.0;
    cfg.gridMax = 0.0;
    cfg.gridN = 1;
    expect2(cfg, "unknown coupling kind");
  }
  {
    cli::RunConfig cfg = resonant_config();
    cfg.gridMin = 999.0;
    cfg.gridMax = 1001.0;
    cfg.gridN = 5;
    cfg.a2Variant = "fixed";
    expect2(cfg, "unknown a2 variant");
  }
  {
    cli::RunConfig cfg = resonant_config();
    expect2(cfg, "grid min/max/n are required");
  }
  {
    cli::RunConfig cfg = resonant_config();
    cfg.gridMin = 1001.0;
    cfg.gridMax = 999.0;
    cfg.gridN = 5;
    expect2(cfg, "grid needs min < max");
  }
  {
    cli::RunConfig cfg = resonant_config();
    cfg.gridMin = 999.0;
    cfg.gridMax = 1001.0;
    cfg.gridN = 1;
    expect2(cfg, "grid needs at least 2 points");
  }
  {
    cli::RunConfig cfg = resonant_config();
    cfg.rabiAbs = -1.0;
    cfg.gridMin = 999.0;
    cfg.gridMax = 1001.0;
    cfg.gridN = 5;
    expect2(cfg, "rabi magnitude must be non-negative");
  }
  {
    // frequencies far beyond what the correlation sampling can resolve
    cli::RunConfig cfg = resonant_config();
    cfg.gridMin = 0.0;
    cfg.gridMax = 2000.0;
    cfg.gridN = 5;
    cfg.tauMax = 50.0;
    cfg.nSamples = 101;
    const Captured c = run_cfg(cfg);
    CHECK(c.status == 2);
  }
}

TEST_CASE("numerical failures exit with status 3") {
  cli::RunConfig cfg;
  cfg.mode = "linewidths";
  cfg.omega0 = 100.0;
  cfg.gamma = 1.0;
  cfg.rabiAbs = 5.0;
  cfg.couplingKind = "power-law";
  cfg.couplingExponent = 200.0;  // overflows inside the dispersive integral
  cfg.gridMin = 1.0;
  cfg.gridMax = 1.0;
  cfg.gridN = 1;

  const Captured c = run_cfg(cfg);
  CHECK(c.status == 3);
  CHECK(c.diag.find("error:") != std::string::npos);
}
