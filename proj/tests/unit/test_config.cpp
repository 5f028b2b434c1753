#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "susy/config.hpp"
#include "susy/errors.hpp"

using namespace susy;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("susy_cfg_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kBase = R"(# constant Landau field
physical.e = 1
profile.kind = constant
profile.B0 = 1
profile.D0 = 0
grid.N = auto
grid.L = auto
time.t0 = 0
time.t1 = 0.5
time.dt = 1e-3
time.samples = 3
time.stride = 10
state.n = 1
state.m = 0
state.s = -1/2
)";

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "susy-pauli");
  std::ostringstream out, err;
  const int code = susy::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("complex literals") {
  CHECK(parse_complex("1") == cplx(1.0, 0.0));
  CHECK(parse_complex("-0.5") == cplx(-0.5, 0.0));
  CHECK(parse_complex("2i") == cplx(0.0, 2.0));
  CHECK(parse_complex("i") == cplx(0.0, 1.0));
  CHECK(parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(parse_complex("1+2i") == cplx(1.0, 2.0));
  CHECK(parse_complex("1-0.5i") == cplx(1.0, -0.5));
  CHECK(parse_complex("(1,2)") == cplx(1.0, 2.0));
  CHECK(parse_complex(" 3e-1 ") == cplx(0.3, 0.0));
  CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
  CHECK_THROWS_AS(parse_complex("1+"), ConfigError);
}

TEST_CASE("text parsing") {
  const auto map = parse_config_text("a.b = 1 # tail\n; comment\n\n  c.d=x y \na.b = 2\n");
  CHECK(map.size() == 2);
  CHECK(map.at("a.b") == "2");
  CHECK(map.at("c.d") == "x y");
  try {
    parse_config_text("a.b = 1\nnot a pair\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("nosection = 1\n"), ConfigError);
  ConfigMap m;
  apply_override(m, "grid.N=128");
  CHECK(m.at("grid.N") == "128");
  CHECK_THROWS_AS(apply_override(m, "grid.N"), ConfigError);
}

TEST_CASE("run config from the base file") {
  const auto rc = parse_run_config(parse_config_text(kBase));
  CHECK(rc.profile.kind() == ProfileKind::Constant);
  CHECK_FALSE(rc.grid_N.has_value());
  CHECK_FALSE(rc.grid_L.has_value());
  CHECK(rc.t1 == doctest::Approx(0.5));
  CHECK(rc.require_state().n == 1);
  CHECK(rc.require_state().s == -0.5);
  CHECK(rc.f0 == cplx(1.0, 0.0));
  CHECK(rc.f0_dot == cplx(0.0, 1.0));
}

TEST_CASE("auto grid and defaults") {
  auto map = parse_config_text(kBase);
  map["grid.N"] = "128";
  map["grid.L"] = "auto";
  const auto rc = parse_run_config(map);
  CHECK(rc.grid_N == 128);
  CHECK_FALSE(rc.grid_L.has_value());
  map.erase("grid.N");
  map.erase("grid.L");
  const auto d = parse_run_config(map);
  CHECK(d.grid_N == 64);
  CHECK(d.grid_L == doctest::Approx(20.0));
}

TEST_CASE("invalid values are rejected") {
  auto expect_error = [](const std::string& key, const std::string& value, const std::string& fragment) {
    auto map = parse_config_text(kBase);
    map[key] = value;
    try {
      parse_run_config(map);
      FAIL("no error for " << key << " = " << value);
    } catch (const ConfigError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
    }
  };
  expect_error("grid.N", "48", "grid");
  expect_error("grid.typo", "1", "unknown config key 'grid.typo'");
  expect_error("profile.omega", "2", "not a parameter of profile kind");
  expect_error("profile.kind", "square", "profile.kind");
  expect_error("time.dt", "-1", "dt");
  expect_error("time.t1", "0", "t1");
  expect_error("ode.tol", "0", "tol");
  expect_error("state.s", "1", "state.s");
  expect_error("physical.e", "0", "e");
}

TEST_CASE("missing state is reported by section") {
  auto map = parse_config_text(kBase);
  for (const char* k : {"state.n", "state.m", "state.s"}) map.erase(k);
  const auto rc = parse_run_config(map);
  CHECK_FALSE(rc.state.has_value());
  try {
    (void)rc.require_state();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("missing section 'state'") != std::string::npos);
  }
  map["state.n"] = "1";
  CHECK_THROWS_WITH_AS(parse_run_config(map), doctest::Contains("state.m"), ConfigError);
}

TEST_CASE("spin spellings") {
  auto map = parse_config_text(kBase);
  for (const char* up : {"+1/2", "1/2", "0.5", "up"}) {
    map["state.s"] = up;
    CHECK(parse_run_config(map).require_state().s == 0.5);
  }
  for (const char* down : {"-1/2", "-0.5", "down"}) {
    map["state.s"] = down;
    CHECK(parse_run_config(map).require_state().s == -0.5);
  }
}

TEST_CASE("tabulated profile resolves relative to the config") {
  const auto dir = scratch_dir("tab");
  write_file(dir / "field.csv", "t,B,D\n0,1,0\n0.5,1.1,0.1\n1,1.2,0.2\n");
  auto map = parse_config_text(kBase);
  map.erase("profile.B0");
  map.erase("profile.D0");
  map["profile.kind"] = "tabulated";
  map["profile.table"] = "field.csv";
  const auto rc = parse_run_config(map, dir);
  CHECK(rc.profile.kind() == ProfileKind::Tabulated);
  CHECK(rc.profile.B(0.5) == doctest::Approx(1.1));
  map["time.t1"] = "2";
  CHECK_THROWS_AS(parse_run_config(map, dir), ConfigError);
  CHECK_THROWS_AS(parse_run_config(map, fs::temp_directory_path() / "does_not_exist"), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("every known key parses") {
  const auto& keys = known_config_keys();
  CHECK(std::find(keys.begin(), keys.end(), "propagate.components") != keys.end());
  CHECK(std::find(keys.begin(), keys.end(), "run.tol_scale") != keys.end());
}

TEST_CASE("cli: verify-algebra succeeds") {
  const auto dir = scratch_dir("alg");
  const auto cfg = write_file(dir / "run.ini", kBase);
  const auto r = run_cli({"-c", cfg.string(), "--out-dir", dir.string(), "verify-algebra"});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "algebra_report.txt"));
  CHECK(fs::exists(dir / "algebra_report.jsonl"));
  fs::remove_all(dir);
}

TEST_CASE("cli: spectrum lists the paired levels") {
  const auto dir = scratch_dir("spec");
  const auto cfg = write_file(dir / "run.ini", kBase);
  const auto r = run_cli({"-c", cfg.string(), "--out-dir", dir.string(), "spectrum", "--n-max", "3"});
  CHECK(r.code == 0);
  const auto csv = slurp(dir / "spectrum.csv");
  CHECK(csv.rfind("n,s,energy,degeneracy,note\n", 0) == 0);
  CHECK(csv.find("0,-1/2,0,") != std::string::npos);
  CHECK(csv.find("unique zero mode") != std::string::npos);
  CHECK(csv.find("1,-1/2,1,") != std::string::npos);
  CHECK(csv.find("0,+1/2,1,") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: pole condition is a usage error") {
  const auto dir = scratch_dir("pole");
  const auto cfg = write_file(dir / "run.ini", kBase);
  const auto r = run_cli({"-c", cfg.string(), "--out-dir", dir.string(), "--m", "2", "gen-state"});
  CHECK(r.code == 2);
  CHECK(r.err.find("m <= 0") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: unknown key and missing subcommand") {
  const auto dir = scratch_dir("bad");
  const auto cfg = write_file(dir / "run.ini", std::string(kBase) + "grid.typo = 3\n");
  CHECK(run_cli({"-c", cfg.string(), "--out-dir", dir.string(), "solve-ode"}).code == 2);
  CHECK(run_cli({"-c", cfg.string()}).code == 2);
  CHECK(run_cli({"--set", "state.n=1", "bogus"}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("cli: repeated runs give identical bytes") {
  const auto dir = scratch_dir("det");
  const auto cfg = write_file(dir / "run.ini", kBase);
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"check-operators", {"operator_checks.csv"}},
      {"gen-state", {"state_snapshot.bin", "state_field.csv", "state_meta.csv"}},
      {"solve-ode", {"aux_solution.csv"}},
  };
  for (const auto& [cmd, files] : cases) {
    std::vector<std::string> first;
    for (int rep = 0; rep < 2; ++rep) {
      const auto out = dir / (cmd + std::to_string(rep));
      const auto r = run_cli({"-c", cfg.string(), "--out-dir", out.string(), cmd});
      CHECK_MESSAGE(r.code == 0, cmd << ": " << r.err);
      for (std::size_t k = 0; k < files.size(); ++k) {
        const auto bytes = slurp(out / files[k]);
        CHECK(!bytes.empty());
        if (rep == 0) first.push_back(bytes);
        else CHECK_MESSAGE(bytes == first[k], files[k]);
      }
    }
  }
  fs::remove_all(dir);
}

}  // TEST_SUITE
