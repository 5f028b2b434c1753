#include "susy/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "susy/errors.hpp"

namespace susy {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
}

double to_spin(const std::string& key, const std::string& v) {
  const std::string s = lower(trim(v));
  if (s == "+1/2" || s == "1/2" || s == "0.5" || s == "+0.5" || s == "up") return 0.5;
  if (s == "-1/2" || s == "-0.5" || s == "down") return -0.5;
  throw ConfigError(key + ": spin must be +1/2 or -1/2, got '" + v + "'");
}

const std::map<std::string, std::vector<std::string>>& profile_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"constant", {"B0", "D0"}},
      {"linear_D", {"B0", "D_rate"}},
      {"sinusoidal", {"B_mean", "B_amp", "omega", "D_mean", "D_amp"}},
      {"tabulated", {"table"}},
  };
  return keys;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'section.key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.find('.') == std::string::npos || key.front() == '.' || key.back() == '.') {
      throw ConfigError("line " + std::to_string(number) + ": key '" + key +
                        "' must have the form section.key");
    }
    if (value.empty()) throw ConfigError("line " + std::to_string(number) + ": empty value for " + key);
    out[key] = value;
  }
  return out;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_override(ConfigMap& map, const std::string& assignment) {
  const ConfigMap one = parse_config_text(assignment);
  if (one.size() != 1) throw ConfigError("override must be a single key=value: '" + assignment + "'");
  map[one.begin()->first] = one.begin()->second;
}

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  static const std::regex pair(R"(\(([^,]+),([^,]+)\))");
  static const std::regex number(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  static const std::regex full(
      R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?)");
  static const std::regex imag_only(R"(([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)");
  std::smatch m;
  auto fail = [&]() -> cplx { throw ConfigError("cannot parse complex number '" + raw + "'"); };
  if (s.empty()) return fail();
  if (std::regex_match(s, m, pair)) {
    return {to_double("complex", m[1].str()), to_double("complex", m[2].str())};
  }
  if (std::regex_match(s, m, imag_only)) {
    const double mag = m[2].matched ? std::stod(m[2].str()) : 1.0;
    return {0.0, m[1].str() == "-" ? -mag : mag};
  }
  if (std::regex_match(s, m, full) && m[1].matched) {
    const double re = std::stod(m[1].str());
    double im = 0.0;
    if (m[2].matched) {
      im = m[3].matched ? std::stod(m[3].str()) : 1.0;
      if (m[2].str() == "-") im = -im;
    }
    return {re, im};
  }
  return fail();
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k{"physical.e",    "profile.kind",   "grid.N",       "grid.L",
                               "time.t0",       "time.t1",        "time.dt",      "time.samples",
                               "time.stride",   "ode.tol",        "ode.f0",       "ode.f0_dot",
                               "state.n",       "state.m",        "state.s",      "state.t",
                               "checks.probes", "checks.times",   "propagate.initial",
                               "propagate.components", "output.dir", "run.seed",  "run.tol_scale"};
    std::set<std::string> params;
    for (const auto& [kind, names] : profile_keys()) {
      for (const auto& n : names) params.insert("profile." + n);
    }
    k.insert(k.end(), params.begin(), params.end());
    return k;
  }();
  return keys;
}

const QuantumNumbers& RunConfig::require_state() const {
  if (!state) {
    throw ConfigError("missing section 'state': set state.n, state.m and state.s (or --n/--m/--s)");
  }
  return *state;
}

RunConfig parse_run_config(const ConfigMap& map, const std::filesystem::path& base_dir) {
  const auto& known = known_config_keys();
  for (const auto& [key, value] : map) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  auto get = [&map](const std::string& key) -> std::optional<std::string> {
    auto it = map.find(key);
    if (it == map.end()) return std::nullopt;
    return it->second;
  };
  auto num = [&](const std::string& key, double fallback) {
    auto v = get(key);
    return v ? to_double(key, *v) : fallback;
  };

  RunConfig rc;
  rc.physical.e = num("physical.e", 1.0);
  rc.physical.validate();

  // Profile.
  const std::string kind = get("profile.kind").value_or("constant");
  auto pk = profile_keys().find(kind);
  if (pk == profile_keys().end()) {
    throw ConfigError("profile.kind must be constant, linear_D, sinusoidal or tabulated (got '" + kind + "')");
  }
  for (const auto& [key, value] : map) {
    if (key.rfind("profile.", 0) != 0 || key == "profile.kind") continue;
    const std::string name = key.substr(8);
    if (std::find(pk->second.begin(), pk->second.end(), name) == pk->second.end()) {
      throw ConfigError("'" + key + "' is not a parameter of profile kind " + kind);
    }
  }
  if (kind == "constant") {
    rc.profile = FieldProfile::constant(num("profile.B0", 1.0), num("profile.D0", 0.0));
  } else if (kind == "linear_D") {
    rc.profile = FieldProfile::linear_D(num("profile.B0", 1.0), num("profile.D_rate", 0.0));
  } else if (kind == "sinusoidal") {
    rc.profile = FieldProfile::sinusoidal(num("profile.B_mean", 1.0), num("profile.B_amp", 0.0),
                                          num("profile.omega", 1.0), num("profile.D_mean", 0.0),
                                          num("profile.D_amp", 0.0));
  } else {
    auto table = get("profile.table");
    if (!table) throw ConfigError("profile kind tabulated needs profile.table");
    std::filesystem::path p(*table);
    if (p.is_relative()) p = base_dir / p;
    if (!std::filesystem::exists(p)) throw ConfigError("profile.table: file " + p.string() + " does not exist");
    rc.profile = TabulatedField::from_csv(p);
  }

  // Grid.
  if (auto v = get("grid.N"); v && lower(*v) != "auto") {
    rc.grid_N = static_cast<int>(to_int("grid.N", *v));
    GridSpec{*rc.grid_N, 1.0}.validate();
  } else if (!v) {
    rc.grid_N = 64;
  }
  if (auto v = get("grid.L"); v && lower(*v) != "auto") {
    rc.grid_L = to_double("grid.L", *v);
    if (!(*rc.grid_L > 0.0)) throw ConfigError("grid.L must be positive");
  } else if (!v) {
    rc.grid_L = 20.0;
  }

  // Time.
  rc.t0 = num("time.t0", rc.t0);
  rc.t1 = num("time.t1", rc.t1);
  rc.dt = num("time.dt", rc.dt);
  if (!(rc.t0 < rc.t1)) throw ConfigError("time.t0 must be smaller than time.t1");
  if (!(rc.dt > 0.0)) throw ConfigError("time.dt must be positive");
  if (auto v = get("time.samples")) rc.samples = static_cast<int>(to_int("time.samples", *v));
  if (auto v = get("time.stride")) rc.stride = static_cast<int>(to_int("time.stride", *v));
  if (rc.samples < 1) throw ConfigError("time.samples must be >= 1");
  if (rc.stride < 1) throw ConfigError("time.stride must be >= 1");
  {
    const auto [lo, hi] = rc.profile.domain();
    if (rc.t0 < lo || rc.t1 > hi) throw ConfigError("time span [t0, t1] exceeds the profile domain");
  }

  // ODE.
  rc.ode_tol = num("ode.tol", rc.ode_tol);
  if (!(rc.ode_tol > 0.0)) throw ConfigError("ode.tol must be positive");
  if (auto v = get("ode.f0"); v && lower(*v) != "canonical") rc.f0 = parse_complex(*v);
  if (auto v = get("ode.f0_dot"); v && lower(*v) != "canonical") rc.f0_dot = parse_complex(*v);

  // State.
  const bool any_state = get("state.n") || get("state.m") || get("state.s");
  if (any_state) {
    for (const char* k : {"state.n", "state.m", "state.s"}) {
      if (!get(k)) throw ConfigError(std::string("section 'state' is missing ") + k);
    }
    QuantumNumbers qn;
    qn.n = static_cast<int>(to_int("state.n", *get("state.n")));
    qn.m = static_cast<int>(to_int("state.m", *get("state.m")));
    qn.s = to_spin("state.s", *get("state.s"));
    rc.state = qn;
  }
  if (auto v = get("state.t")) rc.state_t = to_double("state.t", *v);

  // Checks.
  if (auto v = get("checks.probes")) rc.probes = static_cast<int>(to_int("checks.probes", *v));
  if (rc.probes < 1) throw ConfigError("checks.probes must be >= 1");
  if (auto v = get("checks.times")) {
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) rc.check_times.push_back(to_double("checks.times", trim(item)));
  }

  // Propagation.
  if (auto v = get("propagate.initial")) {
    rc.initial = *v;
    if (rc.initial != "state" && rc.initial != "superposition") {
      throw ConfigError("propagate.initial must be 'state' or 'superposition'");
    }
  }
  if (auto v = get("propagate.components")) {
    rc.components = static_cast<int>(to_int("propagate.components", *v));
    if (rc.components < 1) throw ConfigError("propagate.components must be >= 1");
  }

  if (auto v = get("output.dir")) rc.out_dir = *v;
  if (auto v = get("run.seed")) rc.seed = static_cast<std::uint64_t>(to_int("run.seed", *v));
  rc.tol_scale = num("run.tol_scale", rc.tol_scale);
  if (!(rc.tol_scale > 0.0)) throw ConfigError("run.tol_scale must be positive");
  return rc;
}

}  // namespace susy
