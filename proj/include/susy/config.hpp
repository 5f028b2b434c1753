#pragma once

// Run configuration: flat `section.key = value` text with strict key checking.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "susy/fields.hpp"
#include "susy/solutions.hpp"

namespace susy {

/// Raw key/value pairs in file order semantics (later assignments win).
using ConfigMap = std::map<std::string, std::string>;

/// Parses `section.key = value` lines; `#` and `;` start comments. Throws
/// ConfigError with the line number on malformed lines.
ConfigMap parse_config_text(const std::string& text);
ConfigMap read_config_file(const std::filesystem::path& path);

/// Applies a `key=value` override.
void apply_override(ConfigMap& map, const std::string& assignment);

/// Parses "1", "-0.5", "2i", "1+2i", "1-0.5i", "(1,2)" and "i".
cplx parse_complex(const std::string& text);

struct RunConfig {
  PhysicalConfig physical;
  FieldProfile profile;

  std::optional<int> grid_N;     // nullopt: auto
  std::optional<double> grid_L;  // nullopt: auto

  double t0 = 0.0;
  double t1 = 2.0;
  double dt = 1e-3;
  int samples = 10;  // residual sweep points
  int stride = 10;   // observable stride for propagate

  double ode_tol = 1e-12;
  cplx f0{1.0, 0.0};
  cplx f0_dot{0.0, 1.0};

  std::optional<QuantumNumbers> state;
  std::optional<double> state_t;  // time for gen-state (default: midpoint)

  int probes = 5;
  std::vector<double> check_times;  // default: t0 and t1

  std::string initial = "state";  // or "superposition"
  int components = 3;

  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 12345;
  double tol_scale = 1.0;

  /// Throws ConfigError naming the missing section when no state is set.
  const QuantumNumbers& require_state() const;
};

/// Builds a RunConfig from a key map. Unknown keys, keys that do not belong
/// to the selected profile kind, and invalid values raise ConfigError.
/// Relative paths (profile.table) resolve against base_dir.
RunConfig parse_run_config(const ConfigMap& map, const std::filesystem::path& base_dir = ".");

/// Every key accepted by parse_run_config.
const std::vector<std::string>& known_config_keys();

}  // namespace susy
