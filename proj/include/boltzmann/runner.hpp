#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "boltzmann/grid.hpp"
#include "boltzmann/scheme.hpp"

namespace boltzmann {

/// Version string recorded in output metadata.
inline constexpr const char* kCodeVersion = "1.0.0";

/// A command line or config file could not be turned into a valid run.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which formulations a run integrates.
enum class SchemeSelection {
  kClassical,
  kSteadyState,
  kBoth,
};

/// Initial datum selector.
struct InitialCondition {
  enum class Kind { kBkw, kMaxwellian, kFile };

  Kind kind = Kind::kBkw;
  // Maxwellian parameters (kind == kMaxwellian).
  double rho = 1.0;
  std::array<double, 2> u = {0.0, 0.0};
  double temperature = 1.0;
  // Nodal data path (kind == kFile).
  std::string path;

  /// Canonical textual form, as accepted by the parser.
  std::string describe() const;
};

/**
 * @brief Fully resolved run parameters.
 *
 * Produced by parse_config from defaults, an optional config file and
 * command-line flags, in that order of increasing precedence.
 */
struct RunConfig {
  int half_modes = 0;            // key N      (required)
  double extent = 0.0;           // key V      (required)
  double lambda = GridSpec::default_lambda();  // key lambda
  double dt = 0.01;              // key dt
  double t_end = 50.0;           // key t_end
  std::int64_t output_stride = 10;  // key output_stride
  int radial_points = 64;        // key n_r
  int angular_points = 64;       // key n_theta
  SchemeSelection scheme = SchemeSelection::kClassical;  // key scheme (req.)
  InitialCondition initial;      // key initial (required)
  std::string output_path;       // key output  (required)
  std::string table_cache;       // key table_cache (optional)
  std::uint64_t seed = 0;        // key seed (recorded; reserved)
};

/**
 * @brief Resolve a run configuration from command-line arguments.
 *
 * Flags mirror the config keys (--N, --V, --lambda, --dt, --t-end,
 * --stride, --n-r, --n-theta, --scheme, --initial, --output,
 * --table-cache, --seed); --config names a file of `key = value` lines
 * with `#` comments.  Flags override file values.  Unknown keys,
 * malformed values and missing required keys raise ConfigError with the
 * offending line number where applicable.
 *
 * `args` excludes the program name.
 */
RunConfig parse_config(const std::vector<std::string>& args);

/// Parse only a config file (no flag layer).  Exposed for tests.
RunConfig parse_config_file(const std::string& path);

/**
 * @brief Execute a configured run end to end.
 *
 * Builds (or loads from cache) the kernel table, integrates the selected
 * scheme(s) and streams one diagnostics CSV per scheme.  For
 * SchemeSelection::kBoth, `_classical` / `_steady_state` is inserted
 * before the output extension.  Returns the process exit status: 0 on
 * success, 2 when the integration blows up (the partial CSV is flushed
 * and a line is printed to stderr).  Late configuration problems
 * (unreadable initial file, unwritable output) raise ConfigError.
 *
 * Two invocations with identical configs produce byte-identical CSVs.
 */
int run_experiment(const RunConfig& config);

/// Output path used for a given scheme under this config.
std::string output_path_for(const RunConfig& config, SchemeVariant variant);

/// Read a nodal field from a whitespace-separated text file (row-major,
/// `#` comments allowed).  The value count must match the grid.
DistributionField load_field(const std::string& path, const GridSpec& spec);

/// Write a nodal field in the format load_field reads.
void save_field(const std::string& path, const DistributionField& field);

}  // namespace boltzmann
