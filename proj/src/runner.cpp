#include "boltzmann/runner.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "boltzmann/analytic.hpp"
#include "boltzmann/errors.hpp"
#include "boltzmann/kernel.hpp"

namespace boltzmann {

namespace {

// ---------------------------------------------------------------------
// small parsing helpers
// ---------------------------------------------------------------------

std::string trim(const std::string& s)
{
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& context)
{
  const std::string t = trim(text);
  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || t.empty()) {
    throw ConfigError(context + ": expected a number, got '" + text + "'");
  }
  return value;
}

long long parse_int(const std::string& text, const std::string& context)
{
  const std::string t = trim(text);
  long long value = 0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || t.empty()) {
    throw ConfigError(context + ": expected an integer, got '" + text + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& text, const std::string& context)
{
  const std::string t = trim(text);
  std::uint64_t value = 0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || t.empty()) {
    throw ConfigError(context + ": expected a non-negative integer, got '" +
                      text + "'");
  }
  return value;
}

SchemeSelection parse_scheme(const std::string& text,
                             const std::string& context)
{
  const std::string t = trim(text);
  if (t == "classical") {
    return SchemeSelection::kClassical;
  }
  if (t == "steady_state") {
    return SchemeSelection::kSteadyState;
  }
  if (t == "both") {
    return SchemeSelection::kBoth;
  }
  throw ConfigError(context +
                    ": scheme must be 'classical', 'steady_state' or "
                    "'both', got '" +
                    t + "'");
}

InitialCondition parse_initial(const std::string& text,
                               const std::string& context)
{
  const std::string t = trim(text);
  InitialCondition init;
  if (t == "bkw") {
    init.kind = InitialCondition::Kind::kBkw;
    return init;
  }
  if (t.rfind("file:", 0) == 0) {
    init.kind = InitialCondition::Kind::kFile;
    init.path = trim(t.substr(5));
    if (init.path.empty()) {
      throw ConfigError(context + ": 'file:' needs a path");
    }
    return init;
  }
  if (t.rfind("maxwellian(", 0) == 0 && t.back() == ')') {
    const std::string inner = t.substr(11, t.size() - 12);
    std::vector<std::string> parts;
    std::string piece;
    std::istringstream in(inner);
    while (std::getline(in, piece, ',')) {
      parts.push_back(piece);
    }
    if (parts.size() != 4) {
      throw ConfigError(context +
                        ": maxwellian takes (rho, ux, uy, T), got '" + t +
                        "'");
    }
    init.kind = InitialCondition::Kind::kMaxwellian;
    init.rho = parse_double(parts[0], context + ": maxwellian rho");
    init.u[0] = parse_double(parts[1], context + ": maxwellian ux");
    init.u[1] = parse_double(parts[2], context + ": maxwellian uy");
    init.temperature = parse_double(parts[3], context + ": maxwellian T");
    if (!(init.rho > 0.0)) {
      throw ConfigError(context + ": maxwellian rho must be positive");
    }
    if (!(init.temperature > 0.0)) {
      throw ConfigError(context + ": maxwellian T must be positive");
    }
    return init;
  }
  throw ConfigError(context +
                    ": initial must be 'bkw', 'maxwellian(rho,ux,uy,T)' or "
                    "'file:PATH', got '" +
                    t + "'");
}

std::string format_g17(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_e16(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

// ---------------------------------------------------------------------
// layered settings: defaults, then config file, then flags
// ---------------------------------------------------------------------

struct Settings {
  std::optional<long long> half_modes;
  std::optional<double> extent;
  std::optional<double> lambda;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<long long> output_stride;
  std::optional<long long> radial_points;
  std::optional<long long> angular_points;
  std::optional<SchemeSelection> scheme;
  std::optional<InitialCondition> initial;
  std::optional<std::string> output_path;
  std::optional<std::string> table_cache;
  std::optional<std::uint64_t> seed;
};

void apply_file_entry(Settings& s, const std::string& key,
                      const std::string& value, const std::string& context)
{
  if (key == "N") {
    s.half_modes = parse_int(value, context);
  } else if (key == "V") {
    s.extent = parse_double(value, context);
  } else if (key == "lambda") {
    s.lambda = parse_double(value, context);
  } else if (key == "dt") {
    s.dt = parse_double(value, context);
  } else if (key == "t_end") {
    s.t_end = parse_double(value, context);
  } else if (key == "output_stride") {
    s.output_stride = parse_int(value, context);
  } else if (key == "n_r") {
    s.radial_points = parse_int(value, context);
  } else if (key == "n_theta") {
    s.angular_points = parse_int(value, context);
  } else if (key == "scheme") {
    s.scheme = parse_scheme(value, context);
  } else if (key == "initial") {
    s.initial = parse_initial(value, context);
  } else if (key == "output") {
    s.output_path = trim(value);
  } else if (key == "table_cache") {
    s.table_cache = trim(value);
  } else if (key == "seed") {
    s.seed = parse_u64(value, context);
  } else {
    throw ConfigError(context + ": unknown key '" + key + "'");
  }
}

void load_config_file(Settings& s, const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) {
      continue;
    }
    const std::string context = path + ":" + std::to_string(line_no);
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(context + ": expected 'key = value', got '" +
                        stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(context + ": empty key");
    }
    apply_file_entry(s, key, value, context + ": " + key);
  }
}

RunConfig resolve(const Settings& s)
{
  std::vector<std::string> missing;
  if (!s.half_modes) {
    missing.push_back("N");
  }
  if (!s.extent) {
    missing.push_back("V");
  }
  if (!s.scheme) {
    missing.push_back("scheme");
  }
  if (!s.initial) {
    missing.push_back("initial");
  }
  if (!s.output_path || s.output_path->empty()) {
    missing.push_back("output");
  }
  if (!missing.empty()) {
    std::string joined;
    for (std::size_t i = 0; i < missing.size(); ++i) {
      joined += (i ? ", " : "") + missing[i];
    }
    throw ConfigError("missing required settings: " + joined);
  }

  RunConfig cfg;
  cfg.half_modes = static_cast<int>(*s.half_modes);
  cfg.extent = *s.extent;
  if (s.lambda) {
    cfg.lambda = *s.lambda;
  }
  if (s.dt) {
    cfg.dt = *s.dt;
  }
  if (s.t_end) {
    cfg.t_end = *s.t_end;
  }
  if (s.output_stride) {
    cfg.output_stride = *s.output_stride;
  }
  if (s.radial_points) {
    cfg.radial_points = static_cast<int>(*s.radial_points);
  }
  if (s.angular_points) {
    cfg.angular_points = static_cast<int>(*s.angular_points);
  }
  cfg.scheme = *s.scheme;
  cfg.initial = *s.initial;
  cfg.output_path = *s.output_path;
  if (s.table_cache) {
    cfg.table_cache = *s.table_cache;
  }
  if (s.seed) {
    cfg.seed = *s.seed;
  }

  // Range checks, phrased as configuration errors rather than the
  // invalid_argument the core types would raise later.
  if (*s.half_modes < 1 || *s.half_modes > 512) {
    throw ConfigError("N: must be in [1, 512], got " +
                      std::to_string(*s.half_modes));
  }
  if (!(cfg.extent > 0.0)) {
    throw ConfigError("V: must be positive, got " + format_g17(cfg.extent));
  }
  if (!(cfg.lambda > 0.0) || cfg.lambda > 1.0) {
    throw ConfigError("lambda: must lie in (0, 1], got " +
                      format_g17(cfg.lambda));
  }
  if (!(cfg.dt > 0.0)) {
    throw ConfigError("dt: must be positive, got " + format_g17(cfg.dt));
  }
  if (!(cfg.t_end >= 0.0)) {
    throw ConfigError("t_end: must be non-negative, got " +
                      format_g17(cfg.t_end));
  }
  if (cfg.t_end > 0.0 && cfg.dt > cfg.t_end) {
    throw ConfigError("dt: exceeds t_end");
  }
  if (cfg.output_stride < 1) {
    throw ConfigError("output_stride: must be >= 1, got " +
                      std::to_string(cfg.output_stride));
  }
  if (cfg.radial_points < 16 || cfg.radial_points > 4096) {
    throw ConfigError("n_r: must be in [16, 4096], got " +
                      std::to_string(cfg.radial_points));
  }
  if (cfg.angular_points < 16 || cfg.angular_points > 4096) {
    throw ConfigError("n_theta: must be in [16, 4096], got " +
                      std::to_string(cfg.angular_points));
  }
  return cfg;
}

// ---------------------------------------------------------------------
// experiment plumbing
// ---------------------------------------------------------------------

const char* variant_name(SchemeVariant v)
{
  return v == SchemeVariant::kClassical ? "classical" : "steady_state";
}

KernelTable acquire_table(const GridSpec& grid, const KernelSpec& kspec,
                          const std::string& cache_path)
{
  if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
    try {
      KernelTable table = KernelTable::load(cache_path);
      if (table.grid() == grid && table.kernel_spec() == kspec &&
          table.kernel_name() == maxwell_kernel_2d().name) {
        return table;
      }
      std::cerr << "boltzsim: table cache '" << cache_path
                << "' was built for different parameters; rebuilding\n";
    } catch (const TableChecksumError& e) {
      std::cerr << "boltzsim: " << e.what() << "; rebuilding table\n";
    } catch (const std::exception& e) {
      std::cerr << "boltzsim: table cache '" << cache_path
                << "' is unusable (" << e.what() << "); rebuilding\n";
    }
  }
  KernelTable table = KernelTable::build(grid, kspec);
  if (!cache_path.empty()) {
    table.save(cache_path);
  }
  return table;
}

DistributionField make_initial(const RunConfig& cfg, const GridSpec& grid)
{
  switch (cfg.initial.kind) {
    case InitialCondition::Kind::kBkw:
      return bkw_field(grid, 0.0);
    case InitialCondition::Kind::kMaxwellian:
      return maxwellian_field(grid, cfg.initial.rho, cfg.initial.u,
                              cfg.initial.temperature);
    case InitialCondition::Kind::kFile:
      return load_field(cfg.initial.path, grid);
  }
  throw ConfigError("initial: unrecognized kind");
}

void write_metadata(std::ofstream& out, const RunConfig& cfg,
                    SchemeVariant variant, std::uint64_t table_checksum)
{
  out << "# boltzsim diagnostics\n";
  out << "# code_version = " << kCodeVersion << "\n";
  out << "# scheme = " << variant_name(variant) << "\n";
  out << "# N = " << cfg.half_modes << "\n";
  out << "# V = " << format_g17(cfg.extent) << "\n";
  out << "# lambda = " << format_g17(cfg.lambda) << "\n";
  out << "# dt = " << format_g17(cfg.dt) << "\n";
  out << "# t_end = " << format_g17(cfg.t_end) << "\n";
  out << "# output_stride = " << cfg.output_stride << "\n";
  out << "# n_r = " << cfg.radial_points << "\n";
  out << "# n_theta = " << cfg.angular_points << "\n";
  out << "# initial = " << cfg.initial.describe() << "\n";
  out << "# seed = " << cfg.seed << "\n";
  out << "# table_checksum = " << table_checksum << "\n";
  out << "t,mass,ux,uy,temperature,rel_entropy,l2_error_bkw,neg_mass,"
         "neg_cells\n";
}

void write_row(std::ofstream& out, double time, const DistributionField& field,
               const DistributionField& maxwellian, bool bkw_reference)
{
  const Moments mom = moments(field);
  const double entropy = relative_entropy(field, maxwellian);
  const NegativePart neg = negative_mass(field);

  out << format_e16(time) << ',' << format_e16(mom.rho) << ','
      << format_e16(mom.u[0]) << ',' << format_e16(mom.u[1]) << ','
      << format_e16(mom.temperature) << ',' << format_e16(entropy) << ',';
  if (bkw_reference) {
    const DistributionField ref = bkw_field(field.spec(), time);
    out << format_e16(l2_error(field, ref));
  }
  out << ',' << format_e16(neg.mass) << ',' << neg.cells << '\n';
}

}  // namespace

std::string InitialCondition::describe() const
{
  switch (kind) {
    case Kind::kBkw:
      return "bkw";
    case Kind::kMaxwellian:
      return "maxwellian(" + format_g17(rho) + "," + format_g17(u[0]) + "," +
             format_g17(u[1]) + "," + format_g17(temperature) + ")";
    case Kind::kFile:
      return "file:" + path;
  }
  return "?";
}

RunConfig parse_config(const std::vector<std::string>& args)
{
  CLI::App app{"boltzsim: spectral simulator for the space-homogeneous "
               "Boltzmann equation (2D Maxwell molecules)"};

  std::string config_path;
  long long n = 0;
  double extent = 0.0;
  double lambda = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  long long stride = 0;
  long long n_r = 0;
  long long n_theta = 0;
  std::string scheme;
  std::string initial;
  std::string output;
  std::string table_cache;
  std::uint64_t seed = 0;

  app.add_option("--config", config_path, "config file of key = value lines");
  app.add_option("--N", n, "half mode count per dimension");
  app.add_option("--V", extent, "velocity box half-extent");
  app.add_option("--lambda", lambda, "kernel support fraction in (0, 1]");
  app.add_option("--dt", dt, "time step");
  app.add_option("--t-end", t_end, "final time");
  app.add_option("--stride", stride, "output every this many steps");
  app.add_option("--n-r", n_r, "radial quadrature points");
  app.add_option("--n-theta", n_theta, "angular quadrature points");
  app.add_option("--scheme", scheme, "classical | steady_state | both");
  app.add_option("--initial", initial,
                 "bkw | maxwellian(rho,ux,uy,T) | file:PATH");
  app.add_option("--output", output, "diagnostics CSV path");
  app.add_option("--table-cache", table_cache, "kernel table cache path");
  app.add_option("--seed", seed, "recorded in metadata; reserved");

  std::vector<const char*> argv;
  argv.push_back("boltzsim");
  for (const std::string& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help() << std::flush;
    std::exit(0);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  Settings settings;
  if (app.count("--config") > 0) {
    load_config_file(settings, config_path);
  }
  if (app.count("--N") > 0) {
    settings.half_modes = n;
  }
  if (app.count("--V") > 0) {
    settings.extent = extent;
  }
  if (app.count("--lambda") > 0) {
    settings.lambda = lambda;
  }
  if (app.count("--dt") > 0) {
    settings.dt = dt;
  }
  if (app.count("--t-end") > 0) {
    settings.t_end = t_end;
  }
  if (app.count("--stride") > 0) {
    settings.output_stride = stride;
  }
  if (app.count("--n-r") > 0) {
    settings.radial_points = n_r;
  }
  if (app.count("--n-theta") > 0) {
    settings.angular_points = n_theta;
  }
  if (app.count("--scheme") > 0) {
    settings.scheme = parse_scheme(scheme, "--scheme");
  }
  if (app.count("--initial") > 0) {
    settings.initial = parse_initial(initial, "--initial");
  }
  if (app.count("--output") > 0) {
    settings.output_path = output;
  }
  if (app.count("--table-cache") > 0) {
    settings.table_cache = table_cache;
  }
  if (app.count("--seed") > 0) {
    settings.seed = seed;
  }

  return resolve(settings);
}

RunConfig parse_config_file(const std::string& path)
{
  Settings settings;
  load_config_file(settings, path);
  return resolve(settings);
}

std::string output_path_for(const RunConfig& config, SchemeVariant variant)
{
  if (config.scheme != SchemeSelection::kBoth) {
    return config.output_path;
  }
  const std::string suffix = std::string("_") + variant_name(variant);
  const std::filesystem::path p(config.output_path);
  std::filesystem::path out = p.parent_path();
  out /= p.stem().string() + suffix + p.extension().string();
  return out.string();
}

DistributionField load_field(const std::string& path, const GridSpec& spec)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open initial field file '" + path + "'");
  }
  std::vector<double> values;
  values.reserve(spec.node_count());
  std::string token;
  while (in >> token) {
    if (token[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (values.size() == spec.node_count()) {
      throw ConfigError("initial field file '" + path +
                        "' holds more values than the grid has nodes");
    }
    values.push_back(
        parse_double(token, "initial field file '" + path + "'"));
  }
  if (values.size() != spec.node_count()) {
    throw ConfigError("initial field file '" + path + "' holds " +
                      std::to_string(values.size()) + " values, expected " +
                      std::to_string(spec.node_count()));
  }
  return DistributionField(spec, std::move(values));
}

void save_field(const std::string& path, const DistributionField& field)
{
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw ConfigError("cannot open field file '" + path + "' for writing");
  }
  const int m = field.spec().nodes_per_dim();
  out << "# nodal field, " << m << " x " << m << " row-major\n";
  for (int j1 = 0; j1 < m; ++j1) {
    for (int j2 = 0; j2 < m; ++j2) {
      out << format_g17(field.at(j1, j2)) << (j2 + 1 == m ? '\n' : ' ');
    }
  }
  if (!out) {
    throw ConfigError("write to field file '" + path + "' failed");
  }
}

int run_experiment(const RunConfig& config)
{
  const GridSpec grid(config.half_modes, config.extent, config.lambda);
  const KernelSpec kspec(grid.cutoff_radius(), config.radial_points,
                         config.angular_points);
  const KernelTable table = acquire_table(grid, kspec, config.table_cache);

  const DistributionField f0 = make_initial(config, grid);
  const SchemeSetup setup = prepare_setup(f0, table);
  const IntegratorSpec ispec{config.dt, config.t_end};
  const bool bkw_reference =
      config.initial.kind == InitialCondition::Kind::kBkw;

  std::vector<SchemeVariant> variants;
  if (config.scheme == SchemeSelection::kClassical ||
      config.scheme == SchemeSelection::kBoth) {
    variants.push_back(SchemeVariant::kClassical);
  }
  if (config.scheme == SchemeSelection::kSteadyState ||
      config.scheme == SchemeSelection::kBoth) {
    variants.push_back(SchemeVariant::kSteadyState);
  }

  for (const SchemeVariant variant : variants) {
    const std::string path = output_path_for(config, variant);
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
      throw ConfigError("cannot open output file '" + path + "'");
    }
    write_metadata(out, config, variant, table.checksum());

    const Observer observer = [&](std::int64_t, double time,
                                  const Spectrum& f_hat) {
      write_row(out, time, to_field(f_hat), setup.maxwellian, bkw_reference);
      out.flush();
    };

    try {
      run(initial_state(variant, setup), ispec, setup, table, observer,
          config.output_stride);
    } catch (const BlowUpError& e) {
      out.flush();
      std::cerr << "boltzsim: " << e.what() << "\n";
      return 2;
    } catch (const DegenerateMomentsError& e) {
      // The state is still finite but has left the physical regime (the
      // precursor of a blow-up); report it the same way.
      out.flush();
      std::cerr << "boltzsim: diagnostics degenerated mid-run: " << e.what()
                << "\n";
      return 2;
    }
    if (!out) {
      throw ConfigError("write to output file '" + path + "' failed");
    }
  }
  return 0;
}

}  // namespace boltzmann
