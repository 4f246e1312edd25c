#include "cahnlab/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "cahnlab/error.hpp"

namespace cahnlab {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError(std::string(key), "expected a finite real, got '" + s + "'");
  return v;
}

long long parse_integer(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(std::string(key), "expected an integer, got '" + s + "'");
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  const long long v = parse_integer(key, text);
  if (v < -2147483647LL || v > 2147483647LL) throw ConfigError(std::string(key), "integer out of range");
  return static_cast<int>(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(std::string(key), "expected true or false, got '" + s + "'");
}

std::optional<double> parse_optional_double(std::string_view key, std::string_view text) {
  if (trim(text) == "auto") return std::nullopt;
  return parse_double(key, text);
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError(std::string(key), "expected a comma-separated list of reals");
  return out;
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_double(v[i]);
  return out;
}

struct Entry {
  const char* key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define CAHNLAB_DOUBLE(KEY, MEMBER)                                                           \
  Entry {                                                                                     \
    KEY, [](RunConfig& c, std::string_view v) { c.MEMBER = parse_double(KEY, v); },           \
        [](const RunConfig& c) { return format_double(c.MEMBER); }                            \
  }
#define CAHNLAB_INT(KEY, MEMBER)                                                              \
  Entry {                                                                                     \
    KEY, [](RunConfig& c, std::string_view v) { c.MEMBER = parse_int(KEY, v); },              \
        [](const RunConfig& c) { return std::to_string(c.MEMBER); }                           \
  }
#define CAHNLAB_BOOL(KEY, MEMBER)                                                             \
  Entry {                                                                                     \
    KEY, [](RunConfig& c, std::string_view v) { c.MEMBER = parse_bool(KEY, v); },             \
        [](const RunConfig& c) { return std::string(c.MEMBER ? "true" : "false"); }           \
  }
#define CAHNLAB_STRING(KEY, MEMBER)                                                           \
  Entry {                                                                                     \
    KEY, [](RunConfig& c, std::string_view v) { c.MEMBER = trim(v); },                        \
        [](const RunConfig& c) { return c.MEMBER; }                                           \
  }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      CAHNLAB_INT("grid.dim", dim),
      CAHNLAB_INT("grid.n", n),
      CAHNLAB_DOUBLE("grid.side_length", side_length),
      Entry{"potential.kind",
            [](RunConfig& c, std::string_view v) {
              try {
                c.potential_kind = potential_kind_from_string(trim(v));
              } catch (const PreconditionError& e) {
                throw ConfigError("potential.kind", e.what());
              }
            },
            [](const RunConfig& c) { return std::string(to_string(c.potential_kind)); }},
      CAHNLAB_DOUBLE("potential.a", a),
      CAHNLAB_DOUBLE("potential.A1", A1),
      CAHNLAB_DOUBLE("potential.A2", A2),
      CAHNLAB_DOUBLE("potential.theta0", theta0),
      CAHNLAB_DOUBLE("potential.theta", theta),
      CAHNLAB_DOUBLE("potential.barrier", barrier),
      CAHNLAB_DOUBLE("kernel.r0", r0),
      Entry{"kernel.sigma", [](RunConfig& c, std::string_view v) { c.sigma = parse_optional_double("kernel.sigma", v); },
            [](const RunConfig& c) { return format_double(c.sigma.value_or(2.0 * c.dim)); }},
      CAHNLAB_DOUBLE("kernel.eps", eps),
      CAHNLAB_STRING("solver.scheme", scheme),
      CAHNLAB_DOUBLE("solver.dt", solver.dt),
      CAHNLAB_DOUBLE("solver.t_end", solver.t_end),
      Entry{"solver.stabilization",
            [](RunConfig& c, std::string_view v) {
              c.solver.stabilization = parse_optional_double("solver.stabilization", v);
            },
            [](const RunConfig& c) {
              if (c.solver.stabilization) return format_double(*c.solver.stabilization);
              try {
                return format_double(c.make_potential().lower_curvature_bound());
              } catch (const std::exception&) {
                return std::string("auto");
              }
            }},
      CAHNLAB_BOOL("solver.dealias", solver.dealias),
      CAHNLAB_INT("solver.record_every", solver.record_every),
      CAHNLAB_BOOL("solver.check_energy", solver.check_energy),
      CAHNLAB_DOUBLE("solver.energy_tolerance", solver.energy_tolerance),
      Entry{"init.kind",
            [](RunConfig& c, std::string_view v) {
              try {
                c.init.kind = initial_kind_from_string(trim(v));
              } catch (const PreconditionError& e) {
                throw ConfigError("init.kind", e.what());
              }
            },
            [](const RunConfig& c) { return std::string(to_string(c.init.kind)); }},
      CAHNLAB_DOUBLE("init.mean", init.mean),
      CAHNLAB_DOUBLE("init.amplitude", init.amplitude),
      CAHNLAB_INT("init.mode", init.mode),
      CAHNLAB_INT("init.band", init.band),
      CAHNLAB_DOUBLE("init.width", init.width),
      Entry{"init.seed",
            [](RunConfig& c, std::string_view v) {
              const long long s = parse_integer("init.seed", v);
              if (s < 0) throw ConfigError("init.seed", "seed must be nonnegative");
              c.init.seed = static_cast<std::uint64_t>(s);
            },
            [](const RunConfig& c) { return std::to_string(c.init.seed); }},
      Entry{"sweep.eps_list",
            [](RunConfig& c, std::string_view v) {
              if (trim(v) == "auto")
                c.eps_list.reset();
              else
                c.eps_list = parse_list("sweep.eps_list", v);
            },
            [](const RunConfig& c) { return format_list(c.resolved_eps_list()); }},
      CAHNLAB_DOUBLE("poincare.eps", poincare_eps),
      CAHNLAB_INT("poincare.samples", poincare_samples),
      CAHNLAB_INT("poincare.band", poincare_band),
      CAHNLAB_STRING("output.dir", output_dir),
      CAHNLAB_BOOL("output.timing", timing),
      CAHNLAB_BOOL("output.checkpoint", checkpoint),
      CAHNLAB_BOOL("output.kernel_dump", kernel_dump),
      CAHNLAB_STRING("simulate.resume", resume_from),
      CAHNLAB_STRING("log.level", log_level),
      CAHNLAB_INT("runtime.workers", workers),
  };
  return table;
}

#undef CAHNLAB_DOUBLE
#undef CAHNLAB_INT
#undef CAHNLAB_BOOL
#undef CAHNLAB_STRING

template <class Fn>
void guard(const char* key, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key, e.what());
  }
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& e : entries()) keys.emplace_back(e.key);
  return keys;
}

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  for (const auto& e : entries())
    if (key == e.key) {
      e.set(cfg, value);
      return;
    }
  throw ConfigError(std::string(key), "unknown key");
}

GridPtr RunConfig::make_grid() const { return TorusGrid::make(dim, n, side_length); }
GridPtr RunConfig::make_grid(int n_per_axis) const { return TorusGrid::make(dim, n_per_axis, side_length); }

Potential RunConfig::make_potential() const {
  switch (potential_kind) {
    case PotentialKind::shifted_quartic: return Potential::shifted_quartic(a);
    case PotentialKind::paper_polynomial: return Potential::paper_polynomial(A1, A2);
    case PotentialKind::logarithmic: return Potential::logarithmic(theta0, theta, barrier);
  }
  throw PreconditionError("unknown potential kind");
}

Mollifier RunConfig::make_mollifier() const { return normalize_mollifier(r0, dim, sigma); }

std::vector<double> RunConfig::resolved_eps_list() const {
  return eps_list ? *eps_list : SweepPlan::default_eps_list(r0, side_length);
}

SweepPlan RunConfig::make_sweep_plan() const {
  SweepPlan plan;
  plan.eps_list = resolved_eps_list();
  plan.grid = make_grid();
  plan.solver = solver;
  plan.potential = make_potential();
  plan.mollifier = make_mollifier();
  plan.initial = init;
  plan.timing = timing;
  return plan;
}

void validate_config(const RunConfig& cfg) {
  guard("grid.dim", [&] {
    if (cfg.dim < 1 || cfg.dim > 3) throw PreconditionError("dim must be 1, 2 or 3");
  });
  guard("grid.side_length", [&] {
    if (!(cfg.side_length > 0.0)) throw PreconditionError("side_length must be positive");
  });
  GridPtr grid;
  guard("grid.n", [&] { grid = cfg.make_grid(); });

  const char* potential_key = "potential.a";
  switch (cfg.potential_kind) {
    case PotentialKind::shifted_quartic: potential_key = "potential.a"; break;
    case PotentialKind::paper_polynomial: potential_key = "potential.A1"; break;
    case PotentialKind::logarithmic: potential_key = "potential.theta"; break;
  }
  guard(potential_key, [&] { cfg.make_potential(); });

  guard("kernel.r0", [&] {
    if (!(cfg.r0 > 0.0)) throw PreconditionError("r0 must be positive");
  });
  guard("kernel.sigma", [&] { cfg.make_mollifier(); });
  guard("kernel.eps", [&] {
    if (!(cfg.eps > 0.0 && cfg.eps * cfg.r0 < 0.5 * cfg.side_length))
      throw PreconditionError("eps must satisfy 0 < eps * r0 < L/2");
  });
  guard("solver.scheme", [&] {
    if (cfg.scheme != "local" && cfg.scheme != "nonlocal")
      throw PreconditionError("scheme must be 'local' or 'nonlocal'");
  });
  guard("solver.dt", [&] {
    if (!(cfg.solver.dt > 0.0)) throw PreconditionError("dt must be positive");
    if (!(cfg.solver.dt < cfg.solver.t_end)) throw PreconditionError("dt must be smaller than t_end");
  });
  guard("solver.t_end", [&] {
    if (!(cfg.solver.t_end > 0.0)) throw PreconditionError("t_end must be positive");
  });
  guard("solver.stabilization", [&] {
    if (cfg.solver.stabilization && !(*cfg.solver.stabilization >= 0.0))
      throw PreconditionError("stabilization must be >= 0");
  });
  guard("solver.record_every", [&] {
    if (cfg.solver.record_every < 1) throw PreconditionError("record_every must be >= 1");
  });
  guard("solver.energy_tolerance", [&] { cfg.solver.validate(); });
  guard("init.kind", [&] { cfg.init.validate(*grid); });
  guard("sweep.eps_list", [&] {
    const auto list = cfg.resolved_eps_list();
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!(list[i] > 0.0)) throw PreconditionError("entries must be positive");
      if (i > 0 && !(list[i] < list[i - 1])) throw PreconditionError("entries must be strictly decreasing");
    }
    if (!(list.front() * cfg.r0 < 0.5 * cfg.side_length))
      throw PreconditionError("largest eps * r0 must be below L/2");
  });
  guard("poincare.eps", [&] {
    if (!(cfg.poincare_eps > 0.0 && cfg.poincare_eps * cfg.r0 < 0.5 * cfg.side_length))
      throw PreconditionError("eps must satisfy 0 < eps * r0 < L/2");
  });
  guard("poincare.samples", [&] {
    if (cfg.poincare_samples < 1) throw PreconditionError("samples must be >= 1");
  });
  guard("poincare.band", [&] {
    if (cfg.poincare_band < 1 || 2 * cfg.poincare_band >= cfg.n)
      throw PreconditionError("band must lie in [1, n/2)");
  });
  guard("output.dir", [&] {
    if (cfg.output_dir.empty()) throw PreconditionError("output directory must not be empty");
  });
  guard("log.level", [&] {
    static const char* levels[] = {"trace", "debug", "info", "warn", "error", "critical", "off"};
    for (const char* l : levels)
      if (cfg.log_level == l) return;
    throw PreconditionError("unknown log level '" + cfg.log_level + "'");
  });
  guard("runtime.workers", [&] {
    if (cfg.workers < 0) throw PreconditionError("workers must be >= 0");
  });
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "line " + std::to_string(lineno) + ": expected 'key = value'");
    set_config_value(cfg, trim(std::string_view(body).substr(0, eq)), std::string_view(body).substr(eq + 1));
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string render_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& e : entries()) out += std::string(e.key) + " = " + e.get(cfg) + "\n";
  return out;
}

}  // namespace cahnlab
