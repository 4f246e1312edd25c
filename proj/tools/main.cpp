#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "cahnlab/config.hpp"
#include "cahnlab/convergence.hpp"
#include "cahnlab/dynamics.hpp"
#include "cahnlab/error.hpp"
#include "cahnlab/initial_data.hpp"
#include "cahnlab/io.hpp"
#include "cahnlab/kernels.hpp"
#include "cahnlab/selftest.hpp"

namespace fs = std::filesystem;
using namespace cahnlab;

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kNumerical = 3, kSelftest = 4 };

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
};

RunConfig load(const Options& opt) {
  std::string text;
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw ConfigError("", "cannot read config file " + opt.config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  for (const auto& o : opt.overrides) {
    if (o.find('=') == std::string::npos) throw ConfigError(o, "--set expects key=value");
    text += "\n" + o;
  }
  if (!opt.output_dir.empty()) text += "\noutput.dir = " + opt.output_dir;
  return parse_config(text);
}

void setup_runtime(const RunConfig& cfg) {
  spdlog::set_level(spdlog::level::from_str(cfg.log_level));
  int workers = cfg.workers;
  if (const char* env = std::getenv("CAHNLAB_WORKERS")) {
    try {
      workers = std::stoi(env);
    } catch (const std::exception&) {
      throw ConfigError("CAHNLAB_WORKERS", std::string("expected an integer, got '") + env + "'");
    }
    if (workers < 0) throw ConfigError("CAHNLAB_WORKERS", "must be >= 0");
  }
  if (workers == 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  kernels::set_workers(workers);
  spdlog::debug("using {} worker thread(s)", workers);
  write_text(fs::path(cfg.output_dir) / "resolved.cfg", render_config(cfg));
}

int simulate(const RunConfig& cfg) {
  const GridPtr grid = cfg.make_grid();
  const Potential pot = cfg.make_potential();
  std::optional<ScaledKernel> K;
  if (cfg.scheme == "nonlocal") {
    K = build_kernel(cfg.make_mollifier(), cfg.eps, grid);
    if (!K->continuum_fidelity()) spdlog::warn("d = 2: discrete-only run, no continuum fidelity claim");
    if (cfg.kernel_dump) write_text(fs::path(cfg.output_dir) / "kernel.csv", kernel_dump_csv(*K));
  }
  const Scheme scheme = K ? Scheme::nonlocal(*K) : Scheme::local(grid);

  double t0 = 0.0;
  Field u0 = make_initial(grid, cfg.init);
  if (!cfg.resume_from.empty()) {
    const Checkpoint cp = read_checkpoint(cfg.resume_from);
    if (cp.dim != cfg.dim || cp.n != cfg.n || cp.side_length != cfg.side_length)
      throw ConfigError("simulate.resume", "checkpoint grid does not match grid.* settings");
    if (cp.scheme != cfg.scheme) throw ConfigError("simulate.resume", "checkpoint scheme does not match solver.scheme");
    u0 = Field(grid, cp.values);
    t0 = cp.time;
    if (!(t0 < cfg.solver.t_end)) throw ConfigError("simulate.resume", "checkpoint time is not before solver.t_end");
    spdlog::info("resuming from {} at t = {:.6g}", cfg.resume_from, t0);
  }

  spdlog::info("simulate: {} scheme, d = {}, n = {}, dt = {:.3g}, S = {:.6g}", scheme.label(), cfg.dim, cfg.n,
               cfg.solver.dt, cfg.solver.stabilization_for(pot));
  const RunReport report = run(u0, scheme, pot, cfg.solver, {}, t0);
  write_text(fs::path(cfg.output_dir) / "run.csv", run_report_csv(report));
  if (cfg.checkpoint) {
    Checkpoint cp;
    cp.dim = cfg.dim;
    cp.n = cfg.n;
    cp.side_length = cfg.side_length;
    cp.time = report.times.back();
    cp.scheme = cfg.scheme;
    cp.eps = scheme.eps();
    cp.potential = std::string(to_string(pot.kind()));
    cp.a = pot.a();
    cp.A1 = pot.A1();
    cp.A2 = pot.A2();
    cp.theta0 = pot.theta0();
    cp.theta = pot.theta();
    const auto v = report.final_state->values();
    cp.values.assign(v.begin(), v.end());
    write_checkpoint(fs::path(cfg.output_dir) / "state.chk", cp);
  }
  spdlog::info("simulate: {} steps, final energy {:.12g}, mass drift {:.3e}", report.steps,
               report.energy.back().total, std::abs(report.mass.back() - report.mass.front()));
  return kOk;
}

int sweep(const RunConfig& cfg) {
  const SweepPlan plan = cfg.make_sweep_plan();
  const SweepReport report = run_sweep(plan);
  write_text(fs::path(cfg.output_dir) / "sweep.csv", sweep_csv(report));
  write_text(fs::path(cfg.output_dir) / "summary.json", sweep_summary_json(report, cfg));
  for (const auto& row : report.rows)
    spdlog::info("eps = {:.4g}: err_L2H1 = {:.4e}, err_CdualH1 = {:.4e}, energy_gap = {:.4e}", row.eps, row.err_L2H1,
                 row.err_CdualH1, row.energy_gap);
  if (!report.valid) {
    spdlog::error("sweep invalid: {}", report.message);
    return kNumerical;
  }
  return kOk;
}

int consistency(const RunConfig& cfg) {
  const auto eps = cfg.resolved_eps_list();
  const ConsistencyReport report = operator_consistency_study(cfg.make_mollifier(), cfg.make_grid(), eps);
  write_text(fs::path(cfg.output_dir) / "consistency.csv", consistency_csv(report));
  write_text(fs::path(cfg.output_dir) / "consistency.json", consistency_summary_json(report, cfg));
  for (const auto& r : report.rates)
    spdlog::info("{}: L2 rate {}", r.field, r.rate_L2 ? std::to_string(*r.rate_L2) : std::string("undefined"));
  return kOk;
}

int poincare(const RunConfig& cfg) {
  const Mollifier m = cfg.make_mollifier();
  std::vector<PoincareResult> results;
  for (int n : {cfg.n, 2 * cfg.n})
    results.push_back(
        poincare_study(m, cfg.poincare_eps, cfg.make_grid(n), cfg.poincare_samples, cfg.poincare_band, cfg.init.seed));
  write_text(fs::path(cfg.output_dir) / "poincare.csv", poincare_csv(results));
  write_text(fs::path(cfg.output_dir) / "poincare.json", poincare_summary_json(results, cfg));
  for (const auto& r : results) spdlog::info("n = {}: max ratio {:.6g}", r.n_per_axis, r.max_ratio);
  return kOk;
}

int selftest(const RunConfig& cfg) {
  const SelftestReport report = run_selftest(cfg.init.seed);
  std::string text = "check,error,tolerance,passed\n";
  for (const auto& c : report.checks) {
    text += c.name + ',' + format_real(c.error) + ',' + format_real(c.tolerance) + ',' + (c.passed ? "1" : "0") + '\n';
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (error " << c.error << ", tolerance " << c.tolerance
              << ")\n";
  }
  write_text(fs::path(cfg.output_dir) / "selftest.csv", text);
  return report.passed() ? kOk : kSelftest;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("cahnlab"));

  CLI::App app{"Local and nonlocal Cahn-Hilliard solver and convergence laboratory"};
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", opt.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("-s,--set", opt.overrides, "override a configuration key (key=value)");
    sub->add_option("-o,--output-dir", opt.output_dir, "output directory (overrides output.dir)");
  };
  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&);
  };
  const Command commands[] = {
      {"simulate", "integrate one scheme; writes run.csv and state.chk", simulate},
      {"sweep", "eps sweep against the local flow; writes sweep.csv and summary.json", sweep},
      {"consistency", "operator and energy consistency study", consistency},
      {"poincare", "Poincare ratio sampling at n and 2n", poincare},
      {"selftest", "fast paths against brute-force references", selftest},
  };
  for (const auto& c : commands) add_common(app.add_subcommand(c.name, c.help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    const RunConfig cfg = load(opt);
    setup_runtime(cfg);
    for (const auto& c : commands)
      if (app.got_subcommand(c.name)) return c.fn(cfg);
  } catch (const ConfigError& e) {
    spdlog::error("configuration error: {}", e.what());
    return kConfig;
  } catch (const NumericalFailure& e) {
    spdlog::error("numerical failure: {}", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kOther;
  }
  return kOther;
}
