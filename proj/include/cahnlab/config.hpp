#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cahnlab/convergence.hpp"
#include "cahnlab/dynamics.hpp"
#include "cahnlab/initial_data.hpp"
#include "cahnlab/mollifier.hpp"
#include "cahnlab/potential.hpp"

namespace cahnlab {

/// Flat run configuration. Every field has a dotted key (see config_keys()).
struct RunConfig {
  int dim = 1;
  int n = 512;
  double side_length = 1.0;

  PotentialKind potential_kind = PotentialKind::shifted_quartic;
  double a = 1.0;
  double A1 = 1.0;
  double A2 = 1.0;
  double theta0 = 3.0;
  double theta = 1.0;
  double barrier = 1e-9;

  double r0 = 1.0;
  std::optional<double> sigma;  ///< unset: 2 dim
  double eps = 0.05;

  std::string scheme = "local";
  SolverConfig solver;
  InitialSpec init;

  std::optional<std::vector<double>> eps_list;  ///< unset: SweepPlan::default_eps_list

  double poincare_eps = 0.1;
  int poincare_samples = 100;
  int poincare_band = 8;

  std::string output_dir = "out";
  bool timing = false;
  bool checkpoint = true;
  bool kernel_dump = false;
  std::string resume_from;
  std::string log_level = "info";
  int workers = 0;  ///< 0: number of available processors

  GridPtr make_grid() const;
  /// Grid with n_per_axis replaced.
  GridPtr make_grid(int n_per_axis) const;
  Potential make_potential() const;
  Mollifier make_mollifier() const;
  std::vector<double> resolved_eps_list() const;
  SweepPlan make_sweep_plan() const;
};

/// Keys accepted by parse_config, in echo order.
std::vector<std::string> config_keys();

/// Parses `key = value` lines ('#' starts a comment) on top of the defaults,
/// then validates. Throws ConfigError naming the offending key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Applies one `key=value` assignment; validation is left to validate_config.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);
/// Throws ConfigError when a parameter violates its module's preconditions.
void validate_config(const RunConfig& cfg);

/// Fully resolved echo; parse_config(render_config(c)) reproduces c.
std::string render_config(const RunConfig& cfg);

}  // namespace cahnlab
