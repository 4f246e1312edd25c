#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cahnlab/dynamics.hpp"
#include "cahnlab/initial_data.hpp"
#include "cahnlab/mollifier.hpp"
#include "cahnlab/potential.hpp"

namespace cahnlab {

inline constexpr int kMinimumRecords = 50;
inline constexpr double kMinimumCellsAcrossSupport = 8.0;

struct SweepPlan {
  std::vector<double> eps_list;
  GridPtr grid;
  SolverConfig solver;
  Potential potential = Potential::shifted_quartic();
  Mollifier mollifier;
  InitialSpec initial;
  bool timing = false;  ///< fill runtime_seconds (otherwise 0 for reproducible output)

  /// {0.2, 0.1, 0.05, 0.025} L / r0: the largest support is 0.2 L.
  static std::vector<double> default_eps_list(double r0, double side_length);

  /// Throws PreconditionError unless eps_list is strictly decreasing, the largest
  /// support fits (eps r0 < L/2), the smallest is resolved by at least 8 cells,
  /// and the run yields at least 50 records.
  void validate() const;
};

struct SweepRow {
  double eps = 0.0;
  double err_L2H1 = 0.0;     ///< (int_0^T ||u_eps - u||_{H1}^2 dt)^(1/2), trapezoid over records
  double err_CdualH1 = 0.0;  ///< max over records of ||u_eps - u||_{(H1)*}
  double energy_gap = 0.0;   ///< int_0^T |E~_eps(u_eps) - E~(u)| dt
  double runtime_seconds = 0.0;
  double cells_across_support = 0.0;
  double initial_energy = 0.0;  ///< E_eps(u0)
  bool ok = true;
  std::string failure;
};

struct SweepReport {
  std::vector<SweepRow> rows;  ///< ordered as eps_list (decreasing)
  std::optional<double> rate_L2H1;
  std::optional<double> rate_CdualH1;
  std::optional<double> rate_energy_gap;
  bool valid = true;
  std::string message;
  bool continuum_fidelity = true;
  double local_initial_energy = 0.0;  ///< E_CH(u0)
  double h4_bound = 0.0;              ///< C0 = 2 E_CH(u0)
  bool h4_satisfied = true;
  double poincare_estimate = 0.0;     ///< empirical C_p at the smallest eps
  long steps = 0;
  std::size_t records = 0;
};

/// Runs the local flow once and the nonlocal flow for every eps from the same
/// initial data, grid and time step, and compares trajectories at the records.
/// Solver failures do not throw: the report is returned with valid = false.
SweepReport run_sweep(const SweepPlan& plan);

/// Least-squares slope of log(err) against log(eps). Pairs with err <= 0 are
/// dropped; fewer than 3 remaining pairs give nullopt.
std::optional<double> fit_rate(std::span<const std::pair<double, double>> pairs);

struct ConsistencyRow {
  double eps = 0.0;
  std::string field;
  double err_L2 = 0.0;          ///< ||B_eps f - c_eff (-Delta f)||_{L2}
  double err_dual = 0.0;        ///< same in (H1)*
  double energy_rel_err = 0.0;  ///< |E~_eps(f) - c_eff E~(f)| / (c_eff E~(f)); 0 when E~(f) = 0
};

struct ConsistencyRate {
  std::string field;
  std::optional<double> rate_L2;
  std::optional<double> rate_dual;
  std::optional<double> rate_energy;
};

struct ConsistencyReport {
  std::vector<ConsistencyRow> rows;
  std::vector<ConsistencyRate> rates;
};

/// Names of the smooth test fields used by the consistency study.
std::vector<std::string> consistency_basket();
Field consistency_field(GridPtr grid, const std::string& name);

ConsistencyReport operator_consistency_study(const Mollifier& m, GridPtr grid, std::span<const double> eps_list,
                                             const std::vector<std::string>& basket = consistency_basket());

struct PoincareResult {
  int n_per_axis = 0;
  double eps = 0.0;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
};

/// poincare_ratio over `samples` random band-limited fields (seeds seed, seed+1, ...).
PoincareResult poincare_study(const Mollifier& m, double eps, GridPtr grid, int samples, int band,
                              std::uint64_t seed);

}  // namespace cahnlab
