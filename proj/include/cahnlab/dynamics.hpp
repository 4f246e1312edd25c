#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cahnlab/energy.hpp"
#include "cahnlab/grid.hpp"
#include "cahnlab/mollifier.hpp"
#include "cahnlab/potential.hpp"

namespace cahnlab {

struct SolverConfig {
  double dt = 1e-5;
  double t_end = 0.01;
  /// Linear stabilization S; unset means B1 of the active potential.
  std::optional<double> stabilization;
  bool dealias = false;  ///< 2/3 rule on F'(u)
  int record_every = 10;
  /// Abort with NumericalFailure when E(u^{n+1}) > E(u^n) + energy_tolerance.
  bool check_energy = true;
  double energy_tolerance = 1e-10;

  /// Throws PreconditionError on dt <= 0, dt >= t_end, S < 0 or record_every < 1.
  void validate() const;
  double stabilization_for(const Potential& p) const { return stabilization.value_or(p.lower_curvature_bound()); }
  long step_count() const;
};

/// Which interaction operator the flow uses: -Delta (symbol |k|^2) for the
/// local system, B_eps (symbol b_eps) for the nonlocal one. Both go through the
/// same update, so a nonlocal run with b_eps replaced by |k|^2 is bitwise the
/// local run.
class Scheme {
 public:
  static Scheme local(GridPtr grid);
  static Scheme nonlocal(const ScaledKernel& K);
  static Scheme with_symbol(GridPtr grid, std::vector<double> symbol, std::string label);

  const TorusGrid& grid() const noexcept { return *grid_; }
  const GridPtr& shared_grid() const noexcept { return grid_; }
  std::span<const double> symbol() const noexcept { return *symbol_; }
  const std::string& label() const noexcept { return label_; }
  bool is_local() const noexcept { return label_ == "local"; }
  std::optional<double> eps() const noexcept { return eps_; }

  /// 1/2 <A u, u> for the scheme's operator A.
  double interaction_energy(const Field& u) const;
  EnergyBreakdown energy(const Field& u, const Potential& p) const;

 private:
  Scheme(GridPtr grid, std::shared_ptr<const std::vector<double>> symbol, std::string label)
      : grid_(std::move(grid)), symbol_(std::move(symbol)), label_(std::move(label)) {}

  GridPtr grid_;
  std::shared_ptr<const std::vector<double>> symbol_;
  std::string label_;
  std::optional<double> eps_;
};

/// Stabilized semi-implicit spectral step
///   u+ = [u - dt |k|^2 (w - S u)] / (1 + dt |k|^2 A(k) + dt S |k|^2),  w = F'(u).
class Stepper {
 public:
  Stepper(Scheme scheme, Potential potential, SolverConfig cfg);

  const Scheme& scheme() const noexcept { return scheme_; }
  const Potential& potential() const noexcept { return potential_; }
  const SolverConfig& config() const noexcept { return cfg_; }
  double stabilization() const noexcept { return S_; }

  /// Advance u in place. Throws NumericalFailure on non-finite output and
  /// DomainError when F' is undefined at u.
  void step(Field& u);
  /// Coefficients of the last increment u^{n+1} - u^n.
  std::span<const Complex> last_increment() const noexcept { return increment_; }

 private:
  Scheme scheme_;
  Potential potential_;
  SolverConfig cfg_;
  double S_;
  std::vector<double> w_;
  std::vector<Complex> w_hat_;
  std::vector<Complex> next_;
  std::vector<Complex> increment_;
  std::vector<double> dealias_mask_;
  long steps_taken_ = 0;
};

Field step_local(const Field& u, const Potential& p, const SolverConfig& cfg);
Field step_nonlocal(const Field& u, const ScaledKernel& K, const Potential& p, const SolverConfig& cfg);

struct RunReport {
  std::string scheme;
  std::optional<double> eps;
  double dt = 0.0;
  double stabilization = 0.0;
  long steps = 0;
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<EnergyBreakdown> energy;
  /// ||(u^{n+1} - u^n) / dt||_{(H^1)*} of the step ending at each record (0 at t = 0).
  std::vector<double> dual_rate;
  /// Running sum of dt ||(u^{n+1} - u^n) / dt||^2 in (H^1)* up to each record.
  std::vector<double> dissipation;
  /// Same running sum in the homogeneous H^-1 norm.
  std::vector<double> dissipation_hminus1;
  /// max(0, max u - 1, -min u) per record.
  std::vector<double> overshoot;
  std::optional<Field> final_state;
};

/// Called at every record with (record index, time, state).
using RunObserver = std::function<void(std::size_t, double, const Field&)>;

/// Integrates from u0 (at time t0) to cfg.t_end, recording every cfg.record_every
/// steps and at the final step. Throws NumericalFailure on blow-up or, when
/// enabled, on an energy increase above the tolerance.
RunReport run(const Field& u0, const Scheme& scheme, const Potential& p, const SolverConfig& cfg,
              const RunObserver& observer = {}, double t0 = 0.0);

/// Largest dt in [dt_lo, dt_hi] (bisection, `iterations` halvings of the
/// bracket) for which `steps` steps from u0 keep the energy non-increasing.
double certify_time_step(const Field& u0, const Scheme& scheme, const Potential& p, double dt_lo, double dt_hi,
                         long steps, int iterations = 12);

}  // namespace cahnlab
