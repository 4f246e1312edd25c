#include "cahnlab/dynamics.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "cahnlab/error.hpp"
#include "cahnlab/kernels.hpp"

namespace cahnlab {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("solver.dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw PreconditionError("solver.t_end must be positive");
  if (!(dt < t_end)) throw PreconditionError("solver.dt must be smaller than solver.t_end");
  if (stabilization && !(*stabilization >= 0.0)) throw PreconditionError("solver.stabilization must be >= 0");
  if (record_every < 1) throw PreconditionError("solver.record_every must be >= 1");
  if (!(energy_tolerance >= 0.0)) throw PreconditionError("solver.energy_tolerance must be >= 0");
}

long SolverConfig::step_count() const { return static_cast<long>(std::ceil(t_end / dt - 1e-9)); }

Scheme Scheme::local(GridPtr grid) {
  auto k2 = std::make_shared<const std::vector<double>>(grid->k_squared().begin(), grid->k_squared().end());
  return Scheme(std::move(grid), std::move(k2), "local");
}

Scheme Scheme::nonlocal(const ScaledKernel& K) {
  auto b = std::make_shared<const std::vector<double>>(K.symbol().begin(), K.symbol().end());
  Scheme s(K.shared_grid(), std::move(b), "nonlocal");
  s.eps_ = K.eps();
  return s;
}

Scheme Scheme::with_symbol(GridPtr grid, std::vector<double> symbol, std::string label) {
  if (symbol.size() != grid->spectral_size()) throw PreconditionError("scheme symbol size does not match grid");
  for (double v : symbol)
    if (!(v >= 0.0)) throw PreconditionError("scheme symbol must be nonnegative");
  auto sym = std::make_shared<const std::vector<double>>(std::move(symbol));
  return Scheme(std::move(grid), std::move(sym), std::move(label));
}

double Scheme::interaction_energy(const Field& u) const {
  require_same_grid(u.grid(), *grid_);
  return 0.5 * spectral_quadratic_form(u, *symbol_);
}

EnergyBreakdown Scheme::energy(const Field& u, const Potential& p) const {
  EnergyBreakdown e{interaction_energy(u), potential_energy(u, p), 0.0};
  e.total = e.interaction + e.potential_part;
  return e;
}

Stepper::Stepper(Scheme scheme, Potential potential, SolverConfig cfg)
    : scheme_(std::move(scheme)), potential_(potential), cfg_(cfg), S_(cfg.stabilization_for(potential)) {
  cfg_.validate();
  const TorusGrid& g = scheme_.grid();
  w_.resize(g.size());
  w_hat_.resize(g.spectral_size());
  next_.resize(g.spectral_size());
  increment_.resize(g.spectral_size());
  if (cfg_.dealias) {
    dealias_mask_.assign(g.spectral_size(), 1.0);
    const int cutoff = g.n_per_axis() / 3;
    for (std::size_t s = 0; s < g.spectral_size(); ++s) {
      const auto m = g.spectral_frequency(s);
      for (int j = 0; j < g.dim(); ++j)
        if (std::abs(m[j]) > cutoff) dealias_mask_[s] = 0.0;
    }
  }
}

void Stepper::step(Field& u) {
  const TorusGrid& g = scheme_.grid();
  require_same_grid(u.grid(), g);
  kernels::potential_derivative(potential_, u.values(), w_);
  g.forward(w_, w_hat_);
  if (cfg_.dealias) kernels::multiply_symbol(w_hat_, dealias_mask_);
  const auto u_hat = u.spectral();
  kernels::semi_implicit_update(u_hat, w_hat_, g.k_squared(), scheme_.symbol(), cfg_.dt, S_, next_);
  for (std::size_t s = 0; s < next_.size(); ++s) increment_[s] = next_[s] - u_hat[s];
  u.assign_spectral(next_);
  ++steps_taken_;
  if (!u.all_finite()) throw NumericalFailure("non-finite state", steps_taken_, steps_taken_ * cfg_.dt);
}

Field step_local(const Field& u, const Potential& p, const SolverConfig& cfg) {
  Stepper stepper(Scheme::local(u.shared_grid()), p, cfg);
  Field next = u;
  stepper.step(next);
  return next;
}

Field step_nonlocal(const Field& u, const ScaledKernel& K, const Potential& p, const SolverConfig& cfg) {
  require_same_grid(u.grid(), K.grid());
  Stepper stepper(Scheme::nonlocal(K), p, cfg);
  Field next = u;
  stepper.step(next);
  return next;
}

namespace {

double overshoot_of(const Field& u) { return std::max({0.0, u.max() - 1.0, -u.min()}); }

}  // namespace

RunReport run(const Field& u0, const Scheme& scheme, const Potential& p, const SolverConfig& cfg,
              const RunObserver& observer, double t0) {
  cfg.validate();
  require_same_grid(u0.grid(), scheme.grid());
  if (!u0.all_finite()) throw PreconditionError("initial state is not finite");
  const TorusGrid& g = scheme.grid();

  RunReport report;
  report.scheme = scheme.label();
  report.eps = scheme.eps();
  report.dt = cfg.dt;
  report.stabilization = cfg.stabilization_for(p);
  const long total = static_cast<long>(std::ceil((cfg.t_end - t0) / cfg.dt - 1e-9));
  if (total < 1) throw PreconditionError("run: t_end must exceed the start time by at least one step");
  report.steps = total;

  Stepper stepper(scheme, p, cfg);
  Field u = u0;
  EnergyBreakdown e = scheme.energy(u, p);
  double dissipation = 0.0;
  double dissipation_hm1 = 0.0;
  double rate = 0.0;

  auto record = [&](long step) {
    const double t = t0 + static_cast<double>(step) * cfg.dt;
    report.times.push_back(t);
    report.mass.push_back(mean(u));
    report.energy.push_back(e);
    report.dual_rate.push_back(rate);
    report.dissipation.push_back(dissipation);
    report.dissipation_hminus1.push_back(dissipation_hm1);
    report.overshoot.push_back(overshoot_of(u));
    if (observer) observer(report.times.size() - 1, t, u);
  };
  record(0);

  const double scale = g.volume() / (cfg.dt * cfg.dt);
  for (long n = 1; n <= total; ++n) {
    const double t = t0 + static_cast<double>(n) * cfg.dt;
    try {
      stepper.step(u);
    } catch (const NumericalFailure&) {
      spdlog::error("{} run: non-finite state at step {} (t = {:.6g})", scheme.label(), n, t);
      throw NumericalFailure("non-finite state in " + scheme.label() + " run", n, t);
    } catch (const DomainError& err) {
      spdlog::error("{} run: {} at step {}", scheme.label(), err.what(), n);
      throw NumericalFailure(std::string(err.what()) + " in " + scheme.label() + " run", n, t);
    }
    const auto inc = stepper.last_increment();
    const double dual2 = scale * kernels::spectral_weighted_sum(inc, g.dual_weights(), g.multiplicity()) /
                         (static_cast<double>(g.size()) * static_cast<double>(g.size()));
    const double hm12 = scale * kernels::spectral_weighted_sum(inc, g.inverse_k_squared(), g.multiplicity()) /
                        (static_cast<double>(g.size()) * static_cast<double>(g.size()));
    rate = std::sqrt(dual2);
    dissipation += cfg.dt * dual2;
    dissipation_hm1 += cfg.dt * hm12;

    EnergyBreakdown next;
    try {
      next = scheme.energy(u, p);
    } catch (const DomainError& err) {
      throw NumericalFailure(std::string(err.what()) + " in " + scheme.label() + " run", n, t);
    }
    if (!std::isfinite(next.total)) throw NumericalFailure("non-finite energy in " + scheme.label() + " run", n, t);
    if (cfg.check_energy && next.total > e.total + cfg.energy_tolerance) {
      spdlog::error("{} run: energy increased at step {} (t = {:.6g}): {:.17g} -> {:.17g}", scheme.label(), n, t,
                    e.total, next.total);
      throw NumericalFailure("energy increase in " + scheme.label() + " run", n, t);
    }
    e = next;
    if (n % cfg.record_every == 0 || n == total) record(n);
  }
  report.final_state = std::move(u);
  return report;
}

double certify_time_step(const Field& u0, const Scheme& scheme, const Potential& p, double dt_lo, double dt_hi,
                         long steps, int iterations) {
  if (!(dt_lo > 0.0 && dt_lo < dt_hi)) throw PreconditionError("certify_time_step: need 0 < dt_lo < dt_hi");
  if (steps < 2) throw PreconditionError("certify_time_step: steps must be >= 2");
  auto stable = [&](double dt) {
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_end = dt * static_cast<double>(steps);
    cfg.record_every = static_cast<int>(steps);
    try {
      run(u0, scheme, p, cfg);
      return true;
    } catch (const NumericalFailure&) {
      return false;
    }
  };
  auto quiet = spdlog::default_logger()->level();
  spdlog::set_level(spdlog::level::off);
  struct Restore {
    spdlog::level::level_enum level;
    ~Restore() { spdlog::set_level(level); }
  } restore{quiet};

  if (!stable(dt_lo)) throw NumericalFailure("certify_time_step: lower bracket is not energy stable", 0, 0.0);
  if (stable(dt_hi)) return dt_hi;
  double lo = dt_lo, hi = dt_hi;
  for (int i = 0; i < iterations; ++i) {
    const double mid = std::sqrt(lo * hi);
    (stable(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace cahnlab
