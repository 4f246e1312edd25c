#include "cahnlab/convergence.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "cahnlab/energy.hpp"
#include "cahnlab/error.hpp"

namespace cahnlab {

std::vector<double> SweepPlan::default_eps_list(double r0, double side_length) {
  const double s = side_length / r0;
  return {0.2 * s, 0.1 * s, 0.05 * s, 0.025 * s};
}

void SweepPlan::validate() const {
  if (!grid) throw PreconditionError("sweep: grid is not set");
  solver.validate();
  initial.validate(*grid);
  if (eps_list.empty()) throw PreconditionError("sweep.eps_list must not be empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw PreconditionError("sweep.eps_list entries must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw PreconditionError("sweep.eps_list must be strictly decreasing");
  }
  if (!(eps_list.front() * mollifier.r0 < 0.5 * grid->side_length()))
    throw PreconditionError("sweep.eps_list: largest eps * r0 must be below L/2");
  const double cells = 2.0 * eps_list.back() * mollifier.r0 / grid->spacing();
  if (cells < kMinimumCellsAcrossSupport)
    throw PreconditionError("sweep.eps_list: smallest kernel support spans " + std::to_string(cells) +
                            " cells, at least 8 required");
  const long steps = solver.step_count();
  if (steps / solver.record_every < kMinimumRecords)
    throw PreconditionError("solver.record_every too large: sweep needs at least 50 records");
}

namespace {

double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
  return s;
}

std::optional<double> rate_of(const std::vector<SweepRow>& rows, double SweepRow::*column) {
  std::vector<std::pair<double, double>> pairs;
  for (const auto& r : rows)
    if (r.ok) pairs.emplace_back(r.eps, r.*column);
  return fit_rate(pairs);
}

}  // namespace

SweepReport run_sweep(const SweepPlan& plan) {
  plan.validate();
  const GridPtr& grid = plan.grid;
  const Field u0 = make_initial(grid, plan.initial);

  SweepReport report;
  report.continuum_fidelity = grid->dim() != 2;
  if (!report.continuum_fidelity) spdlog::warn("d = 2: discrete-only run, no continuum fidelity claim");
  report.local_initial_energy = energy_local(u0, plan.potential).total;
  report.h4_bound = 2.0 * report.local_initial_energy;

  std::vector<Field> reference;
  std::vector<double> times;
  std::vector<double> local_interaction;
  RunReport local;
  try {
    local = run(u0, Scheme::local(grid), plan.potential, plan.solver, [&](std::size_t, double t, const Field& u) {
      reference.push_back(u);
      times.push_back(t);
    });
  } catch (const NumericalFailure& err) {
    report.valid = false;
    report.message = std::string("local run failed: ") + err.what();
    return report;
  }
  for (const auto& e : local.energy) local_interaction.push_back(e.interaction);
  report.steps = local.steps;
  report.records = times.size();

  const std::size_t count = plan.eps_list.size();
  report.rows.resize(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
    SweepRow& row = report.rows[i];
    row.eps = plan.eps_list[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      const ScaledKernel K = build_kernel(plan.mollifier, row.eps, grid);
      row.cells_across_support = K.cells_across_support();
      row.initial_energy = energy_nonlocal(u0, K, plan.potential).total;
      std::vector<double> h1_sq(times.size()), gap(times.size());
      run(u0, Scheme::nonlocal(K), plan.potential, plan.solver, [&](std::size_t r, double, const Field& u) {
        const Field diff = u - reference[r];
        const double h1 = norm_H1(diff);
        h1_sq[r] = h1 * h1;
        row.err_CdualH1 = std::max(row.err_CdualH1, norm_H1_dual(diff));
        gap[r] = std::abs(nonlocal_interaction_energy(u, K) - local_interaction[r]);
      });
      row.err_L2H1 = std::sqrt(trapezoid(times, h1_sq));
      row.energy_gap = trapezoid(times, gap);
    } catch (const std::exception& err) {
      row.ok = false;
      row.failure = err.what();
    }
    if (plan.timing)
      row.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  for (const auto& row : report.rows) {
    if (!row.ok) {
      report.valid = false;
      if (report.message.empty()) report.message = "nonlocal run at eps = " + std::to_string(row.eps) + " failed: " + row.failure;
      continue;
    }
    if (row.initial_energy > report.h4_bound) report.h4_satisfied = false;
  }
  if (!report.h4_satisfied)
    spdlog::warn("initial nonlocal energy exceeds C0 = 2 E_CH(u0) = {:.6g} for some eps", report.h4_bound);

  report.rate_L2H1 = rate_of(report.rows, &SweepRow::err_L2H1);
  report.rate_CdualH1 = rate_of(report.rows, &SweepRow::err_CdualH1);
  report.rate_energy_gap = rate_of(report.rows, &SweepRow::energy_gap);

  const double smallest = plan.eps_list.back();
  const auto cp = poincare_study(plan.mollifier, smallest, grid, 20, std::min(4, grid->n_per_axis() / 2 - 1),
                                 plan.initial.seed);
  report.poincare_estimate = cp.max_ratio;
  const double B1 = plan.potential.lower_curvature_bound();
  spdlog::info("B1 = {:.6g}, empirical C_p = {:.6g}", B1, cp.max_ratio);
  if (2.0 * B1 * cp.max_ratio >= 1.0)
    spdlog::warn("B1 * 2 * C_p = {:.6g} >= 1: smallness hypothesis not met", 2.0 * B1 * cp.max_ratio);
  return report;
}

std::optional<double> fit_rate(std::span<const std::pair<double, double>> pairs) {
  std::vector<std::pair<double, double>> logs;
  for (const auto& [eps, err] : pairs)
    if (err > 0.0 && eps > 0.0) logs.emplace_back(std::log(eps), std::log(err));
  if (logs.size() < 3) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(logs.size());
  my /= static_cast<double>(logs.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : logs) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

std::vector<std::string> consistency_basket() { return {"constant", "mode1", "mode2", "smooth"}; }

Field consistency_field(GridPtr grid, const std::string& name) {
  const int d = grid->dim();
  const double k = 2.0 * std::numbers::pi / grid->side_length();
  if (name == "constant") return Field::constant(grid, 0.5);
  if (name == "mode1" || name == "mode2") {
    const int m = name == "mode1" ? 1 : 2;
    return Field::from_function(grid, [&](const Vec3& x) {
      double v = 0.0;
      for (int j = 0; j < d; ++j) v += std::sin(m * k * x[j]);
      return v;
    });
  }
  if (name == "smooth")
    return Field::from_function(grid, [&](const Vec3& x) {
      double v = 0.0;
      for (int j = 0; j < d; ++j) v += std::cos(k * x[j]);
      return std::exp(0.5 * v);
    });
  throw PreconditionError("unknown consistency field '" + name + "'");
}

ConsistencyReport operator_consistency_study(const Mollifier& m, GridPtr grid, std::span<const double> eps_list,
                                             const std::vector<std::string>& basket) {
  if (eps_list.empty()) throw PreconditionError("consistency: eps_list must not be empty");
  for (double eps : eps_list)
    if (!(eps > 0.0 && eps * m.r0 < 0.5 * grid->side_length()))
      throw PreconditionError("consistency: every eps must satisfy 0 < eps * r0 < L/2");
  const double c_eff = local_limit_coefficient(m, grid->dim());
  std::vector<Field> fields;
  std::vector<Field> targets;
  std::vector<double> local_energy;
  for (const auto& name : basket) {
    fields.push_back(consistency_field(grid, name));
    targets.push_back(-c_eff * laplacian(fields.back()));
    local_energy.push_back(c_eff * gradient_energy(fields.back()));
  }

  ConsistencyReport report;
  report.rows.resize(eps_list.size() * basket.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(eps_list.size()); ++i) {
    const ScaledKernel K = build_kernel(m, eps_list[i], grid);
    for (std::size_t f = 0; f < basket.size(); ++f) {
      const Field diff = nonlocal_B(K, fields[f]) - targets[f];
      ConsistencyRow& row = report.rows[i * basket.size() + f];
      row.eps = eps_list[i];
      row.field = basket[f];
      row.err_L2 = norm_L2(diff);
      row.err_dual = norm_H1_dual(diff);
      const double e = nonlocal_interaction_energy(fields[f], K);
      row.energy_rel_err = local_energy[f] > 0.0 ? std::abs(e - local_energy[f]) / local_energy[f] : 0.0;
    }
  }

  for (std::size_t f = 0; f < basket.size(); ++f) {
    std::vector<std::pair<double, double>> l2, dual, energy;
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
      const auto& row = report.rows[i * basket.size() + f];
      l2.emplace_back(row.eps, row.err_L2);
      dual.emplace_back(row.eps, row.err_dual);
      energy.emplace_back(row.eps, row.energy_rel_err);
    }
    report.rates.push_back({basket[f], fit_rate(l2), fit_rate(dual), fit_rate(energy)});
  }
  return report;
}

PoincareResult poincare_study(const Mollifier& m, double eps, GridPtr grid, int samples, int band,
                              std::uint64_t seed) {
  if (samples < 1) throw PreconditionError("poincare: samples must be >= 1");
  const ScaledKernel K = build_kernel(m, eps, grid);
  PoincareResult result;
  result.n_per_axis = grid->n_per_axis();
  result.eps = eps;
  result.ratios.resize(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const Field u = spinodal_noise(grid, 0.0, 1.0, band, seed + static_cast<std::uint64_t>(i));
    result.ratios[static_cast<std::size_t>(i)] = poincare_ratio(u, K);
  }
  double sum = 0.0;
  for (double r : result.ratios) {
    result.max_ratio = std::max(result.max_ratio, r);
    sum += r;
  }
  result.mean_ratio = sum / samples;
  return result;
}

}  // namespace cahnlab
