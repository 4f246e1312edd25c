#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cahnlab/convergence.hpp"
#include "cahnlab/error.hpp"
#include "oracles.hpp"

using namespace cahnlab;
using std::numbers::pi;

namespace {

SweepPlan small_plan() {
  SweepPlan plan;
  plan.grid = TorusGrid::make(1, 256);
  plan.mollifier = normalize_mollifier(1.0, 1);
  plan.eps_list = SweepPlan::default_eps_list(1.0, 1.0);
  plan.solver.dt = 1e-5;
  plan.solver.t_end = 5e-3;
  plan.solver.record_every = 10;
  plan.initial.kind = InitialKind::single_mode;
  plan.initial.mean = 0.5;
  plan.initial.amplitude = 0.1;
  return plan;
}

}  // namespace

TEST_CASE("fit_rate") {
  const std::vector<std::pair<double, double>> quadratic{{0.2, 4e-2}, {0.1, 1e-2}, {0.05, 2.5e-3}};
  CHECK(*fit_rate(quadratic) == doctest::Approx(2.0).epsilon(1e-12));
  const std::vector<std::pair<double, double>> flat{{0.2, 1.0}, {0.1, 1.0}, {0.05, 1.0}};
  CHECK(*fit_rate(flat) == doctest::Approx(0.0));
  const std::vector<std::pair<double, double>> with_zero{{0.4, 0.0}, {0.2, 4e-2}, {0.1, 1e-2}, {0.05, 2.5e-3}};
  CHECK(*fit_rate(with_zero) == doctest::Approx(2.0).epsilon(1e-12));
  const std::vector<std::pair<double, double>> too_few{{0.2, 0.0}, {0.1, 1e-2}, {0.05, 2.5e-3}};
  CHECK_FALSE(fit_rate(too_few).has_value());
}

TEST_CASE("default eps list scales with L / r0") {
  const auto a = SweepPlan::default_eps_list(1.0, 1.0);
  CHECK(a == std::vector<double>{0.2, 0.1, 0.05, 0.025});
  const auto b = SweepPlan::default_eps_list(2.0, 1.0);
  CHECK(b.front() * 2.0 == doctest::Approx(0.2));
}

TEST_CASE("sweep plan validation") {
  auto plan = small_plan();
  CHECK_NOTHROW(plan.validate());
  plan.eps_list = {0.1, 0.2};
  CHECK_THROWS_AS(plan.validate(), PreconditionError);
  plan = small_plan();
  plan.eps_list = {0.6, 0.1};
  CHECK_THROWS_AS(plan.validate(), PreconditionError);
  plan = small_plan();
  plan.eps_list = {0.2, 0.01};
  CHECK_THROWS_AS(plan.validate(), PreconditionError);
  plan = small_plan();
  plan.solver.record_every = 20;
  CHECK_THROWS_AS(plan.validate(), PreconditionError);
}

TEST_CASE("constant initial data gives zero errors") {
  auto plan = small_plan();
  plan.initial.kind = InitialKind::constant;
  const auto report = run_sweep(plan);
  CHECK(report.valid);
  for (const auto& row : report.rows) {
    CHECK(row.err_L2H1 == 0.0);
    CHECK(row.err_CdualH1 == 0.0);
    CHECK(row.energy_gap == 0.0);
  }
  CHECK_FALSE(report.rate_L2H1.has_value());
}

TEST_CASE("single-mode sweep errors decrease with eps") {
  const auto report = run_sweep(small_plan());
  REQUIRE(report.valid);
  REQUIRE(report.rows.size() == 4);
  CHECK(report.records == 51);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    CHECK(report.rows[i].err_L2H1 < report.rows[i - 1].err_L2H1);
    CHECK(report.rows[i].err_CdualH1 < report.rows[i - 1].err_CdualH1);
    CHECK(report.rows[i].energy_gap < report.rows[i - 1].energy_gap);
    CHECK(report.rows[i].runtime_seconds == 0.0);
  }
  CHECK(*report.rate_L2H1 > 1.5);
  CHECK(report.h4_satisfied);
  CHECK(report.continuum_fidelity);
  CHECK(report.poincare_estimate > 0.0);
}

TEST_CASE("sweeps are deterministic") {
  const auto a = run_sweep(small_plan());
  const auto b = run_sweep(small_plan());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].err_L2H1 == b.rows[i].err_L2H1);
    CHECK(a.rows[i].err_CdualH1 == b.rows[i].err_CdualH1);
    CHECK(a.rows[i].energy_gap == b.rows[i].energy_gap);
  }
}

TEST_CASE("error columns are invariant under u -> 1 - u") {
  auto plan = small_plan();
  const auto a = run_sweep(plan);
  plan.initial.amplitude = -plan.initial.amplitude;
  const auto b = run_sweep(plan);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(b.rows[i].err_L2H1 == doctest::Approx(a.rows[i].err_L2H1).epsilon(1e-12));
    CHECK(b.rows[i].err_CdualH1 == doctest::Approx(a.rows[i].err_CdualH1).epsilon(1e-12));
    CHECK(b.rows[i].energy_gap == doctest::Approx(a.rows[i].energy_gap).epsilon(1e-9));
  }
}

TEST_CASE("solver failure marks the sweep invalid") {
  auto plan = small_plan();
  plan.grid = TorusGrid::make(1, 256, 8.0);
  plan.eps_list = SweepPlan::default_eps_list(1.0, 8.0);
  plan.initial.amplitude = 2.0;
  plan.solver.dt = 1.0;
  plan.solver.t_end = 60.0;
  plan.solver.record_every = 1;
  plan.solver.stabilization = 0.0;
  const auto report = run_sweep(plan);
  CHECK_FALSE(report.valid);
  CHECK_FALSE(report.message.empty());
}

TEST_CASE("operator consistency study") {
  const auto g = TorusGrid::make(1, 1024);
  const auto m = normalize_mollifier(1.0, 1);
  const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  const auto report = operator_consistency_study(m, g, eps);
  CHECK(report.rows.size() == eps.size() * consistency_basket().size());
  for (const auto& row : report.rows) {
    if (row.field == "constant") {
      CHECK(row.err_L2 == 0.0);
      CHECK(row.err_dual == 0.0);
    }
    if (row.field == "mode1") {
      const auto K = build_kernel(m, row.eps, g);
      const double gap = std::abs(K.symbol()[1] - 4.0 * pi * pi);
      CHECK(row.err_L2 == doctest::Approx(gap * std::sqrt(0.5)).epsilon(1e-10));
      CHECK(row.err_dual == doctest::Approx(gap * std::sqrt(0.5) / std::sqrt(1.0 + 4.0 * pi * pi)).epsilon(1e-10));
    }
  }
  for (const auto& r : report.rates) {
    if (r.field == "constant") {
      CHECK_FALSE(r.rate_L2.has_value());
      continue;
    }
    CHECK(*r.rate_L2 >= 1.5);
    CHECK(*r.rate_energy >= 1.5);
  }
  CHECK_THROWS_AS(operator_consistency_study(m, g, std::vector<double>{0.6}), PreconditionError);
}

TEST_CASE("Poincare study") {
  const auto m = normalize_mollifier(1.0, 1);
  const auto a = poincare_study(m, 0.1, TorusGrid::make(1, 128), 20, 8, 1);
  const auto b = poincare_study(m, 0.1, TorusGrid::make(1, 256), 20, 8, 1);
  CHECK(a.ratios.size() == 20);
  CHECK(std::isfinite(a.max_ratio));
  CHECK(a.max_ratio >= a.mean_ratio);
  CHECK(std::abs(a.max_ratio - b.max_ratio) / a.max_ratio < 0.1);
}
