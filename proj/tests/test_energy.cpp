#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cahnlab/energy.hpp"
#include "cahnlab/error.hpp"
#include "cahnlab/initial_data.hpp"
#include "oracles.hpp"

using namespace cahnlab;
using std::numbers::pi;

namespace {

std::vector<double> as_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("local energy of simple states") {
  const auto g = TorusGrid::make(1, 64);
  const auto p = Potential::shifted_quartic();
  const auto zero = energy_local(Field::constant(g, 0.0), p);
  CHECK(zero.interaction == 0.0);
  CHECK(zero.potential_part == 0.0);
  CHECK(zero.total == 0.0);

  const auto half = energy_local(Field::constant(g, 0.5), p);
  CHECK(half.interaction == 0.0);
  CHECK(half.potential_part == doctest::Approx(1.0 / 16.0));
  CHECK(half.total == half.interaction + half.potential_part);
}

TEST_CASE("local energy of a sine profile") {
  const auto g = TorusGrid::make(1, 256);
  const auto p = Potential::shifted_quartic();
  const Field u = Field::from_function(g, [](const Vec3& x) { return 0.5 + 0.5 * std::sin(2.0 * pi * x[0]); });
  const auto e = energy_local(u, p);
  CHECK(e.interaction == doctest::Approx(pi * pi / 4.0).epsilon(1e-12));
  const double quad = oracle::simpson(
      [&](double x) {
        const double v = 0.5 + 0.5 * std::sin(2.0 * pi * x);
        return v * v * (1.0 - v) * (1.0 - v);
      },
      0.0, 1.0);
  CHECK(e.potential_part == doctest::Approx(quad).epsilon(1e-12));
  CHECK(quad == doctest::Approx(3.0 / 128.0).epsilon(1e-10));
}

TEST_CASE("nonlocal energy") {
  const auto g = TorusGrid::make(1, 16);
  const auto K = build_kernel(normalize_mollifier(1.0, 1), 0.3, g);
  const auto p = Potential::shifted_quartic();
  CHECK(std::abs(energy_nonlocal(Field::constant(g, 0.3), K, p).interaction) < 1e-15);

  const auto v = oracle::uniform_values(g->size(), 8, 0.0, 1.0);
  const auto e = energy_nonlocal(Field(g, v), K, p);
  CHECK(e.interaction == doctest::Approx(oracle::double_sum(as_vector(K.samples()), v, v, 1, 16, g->spacing(), 0.25)).epsilon(1e-10));
  CHECK(e.interaction >= 0.0);
  CHECK(e.potential_part >= 0.0);

  const auto g2 = TorusGrid::make(2, 8);
  const auto K2 = build_kernel(normalize_mollifier(1.0, 2), 0.3, g2);
  const auto v2 = oracle::uniform_values(g2->size(), 9);
  CHECK(nonlocal_interaction_energy(Field(g2, v2), K2) ==
        doctest::Approx(oracle::double_sum(as_vector(K2.samples()), v2, v2, 2, 8, g2->spacing(), 0.25)).epsilon(1e-10));
}

TEST_CASE("nonlocal interaction energy converges to the gradient energy") {
  const auto g = TorusGrid::make(1, 1024);
  const auto m = normalize_mollifier(1.0, 1);
  const Field u = single_mode(g, 0.5, 0.2, 1);
  const double local = gradient_energy(u);
  std::vector<double> eps{0.2, 0.1, 0.05, 0.025}, gap;
  for (double e : eps) gap.push_back(std::abs(nonlocal_interaction_energy(u, build_kernel(m, e, g)) - local));
  for (std::size_t i = 1; i < gap.size(); ++i) CHECK(gap[i] < gap[i - 1]);
  CHECK(oracle::loglog_slope(eps, gap) >= 1.5);
}

TEST_CASE("nonlocal gradient seminorm") {
  const auto g = TorusGrid::make(1, 16);
  const auto K = build_kernel(normalize_mollifier(1.0, 1), 0.3, g);
  CHECK(nonlocal_gradient_seminorm(Field::constant(g, 2.0), K) == 0.0);

  // Single mode: the full double integral of |u'(x) - u'(y)|^2 from the exact derivative.
  const int m = 2;
  const double k = 2.0 * pi * m;
  const Field u = Field::from_function(g, [&](const Vec3& x) { return std::cos(k * x[0]); });
  std::vector<double> du(g->size());
  for (std::size_t i = 0; i < g->size(); ++i) du[i] = -k * std::sin(k * g->cell_position(i)[0]);
  const double brute = oracle::double_sum(as_vector(K.samples()), du, du, 1, 16, g->spacing(), 1.0);
  CHECK(nonlocal_gradient_seminorm(u, K) == doctest::Approx(brute).epsilon(1e-10));
  CHECK(nonlocal_gradient_seminorm(u, K) == doctest::Approx(2.0 * K.symbol()[m] * k * k * 0.5).epsilon(1e-12));

  for (std::uint64_t s = 0; s < 10; ++s) CHECK(nonlocal_gradient_seminorm(Field(g, oracle::uniform_values(16, s)), K) >= 0.0);
}

TEST_CASE("Poincare ratio") {
  const auto g = TorusGrid::make(1, 128);
  const auto m = normalize_mollifier(1.0, 1);
  const auto K = build_kernel(m, 0.1, g);
  CHECK_THROWS_AS(poincare_ratio(Field::constant(g, 1.0), K), PreconditionError);
  const Field u = spinodal_noise(g, 0.0, 1.0, 6, 3);
  const double r = poincare_ratio(u, K);
  CHECK(r > 0.0);
  CHECK(std::isfinite(r));

  const auto g2 = TorusGrid::make(1, 256);
  const double r2 = poincare_ratio(spinodal_noise(g2, 0.0, 1.0, 6, 3), build_kernel(m, 0.1, g2));
  CHECK(std::abs(r2 - r) / r < 0.1);
}

TEST_CASE("initial energy bound C0 = 2 E_CH(u0) holds across the sweep") {
  const auto g = TorusGrid::make(1, 512);
  const auto m = normalize_mollifier(1.0, 1);
  const auto p = Potential::shifted_quartic();
  const Field u0 = single_mode(g, 0.5, 0.1, 1);
  const double C0 = 2.0 * energy_local(u0, p).total;
  for (double e : {0.2, 0.1, 0.05, 0.025}) CHECK(energy_nonlocal(u0, build_kernel(m, e, g), p).total <= C0);
}
