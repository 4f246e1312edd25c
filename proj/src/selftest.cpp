#include "cahnlab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include "cahnlab/energy.hpp"
#include "cahnlab/kernels.hpp"
#include "cahnlab/mollifier.hpp"
#include "cahnlab/reference.hpp"

namespace cahnlab {

bool SelftestReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

namespace {

Field random_field(const GridPtr& grid, std::mt19937_64& rng) {
  Field f(grid);
  for (double& v : f.mutable_values()) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  return f;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

void add(SelftestReport& r, std::string name, double error, double tol) {
  r.checks.push_back({std::move(name), error, tol, std::isfinite(error) && error <= tol});
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void oracle_checks(SelftestReport& report, int dim, int n, double eps, std::mt19937_64& rng) {
  const auto grid = TorusGrid::make(dim, n);
  const auto K = build_kernel(normalize_mollifier(1.0, dim), eps, grid);
  const std::string tag = "d" + std::to_string(dim) + "_n" + std::to_string(n) + "_";
  const Field f = random_field(grid, rng);
  const Field g = random_field(grid, rng);

  const Field fast = kernel_convolve(K, f);
  const Field slow = reference::direct_convolution(K, f);
  add(report, tag + "convolution", max_abs_diff(fast.values(), slow.values()) / max_abs(slow.values()), 1e-10);

  add(report, tag + "bilinear_form",
      relative(spectral_bilinear_form(f, g, K.symbol()), reference::direct_bilinear_form(K, f, g)), 1e-10);
  add(report, tag + "B_quadratic_form",
      relative(spectral_quadratic_form(f, K.symbol()), reference::direct_bilinear_form(K, f, f)), 1e-10);
  add(report, tag + "interaction_energy",
      relative(nonlocal_interaction_energy(f, K), reference::direct_interaction_energy(K, f)), 1e-10);

  const auto dft = reference::direct_dft(f);
  const auto spec = f.spectral();
  double err = 0.0, scale = 0.0;
  for (std::size_t s = 0; s < dft.size(); ++s) {
    err = std::max(err, std::abs(dft[s] - spec[s]));
    scale = std::max(scale, std::abs(dft[s]));
  }
  add(report, tag + "forward_transform", err / scale, 1e-12);

  std::vector<double> back(grid->size());
  grid->inverse(spec, back);
  add(report, tag + "round_trip", max_abs_diff(back, f.values()) / max_abs(f.values()), 1e-12);

  const double real_space = norm_L2(f);
  add(report, tag + "parseval",
      relative(std::sqrt(spectral_quadratic_form(f, std::vector<double>(grid->spectral_size(), 1.0))), real_space),
      1e-12);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void kernel_agreement(SelftestReport& report, std::mt19937_64& rng) {
  const auto grid = TorusGrid::make(3, 16);
  const Field f = random_field(grid, rng);
  const Field g = random_field(grid, rng);
  const auto pot = Potential::shifted_quartic();
  int mismatches = 0;
  mismatches += !same_bits(kernels::serial::sum(f.values()), kernels::omp::sum(f.values()));
  mismatches += !same_bits(kernels::serial::dot(f.values(), g.values()), kernels::omp::dot(f.values(), g.values()));
  mismatches += !same_bits(kernels::serial::potential_sum(pot, f.values()), kernels::omp::potential_sum(pot, f.values()));
  mismatches += !same_bits(kernels::serial::spectral_weighted_sum(f.spectral(), grid->k_squared(), grid->multiplicity()),
                           kernels::omp::spectral_weighted_sum(f.spectral(), grid->k_squared(), grid->multiplicity()));
  std::vector<double> a(grid->size()), b(grid->size());
  kernels::serial::potential_derivative(pot, f.values(), a);
  kernels::omp::potential_derivative(pot, f.values(), b);
  for (std::size_t i = 0; i < a.size(); ++i) mismatches += !same_bits(a[i], b[i]);
  add(report, "serial_vs_omp_kernels", mismatches, 0.0);
}

}  // namespace

SelftestReport run_selftest(unsigned long long seed) {
  SelftestReport report;
  std::mt19937_64 rng(seed);
  oracle_checks(report, 1, 16, 0.2, rng);
  oracle_checks(report, 2, 8, 0.3, rng);
  oracle_checks(report, 3, 8, 0.3, rng);
  kernel_agreement(report, rng);
  return report;
}

}  // namespace cahnlab
