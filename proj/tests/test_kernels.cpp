#include <doctest.h>

#include <bit>
#include <complex>

#include "cahnlab/error.hpp"
#include "cahnlab/kernels.hpp"
#include "oracles.hpp"

using namespace cahnlab;
namespace k = cahnlab::kernels;

namespace {

bool same_bits(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  return true;
}

bool same_bits(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a[i].real()) != std::bit_cast<std::uint64_t>(b[i].real()) ||
        std::bit_cast<std::uint64_t>(a[i].imag()) != std::bit_cast<std::uint64_t>(b[i].imag()))
      return false;
  return true;
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

std::vector<Complex> complex_values(std::size_t n, std::uint64_t seed) {
  const auto re = oracle::uniform_values(n, seed);
  const auto im = oracle::uniform_values(n, seed + 100);
  std::vector<Complex> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = {re[i], im[i]};
  return c;
}

}  // namespace

TEST_CASE("serial and OpenMP kernels agree bit for bit for every worker count") {
  const std::size_t n = 5 * k::kReductionBlock + 17;
  const auto x = oracle::uniform_values(n, 1);
  const auto y = oracle::uniform_values(n, 2);
  const auto c = complex_values(n, 3);
  const auto d = complex_values(n, 4);
  const auto weight = oracle::uniform_values(n, 5);
  const std::vector<double> mult(n, 2.0);
  const auto p = Potential::shifted_quartic(1.3);
  const auto g = TorusGrid::make(2, 32);
  const auto m = normalize_mollifier(1.0, 2);

  std::vector<k::SupportPoint> support;
  for (int i = 0; i < 40; ++i) support.push_back({{0.01 * i, -0.02 * i, 0.0}, 1.0 + i});

  for (int w : {1, 2, 4}) {
    CAPTURE(w);
    k::set_workers(w);
    CHECK(same_bits(k::serial::sum(x), k::omp::sum(x)));
    CHECK(same_bits(k::serial::sum_of_squares(x), k::omp::sum_of_squares(x)));
    CHECK(same_bits(k::serial::dot(x, y), k::omp::dot(x, y)));
    CHECK(same_bits(k::serial::spectral_weighted_sum(c, weight, mult), k::omp::spectral_weighted_sum(c, weight, mult)));
    CHECK(same_bits(k::serial::spectral_weighted_sum(c, {}, mult), k::omp::spectral_weighted_sum(c, {}, mult)));
    CHECK(same_bits(k::serial::spectral_weighted_dot(c, d, weight, mult),
                    k::omp::spectral_weighted_dot(c, d, weight, mult)));
    CHECK(same_bits(k::serial::potential_sum(p, x), k::omp::potential_sum(p, x)));

    std::vector<double> a(n), b(n);
    k::serial::potential_derivative(p, x, a);
    k::omp::potential_derivative(p, x, b);
    CHECK(same_bits(a, b));

    std::vector<double> sa(g->size()), sb(g->size());
    k::serial::sample_scaled_kernel(*g, m, 0.2, sa);
    k::omp::sample_scaled_kernel(*g, m, 0.2, sb);
    CHECK(same_bits(sa, sb));

    const auto wv = g->wavevectors();
    std::vector<double> da(wv.size()), ca(wv.size()), db(wv.size()), cb(wv.size());
    k::serial::cosine_symbol(support, 0.5, wv, g->cell_volume(), da, ca);
    k::omp::cosine_symbol(support, 0.5, wv, g->cell_volume(), db, cb);
    CHECK(same_bits(da, db));
    CHECK(same_bits(ca, cb));

    std::vector<Complex> ua(n), ub(n);
    k::serial::semi_implicit_update(c, d, weight, y, 1e-3, 1.0, ua);
    k::omp::semi_implicit_update(c, d, weight, y, 1e-3, 1.0, ub);
    CHECK(same_bits(ua, ub));

    std::vector<Complex> ma = c, mb = c;
    k::serial::multiply_symbol(ma, y);
    k::omp::multiply_symbol(mb, y);
    CHECK(same_bits(ma, mb));
  }
  k::set_workers(0);
}

TEST_CASE("blocked reductions match a long double oracle") {
  const auto x = oracle::uniform_values(3 * k::kReductionBlock + 5, 9);
  CHECK(k::sum(x) == doctest::Approx(static_cast<double>(oracle::naive_sum(x))).epsilon(1e-13));
}

TEST_CASE("logarithmic kernels reject out-of-domain values") {
  const auto p = Potential::logarithmic(3.0, 1.0);
  std::vector<double> u{0.2, 0.5, 1.2};
  std::vector<double> out(3);
  CHECK_THROWS_AS(k::serial::potential_derivative(p, u, out), DomainError);
  CHECK_THROWS_AS(k::omp::potential_derivative(p, u, out), DomainError);
  CHECK_THROWS_AS(k::omp::potential_sum(p, u), DomainError);
  u[2] = 0.8;
  CHECK_NOTHROW(k::omp::potential_sum(p, u));
}

TEST_CASE("set_workers") {
  k::set_workers(3);
  CHECK(k::workers() == 3);
  k::set_workers(0);
  CHECK(k::workers() >= 1);
}
