#include <doctest.h>

#include <cmath>

#include "cahnlab/error.hpp"
#include "cahnlab/potential.hpp"
#include "oracles.hpp"

using namespace cahnlab;

TEST_CASE("shifted quartic values") {
  const auto p = Potential::shifted_quartic(1.0);
  CHECK(p.F(0.0) == 0.0);
  CHECK(p.F(1.0) == 0.0);
  CHECK(p.F(0.5) == doctest::Approx(1.0 / 16.0));
  CHECK(p.ddF(0.5) == doctest::Approx(-1.0));
  CHECK(p.lower_curvature_bound() == doctest::Approx(1.0));
}

TEST_CASE("A1 s^4 - A2 s^2 potential values") {
  const auto p = Potential::paper_polynomial(1.0, 1.0);
  CHECK(p.ddF(0.0) == -2.0);
  CHECK(p.lower_curvature_bound() == doctest::Approx(2.0));
  CHECK(p.F(std::sqrt(0.5)) == doctest::Approx(-0.25));
}

TEST_CASE("B1 bounds F'' from below on a dense sample") {
  const Potential cases[] = {Potential::shifted_quartic(1.0), Potential::shifted_quartic(3.5),
                             Potential::paper_polynomial(1.0, 1.0), Potential::paper_polynomial(0.5, 2.0)};
  for (const auto& p : cases) {
    double lowest = 1e300;
    for (int i = 0; i <= 70000; ++i) lowest = std::min(lowest, p.ddF(-3.0 + 7.0 * i / 70000.0));
    CHECK(lowest >= -p.lower_curvature_bound() - 1e-12);
    CHECK(lowest <= -p.lower_curvature_bound() + 1e-6);
  }
}

TEST_CASE("scaling a doubles B1") {
  CHECK(Potential::shifted_quartic(2.0).lower_curvature_bound() ==
        doctest::Approx(2.0 * Potential::shifted_quartic(1.0).lower_curvature_bound()));
}

TEST_CASE("F' and F'' agree with central differences") {
  const Potential cases[] = {Potential::shifted_quartic(1.0), Potential::paper_polynomial(1.0, 1.0),
                             Potential::logarithmic(3.0, 1.0)};
  for (const auto& p : cases) {
    for (int i = 1; i < 40; ++i) {
      const double r = p.kind() == PotentialKind::logarithmic ? 0.05 + 0.9 * i / 40.0 : -2.0 + 5.0 * i / 40.0;
      const double fd = oracle::central_difference([&](double x) { return p.F(x); }, r);
      CHECK(p.dF(r) == doctest::Approx(fd).epsilon(1e-8).scale(1.0));
      const double fd2 = oracle::central_difference([&](double x) { return p.dF(x); }, r);
      CHECK(p.ddF(r) == doctest::Approx(fd2).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("shifted quartic is nonnegative with zeros only at the wells") {
  const auto p = Potential::shifted_quartic(1.0);
  for (int i = 0; i <= 7000; ++i) {
    const double r = -3.0 + 7.0 * i / 7000.0;
    CHECK(p.F(r) >= 0.0);
    if (std::abs(r) > 1e-9 && std::abs(r - 1.0) > 1e-9) CHECK(p.F(r) > 0.0);
  }
}

TEST_CASE("certify_H3") {
  const auto sq = certify_H3(Potential::shifted_quartic(1.0));
  CHECK(sq.B1 == doctest::Approx(1.0));
  CHECK(sq.B2 == doctest::Approx(7.0 + std::sqrt(61.0)).epsilon(1e-14));

  const auto pp = certify_H3(Potential::paper_polynomial(1.0, 1.0));
  CHECK(pp.B1 == doctest::Approx(2.0));
  CHECK(pp.B2 == doctest::Approx(12.0));

  CHECK(certify_H3(Potential::shifted_quartic(2.0)).B1 == doctest::Approx(2.0));
  CHECK_THROWS_AS(certify_H3(Potential::logarithmic(3.0, 1.0)), PreconditionError);
}

TEST_CASE("growth constant 12 is too small for the shifted quartic") {
  const auto p = Potential::shifted_quartic(1.0);
  double worst = 0.0;
  double where = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double r = -10.0 + 20.0 * i / 200000.0;
    const double q = std::abs(p.ddF(r)) / (r * r + 1.0);
    if (q > worst) {
      worst = q;
      where = r;
    }
  }
  CHECK(worst > 12.0);
  CHECK(where == doctest::Approx(-2.13).epsilon(0.01));
  CHECK(worst == doctest::Approx(7.0 + std::sqrt(61.0)).epsilon(1e-8));
}

TEST_CASE("logarithmic potential domain") {
  const auto p = Potential::logarithmic(3.0, 1.0, 1e-9);
  CHECK(p.lower_curvature_bound() == doctest::Approx(2.0));
  CHECK(p.ddF(0.5) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(p.F(0.0), DomainError);
  CHECK_THROWS_AS(p.dF(1.0), DomainError);
  CHECK_THROWS_AS(p.ddF(-0.1), DomainError);
  CHECK_THROWS_AS(p.F(std::nan("")), DomainError);
  CHECK(p.in_domain(0.5));
  CHECK_FALSE(p.in_domain(1e-10));
  CHECK_THROWS_AS(Potential::logarithmic(1.0, 2.0), PreconditionError);
  CHECK_THROWS_AS(Potential::shifted_quartic(-1.0), PreconditionError);
}

TEST_CASE("kind names round trip") {
  for (auto k : {PotentialKind::shifted_quartic, PotentialKind::paper_polynomial, PotentialKind::logarithmic})
    CHECK(potential_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(potential_kind_from_string("quartic"), PreconditionError);
}
