#include "cahnlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cahnlab/error.hpp"

namespace cahnlab {

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::shifted_quartic: return "shifted_quartic";
    case PotentialKind::paper_polynomial: return "paper_polynomial";
    case PotentialKind::logarithmic: return "logarithmic";
  }
  return "unknown";
}

PotentialKind potential_kind_from_string(std::string_view name) {
  if (name == "shifted_quartic") return PotentialKind::shifted_quartic;
  if (name == "paper_polynomial") return PotentialKind::paper_polynomial;
  if (name == "logarithmic") return PotentialKind::logarithmic;
  throw PreconditionError("unknown potential kind '" + std::string(name) + "'");
}

namespace {

double curvature_bound(const Potential::CurvatureQuadratic& c) {
  return std::max(0.0, -(c.s - c.q * c.q / (4.0 * c.p)));
}

}  // namespace

Potential Potential::shifted_quartic(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw PreconditionError("shifted_quartic: a must be positive");
  Potential p;
  p.kind_ = PotentialKind::shifted_quartic;
  p.a_ = a;
  p.b1_ = curvature_bound(p.curvature_coefficients());
  return p;
}

Potential Potential::paper_polynomial(double A1, double A2) {
  if (!(A1 > 0.0) || !std::isfinite(A1)) throw PreconditionError("paper_polynomial: A1 must be positive");
  if (!(A2 >= 0.0) || !std::isfinite(A2)) throw PreconditionError("paper_polynomial: A2 must be nonnegative");
  Potential p;
  p.kind_ = PotentialKind::paper_polynomial;
  p.A1_ = A1;
  p.A2_ = A2;
  p.b1_ = curvature_bound(p.curvature_coefficients());
  return p;
}

Potential Potential::logarithmic(double theta0, double theta, double barrier) {
  if (!(theta > 0.0 && theta < theta0) || !std::isfinite(theta0))
    throw PreconditionError("logarithmic: requires 0 < theta < theta0");
  if (!(barrier > 0.0 && barrier < 0.5)) throw PreconditionError("logarithmic: barrier must lie in (0, 1/2)");
  Potential p;
  p.kind_ = PotentialKind::logarithmic;
  p.theta0_ = theta0;
  p.theta_ = theta;
  p.barrier_ = barrier;
  // F'' = -2 theta0 + theta / (r (1 - r)) is smallest at r = 1/2.
  p.b1_ = std::max(0.0, 2.0 * theta0 - 4.0 * theta);
  return p;
}

bool Potential::in_domain(double r) const noexcept {
  if (kind_ != PotentialKind::logarithmic) return true;
  return r > barrier_ && r < 1.0 - barrier_;
}

double Potential::F(double r) const {
  if (!in_domain(r)) throw DomainError("F evaluated outside the logarithmic domain at r = " + std::to_string(r));
  return F_unchecked(r);
}

double Potential::dF(double r) const {
  if (!in_domain(r)) throw DomainError("F' evaluated outside the logarithmic domain at r = " + std::to_string(r));
  return dF_unchecked(r);
}

double Potential::ddF(double r) const {
  if (!in_domain(r)) throw DomainError("F'' evaluated outside the logarithmic domain at r = " + std::to_string(r));
  return ddF_unchecked(r);
}

Potential::CurvatureQuadratic Potential::curvature_coefficients() const {
  switch (kind_) {
    case PotentialKind::shifted_quartic: return {12.0 * a_, -12.0 * a_, 2.0 * a_};
    case PotentialKind::paper_polynomial: return {12.0 * A1_, 0.0, -2.0 * A2_};
    case PotentialKind::logarithmic: break;
  }
  throw PreconditionError("curvature_coefficients: logarithmic potential has no polynomial F''");
}

H3Constants certify_H3(const Potential& p) {
  if (p.kind() == PotentialKind::logarithmic)
    throw PreconditionError("certify_H3: F'' of the logarithmic potential is unbounded");
  const auto c = p.curvature_coefficients();
  const double half_q = 0.5 * c.q;
  const double centre = 0.5 * (c.p + c.s);
  const double radius = std::hypot(0.5 * (c.p - c.s), half_q);
  const H3Constants h{p.lower_curvature_bound(), std::max(std::abs(centre + radius), std::abs(centre - radius))};

  constexpr int samples = 200001;
  for (int i = 0; i < samples; ++i) {
    const double r = -10.0 + 20.0 * i / (samples - 1);
    const double f2 = p.ddF(r);
    const double scale = 1e-12 * (1.0 + std::abs(f2));
    if (f2 < -h.B1 - scale) throw DomainError("certify_H3: lower bound B1 violated at r = " + std::to_string(r));
    if (std::abs(f2) > h.B2 * (r * r + 1.0) + scale)
      throw DomainError("certify_H3: growth bound B2 violated at r = " + std::to_string(r));
  }
  return h;
}

}  // namespace cahnlab
