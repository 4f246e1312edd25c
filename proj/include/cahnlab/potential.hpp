#pragma once

#include <cmath>
#include <string>
#include <string_view>

namespace cahnlab {

enum class PotentialKind { shifted_quartic, paper_polynomial, logarithmic };

std::string_view to_string(PotentialKind kind);
/// Throws PreconditionError on unknown names.
PotentialKind potential_kind_from_string(std::string_view name);

/// Double-well potential F with F', F''.
///
///   shifted_quartic:  F(s) = a s^2 (1 - s)^2
///   paper_polynomial: F(s) = A1 s^4 - A2 s^2
///   logarithmic:      F(s) = theta0 s (1 - s) + theta [s log s + (1 - s) log(1 - s)],
///                     defined on (barrier, 1 - barrier) only.
class Potential {
 public:
  static Potential shifted_quartic(double a = 1.0);
  static Potential paper_polynomial(double A1 = 1.0, double A2 = 1.0);
  static Potential logarithmic(double theta0, double theta, double barrier = 1e-9);

  PotentialKind kind() const noexcept { return kind_; }

  /// Throw DomainError outside the domain of the logarithmic kind.
  double F(double r) const;
  double dF(double r) const;
  double ddF(double r) const;

  // Unchecked evaluation for hot loops; callers verify in_domain() first.
  double F_unchecked(double r) const noexcept {
    switch (kind_) {
      case PotentialKind::shifted_quartic: return a_ * r * r * (1.0 - r) * (1.0 - r);
      case PotentialKind::paper_polynomial: return A1_ * r * r * r * r - A2_ * r * r;
      case PotentialKind::logarithmic:
        return theta0_ * r * (1.0 - r) + theta_ * (r * std::log(r) + (1.0 - r) * std::log(1.0 - r));
    }
    return 0.0;
  }
  double dF_unchecked(double r) const noexcept {
    switch (kind_) {
      case PotentialKind::shifted_quartic: return 2.0 * a_ * r * (1.0 - r) * (1.0 - 2.0 * r);
      case PotentialKind::paper_polynomial: return 4.0 * A1_ * r * r * r - 2.0 * A2_ * r;
      case PotentialKind::logarithmic: return theta0_ * (1.0 - 2.0 * r) + theta_ * std::log(r / (1.0 - r));
    }
    return 0.0;
  }
  double ddF_unchecked(double r) const noexcept {
    switch (kind_) {
      case PotentialKind::shifted_quartic: return 2.0 * a_ * (6.0 * r * r - 6.0 * r + 1.0);
      case PotentialKind::paper_polynomial: return 12.0 * A1_ * r * r - 2.0 * A2_;
      case PotentialKind::logarithmic: return -2.0 * theta0_ + theta_ / (r * (1.0 - r));
    }
    return 0.0;
  }

  /// B1 = max(0, -inf F''). Finite for every kind.
  double lower_curvature_bound() const noexcept { return b1_; }

  /// Pointwise domain check for the logarithmic kind (always true otherwise).
  bool in_domain(double r) const noexcept;

  // Parameters; only those of the active kind are meaningful.
  double a() const noexcept { return a_; }
  double A1() const noexcept { return A1_; }
  double A2() const noexcept { return A2_; }
  double theta0() const noexcept { return theta0_; }
  double theta() const noexcept { return theta_; }
  double barrier() const noexcept { return barrier_; }

  /// F'' = p r^2 + q r + s for the polynomial kinds.
  struct CurvatureQuadratic {
    double p, q, s;
  };
  CurvatureQuadratic curvature_coefficients() const;

 private:
  Potential() = default;

  PotentialKind kind_ = PotentialKind::shifted_quartic;
  double a_ = 1.0;
  double A1_ = 1.0;
  double A2_ = 1.0;
  double theta0_ = 0.0;
  double theta_ = 0.0;
  double barrier_ = 1e-9;
  double b1_ = 0.0;
};

struct H3Constants {
  double B1;  ///< F'' >= -B1
  double B2;  ///< |F''(r)| <= B2 (r^2 + 1)
};

/// Tight H3 constants for the polynomial kinds, derived from the quadratic
/// F'' = p r^2 + q r + s: B1 = -(s - q^2 / 4p), and B2 is the spectral radius
/// of [[p, q/2], [q/2, s]]. Both bounds are re-checked on a dense sample of
/// [-10, 10]; the logarithmic kind throws PreconditionError.
H3Constants certify_H3(const Potential& p);

}  // namespace cahnlab
