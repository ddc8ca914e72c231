#pragma once

#include <vector>

namespace htype {

/// ln binom(a, b) = ln Gamma(a+1) - ln Gamma(b+1) - ln Gamma(a-b+1); all three
/// arguments must be positive.
double log_binomial(double a, double b);
double binomial(double a, double b);

/// Surface area of the unit sphere S^{n-1} in R^n (n >= 1; area(S^0) = 2).
double sphere_area(int n);

/// Laguerre polynomial L_l^alpha(x). Uses the explicit sum for l <= 20 and
/// the three-term recurrence above. Throws DomainError for alpha <= -1 or
/// l < 0.
double laguerre(int l, double alpha, double x);
double laguerre_sum(int l, double alpha, double x);
double laguerre_recurrence(int l, double alpha, double x);

/// L_l^alpha with its coefficients computed once; evaluation is Horner.
class LaguerrePoly {
 public:
  LaguerrePoly(int l, double alpha);
  double operator()(double x) const;
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of x^j.
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

/// Generalized Bessel function
///   J_z(x) = Gamma(z+1) / (Gamma(z+1/2) Gamma(1/2)) int_{-1}^{1} e^{ixs} (1-s^2)^{(2z-1)/2} ds
/// for z > -1/2, and cos x for z = -1/2. The integral is taken in s = sin(theta).
/// Throws DomainError for z < -1/2.
double bessel_gen(double z, double x);

}  // namespace htype
