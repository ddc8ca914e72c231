#pragma once

#include <complex>
#include <string>
#include <vector>

#include "htype/biradial.hpp"
#include "htype/gelfand.hpp"
#include "htype/group.hpp"
#include "htype/quadrature.hpp"

namespace htype {

/// C such that P_1(X, Z) = C / ((1 + |X|^2/4)^2 + |Z|^2)^Q has unit mass,
/// by quadrature of the (r, rho) reduction.
double normalization_constant(const HTypeGroup& group, double tol = 1e-11);

/// P_a(X, Z) = C a^Q / ((a + |X|^2/4)^2 + |Z|^2)^Q with C fixed numerically.
/// The group must pass validate_htype. Immutable; cheap to copy.
class PoissonKernel {
 public:
  explicit PoissonKernel(const HTypeGroup& group, double a = 1.0, double tol = 1e-11);

  /// The same group and constant at another height.
  PoissonKernel at_height(double a) const;

  const HTypeGroup& group() const noexcept { return profile_.group(); }
  double a() const noexcept { return a_; }
  double c_norm() const noexcept { return c_; }

  double radial(double r, double rho) const;
  double operator()(const GroupElement& n) const;
  const BiradialProfile& profile() const noexcept { return profile_; }

 private:
  PoissonKernel(const HTypeGroup& group, double a, double c, int);
  static double checked_constant(const HTypeGroup& group, double a, double tol);
  static BiradialProfile make_profile(const HTypeGroup& group, double a, double c);

  BiradialProfile profile_;
  double a_;
  double c_;
};

double poisson_eval(const PoissonKernel& kernel, const GroupElement& n);

/// Exponent of the reduced one-dimensional form of the central Fourier
/// transform. `corrected` is m + (k+1)/2, what integrating out the k-1
/// directions orthogonal to w produces; `printed` is (m+k+1)/2.
enum class ReducedExponent { corrected, printed };

double reduced_exponent(const HTypeGroup& group, ReducedExponent which);

struct ZFourier {
  double value = 0.0;         // reduced form, the returned value
  double imag = 0.0;          // imaginary part of the direct route
  double direct = 0.0;        // real part of the direct route
  double direct_error = 0.0;
  double c_prime = 0.0;       // pinned constant of the reduced form
};

/// int_z e^{-i nu <Z, w>} P_a(X, Z) dZ, computed directly (quadrature along w
/// and radially in w-perp, evaluating the kernel at actual points of N) and
/// through the reduced form C' a^Q int e^{-i nu t} ((a + |X|^2/4)^2 + t^2)^{-e} dt,
/// with C' matched to the direct route at X = 0, nu = 0. Throws
/// ConsistencyError when the two disagree by more than tol plus twice the
/// direct estimate, and DomainError unless |w| = 1 and nu >= 0.
ZFourier partial_fourier_z(const PoissonKernel& kernel, const Vector& X, double nu, const Vector& w,
                           double tol = 1e-8, ReducedExponent exponent = ReducedExponent::corrected);

/// The half-line representation
///   K_z int_0^inf e^{-(2 beta + nu) A} (beta + nu)^{p-1} beta^{p-1} d beta,
/// A = a + |X|^2/4, p the corrected exponent, of the central Fourier
/// transform at (|X|, nu), with K_z matched to partial_fourier_z at
/// |X| = 0, nu = pin_nu.
QuadResult z_fourier_beta(const PoissonKernel& kernel, double x_norm, double nu, double tol = 1e-10,
                          double pin_nu = 0.5);

/// Both sides of 1/(A + i rho)^{r+1} = (1/r!) int_0^inf e^{-alpha (A + i rho)} alpha^r d alpha.
struct LaplaceCheck {
  std::complex<double> lhs;
  std::complex<double> rhs;
  double error = 0.0;  // quadrature estimate for rhs
};
LaplaceCheck laplace_identity(double A, double rho, int r, double tol = 1e-12);

/// Bessel-branch transform K int_0^inf e^{-mu^2/(2 beta)} e^{-2 beta a} beta^{2s} d beta
/// with K fixed so the value at mu = 0 is 1.
double poisson_hat_bessel(const PoissonKernel& kernel, double mu, double tol = 1e-12);

enum class LaguerreVariant { corrected, paper };

/// Laguerre-branch transform.
///   corrected: K int_0^inf e^{-(2 beta + nu) a} beta^{sigma + l} (beta + nu)^{sigma - l - m} d beta,
///              sigma = s + m/2, with the Bessel-branch K (the nu -> 0, l = 0 limit);
///   paper:     K_p (-1)^l nu^{-m} int_0^inf e^{-(2 beta + nu) a} (beta + nu)^s beta^s d beta,
///              K_p matched to the corrected value at l = 0, nu = 1/2.
double poisson_hat_laguerre(const PoissonKernel& kernel, double nu, int l,
                            LaguerreVariant variant = LaguerreVariant::corrected, double tol = 1e-12);

/// Closed form on either branch (corrected Laguerre variant).
double poisson_hat(const PoissonKernel& kernel, const SpectrumPoint& p, double tol = 1e-12);

/// Brute-force transform of P_a through the defining integral.
QuadResult poisson_hat_oracle(const PoissonKernel& kernel, const SpectrumPoint& p, double tol = 1e-10);

struct SpectrumSample {
  SpectrumPoint point;
  double closed_form = 0.0;
  bool checked = false;     // compared against the oracle
  double oracle = 0.0;
  double oracle_error = 0.0;
  double rel_err = 0.0;
  bool flagged = false;     // |closed_form| below the flag threshold
};

struct NonvanishingReport {
  std::vector<SpectrumSample> samples;
  double min_abs = 0.0;
  std::string min_at;
  double max_rel_err = 0.0;
  bool verified = true;     // every checked point within its branch threshold
  bool nonvanishing = true; // no point flagged
};

struct NonvanishingOptions {
  int check_every = 10;           // oracle at every n-th point, starting with the first
  double flag_below = 1e-8;
  double laguerre_rel_tol = 1e-3;
  double bessel_rel_tol = 1e-4;
  double oracle_tol = 1e-10;
};

NonvanishingReport nonvanishing_report(const PoissonKernel& kernel, const std::vector<SpectrumPoint>& grid,
                                       const NonvanishingOptions& opts = {});

/// Cartesian Laguerre grid nus x {0..l_max} followed by the Bessel points.
std::vector<SpectrumPoint> spectrum_grid(const std::vector<double>& nus, int l_max,
                                         const std::vector<double>& mus);

/// Comparison of both Laguerre variants against the oracle on a grid.
struct ErratumRow {
  double nu = 0.0;
  int l = 0;
  double paper = 0.0;
  double corrected = 0.0;
  double oracle = 0.0;
};

struct ErratumReport {
  double a = 1.0;
  std::vector<ErratumRow> rows;
  /// Per nu, one character per l: '+' when the paper variant has the sign of
  /// the oracle, '-' when it has the opposite sign.
  std::vector<std::string> sign_pattern;
  double paper_max_rel_err = 0.0;
  double corrected_max_rel_err = 0.0;
  double l0_max_rel_diff = 0.0;  // paper vs corrected at l = 0
  double corrected_min_abs = 0.0;
};

ErratumReport erratum_report(const PoissonKernel& kernel, const std::vector<double>& nus, int l_max,
                             double oracle_tol = 1e-10);

}  // namespace htype
