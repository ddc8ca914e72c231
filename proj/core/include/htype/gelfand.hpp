#pragma once

#include <string>

#include "htype/biradial.hpp"
#include "htype/group.hpp"
#include "htype/quadrature.hpp"

namespace htype {

/// A point of the Gelfand spectrum of the biradial algebra: the Laguerre
/// branch (nu > 0, l >= 0) or the Bessel branch (mu >= 0). bessel(0) is the
/// trivial character.
class SpectrumPoint {
 public:
  enum class Branch { laguerre, bessel };

  static SpectrumPoint laguerre(double nu, int l);
  static SpectrumPoint bessel(double mu);

  Branch branch() const noexcept { return branch_; }
  bool is_laguerre() const noexcept { return branch_ == Branch::laguerre; }
  /// nu on the Laguerre branch, mu on the Bessel branch.
  double parameter() const noexcept { return param_; }
  int l() const noexcept { return l_; }

  std::string label() const;

 private:
  SpectrumPoint(Branch b, double p, int l) : branch_(b), param_(p), l_(l) {}

  Branch branch_;
  double param_;
  int l_;
};

/// X-factor of the spherical function at |X| = r:
///   Laguerre: e^{-nu r^2/4} L_l^{m-1}(nu r^2/2) / binom(l+m-1, l)
///   Bessel:   J_{m-1}(mu r)
double spherical_x(const HTypeGroup& group, const SpectrumPoint& p, double r);
/// Z-factor at |Z| = rho: J_{(k-2)/2}(nu rho) on the Laguerre branch, 1 on the
/// Bessel branch.
double spherical_z(const HTypeGroup& group, const SpectrumPoint& p, double rho);

double spherical_radial(const HTypeGroup& group, const SpectrumPoint& p, double r, double rho);
double spherical_fn(const HTypeGroup& group, const SpectrumPoint& p, const GroupElement& n);

/// Upper bound for int_0^inf |Laguerre X-factor| r^{2m-1} dr, from the
/// termwise absolute Laguerre sum.
double laguerre_factor_l1(int m, double nu, int l);

/// f^(p) = int_N f(n) phi_p(n) dn through the (r, rho) reduction.
QuadResult gelfand_transform(const BiradialProfile& f, const SpectrumPoint& p, double tol);

}  // namespace htype
