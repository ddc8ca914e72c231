#include "htype/gelfand.hpp"

#include <cmath>

#include <fmt/format.h>

#include "htype/error.hpp"
#include "htype/special.hpp"

namespace htype {

SpectrumPoint SpectrumPoint::laguerre(double nu, int l) {
  if (!(nu > 0.0)) throw DomainError(fmt::format("Laguerre branch needs nu > 0 (got {})", nu));
  if (l < 0) throw DomainError(fmt::format("Laguerre branch needs l >= 0 (got {})", l));
  return SpectrumPoint(Branch::laguerre, nu, l);
}

SpectrumPoint SpectrumPoint::bessel(double mu) {
  if (!(mu >= 0.0)) throw DomainError(fmt::format("Bessel branch needs mu >= 0 (got {})", mu));
  return SpectrumPoint(Branch::bessel, mu, 0);
}

std::string SpectrumPoint::label() const {
  return is_laguerre() ? fmt::format("laguerre(nu={:g},l={})", param_, l_) : fmt::format("bessel(mu={:g})", param_);
}

namespace {

struct LaguerreFactor {
  double nu;
  double inv_binom;
  LaguerrePoly poly;

  LaguerreFactor(int m, double nu_, int l)
      : nu(nu_), inv_binom(1.0 / binomial(l + m - 1.0, l)), poly(l, m - 1.0) {}

  double operator()(double r) const {
    const double x = 0.5 * nu * r * r;
    return std::exp(-0.5 * x) * poly(x) * inv_binom;
  }
};

}  // namespace

double spherical_x(const HTypeGroup& group, const SpectrumPoint& p, double r) {
  if (p.is_laguerre()) return LaguerreFactor(group.m(), p.parameter(), p.l())(r);
  return bessel_gen(group.m() - 1.0, p.parameter() * r);
}

double spherical_z(const HTypeGroup& group, const SpectrumPoint& p, double rho) {
  if (p.is_laguerre()) return bessel_gen(0.5 * (group.k() - 2), p.parameter() * rho);
  return 1.0;
}

double spherical_radial(const HTypeGroup& group, const SpectrumPoint& p, double r, double rho) {
  return spherical_x(group, p, r) * spherical_z(group, p, rho);
}

double spherical_fn(const HTypeGroup& group, const SpectrumPoint& p, const GroupElement& n) {
  group.check(n);
  return spherical_radial(group, p, n.X.norm(), n.Z.norm());
}

double laguerre_factor_l1(int m, double nu, int l) {
  // |L_l^{m-1}(y)| <= sum_j binom(l+m-1, l-j) y^j / j!, and
  // int e^{-nu r^2/4} (nu r^2/2)^j r^{2m-1} dr = 2^{m-1} nu^{-m} Gamma(j+m) 2^{j+m}.
  double sum = 0.0;
  for (int j = 0; j <= l; ++j)
    sum += std::exp(log_binomial(l + m - 1.0, l - j) - std::lgamma(j + 1.0) + std::lgamma(j + m + 0.0)) *
           std::pow(2.0, j + m);
  return sum * std::pow(2.0, m - 1) / std::pow(nu, m) / binomial(l + m - 1.0, l);
}

QuadResult gelfand_transform(const BiradialProfile& f, const SpectrumPoint& p, double tol) {
  const auto& group = f.group();
  f.check_decay(tol);
  RadialWeights w;
  if (p.is_laguerre()) {
    const LaguerreFactor factor(group.m(), p.parameter(), p.l());
    const double order = 0.5 * (group.k() - 2);
    const double nu = p.parameter();
    w.x = [factor](double r) { return factor(r); };
    w.z = [order, nu](double rho) { return bessel_gen(order, nu * rho); };
    w.outer_z = true;
    w.x_l1 = laguerre_factor_l1(group.m(), nu, p.l());
  } else if (p.parameter() > 0.0) {
    const double order = group.m() - 1.0;
    const double mu = p.parameter();
    w.x = [order, mu](double r) { return bessel_gen(order, mu * r); };
  }
  return radial_integral(f, w, tol);
}

}  // namespace htype
