#include "htype/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "htype/error.hpp"
#include "htype/special.hpp"

namespace htype {

namespace {

double kernel_value(double c, double a, int Q, double r, double rho) {
  const double A = a + 0.25 * r * r;
  return c * std::pow(a, Q) * std::pow(A * A + rho * rho, -Q);
}

// Breakpoints 0, +-A, +-4A, +-16A, ... inside (-T, T).
std::vector<double> symmetric_breaks(double A, double T) {
  std::vector<double> b{0.0};
  for (double x = A; x < T; x *= 4.0) {
    b.push_back(x);
    b.push_back(-x);
  }
  std::sort(b.begin(), b.end());
  return b;
}

// An orthonormal vector perpendicular to the unit vector w (k >= 2).
Vector perpendicular(const Vector& w) {
  Eigen::Index i = 0;
  w.cwiseAbs().minCoeff(&i);
  Vector u = Vector::Unit(w.size(), i);
  u -= u.dot(w) * w;
  return u.normalized();
}

// int_R cos(nu t) (A^2 + t^2)^{-e} dt.
double reduced_integral(double A, double nu, double e) {
  if (nu == 0.0) return std::sqrt(M_PI) * std::exp(std::lgamma(e - 0.5) - std::lgamma(e)) * std::pow(A, 1.0 - 2.0 * e);
  return 2.0 * std::sqrt(M_PI) / std::tgamma(e) * std::pow(nu / (2.0 * A), e - 0.5) * std::cyl_bessel_k(e - 0.5, A * nu);
}

struct Direct {
  double re = 0.0;
  double im = 0.0;
  double error = 0.0;
};

// Quadrature of int_z e^{-i nu <Z, w>} P_a(X, Z) dZ through Z = t w + y u.
Direct direct_fourier(const PoissonKernel& kernel, const Vector& X, double nu, const Vector& w, double tol) {
  const HTypeGroup& g = kernel.group();
  const int k = g.k();
  const int Q = g.Q();
  const double amp = kernel.c_norm() * std::pow(kernel.a(), Q);
  const double A = kernel.a() + 0.25 * X.squaredNorm();

  GroupElement n{X, Vector::Zero(k)};
  std::function<double(double)> F;
  double F_amp = amp;  // F(t) <= F_amp |t|^{-2 p_F}
  double p_F = Q;
  double inner_err = 0.0;
  if (k == 1) {
    F = [&](double t) {
      n.Z = t * w;
      return kernel(n);
    };
  } else {
    const Vector u = perpendicular(w);
    const double sphere = sphere_area(k - 1);
    const double ytail_exp = k - 1.0 - 2.0 * Q;
    const double tol_in = tol / 8.0;
    F = [&, u, sphere, ytail_exp, tol_in](double t) {
      const double scale = std::sqrt(A * A + t * t);
      // int_Y^inf amp y^{k-2-2Q} dy <= tol_in / 2
      const double Y = std::max(8.0 * scale, std::pow(tol_in / 2.0 * (-ytail_exp) / (amp * sphere), 1.0 / ytail_exp));
      QuadOptions in;
      in.abs_tol = tol_in / (2.0 * sphere);
      in.max_intervals = 20000;
      for (double b = scale; b < Y; b *= 4.0) in.breakpoints.push_back(b);
      const auto r = integrate_finite(
          [&](double y) {
            n.Z = t * w + y * u;
            return kernel(n) * std::pow(y, k - 2);
          },
          0.0, Y, in);
      inner_err = std::max(inner_err, sphere * r.error + tol_in / 2.0);
      return sphere * r.value;
    };
    // F(t) = amp K (A^2 + t^2)^{-p}, p = Q - (k-1)/2.
    p_F = Q - 0.5 * (k - 1);
    F_amp = amp * 0.5 * sphere * std::exp(std::lgamma(0.5 * (k - 1)) + std::lgamma(p_F) - std::lgamma(Q));
  }

  // 2 int_T^inf F_amp t^{-2 p_F} dt <= tol / 8
  const double T = std::max(16.0 * A, std::pow(tol / 16.0 * (2.0 * p_F - 1.0) / F_amp, 1.0 / (1.0 - 2.0 * p_F)));
  const double tail = 2.0 * F_amp * std::pow(T, 1.0 - 2.0 * p_F) / (2.0 * p_F - 1.0);
  QuadOptions opts;
  opts.abs_tol = tol / 8.0;
  opts.max_intervals = 20000;
  opts.breakpoints = symmetric_breaks(A, T);
  const auto re = integrate_finite([&](double t) { return std::cos(nu * t) * F(t); }, -T, T, opts);
  Direct d;
  d.re = re.value;
  d.error = re.error + tail + 2.0 * T * inner_err;
  if (nu > 0.0) {
    const auto im = integrate_finite([&](double t) { return -std::sin(nu * t) * F(t); }, -T, T, opts);
    d.im = im.value;
  }
  return d;
}

}  // namespace

double normalization_constant(const HTypeGroup& group, double tol) {
  const int Q = group.Q();
  BiradialProfile unit(
      group, [Q](double r, double rho) { return kernel_value(1.0, 1.0, Q, r, rho); },
      Decay::kernel_power(1.0, 1.0, Q), "poisson(C=1)");
  const auto mass = radial_integral(unit, {}, tol, /*absolute_value=*/true);
  return 1.0 / mass.value;
}

double PoissonKernel::checked_constant(const HTypeGroup& group, double a, double tol) {
  if (!(a > 0.0)) throw DomainError(fmt::format("height must be positive (got {})", a));
  require_htype(group);
  return normalization_constant(group, tol);
}

PoissonKernel::PoissonKernel(const HTypeGroup& group, double a, double tol)
    : PoissonKernel(group, a, checked_constant(group, a, tol), 0) {}

PoissonKernel::PoissonKernel(const HTypeGroup& group, double a, double c, int)
    : profile_(make_profile(group, a, c)), a_(a), c_(c) {}

BiradialProfile PoissonKernel::make_profile(const HTypeGroup& group, double a, double c) {
  const int Q = group.Q();
  return BiradialProfile(
      group, [c, a, Q](double r, double rho) { return kernel_value(c, a, Q, r, rho); },
      Decay::kernel_power(c * std::pow(a, Q), a, Q), fmt::format("poisson(a={:g})", a));
}

PoissonKernel PoissonKernel::at_height(double a) const {
  if (!(a > 0.0)) throw DomainError(fmt::format("height must be positive (got {})", a));
  return PoissonKernel(group(), a, c_, 0);
}

double PoissonKernel::radial(double r, double rho) const { return kernel_value(c_, a_, group().Q(), r, rho); }

double PoissonKernel::operator()(const GroupElement& n) const {
  group().check(n);
  return radial(n.X.norm(), n.Z.norm());
}

double poisson_eval(const PoissonKernel& kernel, const GroupElement& n) { return kernel(n); }

double reduced_exponent(const HTypeGroup& group, ReducedExponent which) {
  if (which == ReducedExponent::printed) return 0.5 * (group.m() + group.k() + 1);
  return group.m() + 0.5 * (group.k() + 1);
}

ZFourier partial_fourier_z(const PoissonKernel& kernel, const Vector& X, double nu, const Vector& w, double tol,
                           ReducedExponent exponent) {
  const HTypeGroup& g = kernel.group();
  if (X.size() != g.dim_v() || w.size() != g.k()) throw DimensionError("partial_fourier_z: X or w has wrong length");
  if (std::abs(w.norm() - 1.0) > 1e-12) throw DomainError("partial_fourier_z: w must be a unit vector");
  if (!(nu >= 0.0)) throw DomainError("partial_fourier_z: nu must be nonnegative");

  const double e = reduced_exponent(g, exponent);
  const double aQ = std::pow(kernel.a(), g.Q());
  const Direct pin = direct_fourier(kernel, Vector::Zero(g.dim_v()), 0.0, w, tol);
  const double c_prime = pin.re / (aQ * reduced_integral(kernel.a(), 0.0, e));

  const Direct d = direct_fourier(kernel, X, nu, w, tol);
  ZFourier out;
  out.direct = d.re;
  out.imag = d.im;
  out.direct_error = d.error;
  out.c_prime = c_prime;
  out.value = c_prime * aQ * reduced_integral(kernel.a() + 0.25 * X.squaredNorm(), nu, e);
  if (std::abs(out.value - out.direct) > tol + 2.0 * (d.error + pin.error)) {
    throw ConsistencyError(fmt::format("reduced central Fourier transform (exponent {}) disagrees with direct "
                                       "quadrature at |X|={:g}, nu={:g}: {:.12g} vs {:.12g}",
                                       e, X.norm(), nu, out.value, out.direct),
                           out.value, out.direct);
  }
  return out;
}

QuadResult z_fourier_beta(const PoissonKernel& kernel, double x_norm, double nu, double tol, double pin_nu) {
  if (!(nu >= 0.0) || !(pin_nu > 0.0) || !(x_norm >= 0.0)) throw DomainError("z_fourier_beta: bad arguments");
  const HTypeGroup& g = kernel.group();
  const double p = reduced_exponent(g, ReducedExponent::corrected);
  auto beta_integral = [&](double A, double v, double t) {
    return integrate_halfline(
        [=](double b) { return std::exp(-(2.0 * b + v) * A) * std::pow((b + v) * b, p - 1.0); }, t, 2.0 * A,
        20000);
  };
  Vector w = Vector::Unit(g.k(), 0);
  const auto pin = partial_fourier_z(kernel, Vector::Zero(g.dim_v()), pin_nu, w, tol);
  const auto pin_beta = beta_integral(kernel.a(), pin_nu, tol);
  const double K = pin.value / pin_beta.value;
  const double A = kernel.a() + 0.25 * x_norm * x_norm;
  const auto r = beta_integral(A, nu, tol / std::max(1.0, std::abs(K)));
  return {K * r.value, std::abs(K) * r.error + pin.direct_error, r.evaluations + pin_beta.evaluations};
}

LaplaceCheck laplace_identity(double A, double rho, int r, double tol) {
  if (!(A > 0.0) || r < 0) throw DomainError("laplace_identity: need A > 0 and r >= 0");
  const double inv_fact = 1.0 / std::tgamma(r + 1.0);
  auto re = integrate_halfline(
      [=](double al) { return inv_fact * std::exp(-al * A) * std::pow(al, r) * std::cos(al * rho); }, tol, A, 20000);
  auto im = integrate_halfline(
      [=](double al) { return -inv_fact * std::exp(-al * A) * std::pow(al, r) * std::sin(al * rho); }, tol, A, 20000);
  LaplaceCheck c;
  c.lhs = std::pow(std::complex<double>(A, rho), -(r + 1));
  c.rhs = {re.value, im.value};
  c.error = re.error + im.error;
  return c;
}

namespace {

// int_0^inf e^{-2 beta a} beta^{2s} d beta, the Bessel-branch normalizer.
double bessel_normalizer(const PoissonKernel& kernel, double tol) {
  const double a = kernel.a();
  const double two_s = 2.0 * kernel.group().s();
  const double scale = std::exp(std::lgamma(two_s + 1.0) - (two_s + 1.0) * std::log(2.0 * a));
  return integrate_halfline([=](double b) { return std::exp(-2.0 * b * a) * std::pow(b, two_s); }, tol * scale,
                            2.0 * a, 20000)
      .value;
}

double laguerre_corrected(const PoissonKernel& kernel, double nu, int l, double norm, double tol) {
  const HTypeGroup& g = kernel.group();
  const double a = kernel.a();
  const int m = g.m();
  const double sigma = g.s() + 0.5 * m;
  const double lo = sigma + l;
  const double hi = sigma - l - m;
  const auto r = integrate_halfline(
      [=](double b) { return std::exp(-2.0 * b * a) * std::pow(b, lo) * std::pow(b + nu, hi); }, tol * norm, 2.0 * a,
      20000);
  return std::exp(-nu * a) * r.value / norm;
}

// nu^{-m} int_0^inf e^{-(2 beta + nu) a} (beta + nu)^s beta^s d beta
double laguerre_paper_shape(const PoissonKernel& kernel, double nu, double norm, double tol) {
  const HTypeGroup& g = kernel.group();
  const double a = kernel.a();
  const double s = g.s();
  const auto r = integrate_halfline(
      [=](double b) { return std::exp(-2.0 * b * a) * std::pow((b + nu) * b, s); }, tol * norm, 2.0 * a, 20000);
  return std::exp(-nu * a) * r.value / std::pow(nu, g.m());
}

}  // namespace

double poisson_hat_bessel(const PoissonKernel& kernel, double mu, double tol) {
  if (!(mu >= 0.0)) throw DomainError(fmt::format("Bessel branch needs mu >= 0 (got {})", mu));
  const double norm = bessel_normalizer(kernel, tol);
  if (mu == 0.0) return 1.0;
  const double a = kernel.a();
  const double two_s = 2.0 * kernel.group().s();
  const double half_mu2 = 0.5 * mu * mu;
  const auto r = integrate_halfline(
      [=](double b) { return b > 0.0 ? std::exp(-half_mu2 / b - 2.0 * b * a) * std::pow(b, two_s) : 0.0; },
      tol * norm, 2.0 * a, 20000);
  return r.value / norm;
}

double poisson_hat_laguerre(const PoissonKernel& kernel, double nu, int l, LaguerreVariant variant, double tol) {
  if (!(nu > 0.0)) throw DomainError(fmt::format("Laguerre branch needs nu > 0 (got {})", nu));
  if (l < 0) throw DomainError(fmt::format("Laguerre branch needs l >= 0 (got {})", l));
  const double norm = bessel_normalizer(kernel, tol);
  if (variant == LaguerreVariant::corrected) return laguerre_corrected(kernel, nu, l, norm, tol);
  constexpr double pin_nu = 0.5;
  const double K = laguerre_corrected(kernel, pin_nu, 0, norm, tol) / laguerre_paper_shape(kernel, pin_nu, norm, tol);
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  return sign * K * laguerre_paper_shape(kernel, nu, norm, tol);
}

double poisson_hat(const PoissonKernel& kernel, const SpectrumPoint& p, double tol) {
  if (p.is_laguerre()) return poisson_hat_laguerre(kernel, p.parameter(), p.l(), LaguerreVariant::corrected, tol);
  return poisson_hat_bessel(kernel, p.parameter(), tol);
}

QuadResult poisson_hat_oracle(const PoissonKernel& kernel, const SpectrumPoint& p, double tol) {
  return gelfand_transform(kernel.profile(), p, tol);
}

std::vector<SpectrumPoint> spectrum_grid(const std::vector<double>& nus, int l_max, const std::vector<double>& mus) {
  std::vector<SpectrumPoint> grid;
  for (double nu : nus)
    for (int l = 0; l <= l_max; ++l) grid.push_back(SpectrumPoint::laguerre(nu, l));
  for (double mu : mus) grid.push_back(SpectrumPoint::bessel(mu));
  return grid;
}

NonvanishingReport nonvanishing_report(const PoissonKernel& kernel, const std::vector<SpectrumPoint>& grid,
                                       const NonvanishingOptions& opts) {
  NonvanishingReport rep;
  rep.min_abs = std::numeric_limits<double>::infinity();
  const int every = std::max(1, opts.check_every);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SpectrumSample s{grid[i]};
    s.closed_form = poisson_hat(kernel, grid[i]);
    s.flagged = std::abs(s.closed_form) < opts.flag_below;
    if (s.flagged) rep.nonvanishing = false;
    if (std::abs(s.closed_form) < rep.min_abs) {
      rep.min_abs = std::abs(s.closed_form);
      rep.min_at = grid[i].label();
    }
    if (i % every == 0) {
      s.checked = true;
      const double thr = grid[i].is_laguerre() ? opts.laguerre_rel_tol : opts.bessel_rel_tol;
      try {
        const auto o = poisson_hat_oracle(kernel, grid[i], opts.oracle_tol);
        s.oracle = o.value;
        s.oracle_error = o.error;
        s.rel_err = std::abs(s.closed_form - o.value) / std::abs(o.value);
      } catch (const QuadratureError& e) {
        s.oracle = e.partial_value();
        s.oracle_error = e.error_estimate();
        s.rel_err = std::numeric_limits<double>::infinity();
      }
      rep.max_rel_err = std::max(rep.max_rel_err, s.rel_err);
      if (!(s.rel_err <= thr)) rep.verified = false;
    }
    rep.samples.push_back(s);
  }
  if (grid.empty()) rep.min_abs = 0.0;
  return rep;
}

ErratumReport erratum_report(const PoissonKernel& kernel, const std::vector<double>& nus, int l_max,
                             double oracle_tol) {
  ErratumReport rep;
  rep.a = kernel.a();
  rep.corrected_min_abs = std::numeric_limits<double>::infinity();
  for (double nu : nus) {
    std::string pattern;
    for (int l = 0; l <= l_max; ++l) {
      ErratumRow row{nu, l};
      row.paper = poisson_hat_laguerre(kernel, nu, l, LaguerreVariant::paper);
      row.corrected = poisson_hat_laguerre(kernel, nu, l, LaguerreVariant::corrected);
      row.oracle = poisson_hat_oracle(kernel, SpectrumPoint::laguerre(nu, l), oracle_tol).value;
      pattern += (std::signbit(row.paper) == std::signbit(row.oracle)) ? '+' : '-';
      rep.paper_max_rel_err = std::max(rep.paper_max_rel_err, std::abs(row.paper - row.oracle) / std::abs(row.oracle));
      rep.corrected_max_rel_err =
          std::max(rep.corrected_max_rel_err, std::abs(row.corrected - row.oracle) / std::abs(row.oracle));
      rep.corrected_min_abs = std::min(rep.corrected_min_abs, std::abs(row.corrected));
      if (l == 0)
        rep.l0_max_rel_diff = std::max(rep.l0_max_rel_diff, std::abs(row.paper - row.corrected) / std::abs(row.corrected));
      rep.rows.push_back(row);
    }
    rep.sign_pattern.push_back(pattern);
  }
  return rep;
}

}  // namespace htype
