#include "htype/special.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "htype/error.hpp"
#include "htype/quadrature.hpp"

namespace htype {

double log_binomial(double a, double b) {
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

double binomial(double a, double b) { return std::exp(log_binomial(a, b)); }

double sphere_area(int n) {
  if (n < 1) throw DomainError("sphere_area needs n >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

namespace {

void check_laguerre_args(int l, double alpha) {
  if (l < 0) throw DomainError(fmt::format("Laguerre degree must be >= 0 (got {})", l));
  if (!(alpha > -1.0)) throw DomainError(fmt::format("Laguerre order must exceed -1 (got {})", alpha));
}

}  // namespace

namespace {

// c_j = binom(l + alpha, l - j) / j!, by the exact ratio
// c_j / c_{j+1} = (j + 1)(alpha + j + 1) / (l - j) from c_l = 1/l!.
std::vector<long double> laguerre_coefficients(int l, double alpha) {
  std::vector<long double> c(l + 1);
  c[l] = 1.0L;
  for (int j = 1; j <= l; ++j) c[l] /= j;
  for (int j = l - 1; j >= 0; --j) c[j] = c[j + 1] * (j + 1) * (static_cast<long double>(alpha) + j + 1) / (l - j);
  return c;
}

}  // namespace

double laguerre_sum(int l, double alpha, double x) {
  check_laguerre_args(l, alpha);
  // Extended precision absorbs the cancellation between terms for large x.
  const auto c = laguerre_coefficients(l, alpha);
  long double acc = 0.0L;
  for (int j = l; j >= 0; --j) acc = acc * -static_cast<long double>(x) + c[j];
  return static_cast<double>(acc);
}

double laguerre_recurrence(int l, double alpha, double x) {
  check_laguerre_args(l, alpha);
  double prev = 1.0;
  if (l == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int n = 1; n < l; ++n) {
    const double next = ((2.0 * n + 1.0 + alpha - x) * cur - (n + alpha) * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre(int l, double alpha, double x) {
  return l <= 20 ? laguerre_sum(l, alpha, x) : laguerre_recurrence(l, alpha, x);
}

LaguerrePoly::LaguerrePoly(int l, double alpha) {
  check_laguerre_args(l, alpha);
  const auto c = laguerre_coefficients(l, alpha);
  coeffs_.resize(l + 1);
  for (int j = 0; j <= l; ++j) coeffs_[j] = static_cast<double>((j % 2) ? -c[j] : c[j]);
}

double LaguerrePoly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double bessel_gen(double z, double x) {
  if (z < -0.5) throw DomainError(fmt::format("generalized Bessel order must be >= -1/2 (got {})", z));
  if (z == -0.5) return std::cos(x);
  if (x == 0.0) return 1.0;
  const double pref =
      std::exp(std::lgamma(z + 1.0) - std::lgamma(z + 0.5) - 0.5 * std::log(std::numbers::pi));
  // (1 - s^2)^{(2z-1)/2} ds = cos^{2z}(theta) dtheta; the odd part of e^{ixs} cancels.
  auto integrand = [x, z](double theta) {
    const double c = std::cos(theta);
    return std::cos(x * std::sin(theta)) * (z == 0.0 ? 1.0 : std::pow(c, 2.0 * z));
  };
  QuadOptions opts;
  opts.abs_tol = 1e-15 / pref;
  opts.initial_panels = 1 + static_cast<int>(std::abs(x) / 20.0);
  opts.max_intervals = 20000;
  const auto r = integrate_finite(integrand, 0.0, 0.5 * std::numbers::pi, opts);
  return 2.0 * pref * r.value;
}

}  // namespace htype
