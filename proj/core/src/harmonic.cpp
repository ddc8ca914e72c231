#include "htype/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "htype/error.hpp"

namespace htype {

namespace {

constexpr double two_pi = 2.0 * M_PI;

std::vector<double> inside(std::vector<double> pts, double lo, double hi) {
  std::vector<double> out;
  for (double p : pts)
    if (p > lo && p < hi) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

double wrap_angle(double t) {
  t = std::fmod(t, two_pi);
  return t < 0.0 ? t + two_pi : t;
}

// int_0^{r_hi} int_0^{2 pi} int_{z_lo(r)}^{z_hi(r)} g(r, theta, z) dz dtheta dr,
// each level globally adaptive; errors of inner levels enter through their
// worst case times the outer length.
struct Cylinder {
  std::function<double(double, double, double)> g;
  double r_hi = 0.0;
  std::vector<double> r_breaks;
  std::function<std::vector<double>(double r)> theta_breaks;
  std::function<std::pair<double, double>(double r)> z_range;
  std::function<std::vector<double>(double r, double theta, double lo, double hi)> z_breaks;

  QuadResult integrate(double tol) const {
    double mid_worst = 0.0;
    std::size_t evals = 0;
    QuadOptions outer;
    outer.abs_tol = tol / 3.0;
    outer.max_intervals = 20000;
    outer.breakpoints = inside(r_breaks, 0.0, r_hi);
    const double tol_mid = tol / (3.0 * r_hi);
    const double tol_in = tol_mid / (3.0 * two_pi);
    auto over_theta = [&](double r) {
      const auto [zlo, zhi] = z_range(r);
      if (!(zhi > zlo)) return 0.0;
      double in_worst = 0.0;
      QuadOptions mid;
      mid.abs_tol = tol_mid / 3.0;
      mid.max_intervals = 20000;
      mid.breakpoints = inside(theta_breaks(r), 0.0, two_pi);
      auto over_z = [&](double th) {
        QuadOptions in;
        in.abs_tol = tol_in;
        in.max_intervals = 20000;
        in.breakpoints = inside(z_breaks(r, th, zlo, zhi), zlo, zhi);
        const auto res = integrate_finite([&](double z) { return g(r, th, z); }, zlo, zhi, in);
        in_worst = std::max(in_worst, res.error);
        evals += res.evaluations;
        return res.value;
      };
      const auto res = integrate_finite(over_z, 0.0, two_pi, mid);
      mid_worst = std::max(mid_worst, res.error + two_pi * in_worst);
      return res.value;
    };
    const auto res = integrate_finite(over_theta, 0.0, r_hi, outer);
    return {res.value, res.error + r_hi * mid_worst, evals};
  }
};

void require_h1(const HTypeGroup& g) {
  if (g.m() != 1 || g.k() != 1)
    throw DimensionError(
        fmt::format("extension of general boundary data is implemented on H_1 only (got m={}, k={})", g.m(), g.k()));
}

// [X', X] on H_1 from the stored J-map: <J X', X>.
struct Bracket2 {
  double j00, j01, j10, j11;
  explicit Bracket2(const HTypeGroup& g) {
    const Matrix& J = g.j_maps()[0];
    j00 = J(0, 0);
    j01 = J(0, 1);
    j10 = J(1, 0);
    j11 = J(1, 1);
  }
  double operator()(double x1p, double x2p, double x1, double x2) const {
    return (j00 * x1p + j01 * x2p) * x1 + (j10 * x1p + j11 * x2p) * x2;
  }
};

QuadResult extend_support(const BoundaryDatum& datum, const PoissonKernel& Pa, const GroupElement& n, double tol) {
  const double alpha = *datum.alpha;
  const double Rt = datum.tail_radius;
  if (Rt <= 0.0) return {alpha, datum.tail_bound, 0};
  const Bracket2 br(Pa.group());
  const double a = Pa.a();
  const double x1 = n.X(0), x2 = n.X(1), Z = n.Z(0);
  const double xn = std::hypot(x1, x2);
  const double ang = wrap_angle(std::atan2(x2, x1));
  GroupElement np{Vector::Zero(2), Vector::Zero(1)};

  Cylinder c;
  c.r_hi = 2.0 * Rt;
  c.r_breaks = {xn, Rt};
  c.g = [&](double r, double th, double z) {
    np.X(0) = r * std::cos(th);
    np.X(1) = r * std::sin(th);
    np.Z(0) = z;
    const double dev = datum.phi(np) - alpha;
    if (dev == 0.0) return 0.0;
    const double d1 = x1 - np.X(0), d2 = x2 - np.X(1);
    const double dz = Z - z - 0.5 * br(np.X(0), np.X(1), x1, x2);
    return r * dev * Pa.radial(std::hypot(d1, d2), std::abs(dz));
  };
  c.theta_breaks = [&](double) { return std::vector<double>{ang}; };
  c.z_range = [&](double r) {
    const double h = std::sqrt(std::max(0.0, std::pow(Rt, 4) - std::pow(r, 4) / 16.0));
    return std::pair<double, double>{-h, h};
  };
  c.z_breaks = [&](double r, double th, double, double) {
    const double p1 = r * std::cos(th), p2 = r * std::sin(th);
    const double peak = Z - 0.5 * br(p1, p2, x1, x2);
    const double w = a + 0.25 * ((x1 - p1) * (x1 - p1) + (x2 - p2) * (x2 - p2));
    return std::vector<double>{peak - w, peak, peak + w};
  };
  const auto res = c.integrate(tol);
  return {alpha + res.value, res.error + datum.tail_bound, res.evaluations};
}

// On H_1 (Q = 2) the substitution A = 1 + r^2/4 = v^{-1/2}, z = A tan(eta)
// turns P_1(m) dm into C cos^2(eta) dv dtheta deta on [0,1] x [0,2 pi) x
// (-pi/2, pi/2), so the recentred integral needs no truncation.
QuadResult extend_recentered(const BoundaryDatum& datum, const PoissonKernel& P1, double a, const GroupElement& n,
                             double tol) {
  const HTypeGroup& g = P1.group();
  const Bracket2 br(g);
  const double C = P1.c_norm();
  const double ra = std::sqrt(a);
  const double x1 = n.X(0), x2 = n.X(1), Z = n.Z(0);
  GroupElement q{Vector::Zero(2), Vector::Zero(1)};

  // Preimage of the origin, m* = delta_{1/a}(n), and the scale of phi's
  // features seen through m -> n delta_a(m)^{-1}.
  const double r_star = std::hypot(x1, x2) / ra;
  const double ang = wrap_angle(std::atan2(x2, x1));
  const double dr = 1.0 / ra;
  auto v_of = [](double r) { return std::pow(1.0 + 0.25 * r * r, -2.0); };

  Cylinder c;
  c.r_hi = 1.0;  // v
  c.r_breaks = {v_of(r_star), v_of(r_star + dr)};
  if (r_star > dr) c.r_breaks.push_back(v_of(r_star - dr));
  for (double v = 0.5; v > 1e-12; v *= 0.125) c.r_breaks.push_back(v);
  c.g = [&](double v, double th, double eta) {
    const double A = 1.0 / std::sqrt(v);
    const double r = 2.0 * std::sqrt(std::max(0.0, A - 1.0));
    const double z = A * std::tan(eta);
    const double m1 = r * std::cos(th), m2 = r * std::sin(th);
    q.X(0) = x1 - ra * m1;
    q.X(1) = x2 - ra * m2;
    q.Z(0) = Z - a * z - 0.5 * ra * br(x1, x2, m1, m2);
    const double ce = std::cos(eta);
    return C * ce * ce * datum.phi(q);
  };
  c.theta_breaks = [&](double v) {
    const double r = 2.0 * std::sqrt(std::max(0.0, 1.0 / std::sqrt(v) - 1.0));
    const double w = r > 0.0 ? std::min(M_PI / 2, dr / r) : M_PI / 2;
    return std::vector<double>{ang, wrap_angle(ang - w), wrap_angle(ang + w)};
  };
  c.z_range = [](double) { return std::pair<double, double>{-M_PI / 2, M_PI / 2}; };
  c.z_breaks = [&](double v, double th, double, double) {
    // phi's centre along z: Z - a z - (1/2) sqrt(a) [X, X_m] = 0.
    const double A = 1.0 / std::sqrt(v);
    const double r = 2.0 * std::sqrt(std::max(0.0, A - 1.0));
    const double zc = (Z - 0.5 * ra * br(x1, x2, r * std::cos(th), r * std::sin(th))) / a;
    const double dz = 1.0 / a;
    return std::vector<double>{std::atan(zc / A), std::atan((zc - dz) / A), std::atan((zc + dz) / A), 0.0};
  };
  return c.integrate(tol);
}

}  // namespace

BoundaryDatum BoundaryDatum::constant(double c) {
  BoundaryDatum d;
  d.phi = [c](const GroupElement&) { return c; };
  d.sup_bound = std::abs(c);
  d.alpha = c;
  d.tail_radius = 0.0;
  d.tail_bound = 0.0;
  d.name = fmt::format("constant({:g})", c);
  return d;
}

BoundaryDatum BoundaryDatum::bump_plus(const HTypeGroup& group, double alpha, double radius, double amplitude) {
  const BiradialProfile bump = bump_profile(group, radius);
  BoundaryDatum d;
  d.phi = [bump, alpha, amplitude](const GroupElement& n) { return alpha + amplitude * evaluate(bump, n); };
  d.sup_bound = std::max(std::abs(alpha), std::abs(alpha + amplitude));
  d.alpha = alpha;
  // gauge^4 = |X|^4/16 + |Z|^2 <= max(r^4/16, r^2) on |X|^2 + |Z|^2 <= r^2
  d.tail_radius = std::max(radius, std::sqrt(radius));
  d.tail_bound = 0.0;
  d.name = fmt::format("{:g}+{:g}*bump({:g})", alpha, amplitude, radius);
  return d;
}

BoundaryDatum BoundaryDatum::from_profile(const BiradialProfile& f, double sup_bound) {
  BoundaryDatum d;
  d.phi = [f](const GroupElement& n) { return evaluate(f, n); };
  d.biradial = f;
  d.sup_bound = sup_bound;
  d.name = f.name();
  return d;
}

DatumCheck check_datum(const HTypeGroup& group, const BoundaryDatum& datum, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  const bool has_tail = datum.alpha.has_value() && std::isfinite(datum.tail_radius);
  const double G = has_tail ? std::max(4.0 * datum.tail_radius, 1.0) : 10.0;
  DatumCheck out;
  for (int i = 0; i < samples; ++i) {
    Vector dx(group.dim_v()), dz(group.k());
    for (auto& v : dx) v = normal(rng);
    for (auto& v : dz) v = normal(rng);
    const double rho = G * unit(rng);
    const double psi = M_PI * (unit(rng) - 0.5);
    GroupElement n{2.0 * rho * std::sqrt(std::cos(psi)) * dx.normalized(), rho * rho * std::sin(psi) * dz.normalized()};
    const double v = datum.phi(n);
    out.sampled_sup = std::max(out.sampled_sup, std::abs(v));
    if (has_tail && HTypeGroup::gauge(n) > datum.tail_radius)
      out.sampled_tail = std::max(out.sampled_tail, std::abs(v - *datum.alpha));
  }
  out.passed = out.sampled_sup <= datum.sup_bound * (1.0 + 1e-12) + 1e-300 &&
               out.sampled_tail <= datum.tail_bound * (1.0 + 1e-12) + 1e-300;
  return out;
}

QuadResult extend(const BoundaryDatum& datum, const PoissonKernel& kernel, double a, const GroupElement& n, double tol,
                  ExtensionRoute route) {
  if (!(a > 0.0)) throw DomainError(fmt::format("height must be positive (got {})", a));
  require_h1(kernel.group());
  kernel.group().check(n);
  if (route == ExtensionRoute::support) {
    if (!datum.alpha || !std::isfinite(datum.tail_radius))
      throw DomainError("support route needs a declared limit and a finite tail radius");
    return extend_support(datum, kernel.at_height(a), n, tol);
  }
  return extend_recentered(datum, kernel.at_height(1.0), a, n, tol);
}

Field extension_field(BoundaryDatum datum, PoissonKernel kernel, double tol, ExtensionRoute route) {
  return [datum = std::move(datum), kernel = std::move(kernel), tol, route](const DomainPoint& p) {
    return extend(datum, kernel, p.a, p.element, tol, route);
  };
}

Field exact_field(std::function<double(const DomainPoint&)> u) {
  return [u = std::move(u)](const DomainPoint& p) { return QuadResult{u(p), 0.0, 1}; };
}

LBResidual lb_residual(const HTypeGroup& group, const Field& u, const DomainPoint& p, double h) {
  if (!(h > 0.0)) throw DomainError("step must be positive");
  if (!(p.a > 0.0)) throw DomainError("height must be positive");
  group.check(p.element);
  const int dv = group.dim_v();
  const int k = group.k();
  const double h2 = h * h;

  const QuadResult centre = u(p);
  double value = 0.0;
  double noise = 0.0;
  auto step = [&](const DomainPoint& e) { return u(group.mul(p, e)); };

  const int directions = dv + k;
  for (int i = 0; i < directions; ++i) {
    DomainPoint plus{group.identity(), 1.0};
    DomainPoint minus{group.identity(), 1.0};
    if (i < dv) {
      plus.element.X(i) = h;
      minus.element.X(i) = -h;
    } else {
      plus.element.Z(i - dv) = h;
      minus.element.Z(i - dv) = -h;
    }
    const QuadResult up = step(plus);
    const QuadResult down = step(minus);
    value += (up.value - 2.0 * centre.value + down.value) / h2;
    noise += (up.error + 2.0 * centre.error + down.error) / h2;
  }
  const QuadResult up = step({group.identity(), std::exp(h)});
  const QuadResult down = step({group.identity(), std::exp(-h)});
  const double Q = group.Q();
  value += (up.value - 2.0 * centre.value + down.value) / h2 - Q * (up.value - down.value) / (2.0 * h);
  noise += (up.error + 2.0 * centre.error + down.error) / h2 + Q * (up.error + down.error) / (2.0 * h);

  return {value, noise, noise < 0.1 * std::abs(value)};
}

std::vector<RichardsonRow> richardson_table(const HTypeGroup& group, const Field& u, const DomainPoint& p,
                                            const std::vector<double>& steps) {
  std::vector<RichardsonRow> rows;
  for (double h : steps) {
    const LBResidual r = lb_residual(group, u, p, h);
    RichardsonRow row{h, r.value, r.noise};
    row.resolvable = r.resolvable;
    if (!rows.empty()) row.ratio = rows.back().residual / r.value;
    rows.push_back(row);
  }
  return rows;
}

std::vector<GroupElement> gauge_shell_samples(const HTypeGroup& group, double rho) {
  std::vector<GroupElement> out;
  const double psis[] = {-M_PI / 2, -M_PI / 4, 0.0, M_PI / 4, M_PI / 2};
  const double thetas[] = {0.0, M_PI};
  for (double psi : psis) {
    const double c = std::max(0.0, std::cos(psi));
    const double xr = 2.0 * rho * std::sqrt(c);
    for (double th : thetas) {
      GroupElement n = group.identity();
      n.X(0) = xr * std::cos(th);
      n.X(1) = xr * std::sin(th);
      n.Z(0) = rho * rho * std::sin(psi);
      out.push_back(n);
      if (xr == 0.0) break;
    }
  }
  return out;
}

TangentialTable tangential_demo(const BoundaryDatum& datum, const PoissonKernel& kernel,
                                const std::vector<double>& heights, const std::vector<double>& radii, double tol,
                                ExtensionRoute route) {
  if (!datum.alpha) throw DomainError("tangential demo needs a declared limit alpha");
  TangentialTable t;
  t.heights = heights;
  t.radii = radii;
  t.alpha = *datum.alpha;
  double max_u = 0.0;
  for (double a : heights) {
    std::vector<double> dev_row, err_row;
    for (double R : radii) {
      double dev = 0.0, err = 0.0;
      for (double rho : {R, std::sqrt(2.0) * R, 2.0 * R}) {
        for (const auto& n : gauge_shell_samples(kernel.group(), rho)) {
          const auto u = extend(datum, kernel, a, n, tol, route);
          dev = std::max(dev, std::abs(u.value - t.alpha));
          err = std::max(err, u.error);
          max_u = std::max(max_u, std::abs(u.value));
        }
      }
      dev_row.push_back(dev);
      err_row.push_back(err);
    }
    bool dec = true;
    for (std::size_t j = 1; j < dev_row.size(); ++j) dec = dec && dev_row[j] < dev_row[j - 1];
    t.decreasing.push_back(dec);
    t.deviation.push_back(std::move(dev_row));
    t.error.push_back(std::move(err_row));
  }
  t.contraction_excess = std::max(0.0, max_u - datum.sup_bound);
  t.final_agree = true;
  if (!radii.empty()) {
    for (std::size_t i = 0; i < heights.size(); ++i)
      for (std::size_t j = i + 1; j < heights.size(); ++j) {
        const double di = t.deviation[i].back(), dj = t.deviation[j].back();
        const double ei = t.error[i].back(), ej = t.error[j].back();
        if (std::abs(di - dj) > 2.0 * (ei + ej)) t.final_agree = false;
      }
  }
  return t;
}

HalfplaneDatum HalfplaneDatum::indicator(double lo, double hi) {
  HalfplaneDatum d;
  d.phi = [lo, hi](double t) { return (t >= lo && t <= hi) ? 1.0 : 0.0; };
  d.alpha = 0.0;
  d.has_support = true;
  d.support_lo = lo;
  d.support_hi = hi;
  return d;
}

QuadResult halfplane_extend(const HalfplaneDatum& datum, double x, double y, double tol) {
  if (!(y > 0.0)) throw DomainError(fmt::format("half-plane height must be positive (got {})", y));
  if (datum.has_support) {
    QuadOptions o;
    o.abs_tol = tol;
    o.max_intervals = 20000;
    o.breakpoints = inside({x - y, x, x + y}, datum.support_lo, datum.support_hi);
    const double alpha = datum.alpha;
    const auto r = integrate_finite(
        [&](double t) {
          const double d = x - t;
          return (datum.phi(t) - alpha) * (y / M_PI) / (d * d + y * y);
        },
        datum.support_lo, datum.support_hi, o);
    return {alpha + r.value, r.error, r.evaluations};
  }
  // t = x + y tan(theta) turns the kernel into the uniform density on (-pi/2, pi/2).
  QuadOptions o;
  o.abs_tol = tol;
  o.max_intervals = 20000;
  const auto r = integrate_finite([&](double th) { return datum.phi(x + y * std::tan(th)) / M_PI; }, -M_PI / 2,
                                  M_PI / 2, o);
  return r;
}

double halfplane_indicator_exact(double lo, double hi, double x, double y) {
  return (std::atan((hi - x) / y) - std::atan((lo - x) / y)) / M_PI;
}

HalfplaneTable halfplane_oracle(const HalfplaneDatum& datum, const std::vector<double>& ys,
                                const std::vector<double>& xs, double tol) {
  HalfplaneTable t;
  t.ys = ys;
  t.xs = xs;
  t.alpha = datum.alpha;
  for (double y : ys) {
    std::vector<double> dev, err;
    for (double x : xs) {
      const auto u = halfplane_extend(datum, x, y, tol);
      dev.push_back(std::abs(u.value - datum.alpha));
      err.push_back(u.error);
    }
    t.deviation.push_back(std::move(dev));
    t.error.push_back(std::move(err));
  }
  return t;
}

}  // namespace htype
