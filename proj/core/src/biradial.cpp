#include "htype/biradial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "htype/error.hpp"
#include "htype/special.hpp"

namespace htype {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double beta_fn(double x, double y) { return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y)); }

// int_R^inf exp(-c t^2) t^{d-1} dt
double gaussian_tail(double c, double d, double R) {
  return boost::math::tgamma(0.5 * d, c * R * R) / (2.0 * std::pow(c, 0.5 * d));
}

// Initial partition points 2^j below R; they anchor the adaptive rule at
// every scale between 1/64 and R.
std::vector<double> geometric_breaks(double R) {
  std::vector<double> out;
  for (double b = 1.0 / 64.0; b < R; b *= 2.0) out.push_back(b);
  return out;
}

}  // namespace

Decay Decay::compact(double amplitude, double rx, double rz) {
  if (!(rx > 0.0) || !(rz > 0.0)) throw DomainError("compact decay needs positive radii");
  return Decay(Kind::compact, amplitude, rx, rz, 0.0);
}

Decay Decay::gaussian(double amplitude, double cx, double cz) {
  if (!(cx > 0.0) || !(cz > 0.0)) throw DomainError("gaussian decay needs positive rates");
  return Decay(Kind::gaussian, amplitude, cx, cz, 0.0);
}

Decay Decay::kernel_power(double amplitude, double a0, double q) {
  if (!(a0 > 0.0) || !(q > 0.0)) throw DomainError("kernel_power decay needs a0 > 0 and q > 0");
  return Decay(Kind::kernel_power, amplitude, a0, q, 0.0);
}

double Decay::bound(double r, double rho) const {
  switch (kind_) {
    case Kind::compact:
      return (r <= p1_ && rho <= p2_) ? amplitude_ : 0.0;
    case Kind::gaussian:
      return amplitude_ * std::exp(-p1_ * r * r - p2_ * rho * rho);
    case Kind::kernel_power: {
      const double A = p1_ + 0.25 * r * r;
      return amplitude_ * std::pow(A * A + rho * rho, -p2_);
    }
  }
  return kInf;
}

double Decay::tail_x_at(int m, double rho, double R) const {
  switch (kind_) {
    case Kind::compact:
      return R >= p1_ ? 0.0 : kInf;
    case Kind::gaussian:
      return amplitude_ * std::exp(-p2_ * rho * rho) * gaussian_tail(p1_, 2.0 * m, R);
    case Kind::kernel_power: {
      const double q = p2_;
      if (!(4.0 * q > 2.0 * m)) return kInf;
      // (A_r^2 + rho^2)^{-q} <= A_r^{-2q} <= (r^2/4)^{-2q}
      return amplitude_ * std::pow(4.0, 2.0 * q) * std::pow(R, 2.0 * m - 4.0 * q) / (4.0 * q - 2.0 * m);
    }
  }
  return kInf;
}

double Decay::tail_z_at(int k, double r, double R) const {
  switch (kind_) {
    case Kind::compact:
      return R >= p2_ ? 0.0 : kInf;
    case Kind::gaussian:
      return amplitude_ * std::exp(-p1_ * r * r) * gaussian_tail(p2_, k, R);
    case Kind::kernel_power: {
      const double q = p2_;
      if (!(2.0 * q > k)) return kInf;
      return amplitude_ * std::pow(R, k - 2.0 * q) / (2.0 * q - k);
    }
  }
  return kInf;
}

double Decay::tail_x_marginal(int m, int k, double R) const {
  const double c = radial_measure_constant(m, k);
  switch (kind_) {
    case Kind::compact:
      return R >= p1_ ? 0.0 : kInf;
    case Kind::gaussian:
      return c * amplitude_ * gaussian_tail(p1_, 2.0 * m, R) * gaussian_tail(p2_, k, 0.0);
    case Kind::kernel_power: {
      const double q = p2_;
      const double expo = 4.0 * q - 2.0 * k - 2.0 * m;
      if (!(expo > 0.0) || !(2.0 * q > k)) return kInf;
      const double Bk = 0.5 * beta_fn(0.5 * k, q - 0.5 * k);
      return c * amplitude_ * Bk * std::pow(4.0, 2.0 * q - k) * std::pow(R, -expo) / expo;
    }
  }
  return kInf;
}

double Decay::tail_z_marginal(int m, int k, double R) const {
  const double c = radial_measure_constant(m, k);
  switch (kind_) {
    case Kind::compact:
      return R >= p2_ ? 0.0 : kInf;
    case Kind::gaussian:
      return c * amplitude_ * gaussian_tail(p1_, 2.0 * m, 0.0) * gaussian_tail(p2_, k, R);
    case Kind::kernel_power: {
      const double q = p2_;
      const double expo = 2.0 * q - k - m;
      if (!(expo > 0.0) || !(2.0 * q > m)) return kInf;
      const double Bm = beta_fn(0.5 * m, q - 0.5 * m);
      return c * amplitude_ * std::pow(4.0, m - 1.0) * Bm * std::pow(R, -expo) / expo;
    }
  }
  return kInf;
}

Decay Decay::dilated(double a, int Q) const {
  const double aQ = std::pow(a, Q);
  switch (kind_) {
    case Kind::compact:
      return compact(amplitude_ * aQ, p1_ / std::sqrt(a), p2_ / a);
    case Kind::gaussian:
      return gaussian(amplitude_ * aQ, p1_ * a, p2_ * a * a);
    case Kind::kernel_power:
      return kernel_power(amplitude_ * std::pow(a, Q - 2.0 * p2_), p1_ / a, p2_);
  }
  return *this;
}

double truncation_radius(const std::function<double(double)>& tail, double target) {
  double hi = 1.0;
  if (tail(hi) <= target) {
    double lo = hi;
    while (lo > 1e-8 && tail(0.5 * lo) <= target) lo *= 0.5;
    if (lo <= 1e-8) return lo;
    hi = lo;
    lo *= 0.5;
    for (int i = 0; i < 8; ++i) {
      const double mid = std::sqrt(lo * hi);
      (tail(mid) <= target ? hi : lo) = mid;
    }
    return hi;
  }
  double lo = hi;
  while (tail(hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw TruncationError(fmt::format("no truncation radius reaches tail {:.3e}", target));
  }
  for (int i = 0; i < 8; ++i) {
    const double mid = std::sqrt(lo * hi);
    (tail(mid) <= target ? hi : lo) = mid;
  }
  return hi;
}

double radial_measure_constant(int m, int k) {
  const double sv = sphere_area(2 * m);
  return k == 1 ? 2.0 * sv : sv * sphere_area(k);
}

BiradialProfile::BiradialProfile(HTypeGroup group, Profile f0, Decay decay, std::string name)
    : group_(std::make_shared<const HTypeGroup>(std::move(group))),
      f0_(std::make_shared<const Profile>(std::move(f0))),
      decay_(decay),
      name_(std::move(name)) {}

void BiradialProfile::check_decay(double tol) const {
  const int m = group_->m();
  const int k = group_->k();
  const double Rx = truncation_radius([&](double R) { return decay_.tail_x_marginal(m, k, R); }, tol / 10);
  const double Rz = truncation_radius([&](double R) { return decay_.tail_z_marginal(m, k, R); }, tol / 10);
  constexpr int n = 24;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      // Quadratic spacing puts more samples near the origin; the grid runs
      // 25% past the box so compact supports are checked too.
      const double r = 1.25 * Rx * (i * i) / double(n * n);
      const double rho = 1.25 * Rz * (j * j) / double(n * n);
      const double v = std::abs((*f0_)(r, rho));
      const double b = decay_.bound(r, rho);
      if (v > b * (1.0 + 1e-9) + 1e-300)
        throw TruncationError(fmt::format("profile '{}' exceeds its declared decay at (r={:.4g}, rho={:.4g}): "
                                          "|f0|={:.6e} > bound {:.6e}",
                                          name_, r, rho, v, b));
    }
  }
}

double evaluate(const BiradialProfile& f, const GroupElement& n) {
  f.group().check(n);
  return f(n.X.norm(), n.Z.norm());
}

QuadResult radial_integral(const BiradialProfile& f, const RadialWeights& w, double tol, bool absolute_value) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const int m = f.group().m();
  const int k = f.group().k();
  const double c = radial_measure_constant(m, k);
  const Decay& d = f.decay();
  const int px = 2 * m - 1;
  const int pz = k - 1;
  auto value = [&](double r, double rho) {
    const double v = f(r, rho);
    return absolute_value ? std::abs(v) : v;
  };

  double outer_tail = 0.0;
  double outer_R = 0.0;
  double inner_worst = 0.0;  // max over outer nodes of |weight| * inner error
  std::size_t evaluations = 0;

  QuadOptions outer_opts;
  outer_opts.abs_tol = tol / 4;
  outer_opts.max_intervals = 20000;
  QuadResult outer;

  if (!w.outer_z) {
    outer_R = truncation_radius([&](double R) { return d.tail_x_marginal(m, k, R); }, tol / 10);
    outer_tail = d.tail_x_marginal(m, k, outer_R);
    outer_opts.breakpoints = geometric_breaks(outer_R);
    auto integrand = [&](double r) {
      const double weight = c * std::pow(r, px) * (w.x ? w.x(r) : 1.0);
      if (weight == 0.0) return 0.0;
      const double tol_in = std::min(tol, tol / (4.0 * std::abs(weight) * outer_R));
      const double Rz = truncation_radius([&](double R) { return d.tail_z_at(k, r, R); }, tol_in / 2);
      QuadOptions in;
      in.abs_tol = tol_in / 2;
      in.max_intervals = 20000;
      in.breakpoints = geometric_breaks(Rz);
      const auto inner = integrate_finite(
          [&](double rho) { return value(r, rho) * (w.z ? w.z(rho) : 1.0) * std::pow(rho, pz); }, 0.0, Rz, in);
      evaluations += inner.evaluations;
      inner_worst = std::max(inner_worst, std::abs(weight) * (inner.error + d.tail_z_at(k, r, Rz)));
      return weight * inner.value;
    };
    outer = integrate_finite(integrand, 0.0, outer_R, outer_opts);
  } else {
    auto tail = [&](double R) {
      return std::isfinite(w.x_l1) ? c * w.x_l1 * d.tail_z_at(k, 0.0, R) : d.tail_z_marginal(m, k, R);
    };
    outer_R = truncation_radius(tail, tol / 10);
    outer_tail = tail(outer_R);
    outer_opts.breakpoints = geometric_breaks(outer_R);
    auto integrand = [&](double rho) {
      const double weight = c * std::pow(rho, pz) * (w.z ? w.z(rho) : 1.0);
      if (weight == 0.0) return 0.0;
      const double tol_in = std::min(tol, tol / (4.0 * std::abs(weight) * outer_R));
      const double Rx = truncation_radius([&](double R) { return d.tail_x_at(m, rho, R); }, tol_in / 2);
      QuadOptions in;
      in.abs_tol = tol_in / 2;
      in.max_intervals = 20000;
      in.breakpoints = geometric_breaks(Rx);
      const auto inner = integrate_finite(
          [&](double r) { return value(r, rho) * (w.x ? w.x(r) : 1.0) * std::pow(r, px); }, 0.0, Rx, in);
      evaluations += inner.evaluations;
      inner_worst = std::max(inner_worst, std::abs(weight) * (inner.error + d.tail_x_at(m, rho, Rx)));
      return weight * inner.value;
    };
    outer = integrate_finite(integrand, 0.0, outer_R, outer_opts);
  }

  return {outer.value, outer.error + outer_tail + inner_worst * outer_R, evaluations + outer.evaluations};
}

QuadResult l1_norm(const BiradialProfile& f, double tol) {
  f.check_decay(tol);
  return radial_integral(f, {}, tol, /*absolute_value=*/true);
}

BiradialProfile dilate_fn(double a, const BiradialProfile& f) {
  if (!(a > 0.0)) throw DomainError(fmt::format("dilation parameter must be positive (got {})", a));
  const int Q = f.group().Q();
  const double aQ = std::pow(a, Q);
  const double root = std::sqrt(a);
  auto base = f.profile();
  return BiradialProfile(
      f.group(), [=](double r, double rho) { return aQ * base(root * r, a * rho); }, f.decay().dilated(a, Q),
      fmt::format("dilate({:g},{})", a, f.name()));
}

BiradialProfile gaussian_profile(const HTypeGroup& group, double width) {
  if (!(width > 0.0)) throw DomainError("gaussian width must be positive");
  const double c = 1.0 / (width * width);
  return BiradialProfile(
      group, [c](double r, double rho) { return std::exp(-c * (r * r + rho * rho)); }, Decay::gaussian(1.0, c, c),
      "gaussian");
}

BiradialProfile bump_profile(const HTypeGroup& group, double radius) {
  if (!(radius > 0.0)) throw DomainError("bump radius must be positive");
  const double inv = 1.0 / (radius * radius);
  return BiradialProfile(
      group,
      [inv](double r, double rho) {
        const double t = (r * r + rho * rho) * inv;
        return t < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t)) : 0.0;
      },
      Decay::compact(1.0, radius, radius), "bump");
}

namespace {

struct Table {
  std::vector<double> r;
  std::vector<double> rho;
  std::vector<double> v;

  double operator()(double x, double y) const {
    if (x < r.front() || x > r.back() || y < rho.front() || y > rho.back()) return 0.0;
    auto cell = [](const std::vector<double>& nodes, double t) {
      auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
      std::size_t i = it == nodes.begin() ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
      return std::min(i, nodes.size() - 2);
    };
    const std::size_t i = cell(r, x);
    const std::size_t j = cell(rho, y);
    const double tx = (x - r[i]) / (r[i + 1] - r[i]);
    const double ty = (y - rho[j]) / (rho[j + 1] - rho[j]);
    const std::size_t n = rho.size();
    const double v00 = v[i * n + j];
    const double v01 = v[i * n + j + 1];
    const double v10 = v[(i + 1) * n + j];
    const double v11 = v[(i + 1) * n + j + 1];
    return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11);
  }
};

}  // namespace

BiradialProfile tabulated_profile(const HTypeGroup& group, std::vector<double> r_nodes,
                                  std::vector<double> rho_nodes, std::vector<double> values, std::string name) {
  if (r_nodes.size() < 2 || rho_nodes.size() < 2) throw DimensionError("tabulated profile needs a 2x2 grid at least");
  if (values.size() != r_nodes.size() * rho_nodes.size())
    throw DimensionError(fmt::format("tabulated profile has {} values for a {}x{} grid", values.size(),
                                     r_nodes.size(), rho_nodes.size()));
  if (!std::is_sorted(r_nodes.begin(), r_nodes.end()) || !std::is_sorted(rho_nodes.begin(), rho_nodes.end()))
    throw std::invalid_argument("tabulated grid nodes must be ascending");
  if (r_nodes.front() < 0.0 || rho_nodes.front() < 0.0) throw DomainError("tabulated grid must be non-negative");
  double amp = 0.0;
  for (double v : values) amp = std::max(amp, std::abs(v));
  const Decay decay = Decay::compact(std::max(amp, 1e-300), r_nodes.back(), rho_nodes.back());
  auto table = std::make_shared<const Table>(Table{std::move(r_nodes), std::move(rho_nodes), std::move(values)});
  return BiradialProfile(
      group, [table](double r, double rho) { return (*table)(r, rho); }, decay, std::move(name));
}

BiradialProfile read_profile_csv(const HTypeGroup& group, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(fmt::format("cannot open profile CSV '{}'", path));
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("profile CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "r,rho,value") throw std::invalid_argument(fmt::format("profile CSV header must be 'r,rho,value' (got '{}')", line));
  std::map<std::pair<double, double>, double> cells;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
      throw std::invalid_argument(fmt::format("profile CSV line {} needs three fields", lineno));
    try {
      cells[{std::stod(a), std::stod(b)}] = std::stod(c);
    } catch (const std::exception&) {
      throw std::invalid_argument(fmt::format("profile CSV line {} is not numeric", lineno));
    }
  }
  std::vector<double> rs, rhos;
  for (const auto& [key, v] : cells) {
    rs.push_back(key.first);
    rhos.push_back(key.second);
  }
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  std::sort(rhos.begin(), rhos.end());
  rhos.erase(std::unique(rhos.begin(), rhos.end()), rhos.end());
  std::vector<double> values;
  values.reserve(rs.size() * rhos.size());
  for (double r : rs) {
    for (double rho : rhos) {
      auto it = cells.find({r, rho});
      if (it == cells.end()) throw std::invalid_argument(fmt::format("profile CSV misses grid point ({}, {})", r, rho));
      values.push_back(it->second);
    }
  }
  return tabulated_profile(group, std::move(rs), std::move(rhos), std::move(values), path);
}

namespace {

double convolve_rule(const BiradialProfile& f, const BiradialProfile& g, const GroupElement& n, double Rx, double Rz,
                     int panels, int order, int angular) {
  const auto rule = gauss_legendre(order);
  const Matrix& J = f.group().j_maps()[0];
  const double X1 = n.X(0);
  const double X2 = n.X(1);
  const double Zn = n.Z(0);
  const double dtheta = 2.0 * std::numbers::pi / angular;

  std::vector<double> rn, rw, zn, zw;
  for (int p = 0; p < panels; ++p) {
    const double a = Rx * p / panels;
    const double b = Rx * (p + 1) / panels;
    for (int i = 0; i < order; ++i) {
      rn.push_back(0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i]);
      rw.push_back(0.5 * (b - a) * rule.weights[i]);
    }
    const double za = -Rz + 2.0 * Rz * p / panels;
    const double zb = -Rz + 2.0 * Rz * (p + 1) / panels;
    for (int i = 0; i < order; ++i) {
      zn.push_back(0.5 * (za + zb) + 0.5 * (zb - za) * rule.nodes[i]);
      zw.push_back(0.5 * (zb - za) * rule.weights[i]);
    }
  }

  double total = 0.0;
  for (std::size_t i = 0; i < rn.size(); ++i) {
    const double r = rn[i];
    double ring = 0.0;
    for (int t = 0; t < angular; ++t) {
      const double theta = (t + 0.5) * dtheta;
      const double x1 = r * std::cos(theta);
      const double x2 = r * std::sin(theta);
      // [X', X] = <J X', X>
      const double br = (J(0, 0) * x1 + J(0, 1) * x2) * X1 + (J(1, 0) * x1 + J(1, 1) * x2) * X2;
      const double d1 = X1 - x1;
      const double d2 = X2 - x2;
      const double rg = std::sqrt(d1 * d1 + d2 * d2);
      double line = 0.0;
      for (std::size_t j = 0; j < zn.size(); ++j) {
        const double fz = f(r, std::abs(zn[j]));
        if (fz == 0.0) continue;
        line += zw[j] * fz * g(rg, std::abs(Zn - zn[j] - 0.5 * br));
      }
      ring += line;
    }
    total += rw[i] * r * dtheta * ring;
  }
  return total;
}

}  // namespace

QuadResult convolve_direct(const BiradialProfile& f, const BiradialProfile& g, const GroupElement& n,
                           const ConvolutionResolution& res) {
  const auto& group = f.group();
  if (group.m() != 1 || group.k() != 1)
    throw DimensionError("direct convolution is only available on the Heisenberg group H_1");
  if (g.group().m() != 1 || g.group().k() != 1) throw DimensionError("profiles live on different groups");
  group.check(n);
  if (res.radial_panels < 1 || res.order < 1 || res.angular_nodes < 2)
    throw DomainError("convolution resolution too small");

  const double sup_g = std::max(g.decay().amplitude(), 1e-300);
  const auto& d = f.decay();
  const double Rx = truncation_radius([&](double R) { return sup_g * d.tail_x_marginal(1, 1, R); }, res.tol / 10);
  const double Rz = truncation_radius([&](double R) { return sup_g * d.tail_z_marginal(1, 1, R); }, res.tol / 10);

  const double fine = convolve_rule(f, g, n, Rx, Rz, res.radial_panels, res.order, res.angular_nodes);
  const double coarse = convolve_rule(f, g, n, Rx, Rz, std::max(1, res.radial_panels / 2), res.order,
                                      std::max(2, res.angular_nodes / 2));
  const double tails = sup_g * (d.tail_x_marginal(1, 1, Rx) + d.tail_z_marginal(1, 1, Rz));
  const std::size_t evals = static_cast<std::size_t>(res.radial_panels) * res.order * res.angular_nodes *
                            2 * res.radial_panels * res.order;
  return {fine, std::abs(fine - coarse) + tails, evals};
}

}  // namespace htype
