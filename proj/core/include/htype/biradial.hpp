#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "htype/group.hpp"
#include "htype/quadrature.hpp"

namespace htype {

/// Majorant for |f0(r, rho)| that fixes truncation radii.
///
///   compact      f0 = 0 for r > rx or rho > rz, |f0| <= amplitude
///   gaussian     |f0| <= amplitude * exp(-cx r^2 - cz rho^2)
///   kernel_power |f0| <= amplitude * ((a0 + r^2/4)^2 + rho^2)^(-q)
///
/// Every majorant is non-increasing in each variable, so its value at r = 0
/// bounds the sup over r.
class Decay {
 public:
  enum class Kind { compact, gaussian, kernel_power };

  static Decay compact(double amplitude, double rx, double rz);
  static Decay gaussian(double amplitude, double cx, double cz);
  static Decay kernel_power(double amplitude, double a0, double q);

  Kind kind() const noexcept { return kind_; }
  double amplitude() const noexcept { return amplitude_; }
  double p1() const noexcept { return p1_; }
  double p2() const noexcept { return p2_; }

  double bound(double r, double rho) const;

  /// int_R^inf majorant(r, rho) r^{2m-1} dr at fixed rho.
  double tail_x_at(int m, double rho, double R) const;
  /// int_R^inf majorant(r, rho) rho^{k-1} drho at fixed r.
  double tail_z_at(int k, double r, double R) const;
  /// Haar mass of the majorant over {r > R}.
  double tail_x_marginal(int m, int k, double R) const;
  /// Haar mass of the majorant over {rho > R}.
  double tail_z_marginal(int m, int k, double R) const;

  /// The majorant of a_dil^Q f0(a_dil^{1/2} r, a_dil rho).
  Decay dilated(double a_dil, int Q) const;

 private:
  Decay(Kind kind, double amplitude, double p1, double p2, double p3)
      : kind_(kind), amplitude_(amplitude), p1_(p1), p2_(p2), p3_(p3) {}

  Kind kind_;
  double amplitude_;
  double p1_;
  double p2_;
  double p3_;
};

/// Smallest R (to about 1%) with tail(R) <= target; tail must be
/// non-increasing.
double truncation_radius(const std::function<double(double)>& tail, double target);

/// Haar-measure constant of the (r, rho) reduction: area(S^{2m-1}) area(S^{k-1})
/// for k >= 2 and 2 area(S^{2m-1}) for k = 1.
double radial_measure_constant(int m, int k);

/// A biradial function f(X, Z) = f0(|X|, |Z|) on an H-type group.
class BiradialProfile {
 public:
  using Profile = std::function<double(double r, double rho)>;

  BiradialProfile(HTypeGroup group, Profile f0, Decay decay, std::string name = "profile");

  double operator()(double r, double rho) const { return (*f0_)(r, rho); }
  const HTypeGroup& group() const noexcept { return *group_; }
  const Decay& decay() const noexcept { return decay_; }
  const std::string& name() const noexcept { return name_; }
  const Profile& profile() const noexcept { return *f0_; }

  /// Samples f0 on the boundary of the truncation box for `tol` and on a
  /// coarse interior grid; throws TruncationError if the majorant is beaten.
  void check_decay(double tol) const;

 private:
  std::shared_ptr<const HTypeGroup> group_;
  std::shared_ptr<const Profile> f0_;
  Decay decay_;
  std::string name_;
};

double evaluate(const BiradialProfile& f, const GroupElement& n);

/// Weights for the reduced integral
///   c_{m,k} int int f0(r, rho) wx(r) wz(rho) r^{2m-1} rho^{k-1} dr drho.
/// |wx|, |wz| <= 1 is assumed. When wz oscillates without decaying and wx
/// decays, set outer_z so the oscillatory variable is integrated outside;
/// x_l1 must then bound int_0^inf |wx(r)| r^{2m-1} dr.
struct RadialWeights {
  std::function<double(double)> x;
  std::function<double(double)> z;
  bool outer_z = false;
  double x_l1 = std::numeric_limits<double>::infinity();
};

/// Nested adaptive quadrature of the reduced integral. The error estimate
/// adds the outer estimate, both truncation tails and the inner estimates.
QuadResult radial_integral(const BiradialProfile& f, const RadialWeights& weights, double tol,
                           bool absolute_value = false);

/// ||f||_1 via the (r, rho) reduction.
QuadResult l1_norm(const BiradialProfile& f, double tol);

/// a^Q f0(a^{1/2} r, a rho).
BiradialProfile dilate_fn(double a, const BiradialProfile& f);

/// Built-in profiles. gaussian: exp(-(r^2 + rho^2)/width^2); bump: smooth,
/// exp(1 - 1/(1 - t)) with t = (r^2 + rho^2)/radius^2, zero for t >= 1.
BiradialProfile gaussian_profile(const HTypeGroup& group, double width = 1.0);
BiradialProfile bump_profile(const HTypeGroup& group, double radius = 1.0);

/// Profile tabulated on a regular (r, rho) grid, bilinearly interpolated and
/// zero outside the grid. Values are row-major with rho fastest.
BiradialProfile tabulated_profile(const HTypeGroup& group, std::vector<double> r_nodes,
                                  std::vector<double> rho_nodes, std::vector<double> values,
                                  std::string name = "tabulated");

/// Reads CSV with header `r,rho,value` on a full rectangular grid.
BiradialProfile read_profile_csv(const HTypeGroup& group, const std::string& path);

struct ConvolutionResolution {
  int radial_panels = 4;   // Gauss-Legendre panels along |X'| and Z'
  int order = 10;          // nodes per panel
  int angular_nodes = 32;  // trapezoid nodes around X'
  double tol = 1e-8;       // truncation target for the box
};

/// (f * g)(n) = int_N f(n') g(n'^{-1} n) dn' on the Heisenberg group H_1,
/// by tensor-product quadrature over a box fixed by f's decay. The error
/// estimate is the difference from the same rule with half the panels.
/// Throws DimensionError for any other group.
QuadResult convolve_direct(const BiradialProfile& f, const BiradialProfile& g, const GroupElement& n,
                           const ConvolutionResolution& res = {});

}  // namespace htype
