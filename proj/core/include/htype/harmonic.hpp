#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "htype/biradial.hpp"
#include "htype/group.hpp"
#include "htype/poisson.hpp"
#include "htype/quadrature.hpp"

namespace htype {

/// Bounded boundary data phi on N.
///
/// When `alpha` is set, |phi(n) - alpha| <= tail_bound for every n with
/// gauge(n) > tail_radius. A compactly supported perturbation of a constant
/// has tail_bound = 0.
struct BoundaryDatum {
  std::function<double(const GroupElement&)> phi;
  std::optional<BiradialProfile> biradial;
  double sup_bound = 0.0;
  std::optional<double> alpha;
  double tail_radius = std::numeric_limits<double>::infinity();
  double tail_bound = 0.0;
  std::string name = "datum";

  static BoundaryDatum constant(double c);
  /// alpha + amplitude * bump(radius); the bump lives in the Euclidean ball of
  /// that radius in (X, Z), inside the gauge ball of radius max(r, sqrt(r)).
  static BoundaryDatum bump_plus(const HTypeGroup& group, double alpha, double radius = 1.0, double amplitude = 1.0);
  static BoundaryDatum from_profile(const BiradialProfile& f, double sup_bound);
};

struct DatumCheck {
  double sampled_sup = 0.0;
  double sampled_tail = 0.0;  // max |phi - alpha| sampled beyond tail_radius
  bool passed = true;
};

/// Samples phi on pseudo-random points of gauge up to 4 * tail_radius (or
/// 10 when no tail radius is declared) and checks the declared bounds.
DatumCheck check_datum(const HTypeGroup& group, const BoundaryDatum& datum, int samples = 500,
                       std::uint64_t seed = 20050601);

enum class ExtensionRoute {
  recentered,  // int phi(n delta_a(m)^{-1}) P_1(m) dm over a compactified chart
  support,     // alpha + int over the tail ball of (phi - alpha) P_a(n'^{-1} n) dn'
};

/// u(n, a) = (phi * P_a)(n) on H_1. The kernel supplies the group and the
/// normalization; its own height is ignored. The support route needs a
/// declared alpha and finite tail radius and adds the tail bound to its
/// error. Throws DimensionError on any other group.
QuadResult extend(const BoundaryDatum& datum, const PoissonKernel& kernel, double a, const GroupElement& n,
                  double tol = 1e-10, ExtensionRoute route = ExtensionRoute::recentered);

/// u as a function on the Siegel domain, with an error estimate.
using Field = std::function<QuadResult(const DomainPoint&)>;

Field extension_field(BoundaryDatum datum, PoissonKernel kernel, double tol = 1e-10,
                      ExtensionRoute route = ExtensionRoute::recentered);
/// A field without quadrature error, for closed-form functions of (n, a).
Field exact_field(std::function<double(const DomainPoint&)> u);

struct LBResidual {
  double value = 0.0;
  double noise = 0.0;      // propagated evaluation error
  bool resolvable = true;  // noise below a tenth of |value|
};

/// (L u)(p), L = sum_i E_i^2 + E_0^2 - Q E_0, each left-invariant derivative
/// taken by symmetric differences of t -> u(p exp(t E)) through the NA
/// product; exp(t E_0) scales a by e^t.
LBResidual lb_residual(const HTypeGroup& group, const Field& u, const DomainPoint& p, double h);

struct RichardsonRow {
  double h = 0.0;
  double residual = 0.0;
  double noise = 0.0;
  double ratio = std::numeric_limits<double>::quiet_NaN();  // residual(previous h) / residual(h)
  bool resolvable = true;
};

/// Residuals at successive steps. Ratio near 4 for halving steps means the
/// residual is pure O(h^2) discretization error.
std::vector<RichardsonRow> richardson_table(const HTypeGroup& group, const Field& u, const DomainPoint& p,
                                            const std::vector<double>& steps);

/// Points of gauge rho: X = 2 rho sqrt(cos psi) (cos theta, sin theta, 0...),
/// Z = rho^2 sin psi e_1, over a fixed (psi, theta) pattern.
std::vector<GroupElement> gauge_shell_samples(const HTypeGroup& group, double rho);

struct TangentialTable {
  std::vector<double> heights;
  std::vector<double> radii;
  double alpha = 0.0;
  /// deviation[i][j]: sup over sampled R_j <= gauge <= 2 R_j of |u(., a_i) - alpha|.
  std::vector<std::vector<double>> deviation;
  /// Largest quadrature estimate among the samples of each cell.
  std::vector<std::vector<double>> error;
  std::vector<bool> decreasing;    // per height, strictly decreasing in R
  bool final_agree = false;        // final entries within 2x combined error, pairwise
  double contraction_excess = 0.0; // max(0, max |u| - sup |phi|) over all samples
};

TangentialTable tangential_demo(const BoundaryDatum& datum, const PoissonKernel& kernel,
                                const std::vector<double>& heights, const std::vector<double>& radii,
                                double tol = 1e-8, ExtensionRoute route = ExtensionRoute::recentered);

/// One-dimensional data on the boundary of the upper half-plane. When
/// `support` is set, phi - alpha vanishes outside [support_lo, support_hi].
struct HalfplaneDatum {
  std::function<double(double)> phi;
  double alpha = 0.0;
  bool has_support = false;
  double support_lo = 0.0;
  double support_hi = 0.0;

  static HalfplaneDatum indicator(double lo, double hi);
};

/// u(x, y) = int phi(t) (y / pi) / ((x - t)^2 + y^2) dt.
QuadResult halfplane_extend(const HalfplaneDatum& datum, double x, double y, double tol = 1e-12);

/// (1/pi) (arctan((hi - x)/y) - arctan((lo - x)/y)).
double halfplane_indicator_exact(double lo, double hi, double x, double y);

struct HalfplaneTable {
  std::vector<double> ys;
  std::vector<double> xs;
  double alpha = 0.0;
  std::vector<std::vector<double>> deviation;  // [y][x]: |u(x, y) - alpha|
  std::vector<std::vector<double>> error;
};

HalfplaneTable halfplane_oracle(const HalfplaneDatum& datum, const std::vector<double>& ys,
                                const std::vector<double>& xs, double tol = 1e-12);

}  // namespace htype
