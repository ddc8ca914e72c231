#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace htype {

using RealFunction = std::function<double(double)>;

/// A fixed rule on [-1, 1] (Gauss-Legendre) or the nodes of a mapped rule.
struct QuadratureRule {
  enum class Kind { gauss_legendre, halfline_exponential, adaptive_kronrod };

  Kind kind = Kind::gauss_legendre;
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Applies the rule to [lo, hi] by affine map. Only meaningful for
  /// gauss_legendre.
  double apply(const RealFunction& f, double lo, double hi) const;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton on P_n).
QuadratureRule gauss_legendre(int n);

/// Nodes and weights of the 21-point Kronrod extension on [-1, 1], with the
/// embedded 10-point Gauss rule as weights of its odd-indexed nodes.
struct KronrodPair {
  std::vector<double> nodes;           // 21 nodes, ascending
  std::vector<double> kronrod_weights;
  std::vector<double> gauss_weights;   // zero at non-Gauss nodes
};
const KronrodPair& kronrod21();

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_intervals = 5000;
  /// Interior points where the integrand changes character; the initial
  /// partition is split there.
  std::vector<double> breakpoints;
  /// Initial uniform panels per breakpoint-delimited piece.
  int initial_panels = 1;
};

/// Globally adaptive Gauss-Kronrod (21-point) on [lo, hi]. Always bisects the
/// interval with the largest local estimate, ties broken by creation order, so
/// the result is a deterministic function of the inputs. Throws
/// QuadratureError when the interval budget runs out before the estimate
/// drops below max(abs_tol, rel_tol |value|).
QuadResult integrate_finite(const RealFunction& f, double lo, double hi, const QuadOptions& opts);
QuadResult integrate_finite(const RealFunction& f, double lo, double hi, double tol);

/// Integral over [0, inf) through beta = -2 ln(t) / rate, t in (0, 1], followed
/// by adaptive refinement. `rate` should be about the integrand's exponential
/// decay rate.
QuadResult integrate_halfline(const RealFunction& f, double tol, double rate = 1.0,
                              std::size_t max_intervals = 5000);

}  // namespace htype
