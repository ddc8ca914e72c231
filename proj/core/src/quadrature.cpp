#include "htype/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include <fmt/format.h>

#include "htype/error.hpp"

namespace htype {

double QuadratureRule::apply(const RealFunction& f, double lo, double hi) const {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
  return half * sum;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs n >= 1");
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::gauss_legendre;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const KronrodPair& kronrod21() {
  static const KronrodPair pair = [] {
    // QUADPACK qk21 abscissae and weights, non-negative half.
    const double xgk[11] = {0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
                            0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
                            0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
                            0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
                            0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
                            0.0};
    const double wgk[11] = {0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
                            0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
                            0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
                            0.123491976262065851077600525552721, 0.134709217311473325928054001771707,
                            0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
                            0.149445554002916905664936468389821};
    const double wg[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                          0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                          0.295524224714752870173892994651338};
    KronrodPair p;
    p.nodes.resize(21);
    p.kronrod_weights.resize(21);
    p.gauss_weights.assign(21, 0.0);
    for (int i = 0; i < 11; ++i) {
      p.nodes[i] = -xgk[i];
      p.nodes[20 - i] = xgk[i];
      p.kronrod_weights[i] = wgk[i];
      p.kronrod_weights[20 - i] = wgk[i];
    }
    for (int i = 0; i < 5; ++i) {
      const int idx = 2 * i + 1;  // xgk[1], xgk[3], ... are the Gauss nodes
      p.gauss_weights[idx] = wg[i];
      p.gauss_weights[20 - idx] = wg[i];
    }
    return p;
  }();
  return pair;
}

namespace {

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  double abs_value;  // integral of |f|
  std::size_t order;  // creation index for deterministic tie-breaking
};

struct PanelLess {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.order > b.order;
  }
};

Panel kronrod_panel(const RealFunction& f, double lo, double hi, std::size_t order) {
  const auto& kp = kronrod21();
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double fv[21];
  double resk = 0.0;
  double resg = 0.0;
  double resabs = 0.0;
  for (int i = 0; i < 21; ++i) {
    fv[i] = f(mid + half * kp.nodes[i]);
    resk += kp.kronrod_weights[i] * fv[i];
    resg += kp.gauss_weights[i] * fv[i];
    resabs += kp.kronrod_weights[i] * std::abs(fv[i]);
  }
  const double reskh = 0.5 * resk;
  double resasc = 0.0;
  for (int i = 0; i < 21; ++i) resasc += kp.kronrod_weights[i] * std::abs(fv[i] - reskh);

  const double ahalf = std::abs(half);
  resasc *= ahalf;
  resabs *= ahalf;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  if (!std::isfinite(resk)) err = std::numeric_limits<double>::infinity();
  return {lo, hi, resk * half, err, resabs, order};
}

}  // namespace

QuadResult integrate_finite(const RealFunction& f, double lo, double hi, const QuadOptions& opts) {
  if (!(opts.abs_tol > 0.0) && !(opts.rel_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (lo == hi) return {};
  if (hi < lo) {
    auto r = integrate_finite(f, hi, lo, opts);
    r.value = -r.value;
    return r;
  }

  std::vector<double> cuts{lo};
  for (double b : opts.breakpoints)
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel, std::vector<Panel>, PanelLess> queue;
  std::vector<Panel> finished;  // panels too narrow to split
  std::size_t order = 0;
  const int per = std::max(1, opts.initial_panels);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double w = (cuts[c + 1] - cuts[c]) / per;
    for (int p = 0; p < per; ++p) {
      const double a = cuts[c] + p * w;
      const double b = (p + 1 == per) ? cuts[c + 1] : a + w;
      queue.push(kronrod_panel(f, a, b, order++));
    }
  }

  auto totals = [&]() {
    // Summed in creation order so the result does not depend on heap layout.
    std::vector<Panel> all = finished;
    auto copy = queue;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    double v = 0.0;
    double e = 0.0;
    for (const auto& p : all) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  double abs_total = 0.0;
  {
    auto copy = queue;
    while (!copy.empty()) {
      abs_total += copy.top().abs_value;
      copy.pop();
    }
  }
  constexpr double roundoff = 200.0 * std::numeric_limits<double>::epsilon();

  while (true) {
    const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
    if (error <= target || error <= roundoff * abs_total || queue.empty()) break;
    if (queue.size() + finished.size() >= opts.max_intervals) {
      auto [v, e] = totals();
      throw QuadratureError(fmt::format("quadrature on [{}, {}] did not converge: estimate {:.3e} > {:.3e} "
                                        "after {} intervals",
                                        lo, hi, e, target, queue.size() + finished.size()),
                            v, e);
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi) ||
        (worst.hi - worst.lo) < 64 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) {
      finished.push_back(worst);
      continue;
    }
    Panel left = kronrod_panel(f, worst.lo, mid, order++);
    Panel right = kronrod_panel(f, mid, worst.hi, order++);
    value += left.value + right.value - worst.value;
    abs_total += left.abs_value + right.abs_value - worst.abs_value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  auto [v, e] = totals();
  return {v, e, order * 21};
}

QuadResult integrate_finite(const RealFunction& f, double lo, double hi, double tol) {
  QuadOptions opts;
  opts.abs_tol = tol;
  return integrate_finite(f, lo, hi, opts);
}

QuadResult integrate_halfline(const RealFunction& f, double tol, double rate, std::size_t max_intervals) {
  if (!(rate > 0.0)) throw DomainError("half-line rate must be positive");
  // Mapping with half the decay rate makes the mapped integrand vanish like
  // t |ln t|^p at t = 0 instead of leaving a logarithmic endpoint singularity.
  const double c = 0.5 * rate;
  auto mapped = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double beta = -std::log(t) / c;
    const double v = f(beta);
    return v == 0.0 ? 0.0 : v / (c * t);
  };
  QuadOptions opts;
  opts.abs_tol = tol;
  opts.max_intervals = max_intervals;
  return integrate_finite(mapped, 0.0, 1.0, opts);
}

}  // namespace htype
