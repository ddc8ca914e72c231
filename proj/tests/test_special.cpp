#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "htype/error.hpp"
#include "htype/quadrature.hpp"
#include "htype/special.hpp"

using namespace htype;

namespace {

// Gamma(z + 1) (2/x)^z J_z(x), the usual normalization of a Bessel function
// of order z with value 1 at the origin.
double normalized_bessel(double z, double x) {
  return std::tgamma(z + 1) * std::pow(2.0 / x, z) * std::cyl_bessel_j(z, x);
}

}  // namespace

TEST(Laguerre, LowDegrees) {
  for (double alpha : {0.0, 0.5, 2.0})
    for (double x : {0.0, 0.7, 3.0}) {
      EXPECT_DOUBLE_EQ(laguerre(0, alpha, x), 1.0);
      EXPECT_NEAR(laguerre(1, alpha, x), alpha + 1 - x, 1e-14);
    }
  EXPECT_NEAR(laguerre(2, 0.0, 1.0), -0.5, 1e-15);
}

TEST(Laguerre, SumMatchesRecurrence) {
  double worst = 0.0;
  for (int l = 0; l <= 10; ++l)
    for (double alpha : {0.0, 0.5, 1.0, 3.0})
      for (int i = 0; i <= 100; ++i) {
        const double x = 0.5 * i;
        const double a = laguerre_sum(l, alpha, x), b = laguerre_recurrence(l, alpha, x);
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1.0));
      }
  EXPECT_LE(worst, 1e-9);
}

TEST(Laguerre, MatchesStandardLibrary) {
  for (int l = 0; l <= 12; ++l)
    for (unsigned alpha : {0u, 1u, 3u})
      for (double x : {0.1, 1.0, 5.0, 20.0}) {
        const double ref = std::assoc_laguerre(l, alpha, x);
        EXPECT_NEAR(laguerre(l, alpha, x), ref, 1e-9 * std::max(1.0, std::abs(ref))) << l << " " << alpha << " " << x;
      }
  EXPECT_NEAR(laguerre(30, 0.0, 2.0), std::laguerre(30, 2.0), 1e-9);
}

TEST(Laguerre, PolyCoefficientsAgree) {
  const LaguerrePoly p(6, 1.5);
  EXPECT_EQ(p.degree(), 6);
  for (double x : {0.0, 0.3, 4.0, 12.0}) EXPECT_NEAR(p(x), laguerre(6, 1.5, x), 1e-9 * std::max(1.0, std::abs(p(x))));
}

TEST(Laguerre, RejectsBadOrder) {
  EXPECT_THROW(laguerre(2, -1.0, 1.0), DomainError);
  EXPECT_THROW(laguerre(-1, 0.0, 1.0), DomainError);
}

TEST(BesselGen, CosineBranch) {
  for (int i = 0; i <= 2000; ++i) {
    const double x = 0.01 * i;
    EXPECT_NEAR(bessel_gen(-0.5, x), std::cos(x), 1e-10);
  }
}

TEST(BesselGen, HalfOrderIsSinc) {
  for (int i = 1; i <= 200; ++i) {
    const double x = 0.1 * i;
    EXPECT_NEAR(bessel_gen(0.5, x), std::sin(x) / x, 1e-10);
  }
  for (double x : {0.5, 1.0, 2.0}) EXPECT_NEAR(bessel_gen(0.5, x), std::sin(x) / x, 1e-10);
}

TEST(BesselGen, OneAtOrigin) {
  for (double z : {-0.5, 0.0, 0.5, 1.0, 3.0}) EXPECT_NEAR(bessel_gen(z, 0.0), 1.0, 1e-12);
}

TEST(BesselGen, MatchesNormalizedBessel) {
  for (double z : {0.0, 0.25, 1.0, 2.0, 3.0})
    for (double x : {0.3, 1.0, 4.0, 11.0, 40.0}) EXPECT_NEAR(bessel_gen(z, x), normalized_bessel(z, x), 1e-10);
}

TEST(BesselGen, EvenAndBounded) {
  for (double z : {-0.5, 0.0, 0.5, 1.0, 2.0, 3.0})
    for (int i = 0; i <= 400; ++i) {
      const double x = 0.25 * i;
      const double v = bessel_gen(z, x);
      EXPECT_NEAR(v, bessel_gen(z, -x), 1e-12);
      EXPECT_LE(std::abs(v), 1.0 + 1e-12);
    }
}

TEST(BesselGen, RejectsLowOrder) { EXPECT_THROW(bessel_gen(-0.6, 1.0), DomainError); }

TEST(Quadrature, GaussLegendreRule) {
  const auto rule = gauss_legendre(8);
  double sum = 0.0;
  for (double w : rule.weights) {
    EXPECT_GT(w, 0.0);
    sum += w;
  }
  EXPECT_NEAR(sum, 2.0, 1e-14);
  // exact through degree 15
  EXPECT_NEAR(rule.apply([](double x) { return std::pow(x, 14) + x * x * x; }, 0.0, 2.0), std::pow(2.0, 15) / 15 + 4, 1e-10);
}

TEST(Quadrature, SpecExamples) {
  EXPECT_NEAR(integrate_halfline([](double b) { return std::exp(-2 * b) * b * b; }, 1e-12, 2.0).value, 0.25, 1e-12);
  EXPECT_NEAR(integrate_finite([](double s) { return std::sqrt(1 - s * s); }, -1, 1, 1e-12).value, std::numbers::pi / 2,
              1e-10);
  EXPECT_NEAR(integrate_halfline([](double b) { return std::exp(-b * b); }, 1e-10).value, std::sqrt(std::numbers::pi) / 2,
              1e-10);
}

TEST(Quadrature, EstimatesBoundTrueError) {
  using std::numbers::pi;
  struct Case {
    const char* name;
    RealFunction f;
    double lo, hi;  // hi = inf for the half line
    double exact;
  };
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<Case> cases = {
      {"poly", [](double x) { return 3 * x * x - x; }, 0, 2, 6.0},
      {"exp", [](double x) { return std::exp(x); }, 0, 1, std::exp(1.0) - 1},
      {"sin", [](double x) { return std::sin(x); }, 0, pi, 2.0},
      {"runge", [](double x) { return 1 / (1 + 25 * x * x); }, -1, 1, 0.4 * std::atan(5.0)},
      {"sqrt", [](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3},
      {"log", [](double x) { return std::log(x); }, 0, 1, -1.0},
      {"oscillatory", [](double x) { return std::cos(20 * x); }, 0, 1, std::sin(20.0) / 20},
      {"gamma", [](double x) { return std::pow(x, 4) * std::exp(-x); }, 0, inf, 24.0},
      {"damped", [](double x) { return std::exp(-x) * std::sin(x); }, 0, inf, 0.5},
      {"gauss", [](double x) { return std::exp(-x * x / 2); }, 0, inf, std::sqrt(pi / 2)},
  };
  for (const auto& c : cases) {
    const double tol = 1e-9;
    SCOPED_TRACE(c.name);
    const auto q = std::isinf(c.hi) ? integrate_halfline(c.f, tol) : integrate_finite(c.f, c.lo, c.hi, tol);
    EXPECT_LE(std::abs(q.value - c.exact), std::max(q.error, 1e-14)) << c.name;
    EXPECT_LE(q.error, tol) << c.name;
  }
}

TEST(Quadrature, Deterministic) {
  auto f = [](double x) { return std::exp(-x) * std::cos(3 * x); };
  const auto a = integrate_halfline(f, 1e-11), b = integrate_halfline(f, 1e-11);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.error, b.error);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Quadrature, BudgetExhaustionCarriesPartialResult) {
  QuadOptions opts;
  opts.abs_tol = 1e-14;
  opts.max_intervals = 3;
  try {
    integrate_finite([](double x) { return std::sin(1 / x); }, 1e-3, 1, opts);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_TRUE(std::isfinite(e.partial_value()));
    EXPECT_GT(e.error_estimate(), 1e-14);
  }
}

TEST(Special, Binomial) {
  EXPECT_NEAR(binomial(5, 2), 10.0, 1e-12);
  EXPECT_NEAR(binomial(7.5, 0), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(sphere_area(1), 2.0);
  EXPECT_NEAR(sphere_area(2), 2 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sphere_area(3), 4 * std::numbers::pi, 1e-13);
}
