#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "htype/error.hpp"
#include "htype/harmonic.hpp"

using namespace htype;
using std::numbers::pi;

namespace {

const HTypeGroup& h1() {
  static const HTypeGroup g = make_heisenberg(1);
  return g;
}

const PoissonKernel& p1() {
  static const PoissonKernel P(h1());
  return P;
}

}  // namespace

TEST(Datum, DeclaredBoundsHold) {
  for (double r : {0.25, 1.0, 2.0}) {
    const auto d = BoundaryDatum::bump_plus(h1(), 0.5, r, -2.0);
    EXPECT_GE(d.tail_radius, r);
    const auto chk = check_datum(h1(), d);
    EXPECT_TRUE(chk.passed) << r;
    EXPECT_EQ(chk.sampled_tail, 0.0);
    EXPECT_LE(chk.sampled_sup, d.sup_bound);
  }
}

TEST(Datum, SmallBumpFitsItsGaugeBall) {
  // support point (|X| = 0, |Z| = r) has gauge sqrt(r)
  const auto d = BoundaryDatum::bump_plus(h1(), 0.0, 0.25);
  const auto n = make_element(h1(), {0, 0}, {0.24});
  EXPECT_GT(d.phi(n), 0.0);
  EXPECT_LE(HTypeGroup::gauge(n), d.tail_radius);
}

TEST(Datum, LyingTailDetected) {
  auto d = BoundaryDatum::bump_plus(h1(), 0.5, 2.0);
  d.tail_radius = 0.5;
  EXPECT_FALSE(check_datum(h1(), d).passed);
}

TEST(Extend, ConstantDatum) {
  const auto d = BoundaryDatum::constant(0.7);
  for (double a : {0.3, 1.0, 4.0})
    for (const auto& n : {make_element(h1(), {0, 0}, {0}), make_element(h1(), {3, -1}, {5})}) {
      EXPECT_NEAR(extend(d, p1(), a, n, 1e-10).value, 0.7, 1e-8);
      EXPECT_EQ(extend(d, p1(), a, n, 1e-10, ExtensionRoute::support).value, 0.7);
    }
}

TEST(Extend, RoutesAgree) {
  const auto d = BoundaryDatum::bump_plus(h1(), 0.5, 1.0);
  for (double a : {0.5, 2.0})
    for (const auto& n : {make_element(h1(), {0.3, 0.2}, {-0.4}), make_element(h1(), {2, 1}, {3})}) {
      const auto r = extend(d, p1(), a, n, 1e-9), s = extend(d, p1(), a, n, 1e-9, ExtensionRoute::support);
      EXPECT_NEAR(r.value, s.value, 2 * (r.error + s.error));
    }
}

TEST(Extend, Contraction) {
  const auto d = BoundaryDatum::bump_plus(h1(), -0.5, 1.0, 1.5);
  std::mt19937_64 rng(29);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> ua(-2.5, 1.5);
  for (int i = 0; i < 24; ++i) {
    const auto n = make_element(h1(), {g(rng), g(rng)}, {g(rng)});
    const auto u = extend(d, p1(), std::exp(ua(rng)), n, 1e-8, ExtensionRoute::support);
    EXPECT_LE(std::abs(u.value), d.sup_bound + u.error);
  }
}

TEST(Extend, BoundaryValues) {
  // a smooth datum: u(n, a) -> phi(n) as a -> 0
  const auto d = BoundaryDatum::bump_plus(h1(), 0.5, 1.0);
  for (const auto& n : {make_element(h1(), {0, 0}, {0}), make_element(h1(), {0.2, 0.1}, {0.3}),
                        make_element(h1(), {-0.4, 0.3}, {0.1}), make_element(h1(), {0.1, -0.5}, {-0.2}),
                        make_element(h1(), {0.5, 0.5}, {0.0})}) {
    double prev = 1e300;
    for (double a : {0.1, 0.01, 0.001}) {
      const auto u = extend(d, p1(), a, n, 1e-8);
      const double err = std::abs(u.value - d.phi(n));
      EXPECT_LT(err, prev) << a;
      prev = err;
    }
    EXPECT_LT(prev, 1e-2);
  }
}

TEST(Extend, OtherGroupsRejected) {
  const auto g = make_heisenberg(2);
  const PoissonKernel P(g);
  EXPECT_THROW(extend(BoundaryDatum::constant(1), P, 1.0, g.identity()), DimensionError);
}

TEST(Residual, ConstantField) {
  const auto u = exact_field([](const DomainPoint&) { return 3.0; });
  for (double h : {0.2, 0.1, 0.05})
    EXPECT_LE(std::abs(lb_residual(h1(), u, {make_element(h1(), {1, 2}, {3}), 0.7}, h).value), 1e-8);
  const auto c = extension_field(BoundaryDatum::constant(3.0), p1(), 1e-10, ExtensionRoute::support);
  EXPECT_LE(std::abs(lb_residual(h1(), c, {h1().identity(), 1.0}, 0.1).value), 1e-8);
}

TEST(Residual, NegativeControl) {
  // L a = (1 - Q) a
  const auto u = exact_field([](const DomainPoint& p) { return p.a; });
  const DomainPoint p{make_element(h1(), {0.3, -0.1}, {0.2}), 0.8};
  const auto tab = richardson_table(h1(), u, p, {0.2, 0.1, 0.05});
  EXPECT_NEAR(tab.back().residual, (1 - h1().Q()) * p.a, 1e-3);
}

TEST(Residual, PowerOfHeightIsHarmonic) {
  // E_0^2 a^Q - Q E_0 a^Q = 0 and a^Q does not depend on n
  const auto u = exact_field([](const DomainPoint& p) { return std::pow(p.a, 2); });
  const auto tab = richardson_table(h1(), u, {h1().identity(), 0.8}, {0.2, 0.1, 0.05});
  for (std::size_t i = 1; i < tab.size(); ++i) EXPECT_NEAR(tab[i].ratio, 4.0, 0.1);
}

TEST(Residual, PoissonKernelIsHarmonic) {
  for (const auto& g : {make_heisenberg(1), make_quaternionic(1)}) {
    const PoissonKernel P(g);
    const auto u = exact_field([P](const DomainPoint& p) { return P.at_height(p.a)(p.element); });
    GroupElement n = g.identity();
    n.X(0) = 0.4;
    n.Z(0) = 0.3;
    const auto tab = richardson_table(g, u, {n, 1.2}, {0.2, 0.1, 0.05});
    for (std::size_t i = 1; i < tab.size(); ++i) {
      EXPECT_GE(tab[i].ratio, 2.8);
      EXPECT_LE(tab[i].ratio, 5.6);
    }
  }
}

TEST(Residual, ExtensionIsHarmonic) {
  const auto d = BoundaryDatum::bump_plus(h1(), 0.5, 1.0);
  const auto u = extension_field(d, p1(), 1e-12, ExtensionRoute::support);
  const auto tab = richardson_table(h1(), u, {h1().identity(), 1.0}, {0.2, 0.1, 0.05});
  for (std::size_t i = 1; i < tab.size(); ++i) {
    EXPECT_TRUE(tab[i].resolvable);
    EXPECT_NEAR(tab[i].ratio, 4.0, 1.2);
  }
}

TEST(Tangential, ShellSamplesHaveRequestedGauge) {
  for (double rho : {0.5, 4.0, 16.0})
    for (const auto& n : gauge_shell_samples(h1(), rho)) EXPECT_NEAR(HTypeGroup::gauge(n), rho, 1e-12 * rho);
}

TEST(Tangential, ConstantDatumVanishes) {
  const auto t = tangential_demo(BoundaryDatum::constant(0.3), p1(), {0.5, 1, 2}, {4, 8}, 1e-8,
                                 ExtensionRoute::support);
  for (const auto& row : t.deviation)
    for (double v : row) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(t.final_agree);
}

TEST(Tangential, BumpTailDecays) {
  const auto t = tangential_demo(BoundaryDatum::bump_plus(h1(), 0.5, 1.0), p1(), {1.0}, {4, 8}, 1e-9,
                                 ExtensionRoute::support);
  EXPECT_TRUE(t.decreasing[0]);
  EXPECT_LT(t.deviation[0][1], 1e-2);
  EXPECT_EQ(t.contraction_excess, 0.0);
}

TEST(Halfplane, ZeroDatum) {
  HalfplaneDatum d;
  d.phi = [](double) { return 0.0; };
  EXPECT_EQ(halfplane_extend(d, 1.0, 0.5).value, 0.0);
}

TEST(Halfplane, IndicatorClosedForm) {
  const auto d = HalfplaneDatum::indicator(-1, 1);
  for (double y : {0.1, 0.5, 2.0})
    for (double x : {-3.0, 0.0, 0.9, 1.0, 7.0, 50.0}) {
      // independent antiderivative of the Cauchy density
      const double ref = (std::atan((1 - x) / y) - std::atan((-1 - x) / y)) / pi;
      EXPECT_NEAR(halfplane_extend(d, x, y).value, ref, 1e-6);
      EXPECT_NEAR(halfplane_indicator_exact(-1, 1, x, y), ref, 1e-15);
    }
}

TEST(Halfplane, HeightIndependentLimit) {
  const auto d = HalfplaneDatum::indicator(-1, 1);
  const auto tab = halfplane_oracle(d, {0.5, 2.0}, {5, 10, 50});
  for (const auto& row : tab.deviation) {
    EXPECT_GT(row[0], row[1]);
    EXPECT_GT(row[1], row[2]);
  }
  EXPECT_NEAR(tab.deviation[0][2], tab.deviation[1][2], 1e-3);
}
