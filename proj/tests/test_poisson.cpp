#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include "htype/biradial.hpp"
#include "htype/error.hpp"
#include "htype/group_io.hpp"
#include "htype/poisson.hpp"
#include "htype/quadrature.hpp"

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

// int_R cos(nu z) (A^2 + z^2)^{-2} dz
double h1_z_fourier(double A, double nu) { return pi * (1 + A * nu) * std::exp(-A * nu) / (2 * A * A * A); }

}  // namespace

TEST(Normalization, AnalyticConstants) {
  // H_1: int (A^2 + z^2)^{-2} dz = pi / (2 A^3), then int 2 pi r pi / (2 A^3) dr = pi^2.
  EXPECT_NEAR(normalization_constant(h1()), 1 / (pi * pi), 1e-12);
  // quaternionic n = 1: (5 pi^2 / 64) (16 pi^2 / 30) = pi^4 / 24.
  EXPECT_NEAR(normalization_constant(make_quaternionic(1)), 24 / std::pow(pi, 4), 1e-11);
  EXPECT_GT(normalization_constant(make_heisenberg(2)), 0.0);
}

TEST(Normalization, CartesianBoxAgrees) {
  // x = tan(u) maps each half line onto (0, pi/2); the kernel is even in
  // every coordinate, so the octant carries an eighth of the mass.
  const double C = p1().c_norm();
  auto line = [](const std::function<double(double)>& f, double tol) {
    return integrate_finite(
               [&](double u) {
                 const double c = std::cos(u);
                 return f(std::tan(u)) / (c * c);
               },
               0, pi / 2, tol)
        .value;
  };
  const double mass = 8 * line(
                              [&](double x1) {
                                return line(
                                    [&](double x2) {
                                      const double A = 1 + (x1 * x1 + x2 * x2) / 4;
                                      return line([&](double z) { return C / std::pow(A * A + z * z, 2); }, 1e-9);
                                    },
                                    1e-8);
                              },
                              1e-7);
  EXPECT_NEAR(mass, 1.0, 1e-4);
}

TEST(Kernel, UnitMassAtEveryHeight) {
  for (const auto& g : {make_heisenberg(1), make_quaternionic(1)}) {
    const PoissonKernel P(g);
    for (double a : {0.5, 1.0, 2.0}) EXPECT_NEAR(l1_norm(P.at_height(a).profile(), 1e-10).value, 1.0, 1e-6) << a;
  }
}

TEST(Kernel, ValueAtIdentityAndPositivity) {
  const auto& g = h1();
  for (double a : {0.5, 2.0}) {
    const auto P = p1().at_height(a);
    EXPECT_NEAR(poisson_eval(P, g.identity()), P.c_norm() * std::pow(a, -2), 1e-15);
    EXPECT_GT(poisson_eval(P, make_element(g, {30, -40}, {1e3})), 0.0);
  }
  EXPECT_THROW(PoissonKernel(g, 0.0), DomainError);
}

TEST(Kernel, DilationOfUnitHeight) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> d;
  for (const auto& g : {make_heisenberg(1), make_quaternionic(1)}) {
    const PoissonKernel P(g);
    for (double a : {0.5, 3.0}) {
      const auto lhs = P.at_height(a);
      const auto rhs = dilate_fn(1 / a, P.profile());
      for (int i = 0; i < 5; ++i) {
        GroupElement n = g.identity();
        for (int j = 0; j < g.dim_v(); ++j) n.X(j) = d(rng);
        for (int j = 0; j < g.k(); ++j) n.Z(j) = d(rng);
        EXPECT_NEAR(lhs(n), evaluate(rhs, n), 1e-14 * lhs(n));
      }
    }
  }
}

TEST(Kernel, RejectsBrokenGroup) {
  const HTypeGroup bad(1, 1, {Matrix::Zero(2, 2)});
  EXPECT_THROW(PoissonKernel{bad}, AxiomError);
}

TEST(CentralFourier, H1ClosedForm) {
  Vector w(1);
  w << 1;
  for (double a : {0.5, 1.0})
    for (double x : {0.0, 1.3})
      for (double nu : {0.0, 0.5, 2.0}) {
        Vector X(2);
        X << x, 0;
        const auto P = p1().at_height(a);
        const double A = a + x * x / 4;
        const double ref = P.c_norm() * a * a * h1_z_fourier(A, nu);
        const auto zf = partial_fourier_z(P, X, nu, w);
        EXPECT_NEAR(zf.value, ref, 1e-8);
        EXPECT_NEAR(zf.direct, ref, 1e-8);
        EXPECT_LE(std::abs(zf.imag), 1e-10);
      }
}

TEST(CentralFourier, DirectionIndependent) {
  const auto g = make_quaternionic(1);
  const PoissonKernel P(g);
  Vector X(4);
  X << 0.5, -0.2, 0.1, 0.7;
  Vector w1(3), w2(3);
  w1 << 1, 0, 0;
  w2 << 0, 0.6, 0.8;
  const auto a = partial_fourier_z(P, X, 1.2, w1), b = partial_fourier_z(P, X, 1.2, w2);
  EXPECT_NEAR(a.value, b.value, 1e-8);
  EXPECT_NEAR(a.direct, b.direct, 1e-8);
  EXPECT_LE(std::abs(a.imag), 1e-10);
}

TEST(CentralFourier, PrintedExponentInconsistent) {
  Vector X(2), w(1);
  X << 0.8, 0.0;
  w << 1;
  EXPECT_DOUBLE_EQ(reduced_exponent(h1(), ReducedExponent::corrected), 2.0);
  EXPECT_DOUBLE_EQ(reduced_exponent(h1(), ReducedExponent::printed), 1.5);
  EXPECT_THROW(partial_fourier_z(p1(), X, 1.0, w, 1e-8, ReducedExponent::printed), ConsistencyError);
}

TEST(CentralFourier, DomainChecks) {
  Vector X = Vector::Zero(2), w(1);
  w << 2;
  EXPECT_THROW(partial_fourier_z(p1(), X, 1.0, w), DomainError);
  w << 1;
  EXPECT_THROW(partial_fourier_z(p1(), X, -1.0, w), DomainError);
}

TEST(CentralFourier, BetaRepresentation) {
  for (const auto& g : {make_heisenberg(1), make_quaternionic(1)}) {
    const PoissonKernel P(g);
    Vector w = Vector::Zero(g.k());
    w(0) = 1;
    for (double x : {0.0, 1.0})
      for (double nu : {0.5, 1.0}) {
        Vector X = Vector::Zero(g.dim_v());
        X(0) = x;
        const double ref = partial_fourier_z(P, X, nu, w).direct;
        EXPECT_NEAR(z_fourier_beta(P, x, nu).value, ref, 1e-4 * std::abs(ref));
      }
  }
}

TEST(LaplaceIdentity, RandomPoints) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uA(0.5, 3.0), uR(-3.0, 3.0);
  for (int r : {1, 2})
    for (int i = 0; i < 5; ++i) {
      const double A = uA(rng), rho = uR(rng);
      const auto chk = laplace_identity(A, rho, r);
      const std::complex<double> lhs = 1.0 / std::pow(std::complex<double>(A, rho), r + 1);
      EXPECT_NEAR(chk.lhs.real(), lhs.real(), 1e-14);
      EXPECT_NEAR(chk.lhs.imag(), lhs.imag(), 1e-14);
      EXPECT_NEAR(chk.rhs.real(), lhs.real(), 1e-8);
      EXPECT_NEAR(chk.rhs.imag(), lhs.imag(), 1e-8);
    }
}

// Frozen reference values for H_1, a = 1, computed independently with scipy
// from the defining two-dimensional integral.
TEST(HatBessel, ReferenceValues) {
  EXPECT_EQ(poisson_hat_bessel(p1(), 0.0), 1.0);
  const std::vector<std::pair<double, double>> ref = {
      {0.5, 0.8124194493}, {1.0, 0.5075195091}, {2.0, 0.1392114042}, {3.0, 0.0304554162}, {4.0, 0.0059300163}};
  for (auto [mu, v] : ref) EXPECT_NEAR(poisson_hat_bessel(p1(), mu), v, 1e-9) << mu;
}

TEST(HatBessel, DecreasingAndInUnitInterval) {
  for (double a : {0.5, 1.0, 2.0}) {
    const auto P = p1().at_height(a);
    double prev = 1.0;
    for (double mu = 0.25; mu <= 4.0; mu += 0.25) {
      const double v = poisson_hat_bessel(P, mu);
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, prev);
      prev = v;
    }
  }
}

TEST(HatBessel, MatchesOracle) {
  for (double a : {0.5, 2.0})
    for (double mu : {0.5, 2.0}) {
      const auto P = p1().at_height(a);
      const auto sp = SpectrumPoint::bessel(mu);
      const double cf = poisson_hat(P, sp), orc = poisson_hat_oracle(P, sp).value;
      EXPECT_NEAR(cf, orc, 1e-4 * std::abs(orc));
    }
  EXPECT_NEAR(poisson_hat_oracle(p1(), SpectrumPoint::bessel(0)).value, 1.0, 1e-4);
}

TEST(HatLaguerre, ReferenceValues) {
  const double ref[] = {0.36787944117, 0.16382203747, 0.08335130500, 0.04599651130, 0.02685446057, 0.01635412745};
  for (int l = 0; l <= 5; ++l) EXPECT_NEAR(poisson_hat_laguerre(p1(), 1.0, l), ref[l], 1e-10) << l;
}

TEST(HatLaguerre, CorrectedMatchesOracle) {
  for (const auto& g : {make_heisenberg(1), make_quaternionic(1)}) {
    const PoissonKernel P(g);
    for (int l : {0, 1, 2}) {
      const auto sp = SpectrumPoint::laguerre(1.0, l);
      const double orc = poisson_hat_oracle(P, sp).value;
      EXPECT_NEAR(poisson_hat(P, sp), orc, 1e-6 * std::abs(orc)) << group_label(g) << " " << l;
    }
  }
}

TEST(HatLaguerre, AlternatingVariantFlipsSign) {
  for (double nu : {0.5, 1.0, 2.0})
    for (int l = 0; l <= 5; ++l) {
      const double paper = poisson_hat_laguerre(p1(), nu, l, LaguerreVariant::paper);
      const double corrected = poisson_hat_laguerre(p1(), nu, l);
      EXPECT_GT(corrected, 0.0);
      EXPECT_EQ(paper > 0, l % 2 == 0) << nu << " " << l;
    }
  // pinned to agree at l = 0, nu = 1/2
  EXPECT_NEAR(poisson_hat_laguerre(p1(), 0.5, 0, LaguerreVariant::paper), poisson_hat_laguerre(p1(), 0.5, 0), 1e-12);
}

TEST(HatLaguerre, ApproximateIdentity) {
  double prev = 0.0;
  for (double a : {1.0, 0.1, 0.01}) {
    const double v = poisson_hat_laguerre(p1().at_height(a), 1.0, 1);
    EXPECT_GT(v, prev);
    EXPECT_LT(v, 1.0);
    prev = v;
  }
  EXPECT_GT(prev, 0.95);
}

TEST(HatLaguerre, HeightDilation) {
  // P_a = delta_{1/a} P_1 and the Laguerre dilation law give P_a^(nu, l) = P_1^(a nu, l)
  for (double a : {0.5, 2.0})
    for (double nu : {0.5, 1.5})
      for (int l : {0, 3})
        EXPECT_NEAR(poisson_hat_laguerre(p1().at_height(a), nu, l), poisson_hat_laguerre(p1(), a * nu, l),
                    1e-10 * poisson_hat_laguerre(p1(), a * nu, l));
  const double orc = poisson_hat_oracle(p1().at_height(2.0), SpectrumPoint::laguerre(0.5, 1)).value;
  EXPECT_NEAR(orc, poisson_hat_laguerre(p1(), 1.0, 1), 1e-6 * orc);
}

TEST(HatLaguerre, HigherHeightCloserToZero) {
  const auto P2 = p1().at_height(2.0);
  for (const auto& sp : spectrum_grid({0.25, 0.5, 1, 2, 4}, 5, {0.5, 1, 2, 3, 4}))
    EXPECT_LT(std::abs(poisson_hat(P2, sp)), std::abs(poisson_hat(p1(), sp))) << sp.label();
}

TEST(Nonvanishing, ReportOnDefaultGrid) {
  const auto grid = spectrum_grid({0.25, 0.5, 1, 2, 4}, 5, {0, 1, 2, 3, 4});
  EXPECT_EQ(grid.size(), 35u);
  const auto rep = nonvanishing_report(p1(), grid);
  EXPECT_TRUE(rep.verified);
  EXPECT_TRUE(rep.nonvanishing);
  EXPECT_GT(rep.min_abs, 1e-6);
  int checked = 0;
  for (const auto& s : rep.samples) checked += s.checked;
  EXPECT_EQ(checked, 4);
}

TEST(Nonvanishing, FlagsTinyValues) {
  NonvanishingOptions opts;
  opts.flag_below = 0.5;
  opts.check_every = 1000;
  const auto rep = nonvanishing_report(p1(), spectrum_grid({1}, 2, {}), opts);
  EXPECT_FALSE(rep.nonvanishing);
}

TEST(Erratum, SignPatternAgainstOracle) {
  const auto rep = erratum_report(p1(), {1.0}, 3);
  ASSERT_EQ(rep.sign_pattern.size(), 1u);
  EXPECT_EQ(rep.sign_pattern[0], "+-+-");
  EXPECT_LT(rep.corrected_max_rel_err, 1e-6);
  EXPECT_GT(rep.paper_max_rel_err, 1.0);
  EXPECT_GT(rep.corrected_min_abs, 0.0);
}
