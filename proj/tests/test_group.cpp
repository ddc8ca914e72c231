#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "htype/error.hpp"
#include "htype/group.hpp"
#include "htype/group_io.hpp"

using namespace htype;

namespace {

GroupElement random_element(const HTypeGroup& g, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  GroupElement n = g.identity();
  for (int i = 0; i < g.dim_v(); ++i) n.X(i) = d(rng);
  for (int i = 0; i < g.k(); ++i) n.Z(i) = d(rng);
  return n;
}

double distance(const GroupElement& a, const GroupElement& b) {
  return std::max((a.X - b.X).cwiseAbs().maxCoeff(), (a.Z - b.Z).cwiseAbs().maxCoeff());
}

std::vector<HTypeGroup> all_groups() {
  return {make_heisenberg(1), make_heisenberg(2), make_heisenberg(3), make_quaternionic(1), make_quaternionic(2)};
}

}  // namespace

TEST(Group, HeisenbergDimensions) {
  const auto g = make_heisenberg(3);
  EXPECT_EQ(g.m(), 3);
  EXPECT_EQ(g.k(), 1);
  EXPECT_EQ(g.Q(), 4);
  EXPECT_DOUBLE_EQ(g.s(), 1.5);
}

TEST(Group, HeisenbergJSquaresToMinusIdentity) {
  const auto g = make_heisenberg(1);
  const Matrix J = g.j_maps()[0];
  EXPECT_LE((J * J + Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_DOUBLE_EQ(std::abs(J(0, 1)), 1.0);
}

TEST(Group, QuaternionicDimensions) {
  const auto g = make_quaternionic(1);
  EXPECT_EQ(g.m(), 2);
  EXPECT_EQ(g.k(), 3);
  EXPECT_EQ(g.Q(), 5);
  EXPECT_DOUBLE_EQ(g.s(), 2.0);
}

TEST(Group, QuaternionicMapsAnticommute) {
  const auto g = make_quaternionic(1);
  const auto& J = g.j_maps();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) EXPECT_LE((J[i] * J[j] + J[j] * J[i]).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Group, InvalidParametersRejected) {
  EXPECT_THROW(make_heisenberg(0), DomainError);
  EXPECT_THROW(make_quaternionic(0), DomainError);
}

TEST(Group, BuiltInGroupsPassValidation) {
  for (const auto& g : all_groups()) {
    const auto rep = validate_htype(g);
    EXPECT_TRUE(rep.passed) << group_label(g);
    for (const auto& a : rep.axioms) EXPECT_LE(a.residual, 1e-10) << a.axiom;
  }
}

TEST(Group, PerturbedMapsFail) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  for (const auto& g : all_groups()) {
    auto maps = g.j_maps();
    for (auto& J : maps)
      for (int i = 0; i < J.rows(); ++i)
        for (int j = 0; j < J.cols(); ++j) J(i, j) += 1e-3 * d(rng);
    const HTypeGroup bad(g.m(), g.k(), maps);
    const auto rep = validate_htype(bad);
    EXPECT_FALSE(rep.passed);
    EXPECT_FALSE(rep.first_failure().empty());
    EXPECT_THROW(require_htype(bad), AxiomError);
  }
}

TEST(Group, ZeroMapsFailWithUnitResidual) {
  const HTypeGroup zero(1, 1, {Matrix::Zero(2, 2)});
  const auto rep = validate_htype(zero);
  EXPECT_FALSE(rep.passed);
  EXPECT_EQ(rep.first_failure(), "htype");
  // unit Z: J_Z^2 + |Z|^2 I = I
  EXPECT_NEAR(rep.axioms[1].residual, 1.0, 1e-15);
}

TEST(Group, DimensionMismatchRejected) {
  EXPECT_THROW(HTypeGroup(1, 1, {Matrix::Zero(3, 3)}), DimensionError);
  EXPECT_THROW(HTypeGroup(1, 2, {Matrix::Zero(2, 2)}), DimensionError);
}

TEST(Group, BracketProperties) {
  const auto g = make_heisenberg(1);
  Vector e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;
  const Matrix J = g.j_maps()[0];
  EXPECT_DOUBLE_EQ(g.bracket(e1, e2)(0), (J * e1).dot(e2));
  EXPECT_DOUBLE_EQ(g.bracket(e1, e1)(0), 0.0);
  Vector X(2), Y(2);
  X << 0.3, -1.2;
  Y << 2.0, 0.7;
  EXPECT_NEAR(g.bracket(2 * X, Y)(0), 2 * g.bracket(X, Y)(0), 1e-15);
  EXPECT_NEAR(g.bracket(X, Y)(0), -g.bracket(Y, X)(0), 1e-15);
}

TEST(Group, ProductOfBasisVectors) {
  const auto g = make_heisenberg(1);
  const auto e1 = make_element(g, {1, 0}, {0});
  const auto e2 = make_element(g, {0, 1}, {0});
  const auto p = g.mul(e1, e2);
  EXPECT_DOUBLE_EQ(p.X(0), 1.0);
  EXPECT_DOUBLE_EQ(p.X(1), 1.0);
  EXPECT_DOUBLE_EQ(p.Z(0), 0.5 * g.bracket(e1.X, e2.X)(0));
}

TEST(Group, IdentityAndInverse) {
  std::mt19937_64 rng(11);
  for (const auto& g : all_groups()) {
    EXPECT_EQ(distance(g.inv(g.identity()), g.identity()), 0.0);
    for (int t = 0; t < 20; ++t) {
      const auto n = random_element(g, rng);
      EXPECT_EQ(distance(g.mul(n, g.identity()), n), 0.0);
      EXPECT_EQ(distance(g.inv(g.inv(n)), n), 0.0);
      EXPECT_LE(distance(g.mul(n, g.inv(n)), g.identity()), 1e-14);
    }
  }
}

TEST(Group, Associativity) {
  std::mt19937_64 rng(13);
  for (const auto& g : all_groups())
    for (int t = 0; t < 50; ++t) {
      const auto a = random_element(g, rng), b = random_element(g, rng), c = random_element(g, rng);
      EXPECT_LE(distance(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c))), 1e-12);
    }
}

TEST(Group, DilationIsAutomorphism) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ua(0.1, 10.0);
  for (const auto& g : all_groups())
    for (int t = 0; t < 50; ++t) {
      const double a = ua(rng);
      const auto n1 = random_element(g, rng), n2 = random_element(g, rng);
      EXPECT_LE(distance(g.dilate(a, g.mul(n1, n2)), g.mul(g.dilate(a, n1), g.dilate(a, n2))), 1e-12);
    }
}

TEST(Group, DilationComposition) {
  const auto g = make_quaternionic(1);
  std::mt19937_64 rng(19);
  const auto n = random_element(g, rng);
  EXPECT_EQ(distance(g.dilate(1.0, n), n), 0.0);
  EXPECT_LE(distance(g.dilate(2.0, g.dilate(0.3, n)), g.dilate(0.6, n)), 1e-14);
  EXPECT_THROW(g.dilate(0.0, n), DomainError);
  EXPECT_THROW(g.dilate(-1.0, n), DomainError);
}

TEST(Group, DomainProduct) {
  const auto g = make_heisenberg(1);
  const DomainPoint p{make_element(g, {1, 2}, {3}), 4.0};
  const DomainPoint q{make_element(g, {0.5, -1}, {0.25}), 0.5};
  const auto r = g.mul(p, q);
  const double br = g.bracket(p.element.X, q.element.X)(0);
  EXPECT_NEAR(r.element.X(0), 1 + 2 * 0.5, 1e-15);
  EXPECT_NEAR(r.element.X(1), 2 + 2 * -1, 1e-15);
  EXPECT_NEAR(r.element.Z(0), 3 + 4 * 0.25 + 0.5 * 2 * br, 1e-14);
  EXPECT_DOUBLE_EQ(r.a, 2.0);
}

TEST(Group, JsonRoundTrip) {
  for (const auto& g : all_groups()) {
    const auto back = group_from_json(group_to_json(g));
    EXPECT_EQ(back.m(), g.m());
    EXPECT_EQ(back.k(), g.k());
    for (int i = 0; i < g.k(); ++i) EXPECT_EQ((back.j_maps()[i] - g.j_maps()[i]).cwiseAbs().maxCoeff(), 0.0);
  }
  const auto custom = group_from_json(R"({"family":"custom","m":1,"k":1,"j_maps":[[[0,-1],[1,0]]]})");
  EXPECT_TRUE(validate_htype(custom).passed);
  const auto again = group_from_json(group_to_json(custom));
  EXPECT_EQ(again.family(), GroupFamily::custom);
}

TEST(Group, SpecShorthand) {
  EXPECT_EQ(parse_group_spec("heisenberg:2").m(), 2);
  EXPECT_EQ(parse_group_spec("quaternionic:1").k(), 3);
  EXPECT_EQ(parse_group_spec(R"({"family":"heisenberg","r":3})").m(), 3);
  EXPECT_THROW(parse_group_spec("heisenberg"), std::invalid_argument);
  EXPECT_THROW(parse_group_spec("octonionic:1"), std::invalid_argument);
  EXPECT_THROW(group_from_json(R"({"family":"custom","m":1,"k":1,"j_maps":[[[0,-1,0],[1,0,0]]]})"), DimensionError);
}
