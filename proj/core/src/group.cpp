#include "htype/group.hpp"

#include <cmath>
#include <random>
#include <utility>

#include <fmt/format.h>

#include "htype/error.hpp"

namespace htype {

namespace {

// Left multiplication by i, j, k on a quaternion stored as (1, i, j, k)
// coordinates.
Matrix quaternion_left(int unit) {
  Matrix L = Matrix::Zero(4, 4);
  switch (unit) {
    case 0:  // i
      L(0, 1) = -1; L(1, 0) = 1; L(2, 3) = -1; L(3, 2) = 1;
      break;
    case 1:  // j
      L(0, 2) = -1; L(1, 3) = 1; L(2, 0) = 1; L(3, 1) = -1;
      break;
    default:  // k
      L(0, 3) = -1; L(1, 2) = -1; L(2, 1) = 1; L(3, 0) = 1;
      break;
  }
  return L;
}

Vector random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

Vector random_vector(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = unif(rng);
  return v;
}

}  // namespace

HTypeGroup::HTypeGroup(int m, int k, std::vector<Matrix> j_maps)
    : HTypeGroup(m, k, std::move(j_maps), GroupFamily::custom, 0) {}

HTypeGroup::HTypeGroup(int m, int k, std::vector<Matrix> j_maps, GroupFamily family, int param)
    : m_(m), k_(k), j_maps_(std::move(j_maps)), family_(family), family_param_(param) {
  if (m < 1 || k < 1) throw DimensionError(fmt::format("need m, k >= 1 (got m={}, k={})", m, k));
  if (static_cast<int>(j_maps_.size()) != k)
    throw DimensionError(fmt::format("expected {} J-maps, got {}", k, j_maps_.size()));
  for (std::size_t i = 0; i < j_maps_.size(); ++i) {
    if (j_maps_[i].rows() != 2 * m || j_maps_[i].cols() != 2 * m)
      throw DimensionError(fmt::format("J-map {} is {}x{}, expected {}x{}", i, j_maps_[i].rows(),
                                       j_maps_[i].cols(), 2 * m, 2 * m));
  }
}

HTypeGroup HTypeGroup::heisenberg(int r) {
  if (r < 1) throw DomainError(fmt::format("Heisenberg group needs r >= 1 (got {})", r));
  Matrix J = Matrix::Zero(2 * r, 2 * r);
  for (int b = 0; b < r; ++b) {
    J(2 * b + 1, 2 * b) = 1.0;
    J(2 * b, 2 * b + 1) = -1.0;
  }
  return HTypeGroup(r, 1, {J}, GroupFamily::heisenberg, r);
}

HTypeGroup HTypeGroup::quaternionic(int n) {
  if (n < 1) throw DomainError(fmt::format("quaternionic group needs n >= 1 (got {})", n));
  std::vector<Matrix> maps;
  for (int u = 0; u < 3; ++u) {
    Matrix J = Matrix::Zero(4 * n, 4 * n);
    const Matrix L = quaternion_left(u);
    for (int b = 0; b < n; ++b) J.block(4 * b, 4 * b, 4, 4) = L;
    maps.push_back(std::move(J));
  }
  return HTypeGroup(2 * n, 3, std::move(maps), GroupFamily::quaternionic, n);
}

HTypeGroup make_heisenberg(int r) { return HTypeGroup::heisenberg(r); }
HTypeGroup make_quaternionic(int n) { return HTypeGroup::quaternionic(n); }

Matrix HTypeGroup::j_of(const Vector& Z) const {
  if (Z.size() != k_) throw DimensionError(fmt::format("Z has length {}, expected {}", Z.size(), k_));
  Matrix J = Matrix::Zero(2 * m_, 2 * m_);
  for (int i = 0; i < k_; ++i) J += Z(i) * j_maps_[i];
  return J;
}

Vector HTypeGroup::bracket(const Vector& X, const Vector& Y) const {
  if (X.size() != 2 * m_ || Y.size() != 2 * m_)
    throw DimensionError(fmt::format("bracket needs v-vectors of length {}", 2 * m_));
  Vector out(k_);
  for (int i = 0; i < k_; ++i) out(i) = (j_maps_[i] * X).dot(Y);
  return out;
}

void HTypeGroup::check(const GroupElement& n) const {
  if (n.X.size() != 2 * m_ || n.Z.size() != k_)
    throw DimensionError(fmt::format("element has shape ({}, {}), group expects ({}, {})", n.X.size(),
                                     n.Z.size(), 2 * m_, k_));
}

GroupElement HTypeGroup::identity() const { return {Vector::Zero(2 * m_), Vector::Zero(k_)}; }

GroupElement HTypeGroup::mul(const GroupElement& lhs, const GroupElement& rhs) const {
  check(lhs);
  check(rhs);
  return {lhs.X + rhs.X, lhs.Z + rhs.Z + 0.5 * bracket(lhs.X, rhs.X)};
}

GroupElement HTypeGroup::inv(const GroupElement& n) const {
  check(n);
  return {-n.X, -n.Z};
}

GroupElement HTypeGroup::dilate(double a, const GroupElement& n) const {
  if (!(a > 0.0)) throw DomainError(fmt::format("dilation parameter must be positive (got {})", a));
  check(n);
  return {std::sqrt(a) * n.X, a * n.Z};
}

DomainPoint HTypeGroup::mul(const DomainPoint& lhs, const DomainPoint& rhs) const {
  check(lhs.element);
  check(rhs.element);
  const double root = std::sqrt(lhs.a);
  const Vector& X = lhs.element.X;
  const Vector& Xp = rhs.element.X;
  return {{X + root * Xp, lhs.element.Z + lhs.a * rhs.element.Z + 0.5 * root * bracket(X, Xp)},
          lhs.a * rhs.a};
}

double HTypeGroup::gauge(const GroupElement& n) {
  const double q = 0.25 * n.X.squaredNorm();
  return std::pow(q * q + n.Z.squaredNorm(), 0.25);
}

GroupElement make_element(const HTypeGroup& group, std::vector<double> X, std::vector<double> Z) {
  GroupElement n{Eigen::Map<Vector>(X.data(), static_cast<Eigen::Index>(X.size())),
                 Eigen::Map<Vector>(Z.data(), static_cast<Eigen::Index>(Z.size()))};
  group.check(n);
  return n;
}

std::string ValidationReport::first_failure() const {
  for (const auto& a : axioms)
    if (!a.passed) return a.axiom;
  return {};
}

ValidationReport validate_htype(const HTypeGroup& group, int samples, std::uint64_t seed,
                                double tolerance) {
  ValidationReport report;
  report.tolerance = tolerance;
  const int dv = group.dim_v();
  const int k = group.k();

  double skew = 0.0;
  for (const auto& J : group.j_maps()) skew = std::max(skew, (J + J.transpose()).cwiseAbs().maxCoeff());

  std::mt19937_64 rng(seed);
  double htype = 0.0;
  double compat = 0.0;
  const Matrix I = Matrix::Identity(dv, dv);
  for (int i = 0; i < samples; ++i) {
    const Vector Z = random_unit(rng, k);
    const Matrix J = group.j_of(Z);
    htype = std::max(htype, (J * J + Z.squaredNorm() * I).cwiseAbs().maxCoeff());

    const Vector X = random_vector(rng, dv);
    const Vector Y = random_vector(rng, dv);
    compat = std::max(compat, std::abs((J * X).dot(Y) - group.bracket(X, Y).dot(Z)));
  }

  report.axioms = {{"skew", skew, skew <= tolerance},
                   {"htype", htype, htype <= tolerance},
                   {"compatibility", compat, compat <= tolerance}};
  report.passed = report.axioms[0].passed && report.axioms[1].passed && report.axioms[2].passed;
  return report;
}

void require_htype(const HTypeGroup& group) {
  const auto report = validate_htype(group);
  if (!report.passed) {
    const auto axiom = report.first_failure();
    double residual = 0.0;
    for (const auto& a : report.axioms)
      if (a.axiom == axiom) residual = a.residual;
    throw AxiomError(fmt::format("group fails the {} axiom (residual {:.3e})", axiom, residual), axiom);
  }
}

}  // namespace htype
