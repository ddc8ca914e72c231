#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace htype {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A point (X, Z) of N = v + z.
struct GroupElement {
  Vector X;
  Vector Z;
};

/// A point (X, Z, a) of S = NA, i.e. of the Siegel domain model.
struct DomainPoint {
  GroupElement element;
  double a = 1.0;
};

enum class GroupFamily { heisenberg, quaternionic, custom };

/// An H-type group given by J-maps on an orthonormal basis of the centre.
///
/// J_Z for a general Z is assembled by linearity. Construction checks only
/// shapes; the H-type axioms are checked by validate_htype() and enforced by
/// require_htype(). Immutable after construction.
class HTypeGroup {
 public:
  /// Custom group. Throws DimensionError if a J-map is not 2m x 2m or the
  /// number of maps differs from k.
  HTypeGroup(int m, int k, std::vector<Matrix> j_maps);

  static HTypeGroup heisenberg(int r);
  static HTypeGroup quaternionic(int n);

  int m() const noexcept { return m_; }
  int k() const noexcept { return k_; }
  int dim_v() const noexcept { return 2 * m_; }
  /// Homogeneous dimension m + k.
  int Q() const noexcept { return m_ + k_; }
  /// (Q - 1) / 2, a half-integer.
  double s() const noexcept { return 0.5 * (Q() - 1); }

  GroupFamily family() const noexcept { return family_; }
  /// Family parameter (r or n); 0 for custom groups.
  int family_parameter() const noexcept { return family_param_; }

  const std::vector<Matrix>& j_maps() const noexcept { return j_maps_; }
  /// J_Z = sum_i Z_i J_{e_i}.
  Matrix j_of(const Vector& Z) const;

  /// [X, Y]_i = <J_{e_i} X, Y>.
  Vector bracket(const Vector& X, const Vector& Y) const;

  GroupElement identity() const;
  GroupElement mul(const GroupElement& lhs, const GroupElement& rhs) const;
  GroupElement inv(const GroupElement& n) const;
  /// delta_a (X, Z) = (a^{1/2} X, a Z). Throws DomainError for a <= 0.
  GroupElement dilate(double a, const GroupElement& n) const;

  /// Product law of S = NA.
  DomainPoint mul(const DomainPoint& lhs, const DomainPoint& rhs) const;

  /// Homogeneous gauge ((|X|^2/4)^2 + |Z|^2)^{1/4}.
  static double gauge(const GroupElement& n);

  /// Throws DimensionError unless X, Z have lengths 2m and k.
  void check(const GroupElement& n) const;

 private:
  HTypeGroup(int m, int k, std::vector<Matrix> j_maps, GroupFamily family, int param);

  int m_;
  int k_;
  std::vector<Matrix> j_maps_;
  GroupFamily family_ = GroupFamily::custom;
  int family_param_ = 0;
};

GroupElement make_element(const HTypeGroup& group, std::vector<double> X, std::vector<double> Z);

HTypeGroup make_heisenberg(int r);
HTypeGroup make_quaternionic(int n);

struct AxiomResidual {
  std::string axiom;
  double residual = 0.0;
  bool passed = false;
};

struct ValidationReport {
  double tolerance = 1e-10;
  std::vector<AxiomResidual> axioms;  // skew, htype, compatibility
  bool passed = false;

  /// First failing axiom, or empty.
  std::string first_failure() const;
};

/// Residuals of skewness, J_Z^2 = -|Z|^2 I and <J_Z X, Y> = <[X, Y], Z>.
/// The last two are sampled at `samples` pseudo-random unit Z (and random
/// X, Y) drawn from a generator seeded with `seed`.
ValidationReport validate_htype(const HTypeGroup& group, int samples = 100,
                                std::uint64_t seed = 20050601, double tolerance = 1e-10);

/// Throws AxiomError naming the first failed axiom.
void require_htype(const HTypeGroup& group);

}  // namespace htype
