#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace htype {

/// Vector or matrix sizes that do not match the owning group.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter outside its admissible range (r = 0, a <= 0, alpha <= -1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of budget. Carries what it had.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial, double estimate)
      : std::runtime_error(what), partial_(partial), estimate_(estimate) {}

  double partial_value() const noexcept { return partial_; }
  double error_estimate() const noexcept { return estimate_; }

 private:
  double partial_;
  double estimate_;
};

/// A profile's declared decay does not majorize its sampled values.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent routes to the same quantity disagree beyond tolerance.
class ConsistencyError : public std::runtime_error {
 public:
  ConsistencyError(const std::string& what, double lhs, double rhs)
      : std::runtime_error(what), lhs_(lhs), rhs_(rhs) {}

  double lhs() const noexcept { return lhs_; }
  double rhs() const noexcept { return rhs_; }

 private:
  double lhs_;
  double rhs_;
};

/// A group whose J-maps fail one of the H-type axioms.
class AxiomError : public std::runtime_error {
 public:
  AxiomError(const std::string& what, std::string axiom)
      : std::runtime_error(what), axiom_(std::move(axiom)) {}

  const std::string& axiom() const noexcept { return axiom_; }

 private:
  std::string axiom_;
};

}  // namespace htype
