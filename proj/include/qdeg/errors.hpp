#pragma once

#include <stdexcept>
#include <string>

namespace qdeg {

/// Invalid argument value (out-of-range index, bad size, bad family parameter).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument is well-formed but outside the domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested construction does not apply in this parameter regime.
class NotApplicableError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A table-driven function is missing an entry it was asked for.
class SpecificationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure inside a solver.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration exceeded its node or size budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, double explored_mass)
      : std::runtime_error(what), explored_mass_(explored_mass) {}

  /// Probability mass that had been accounted for when the budget ran out.
  double explored_mass() const noexcept { return explored_mass_; }

 private:
  double explored_mass_;
};

}  // namespace qdeg
