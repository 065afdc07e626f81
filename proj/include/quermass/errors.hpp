#pragma once

#include <stdexcept>
#include <string>

namespace quermass {

/// Bad input: violated precondition, invalid construction, degenerate data.
/// CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical failure: tolerance not reached, ill-conditioned solve,
/// undefined ratio. CLI maps this to exit code 3.
class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative scheme ran out of refinement budget. Carries no payload by
/// itself; schemes that can return a best-effort result derive from it.
/// CLI maps this to exit code 3.
class convergence_error : public numerical_error {
public:
  explicit convergence_error(const std::string& what) : numerical_error(what) {}
};

/// A resource guard tripped (work estimate above the configured budget).
/// CLI maps this to exit code 4.
class resource_error : public std::runtime_error {
public:
  resource_error(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  /// Estimated size of the work that was refused.
  double estimate() const { return estimate_; }

private:
  double estimate_;
};

}  // namespace quermass
