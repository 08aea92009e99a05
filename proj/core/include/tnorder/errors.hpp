#pragma once

#include <stdexcept>
#include <string>

namespace tnorder {

/// Evaluation requested at a point where a projected function has a
/// logarithmic singularity (a breakpoint of the input).
class SingularPointError : public std::domain_error {
 public:
  SingularPointError(const std::string& what, double where)
      : std::domain_error(what), where_(where) {}
  double where() const noexcept { return where_; }

 private:
  double where_;
};

/// Principal-value quadrature failed to reach the requested tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double spread)
      : std::runtime_error(what), spread_(spread) {}
  double spread() const noexcept { return spread_; }

 private:
  double spread_;
};

/// Malformed schedule, mode set, current or run configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace tnorder
