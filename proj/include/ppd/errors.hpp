#pragma once

#include <stdexcept>
#include <string>

namespace ppd {

/// The representation does not support the requested operation.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// derivative() asked for more smoothness than the profile has.
class NotDifferentiable : public std::domain_error {
 public:
  NotDifferentiable(const std::string& what, double point) : std::domain_error(what), point_(point) {}
  double point() const { return point_; }

 private:
  double point_;
};

/// An operation's documented precondition does not hold.
class PreconditionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver found no admissible solution.
class NoSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ppd
