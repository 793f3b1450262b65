#pragma once

#include <stdexcept>
#include <string>

namespace uat {

/// Caller violated a documented precondition (bad epsilon, empty interval, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric evaluation left its domain: division by zero, ln of a
/// non-positive value, a non-finite function value at a required point.
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, double input)
      : std::domain_error(what), input_(input) {}

  double input() const noexcept { return input_; }

 private:
  double input_;
};

/// The recipe asks for more hidden units than the configured cap allows.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, double required)
      : std::runtime_error(what), required_(required) {}

  double required() const noexcept { return required_; }

 private:
  double required_;
};

}  // namespace uat
