#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace zzsim {

/// Precondition on the inputs was violated (bad mode, wrong dimension, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed-form expression hit a vanishing denominator.
class PoleError : public std::domain_error {
 public:
  PoleError(std::string denominator, double value)
      : std::domain_error("vanishing denominator " + denominator + " = " +
                          std::to_string(value)),
        denominator_(std::move(denominator)),
        value_(value) {}

  const std::string& denominator() const { return denominator_; }
  double value() const { return value_; }

 private:
  std::string denominator_;
  double value_;
};

/// A computational eigenstate could not be assigned a bare label with
/// overlap >= 0.5. Carries the overlaps of |0000>, |1000>, |0100>, |1100>.
class HybridizationError : public std::runtime_error {
 public:
  HybridizationError(const std::string& what, std::vector<double> overlaps)
      : std::runtime_error(what), overlaps_(std::move(overlaps)) {}

  const std::vector<double>& overlaps() const { return overlaps_; }

 private:
  std::vector<double> overlaps_;
};

/// A result failed its own physical-consistency check.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace zzsim
