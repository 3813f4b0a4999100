#pragma once

#include <stdexcept>
#include <string>

namespace dfwm {

/// Input outside the domain of an operation (negative rate, eta > 1, ...).
class DomainError : public std::domain_error
{
 public:
  using std::domain_error::domain_error;
};

/// Steady-state linear system could not be solved reliably.
class SingularSystemError : public std::runtime_error
{
 public:
  SingularSystemError(const std::string& what, double condition_number)
      : std::runtime_error(what), condition_number_(condition_number)
  {
  }
  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

/// Quadrature did not reach the requested tolerance.
class IntegrationError : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

/// Phase-conjugate coupling at or above |kappa|L = pi/2.
class AboveThresholdError : public DomainError
{
 public:
  AboveThresholdError(const std::string& what, double coupling_l)
      : DomainError(what), coupling_l_(coupling_l)
  {
  }
  double coupling_l() const noexcept { return coupling_l_; }

 private:
  double coupling_l_;
};

/// Linearized photon-number statistics requested for a dim beam.
class InsufficientBrightnessError : public DomainError
{
 public:
  using DomainError::DomainError;
};

class ConfigError : public std::runtime_error
{
 public:
  ConfigError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line)
  {
  }
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace dfwm
