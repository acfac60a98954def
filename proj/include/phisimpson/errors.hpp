#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace phisimpson {

// Base class for everything the library throws on its own account.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed expression text. offset() is a 0-based byte index into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(const std::string& name, std::size_t offset)
      : ParseError("unknown identifier '" + name + "'", offset), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// A sub-operation is undefined at the evaluation point (log 0, x/0, ...).
class DomainError : public Error {
 public:
  DomainError(const std::string& node, const std::string& reason)
      : Error("domain error in '" + node + "': " + reason), node_(node) {}

  const std::string& node() const noexcept { return node_; }

 private:
  std::string node_;
};

// Argument outside the documented range (t outside [0,1], phi outside [0, pi/2], ...).
class RangeError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

// Evaluation budget ran out before the error estimate met the tolerance.
class BudgetExceededError : public QuadratureError {
 public:
  BudgetExceededError(std::complex<double> best, double error_estimate, std::size_t evaluations)
      : QuadratureError("quadrature budget exceeded after " + std::to_string(evaluations) +
                        " evaluations (error estimate " + std::to_string(error_estimate) + ")"),
        best_(best),
        error_estimate_(error_estimate),
        evaluations_(evaluations) {}

  std::complex<double> best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_estimate_; }
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  std::complex<double> best_;
  double error_estimate_;
  std::size_t evaluations_;
};

class NonFiniteIntegrandError : public QuadratureError {
 public:
  explicit NonFiniteIntegrandError(double t)
      : QuadratureError("integrand is not finite at t = " + std::to_string(t)), t_(t) {}

  double t() const noexcept { return t_; }

 private:
  double t_;
};

// Invalid run configuration (CLI maps this to exit status 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Report output could not be written (CLI exit status 4).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace phisimpson
