#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace sphconv {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position()` is a byte offset into the source.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error("syntax error at " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class NonIntegerExponent : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class UnknownBuiltin : public Error {
 public:
  explicit UnknownBuiltin(const std::string& name)
      : Error("unknown builtin map '" + name + "'") {}
};

/// Anything that prevents a numerical value from being produced.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class PoleError : public EvaluationError {
 public:
  explicit PoleError(std::complex<double> z)
      : EvaluationError("pole: zero denominator at z=" + describe(z)), z_(z) {}
  std::complex<double> where() const noexcept { return z_; }

  static std::string describe(std::complex<double> z) {
    return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
  }

 private:
  std::complex<double> z_;
};

class BranchError : public EvaluationError {
 public:
  explicit BranchError(std::complex<double> z)
      : EvaluationError("sqrt of zero at z=" + PoleError::describe(z)) {}
};

class CriticalPointError : public EvaluationError {
 public:
  explicit CriticalPointError(std::complex<double> z)
      : EvaluationError("critical point f'(z)=0 at z=" + PoleError::describe(z)) {}
};

class DomainError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

class DegenerateTangent : public EvaluationError {
 public:
  DegenerateTangent() : EvaluationError("curve tangent vanishes") {}
};

class LogOfZero : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

/// Failure of one quadrature node, carrying the node index.
class NodeError : public EvaluationError {
 public:
  NodeError(std::size_t node, const std::string& cause)
      : EvaluationError("node " + std::to_string(node) + ": " + cause), node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

}  // namespace sphconv
