#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace breather {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A diagonal-gauge coefficient d_j = -c_j'/(2 c_j) would divide by zero.
class DivisionByZeroGauge : public Error {
 public:
  using Error::Error;
};

/// The coefficient ODE system is violated beyond tolerance.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil would leave the scenario time window.
class StencilOutOfWindow : public Error {
 public:
  using Error::Error;
};

class NonFiniteDetected : public Error {
 public:
  NonFiniteDetected(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class GeometryMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace breather
