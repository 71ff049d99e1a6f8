#pragma once

#include <stdexcept>
#include <string>

namespace nfield {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two fields (or a field and a kernel) live on different grids.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A sampled function produced a non-finite value.
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// A Fourier multiplier is non-finite at a represented frequency.
class MultiplierError : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// Requested coupling strength is outside the range where the fixed-point
/// map is a contraction.
class ContractionViolation : public Error {
 public:
  using Error::Error;
};

/// Time integration produced a non-finite state.
class BlowUp : public Error {
 public:
  BlowUp(const std::string& what, double last_valid_t)
      : Error(what), last_valid_t_(last_valid_t) {}
  double last_valid_t() const noexcept { return last_valid_t_; }

 private:
  double last_valid_t_;
};

/// Argument outside the domain where a closed form is valid.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NearPole : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : Error(what), estimate_(estimate), error_(error) {}
  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

/// A certified bracket failed to contain a sign change.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class UnsupportedElement : public Error {
 public:
  using Error::Error;
};

class HorizonTooLong : public Error {
 public:
  using Error::Error;
};

class NearSingularity : public Error {
 public:
  using Error::Error;
};

}  // namespace nfield
