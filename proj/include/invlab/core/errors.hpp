#pragma once

#include <stdexcept>
#include <string>

namespace invlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Array shapes or grids that do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A parameter outside the documented range of an operation.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A point or support that violates the domain geometry.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failure, loss of accuracy, or a singular system.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The Dirichlet operator has a (numerically) non-trivial kernel.
class KernelError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A lattice frequency hits a zero of a Fourier multiplier symbol.
class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A fixed-point iteration failed to contract.
class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Two interpolation points that the w-solution does not separate.
class SeparationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Malformed input file or header.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace invlab
