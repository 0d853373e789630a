#ifndef SGGN_ERRORS_HPP
#define SGGN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sggn {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shapes do not line up (vector lengths, matrix sizes, non-power-of-two FWHT input).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A parameter is outside its documented range (epsilon, sketch rows, thresholds).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A matrix that must have full rank (or be positive definite) is not.
class RankError : public Error {
 public:
  using Error::Error;
};

// A non-finite value showed up mid-computation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// The iterative solver exhausted its budget even after the retry schedule.
class SolveError : public Error {
 public:
  using Error::Error;
};

// A link function reported a negative second derivative.
class ConvexityError : public Error {
 public:
  using Error::Error;
};

// The kernel least-eigenvalue assumption (lambda > 0) does not hold for this data.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; message carries the 1-based line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sggn

#endif  // SGGN_ERRORS_HPP
