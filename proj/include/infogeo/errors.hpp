#pragma once

#include <stdexcept>
#include <string>

namespace infogeo {

/// Base type for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NonPositiveWeight : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class BaseMismatch : public Error {
 public:
  using Error::Error;
};

class FootMismatch : public Error {
 public:
  using Error::Error;
};

class SingularBasis : public Error {
 public:
  using Error::Error;
};

class CurveDomain : public Error {
 public:
  using Error::Error;
};

class OutsideChart : public Error {
 public:
  using Error::Error;
};

class NotOrthogonal : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised when a trajectory or an optimizer update leaves the open simplex.
/// Carries the parameter value (time or iteration) at which the exit happened.
class LeftSimplex : public Error {
 public:
  LeftSimplex(const std::string& msg, double exit_time)
      : Error(msg), exit_time_(exit_time) {}
  double exit_time() const { return exit_time_; }

 private:
  double exit_time_;
};

}  // namespace infogeo
