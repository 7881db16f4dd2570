#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmgd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the model is defined
/// (non-positive density, wrong branch of a wave curve, bad grid, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not meet its tolerance within the subdivision budget.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_estimate)
      : Error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

/// No sign change of the intermediate-state residual was found.
class BracketingError : public Error {
 public:
  using Error::Error;
};

/// A scalar root search inside a rarefaction fan did not converge.
class RootFindError : public Error {
 public:
  using Error::Error;
};

/// The finite-volume oracle produced a non-positive density.
class PositivityError : public Error {
 public:
  PositivityError(const std::string& what, std::size_t cell, double time)
      : Error(what), cell_(cell), time_(time) {}

  std::size_t cell() const noexcept { return cell_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t cell_;
  double time_;
};

/// Input data does not satisfy the precondition of a limit diagnostic.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A row of a limit sweep failed; carries the offending path parameter.
class SweepError : public Error {
 public:
  SweepError(const std::string& what, double eps) : Error(what), eps_(eps) {}

  double eps() const noexcept { return eps_; }

 private:
  double eps_;
};

}  // namespace cmgd
