#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adialin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be Hermitian was not; carries the worst entry pair.
class NotHermitianError : public Error {
 public:
  NotHermitianError(std::size_t row, std::size_t col, double defect);
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }
  double defect() const noexcept { return defect_; }

 private:
  std::size_t row_;
  std::size_t col_;
  double defect_;
};

/// Infinite condition number, or a solve against a singular matrix.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// State does not have the (real, ..., i*real, ...) split within tolerance.
class FormViolationError : public Error {
 public:
  explicit FormViolationError(double magnitude);
  double magnitude() const noexcept { return magnitude_; }

 private:
  double magnitude_;
};

/// Ancilla post-selection succeeded with (numerically) zero probability.
class VanishingPostSelectionError : public Error {
 public:
  VanishingPostSelectionError(double probability, std::size_t step);
  double probability() const noexcept { return probability_; }
  std::size_t step() const noexcept { return step_; }

 private:
  double probability_;
  std::size_t step_;
};

/// dt * max_s ||H(s)|| exceeds the first-order validity bound.
class ScheduleGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace adialin
