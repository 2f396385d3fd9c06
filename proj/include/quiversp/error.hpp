#pragma once

#include <stdexcept>
#include <string>

namespace quiversp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: unknown ids, shape mismatches, duplicate entries.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Operands belong to different quivers.
class QuiverMismatch : public Error {
 public:
  explicit QuiverMismatch(const std::string& op)
      : Error(op + ": operands belong to different quivers") {}
};

/// The operation needs a quiver of a particular shape (acyclic, Aₙ chain).
class UnsupportedQuiver : public Error {
 public:
  using Error::Error;
};

/// Raised by the Fourier decomposition when some arrow map does not vanish.
class NotSemisimple : public Error {
 public:
  NotSemisimple(std::string arrow, double norm)
      : Error("representation is not semisimple: arrow '" + arrow +
              "' has max-norm " + std::to_string(norm) +
              "; use barcode or generic decomposition instead"),
        arrow_(std::move(arrow)),
        norm_(norm) {}

  const std::string& arrow() const noexcept { return arrow_; }
  double norm() const noexcept { return norm_; }

 private:
  std::string arrow_;
  double norm_;
};

/// Numerical ranks came out mutually inconsistent (negative multiplicity).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace quiversp
