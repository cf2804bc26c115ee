#pragma once

#include <stdexcept>
#include <string>

namespace normmesh {

enum class ErrorCode {
  input,
  validation,
  overflow,
  non_determining,
  singular,
  invariant_violation,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Unreadable or malformed user input (files, flags).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorCode::input, what) {}
};

/// Parameters outside the documented domain.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorCode::validation, what) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what) : Error(ErrorCode::overflow, what) {}
};

/// The sampled set does not separate polynomials of the requested degree.
class NonDeterminingError : public Error {
 public:
  NonDeterminingError(const std::string& what, std::size_t rank)
      : Error(ErrorCode::non_determining, what), rank_(rank) {}
  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

class SingularError : public Error {
 public:
  explicit SingularError(const std::string& what) : Error(ErrorCode::singular, what) {}
};

/// A proved inequality failed numerically. Never expected; signals a bug or a
/// precision problem, not bad input.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what)
      : Error(ErrorCode::invariant_violation, what) {}
};

}  // namespace normmesh
