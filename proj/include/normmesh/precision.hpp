#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace normmesh {

/// Working precision for closed-form bounds (50 significant digits).
using HpFloat = boost::multiprecision::cpp_bin_float_50;
/// Audit precision: every floor is recomputed here and must agree.
using HpAudit = boost::multiprecision::cpp_bin_float_100;
using BigInt = boost::multiprecision::cpp_int;

/// Floor of expr(T) evaluated in both HpFloat and HpAudit; throws
/// InvariantViolation if the two disagree.
template <class Expr>
BigInt audited_floor(Expr&& expr, const char* what);

std::string to_decimal(const HpFloat& x, int digits = 30);

/// A positive constant known through its logarithm, so that values such as
/// e^4 are represented exactly.
class GrowthConstant {
 public:
  static GrowthConstant from_value(double value);
  static GrowthConstant from_log(const HpAudit& log_value);

  const HpAudit& log_value() const noexcept { return log_; }
  HpAudit value() const;
  double to_double() const;
  /// Echo form used in reports: "exp(x)" or the decimal value.
  const std::string& text() const noexcept { return text_; }

 private:
  HpAudit log_;
  std::optional<double> exact_;
  std::string text_;
};

}  // namespace normmesh

#include "normmesh/error.hpp"

namespace normmesh {

template <class Expr>
BigInt audited_floor(Expr&& expr, const char* what) {
  const HpFloat lo = expr(HpFloat{});
  const HpAudit hi = expr(HpAudit{});
  const BigInt a = static_cast<BigInt>(floor(lo));
  const BigInt b = static_cast<BigInt>(floor(hi));
  if (a != b) {
    throw InvariantViolation(std::string("floor of ") + what + " differs between working and audit precision");
  }
  return a;
}

}  // namespace normmesh
