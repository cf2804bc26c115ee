#pragma once

// Closed-form mesh sizes, distortion constants, net cardinalities and the
// metric-entropy chain, evaluated in 50-digit arithmetic with a 100-digit audit
// of every floor.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "normmesh/precision.hpp"

namespace normmesh {

/// floor(e^{2n} (n+2)^{2n} d^n (2n + 1 + floor(n ln d))^n)
BigInt mesh_size_A(std::uint64_t n, std::uint64_t d);

/// (e (n+2)^2)^{1/(n+2)}
HpFloat dist_bound_A(std::uint64_t n);

/// e^{2n} d^n, the majorant of dim P_d^n used by the fixed-schedule mesh.
HpFloat dim_majorant(std::uint64_t n, std::uint64_t d);

struct Cor1Mesh {
  BigInt size;                // floor(c d^k s^k (floor(ln(c d^k)) + 1)^k)
  HpFloat distortion_bound;   // (e s^k)^{1/s}
  HpFloat schedule_c;         // 1/s + k ln(s)/s
};

Cor1Mesh mesh_size_cor1(std::uint64_t d, std::uint64_t k, const GrowthConstant& c_hat, std::uint64_t s);

struct NetCardinality {
  HpFloat radius;     // R = (1 + xi nbar) / (1 - xi nbar)
  HpFloat log_count;  // N nbar ln(1 + 2/xi)
};

NetCardinality net_cardinality_log(const BigInt& mesh_size, std::uint64_t nbar, const HpFloat& xi);

/// (1 + k ln x) / x, the logarithm of (e x^k)^{1/x}.
HpFloat phi(const HpFloat& x, std::uint64_t k);
/// Left end of the interval where phi decreases: e^{(k-1)/k}.
HpFloat phi_decreasing_from(std::uint64_t k);
/// Right end of phi's range on that interval: e^{-(k-1)/k}.
HpFloat phi_domain_max(std::uint64_t k);
/// (3k/y) ln(3k/y), a majorant of phi^{-1}(y).
HpFloat phi_inverse_bound(const HpFloat& y, std::uint64_t k);
/// Root s >= e^{(k-1)/k} of phi(s) = y, by bisection bracketed by
/// phi_inverse_bound. A bracketing failure raises InvariantViolation.
HpFloat phi_inverse(const HpFloat& y, std::uint64_t k);

using InputValue = std::variant<std::int64_t, double, std::string>;

struct BoundEntry {
  std::string name;
  HpFloat value;
  std::optional<BigInt> integer;  // set for floored counts
  std::string formula;
};

struct BoundReport {
  std::vector<std::pair<std::string, InputValue>> inputs;
  std::vector<BoundEntry> values;
  /// Constants that appear only as existence statements and are not computed.
  std::vector<std::string> not_constructive;

  const BoundEntry& at(const std::string& name) const;
  bool contains(const std::string& name) const;
};

/// Fixed-schedule mesh size and distortion constant, with the dimension count.
BoundReport mesh_bounds_report(std::uint64_t n, std::uint64_t d);
/// Polynomial-growth mesh size and distortion for a given (c, k, s).
BoundReport cor1_report(std::uint64_t d, std::uint64_t k, const GrowthConstant& c_hat, std::uint64_t s);

/// Inputs for the covering-number chain.
struct EntropyInputs {
  std::uint64_t d = 1;
  std::uint64_t k = 1;
  GrowthConstant c_hat = GrowthConstant::from_value(1.0);
  std::uint64_t nbar = 1;
  double eps = 0.5;
};

/// In order: s_eps, s_eps_bound_3_7, R_eps, inv_xi_3_8, N_ds_cor1,
/// dist_bound_cor1, log_net_card, entropy_chain_final.
BoundReport entropy_chain(const EntropyInputs& in);

/// 1/xi as nbar (1 + R)/(R - 1) with R = (1+eps)^{1/4}.
HpFloat inverse_xi_ratio(std::uint64_t nbar, const HpFloat& eps);
/// 1/xi as nbar ((1+eps)^{1/4} + 1)^2 ((1+eps)^{1/2} + 1) / eps.
HpFloat inverse_xi_expanded(std::uint64_t nbar, const HpFloat& eps);

std::vector<std::string> nonconstructive_constants();

}  // namespace normmesh
