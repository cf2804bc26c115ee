#include "normmesh/bounds.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

#include "normmesh/error.hpp"

namespace normmesh {

namespace {

template <class T>
T ipow(T base, std::uint64_t e) {
  T out = 1;
  while (e > 0) {
    if (e & 1u) out *= base;
    base *= base;
    e >>= 1u;
  }
  return out;
}

// ln(c d^k) built from ln c so that exact cases (c = e^m, d = 1) stay exact.
template <class T>
T log_scaled(const GrowthConstant& c, std::uint64_t d, std::uint64_t k) {
  return static_cast<T>(c.log_value()) + T(k) * log(T(d));
}

template <class T>
T value_scaled(const GrowthConstant& c, std::uint64_t d, std::uint64_t k) {
  return static_cast<T>(c.value()) * ipow(T(d), k);
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void require_positive(std::uint64_t v, const char* name) {
  if (v == 0) throw ValidationError(std::string(name) + " must be positive");
}

BoundEntry entry(std::string name, HpFloat value, std::string formula) {
  if (!isfinite(value)) throw InvariantViolation("non-finite value for " + name);
  return BoundEntry{std::move(name), std::move(value), std::nullopt, std::move(formula)};
}

BoundEntry count_entry(std::string name, const BigInt& value, std::string formula) {
  return BoundEntry{std::move(name), static_cast<HpFloat>(value), value, std::move(formula)};
}

}  // namespace

std::string to_decimal(const HpFloat& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

GrowthConstant GrowthConstant::from_value(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ValidationError("growth constant must be positive and finite");
  GrowthConstant c;
  c.log_ = log(HpAudit(value));
  c.exact_ = value;
  c.text_ = shortest(value);
  return c;
}

GrowthConstant GrowthConstant::from_log(const HpAudit& log_value) {
  if (!isfinite(log_value)) throw ValidationError("growth constant log must be finite");
  GrowthConstant c;
  c.log_ = log_value;
  std::ostringstream os;
  os.precision(17);
  os << "exp(" << static_cast<double>(log_value) << ")";
  c.text_ = os.str();
  return c;
}

HpAudit GrowthConstant::value() const {
  if (exact_) return HpAudit(*exact_);
  return exp(log_);
}

double GrowthConstant::to_double() const { return static_cast<double>(value()); }

HpFloat dim_majorant(std::uint64_t n, std::uint64_t d) {
  return exp(HpFloat(2 * n)) * ipow(HpFloat(d), n);
}

BigInt mesh_size_A(std::uint64_t n, std::uint64_t d) {
  require_positive(n, "n");
  require_positive(d, "d");
  const BigInt log_floor =
      audited_floor([&](auto tag) { using T = decltype(tag); return T(n) * log(T(d)); }, "n ln d");
  return audited_floor(
      [&](auto tag) {
        using T = decltype(tag);
        const T inner = T(2 * n + 1) + static_cast<T>(log_floor);
        return exp(T(2 * n)) * ipow(T(n + 2), 2 * n) * ipow(T(d), n) * ipow(inner, n);
      },
      "N_dn");
}

HpFloat dist_bound_A(std::uint64_t n) {
  require_positive(n, "n");
  const HpFloat m = HpFloat(n + 2);
  return pow(exp(HpFloat(1)) * m * m, 1 / m);
}

Cor1Mesh mesh_size_cor1(std::uint64_t d, std::uint64_t k, const GrowthConstant& c_hat, std::uint64_t s) {
  require_positive(d, "d");
  require_positive(k, "k");
  if (s < 3) throw ValidationError("s must be at least 3");
  if (log_scaled<HpAudit>(c_hat, d, k) < 0) throw ValidationError("c_hat * d^k must be at least 1");
  const BigInt log_floor = audited_floor([&](auto tag) { return log_scaled<decltype(tag)>(c_hat, d, k); },
                                         "ln(c_hat d^k)");
  Cor1Mesh out;
  out.size = audited_floor(
      [&](auto tag) {
        using T = decltype(tag);
        const T levels = static_cast<T>(log_floor) + 1;
        return value_scaled<T>(c_hat, d, k) * ipow(T(s), k) * ipow(levels, k);
      },
      "N_ds");
  const HpFloat sf(s);
  out.distortion_bound = pow(exp(HpFloat(1)) * ipow(sf, k), 1 / sf);
  out.schedule_c = 1 / sf + HpFloat(k) * log(sf) / sf;
  return out;
}

NetCardinality net_cardinality_log(const BigInt& mesh_size, std::uint64_t nbar, const HpFloat& xi) {
  require_positive(nbar, "nbar");
  if (mesh_size <= 0) throw ValidationError("mesh size must be positive");
  const HpFloat xn = xi * HpFloat(nbar);
  if (!(xi > 0) || !(xn < 1)) throw ValidationError("xi must lie in (0, 1/nbar)");
  NetCardinality out;
  out.radius = (1 + xn) / (1 - xn);
  out.log_count = static_cast<HpFloat>(mesh_size) * HpFloat(nbar) * log(1 + 2 / xi);
  return out;
}

HpFloat phi(const HpFloat& x, std::uint64_t k) {
  if (!(x > 0)) throw ValidationError("phi needs x > 0");
  return (1 + HpFloat(k) * log(x)) / x;
}

HpFloat phi_decreasing_from(std::uint64_t k) {
  require_positive(k, "k");
  return exp(HpFloat(k - 1) / HpFloat(k));
}

HpFloat phi_domain_max(std::uint64_t k) {
  require_positive(k, "k");
  return exp(-HpFloat(k - 1) / HpFloat(k));
}

HpFloat phi_inverse_bound(const HpFloat& y, std::uint64_t k) {
  const HpFloat t = HpFloat(3 * k) / y;
  return t * log(t);
}

HpFloat phi_inverse(const HpFloat& y, std::uint64_t k) {
  require_positive(k, "k");
  if (!(y > 0) || y > phi_domain_max(k)) {
    throw ValidationError("phi_inverse argument " + to_decimal(y, 17) + " outside (0, e^{-(k-1)/k}]");
  }
  HpFloat lo = phi_decreasing_from(k);
  HpFloat hi = phi_inverse_bound(y, k);
  if (!(phi(lo, k) >= y) || !(phi(hi, k) <= y)) {
    throw InvariantViolation("phi_inverse bracket [e^{(k-1)/k}, (3k/y) ln(3k/y)] does not contain the root for y = " +
                             to_decimal(y, 17));
  }
  const HpFloat rel = HpFloat("1e-45");
  for (int it = 0; it < 400 && (hi - lo) > rel * hi; ++it) {
    const HpFloat mid = (lo + hi) / 2;
    if (phi(mid, k) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

HpFloat inverse_xi_ratio(std::uint64_t nbar, const HpFloat& eps) {
  const HpFloat r = pow(1 + eps, HpFloat("0.25"));
  return HpFloat(nbar) * (1 + r) / (r - 1);
}

HpFloat inverse_xi_expanded(std::uint64_t nbar, const HpFloat& eps) {
  const HpFloat r4 = pow(1 + eps, HpFloat("0.25"));
  const HpFloat r2 = sqrt(1 + eps);
  return HpFloat(nbar) * (r4 + 1) * (r4 + 1) * (r2 + 1) / eps;
}

std::vector<std::string> nonconstructive_constants() {
  return {
      "c(n): upper comparison between N_dn and dim P_d^n (1 + ln dim)^n",
      "c1(n): dimension constant of l-infinity-like subspaces of polynomial traces",
      "c2(n): distance constant between a polynomial trace space and a dual",
      "C: numerical constant of the closed-form entropy estimate (the explicit chain is reported instead)",
      "c_X, c~_X: dimension growth constants of polynomial traces on an algebraic variety",
  };
}

const BoundEntry& BoundReport::at(const std::string& name) const {
  for (const auto& e : values)
    if (e.name == name) return e;
  throw ValidationError("report has no value named " + name);
}

bool BoundReport::contains(const std::string& name) const {
  for (const auto& e : values)
    if (e.name == name) return true;
  return false;
}

BoundReport mesh_bounds_report(std::uint64_t n, std::uint64_t d) {
  BoundReport r;
  r.inputs = {{"n", static_cast<std::int64_t>(n)}, {"d", static_cast<std::int64_t>(d)}};
  r.values.push_back(count_entry("N_dn", mesh_size_A(n, d),
                                 "floor(e^{2n} (n+2)^{2n} d^n (2n+1+floor(n ln d))^n)"));
  r.values.push_back(entry("dist_bound_A", dist_bound_A(n), "(e (n+2)^2)^{1/(n+2)}"));
  r.values.push_back(entry("dim_majorant", dim_majorant(n, d), "e^{2n} d^n"));
  r.not_constructive = nonconstructive_constants();
  return r;
}

BoundReport cor1_report(std::uint64_t d, std::uint64_t k, const GrowthConstant& c_hat, std::uint64_t s) {
  const Cor1Mesh mesh = mesh_size_cor1(d, k, c_hat, s);
  BoundReport r;
  r.inputs = {{"d", static_cast<std::int64_t>(d)},
              {"k", static_cast<std::int64_t>(k)},
              {"c_hat", c_hat.text()},
              {"s", static_cast<std::int64_t>(s)}};
  r.values.push_back(count_entry("N_ds_cor1", mesh.size, "floor(c d^k s^k (floor(ln(c d^k))+1)^k)"));
  r.values.push_back(entry("dist_bound_cor1", mesh.distortion_bound, "(e s^k)^{1/s}"));
  r.values.push_back(entry("schedule_c", mesh.schedule_c, "1/s + k ln(s)/s"));
  r.not_constructive = nonconstructive_constants();
  return r;
}

BoundReport entropy_chain(const EntropyInputs& in) {
  require_positive(in.d, "d");
  require_positive(in.k, "k");
  require_positive(in.nbar, "nbar");
  if (!(in.eps > 0.0) || !(in.eps <= 0.5)) throw ValidationError("eps must lie in (0, 1/2]");
  if (HpAudit(in.nbar) > value_scaled<HpAudit>(in.c_hat, in.d, in.k) * (1 + HpAudit("1e-60")))
    throw ValidationError("nbar must not exceed c_hat * d^k");

  const std::uint64_t k = in.k;
  const HpFloat eps(in.eps);
  const HpFloat log1e = log(1 + eps);
  const HpFloat y = log1e / 4;
  if (!(y < phi_domain_max(k)))
    throw InvariantViolation("ln(1+eps)/4 is not below e^{-(k-1)/k}; the root s_eps need not exist");

  const HpFloat s_eps = phi_inverse(y, k);
  const HpFloat t = HpFloat(12 * k) / log1e;
  const HpFloat s_bound = t * log(t);
  if (!(s_eps <= s_bound)) throw InvariantViolation("s_eps exceeds its closed-form majorant");

  const HpFloat r_eps = pow(1 + eps, HpFloat("0.25"));
  const HpFloat inv_xi = inverse_xi_ratio(in.nbar, eps);
  const HpFloat inv_xi_alt = inverse_xi_expanded(in.nbar, eps);
  if (abs(inv_xi - inv_xi_alt) > HpFloat("1e-40") * inv_xi)
    throw InvariantViolation("the two closed forms of 1/xi disagree");

  const BigInt s_floor = static_cast<BigInt>(floor(s_eps));
  const auto s = static_cast<std::uint64_t>(s_floor);
  const Cor1Mesh mesh = mesh_size_cor1(in.d, k, in.c_hat, s);

  const NetCardinality net = net_cardinality_log(mesh.size, in.nbar, 1 / inv_xi);
  if (abs(net.radius - r_eps) > HpFloat("1e-40") * r_eps)
    throw InvariantViolation("net radius does not reproduce (1+eps)^{1/4}");

  const HpFloat cdk = value_scaled<HpFloat>(in.c_hat, in.d, k);
  const HpFloat log_cdk = log_scaled<HpFloat>(in.c_hat, in.d, k);
  const HpFloat final_bound = HpFloat(in.nbar) * cdk * ipow(log_cdk + 1, k) *
                              log(HpFloat(21 * in.nbar) / eps) * ipow(s_bound, k);
  if (!(net.log_count <= final_bound))
    throw InvariantViolation("log covering count exceeds the closed-form entropy bound");

  BoundReport r;
  r.inputs = {{"d", static_cast<std::int64_t>(in.d)},
              {"k", static_cast<std::int64_t>(k)},
              {"c_hat", in.c_hat.text()},
              {"nbar", static_cast<std::int64_t>(in.nbar)},
              {"eps", in.eps}};
  r.values.push_back(entry("s_eps", s_eps, "root s >= e^{(k-1)/k} of (e s^k)^{1/s} = (1+eps)^{1/4}"));
  r.values.push_back(entry("s_eps_bound_3_7", s_bound, "(12k/ln(1+eps)) ln(12k/ln(1+eps))"));
  r.values.push_back(entry("R_eps", r_eps, "(1+eps)^{1/4}"));
  r.values.push_back(entry("inv_xi_3_8", inv_xi, "nbar ((1+eps)^{1/4}+1)^2 ((1+eps)^{1/2}+1) / eps"));
  r.values.push_back(count_entry("N_ds_cor1", mesh.size, "N_ds at s = floor(s_eps)"));
  r.values.push_back(entry("dist_bound_cor1", mesh.distortion_bound, "(e s^k)^{1/s} at s = floor(s_eps)"));
  r.values.push_back(entry("log_net_card", net.log_count, "N_ds nbar ln(1 + 2/xi)"));
  r.values.push_back(entry("entropy_chain_final", final_bound,
                           "nbar c d^k (ln(c d^k)+1)^k ln(21 nbar/eps) ((12k/ln(1+eps)) ln(12k/ln(1+eps)))^k"));
  r.not_constructive = nonconstructive_constants();
  return r;
}

}  // namespace normmesh
