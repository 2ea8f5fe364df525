#pragma once

// Palindromic quartics p(x) = x^4 + a x^3 + b x^2 + a x + 1 and the exact
// predicates on them: Salem test, square-rootability, the q(x)q(-x) = p(x^2)
// factor, the half-power lift, and the exact lambda <= Q test.
//
// Substituting y = x + 1/x gives x^2 r(x + 1/x) = p(x) with
// r(y) = y^2 + a y + (b - 2); p is Salem exactly when r has one root above 2
// and one strictly inside (-2, 2), and r is irreducible.

#include <array>
#include <cstdint>
#include <optional>

#include "salem/algebra.hpp"

namespace salem {

struct SalemQuartic {
  BigInt a;
  BigInt b;

  SalemQuartic() = default;
  SalemQuartic(BigInt a_, BigInt b_) : a(std::move(a_)), b(std::move(b_)) {}
  SalemQuartic(std::int64_t a_, std::int64_t b_) : a(static_cast<long>(a_)), b(static_cast<long>(b_)) {}

  /// [1, a, b, a, 1], lowest degree first; palindromic by construction.
  std::array<BigInt, 5> coefficients() const { return {1, a, b, a, 1}; }

  /// p(x) evaluated exactly.
  BigInt eval(const BigInt& x) const;

  bool operator==(const SalemQuartic& o) const { return a == o.a && b == o.b; }
};

/// Witness that p(x^2) = q(x) q(-x) with q(x) = x^4 + sqrt(alpha) x^3 + d x^2 + sqrt(alpha) x + 1.
struct SqrtWitness {
  BigInt k;        // p(-1) = k^2, k > 0
  BigInt d_coeff;  // middle coefficient of q, 2 + sign*k
  BigInt alpha;    // 4 - a + sign*2k
  int sign = 1;
};

bool is_salem(const SalemQuartic& p);
bool is_salem(std::int64_t a, std::int64_t b);

/// Both sign branches (sign = +1 first) when p(-1) = 2 + b - 2a is a positive square.
std::optional<std::array<SqrtWitness, 2>> square_root_witness(const SalemQuartic& p);

/// Expands q(x) q(-x) over Z[sqrt(alpha)] and compares with p(x^2).
bool verify_sqrt_factor(const SalemQuartic& p, const SqrtWitness& w);

/// lambda <= Q for the Salem root lambda, decided by p(Q) >= 0.
/// Throws DomainError for Q < 2 and ContractError when p is not Salem.
bool salem_le(const SalemQuartic& p, const BigInt& Q);
bool salem_le(std::int64_t a, std::int64_t b, std::int64_t Q);

/// Numeric lambda; ContractError when p is not Salem.
double salem_value(const SalemQuartic& p);
double salem_value(std::int64_t a, std::int64_t b);

/// Minimal quartic of lambda^{1/2} (coefficients A, B) to that of lambda.
SalemQuartic lift_half_power(const SalemQuartic& q);

namespace detail {

/// Sign of p(Q) for small coefficients; 128-bit fast path, big-integer fallback.
int sign_at(std::int64_t a, std::int64_t b, std::int64_t Q);

/// lambda without the Salem precondition check (caller guarantees it).
double salem_value_unchecked(long double a, long double b);

}  // namespace detail

// --- floating-point root pattern of a real palindromic quartic ------------

struct RootPattern {
  bool salem = false;              // one root > 1, its inverse, non-real unit pair
  bool all_on_unit_circle = false; // all four roots on |x| = 1
  double lambda = 0.0;             // largest real root when salem
};

/// Classifies roots of x^4 + a x^3 + b x^2 + a x + 1 for real a, b through the
/// y = x + 1/x substitution, with absolute tolerance tol on the y-roots.
RootPattern classify_palindromic(double a, double b, double tol = 1e-9);

}  // namespace salem
