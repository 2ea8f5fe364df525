#pragma once

// Exact arithmetic kernel: big integers, checked fixed-width helpers,
// perfect-square testing, and rings of integers of quadratic fields.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace salem {

using BigInt = mpz_class;
using BigRational = mpq_class;
using i128 = __int128;

/// Invalid field parameter, bound, or other user-facing domain input.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A fixed-width fast path ran out of range. Never silently wraps.
class CapacityError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Precondition violation by a caller (e.g. numeric λ of a non-Salem quartic).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// --- checked fixed-width arithmetic -------------------------------------

template <typename T>
inline T checked_add(T x, T y) {
  T r;
  if (__builtin_add_overflow(x, y, &r)) throw CapacityError("integer overflow in addition");
  return r;
}

template <typename T>
inline T checked_sub(T x, T y) {
  T r;
  if (__builtin_sub_overflow(x, y, &r)) throw CapacityError("integer overflow in subtraction");
  return r;
}

template <typename T>
inline T checked_mul(T x, T y) {
  T r;
  if (__builtin_mul_overflow(x, y, &r)) throw CapacityError("integer overflow in multiplication");
  return r;
}

/// Narrow with a range check.
std::int64_t to_int64(const BigInt& n);
std::int64_t to_int64(i128 n);
BigInt to_big(i128 n);
std::string to_string(i128 n);

/// floor(x / y) and ceil(x / y) for y > 0.
i128 floor_div(i128 x, i128 y);
i128 ceil_div(i128 x, i128 y);

// --- square roots -----------------------------------------------------------

/// floor(sqrt(n)) for n >= 0.
std::int64_t isqrt(std::int64_t n);
std::int64_t isqrt(i128 n);

/// r with r*r == n, r >= 0, if n is a perfect square.
std::optional<BigInt> is_perfect_square(const BigInt& n);
std::optional<std::int64_t> perfect_square_root(std::int64_t n);
std::optional<std::int64_t> perfect_square_root(i128 n);

bool is_squarefree(std::int64_t n);

// --- imaginary quadratic ring o_K, K = Q(sqrt(-D)) -------------------------

/// t = u + v*omega with omega = sqrt(-D) (D = 1,2 mod 4) or (1+sqrt(-D))/2 (D = 3 mod 4).
class QuadIntK {
 public:
  QuadIntK(std::int64_t D, BigInt u, BigInt v);

  std::int64_t D() const noexcept { return D_; }
  const BigInt& u() const noexcept { return u_; }
  const BigInt& v() const noexcept { return v_; }
  bool half_basis() const noexcept { return D_ % 4 == 3; }

  bool is_zero() const { return u_ == 0 && v_ == 0; }
  bool is_real() const { return v_ == 0; }
  bool is_purely_imaginary() const;

  QuadIntK conj() const;
  QuadIntK operator-() const { return QuadIntK(D_, -u_, -v_, Unchecked{}); }

 private:
  struct Unchecked {};
  QuadIntK(std::int64_t D, BigInt u, BigInt v, Unchecked)
      : D_(D), u_(std::move(u)), v_(std::move(v)) {}

  std::int64_t D_;
  BigInt u_;
  BigInt v_;
};

/// N(t) = t * conj(t).
BigInt norm(const QuadIntK& t);
/// Tr(t^2) = t^2 + conj(t)^2.
BigInt trace_sq(const QuadIntK& t);
/// Double-precision complex value of t (diagnostics only).
std::pair<double, double> to_complex(const QuadIntK& t);

// --- real quadratic ring o_L, L = Q(sqrt(d)) --------------------------------

/// x = u + v*omega_L with omega_L = sqrt(d) (d = 2,3 mod 4) or (1+sqrt(d))/2 (d = 1 mod 4).
class RealQuadElem {
 public:
  RealQuadElem(std::int64_t d, BigInt u, BigInt v);

  std::int64_t d() const noexcept { return d_; }
  const BigInt& u() const noexcept { return u_; }
  const BigInt& v() const noexcept { return v_; }
  bool half_basis() const noexcept { return d_ % 4 == 1; }

  /// Coordinates of 2x in the basis {1, sqrt(d)}: 2x = P + V*sqrt(d).
  std::pair<BigInt, BigInt> doubled() const;
  static RealQuadElem from_doubled(std::int64_t d, const BigInt& P, const BigInt& V);

  RealQuadElem operator+(const RealQuadElem& o) const;
  RealQuadElem operator-(const RealQuadElem& o) const;
  RealQuadElem operator*(const RealQuadElem& o) const;
  RealQuadElem operator-() const;
  bool operator==(const RealQuadElem& o) const {
    return d_ == o.d_ && u_ == o.u_ && v_ == o.v_;
  }

  /// Rational integer constant c embedded in o_L.
  static RealQuadElem constant(std::int64_t d, const BigInt& c);

 private:
  std::int64_t d_;
  BigInt u_;
  BigInt v_;
};

BigInt trace(const RealQuadElem& x);
BigInt norm(const RealQuadElem& x);

/// (sigma_1(x), sigma_2(x)); sigma_1 sends sqrt(d) to +sqrt(d).
std::pair<double, double> embeddings(const RealQuadElem& x);

/// Exact sign (-1, 0, +1) of sigma_i(x), i in {1, 2}.
int embedding_sign(const RealQuadElem& x, int which);
bool totally_positive(const RealQuadElem& x);

/// Exact sign of P + V*sqrt(d) for square-free d >= 2.
int sign_p_plus_v_sqrt(const BigInt& P, const BigInt& V, std::int64_t d);
int sign_p_plus_v_sqrt(i128 P, i128 V, std::int64_t d);

/// r in o_L with r*r == x, if one exists.
std::optional<RealQuadElem> sqrt_in_ring(const RealQuadElem& x);

}  // namespace salem
