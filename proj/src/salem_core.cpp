#include "salem/salem_core.hpp"

#include <cmath>

namespace salem {

namespace {

// (rational, irrational) pair representing r + s*sqrt(alpha).
struct SqrtAlphaNum {
  BigInt r;
  BigInt s;
};

SqrtAlphaNum mul(const SqrtAlphaNum& x, const SqrtAlphaNum& y, const BigInt& alpha) {
  return {x.r * y.r + x.s * y.s * alpha, x.r * y.s + x.s * y.r};
}

}  // namespace

BigInt SalemQuartic::eval(const BigInt& x) const {
  // Horner on [1, a, b, a, 1].
  BigInt acc = x + a;
  acc = acc * x + b;
  acc = acc * x + a;
  acc = acc * x + 1;
  return acc;
}

bool is_salem(const SalemQuartic& p) {
  const BigInt& a = p.a;
  const BigInt& b = p.b;
  if (!(b + 2 * a + 2 < 0)) return false;
  if (!(b - 2 * a + 2 > 0)) return false;
  return !is_perfect_square(a * a - 4 * b + 8).has_value();
}

bool is_salem(std::int64_t a, std::int64_t b) {
  const i128 A = a;
  const i128 B = b;
  if (!(B + 2 * A + 2 < 0)) return false;
  if (!(B - 2 * A + 2 > 0)) return false;
  const i128 disc = checked_add<i128>(checked_sub<i128>(checked_mul(A, A), 4 * B), 8);
  return !perfect_square_root(disc).has_value();
}

std::optional<std::array<SqrtWitness, 2>> square_root_witness(const SalemQuartic& p) {
  const BigInt pm1 = 2 + p.b - 2 * p.a;
  auto k = is_perfect_square(pm1);
  if (!k || *k == 0) return std::nullopt;
  std::array<SqrtWitness, 2> out;
  int i = 0;
  for (int sign : {+1, -1}) {
    SqrtWitness& w = out[i++];
    w.k = *k;
    w.sign = sign;
    w.d_coeff = 2 + sign * (*k);
    w.alpha = 4 - p.a + sign * 2 * (*k);
  }
  return out;
}

bool verify_sqrt_factor(const SalemQuartic& p, const SqrtWitness& w) {
  if (w.alpha <= 0) return false;
  // q(x) coefficients, lowest degree first, and q(-x).
  const std::array<SqrtAlphaNum, 5> q = {{{1, 0}, {0, 1}, {w.d_coeff, 0}, {0, 1}, {1, 0}}};
  std::array<SqrtAlphaNum, 5> qm = q;
  for (int i = 1; i < 5; i += 2) qm[i].s = -qm[i].s;

  std::array<SqrtAlphaNum, 9> prod{};
  for (auto& c : prod) c = {0, 0};
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const SqrtAlphaNum t = mul(q[i], qm[j], w.alpha);
      prod[i + j].r += t.r;
      prod[i + j].s += t.s;
    }
  }
  const std::array<BigInt, 9> target = {1, 0, p.a, 0, p.b, 0, p.a, 0, 1};
  for (int i = 0; i < 9; ++i) {
    if (prod[i].s != 0 || prod[i].r != target[i]) return false;
  }
  return true;
}

bool salem_le(const SalemQuartic& p, const BigInt& Q) {
  if (Q < 2) throw DomainError("Q must be >= 2");
  if (!is_salem(p)) throw ContractError("salem_le: quartic is not Salem");
  return p.eval(Q) >= 0;
}

bool salem_le(std::int64_t a, std::int64_t b, std::int64_t Q) {
  if (Q < 2) throw DomainError("Q must be >= 2");
  if (!is_salem(a, b)) throw ContractError("salem_le: quartic is not Salem");
  return detail::sign_at(a, b, Q) >= 0;
}

double salem_value(const SalemQuartic& p) {
  if (!is_salem(p)) throw ContractError("salem_value: quartic is not Salem");
  return detail::salem_value_unchecked(p.a.get_d(), p.b.get_d());
}

double salem_value(std::int64_t a, std::int64_t b) {
  if (!is_salem(a, b)) throw ContractError("salem_value: quartic is not Salem");
  return detail::salem_value_unchecked(static_cast<long double>(a), static_cast<long double>(b));
}

SalemQuartic lift_half_power(const SalemQuartic& q) {
  const BigInt& A = q.a;
  const BigInt& B = q.b;
  return SalemQuartic(2 * B - A * A, B * B - 2 * A * A + 2);
}

namespace detail {

int sign_at(std::int64_t a, std::int64_t b, std::int64_t Q) {
  try {
    const i128 x = Q;
    i128 acc = checked_add<i128>(x, a);
    acc = checked_add<i128>(checked_mul(acc, x), b);
    acc = checked_add<i128>(checked_mul(acc, x), a);
    acc = checked_add<i128>(checked_mul(acc, x), 1);
    return (acc > 0) - (acc < 0);
  } catch (const CapacityError&) {
    const SalemQuartic p(a, b);
    return sgn(p.eval(BigInt(static_cast<long>(Q))));
  }
}

double salem_value_unchecked(long double a, long double b) {
  const long double disc = a * a - 4 * b + 8;
  const long double y = (-a + std::sqrt(disc)) / 2;
  return static_cast<double>((y + std::sqrt(y * y - 4)) / 2);
}

}  // namespace detail

RootPattern classify_palindromic(double a, double b, double tol) {
  RootPattern out;
  const long double A = a;
  const long double disc = A * A - 4 * (static_cast<long double>(b) - 2);
  if (disc < -tol) return out;  // complex y: no root lies on the unit circle
  const long double sq = std::sqrt(std::max(0.0L, disc));
  const long double yp = (-A + sq) / 2;
  const long double ym = (-A - sq) / 2;
  out.all_on_unit_circle = yp <= 2 + tol && ym >= -2 - tol;
  out.salem = disc > tol && yp > 2 + tol && ym > -2 + tol && ym < 2 - tol;
  if (out.salem) out.lambda = static_cast<double>((yp + std::sqrt(yp * yp - 4)) / 2);
  return out;
}

}  // namespace salem
