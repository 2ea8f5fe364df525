#include "salem/algebra.hpp"

#include <cmath>
#include <limits>

namespace salem {

std::int64_t to_int64(const BigInt& n) {
  if (!n.fits_slong_p()) throw CapacityError("value exceeds 64-bit range: " + n.get_str());
  return n.get_si();
}

std::int64_t to_int64(i128 n) {
  if (n > std::numeric_limits<std::int64_t>::max() ||
      n < std::numeric_limits<std::int64_t>::min())
    throw CapacityError("value exceeds 64-bit range: " + to_string(n));
  return static_cast<std::int64_t>(n);
}

std::string to_string(i128 n) {
  if (n == 0) return "0";
  const bool neg = n < 0;
  unsigned __int128 m = neg ? static_cast<unsigned __int128>(-(n + 1)) + 1
                            : static_cast<unsigned __int128>(n);
  std::string s;
  while (m > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(m % 10)));
    m /= 10;
  }
  if (neg) s.insert(s.begin(), '-');
  return s;
}

BigInt to_big(i128 n) { return BigInt(to_string(n)); }

i128 floor_div(i128 x, i128 y) {
  i128 q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

i128 ceil_div(i128 x, i128 y) {
  i128 q = x / y;
  if ((x % y != 0) && ((x < 0) == (y < 0))) ++q;
  return q;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw DomainError("isqrt of negative value");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::int64_t isqrt(i128 n) {
  if (n < 0) throw DomainError("isqrt of negative value");
  constexpr std::int64_t kMax = 3037000499LL * 3037000499LL;  // keeps (r+1)^2 in range
  if (n > static_cast<i128>(kMax) * kMax) throw CapacityError("isqrt argument too large");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  if (r > kMax) r = kMax;
  auto sq = [](std::int64_t x) {
    return static_cast<unsigned __int128>(x) * static_cast<unsigned __int128>(x);
  };
  const auto un = static_cast<unsigned __int128>(n);
  while (r > 0 && sq(r) > un) --r;
  while (sq(r + 1) <= un) ++r;
  return r;
}

std::optional<BigInt> is_perfect_square(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  if (r * r == n) return r;
  return std::nullopt;
}

std::optional<std::int64_t> perfect_square_root(std::int64_t n) {
  if (n < 0) return std::nullopt;
  const std::int64_t r = isqrt(n);
  if (static_cast<i128>(r) * r == n) return r;
  return std::nullopt;
}

std::optional<std::int64_t> perfect_square_root(i128 n) {
  if (n < 0) return std::nullopt;
  const std::int64_t r = isqrt(n);
  if (static_cast<i128>(r) * r == n) return r;
  return std::nullopt;
}

bool is_squarefree(std::int64_t n) {
  if (n == 0) return false;
  if (n < 0) n = -n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

// --- QuadIntK ----------------------------------------------------------------

QuadIntK::QuadIntK(std::int64_t D, BigInt u, BigInt v)
    : D_(D), u_(std::move(u)), v_(std::move(v)) {
  if (D < 1 || !is_squarefree(D))
    throw DomainError("D must be a square-free positive integer, got " + std::to_string(D));
}

bool QuadIntK::is_purely_imaginary() const {
  if (v_ == 0) return false;
  return half_basis() ? (2 * u_ + v_ == 0) : (u_ == 0);
}

QuadIntK QuadIntK::conj() const {
  // conj(omega) = -omega, or 1 - omega in the half basis.
  if (half_basis()) return QuadIntK(D_, u_ + v_, -v_, Unchecked{});
  return QuadIntK(D_, u_, -v_, Unchecked{});
}

BigInt norm(const QuadIntK& t) {
  const auto& u = t.u();
  const auto& v = t.v();
  if (t.half_basis()) {
    BigInt s = 2 * u + v;
    BigInt n = s * s + BigInt(t.D()) * v * v;
    return n / 4;
  }
  return u * u + BigInt(t.D()) * v * v;
}

BigInt trace_sq(const QuadIntK& t) {
  const auto& u = t.u();
  const auto& v = t.v();
  if (t.half_basis()) {
    BigInt s = 2 * u + v;
    BigInt n = s * s - BigInt(t.D()) * v * v;
    return n / 2;
  }
  return 2 * (u * u - BigInt(t.D()) * v * v);
}

std::pair<double, double> to_complex(const QuadIntK& t) {
  const double u = t.u().get_d();
  const double v = t.v().get_d();
  const double s = std::sqrt(static_cast<double>(t.D()));
  if (t.half_basis()) return {u + 0.5 * v, 0.5 * v * s};
  return {u, v * s};
}

// --- RealQuadElem --------------------------------------------------------------

RealQuadElem::RealQuadElem(std::int64_t d, BigInt u, BigInt v)
    : d_(d), u_(std::move(u)), v_(std::move(v)) {
  if (d < 2 || !is_squarefree(d))
    throw DomainError("field parameter d must be square-free and >= 2, got " + std::to_string(d));
}

RealQuadElem RealQuadElem::constant(std::int64_t d, const BigInt& c) {
  return RealQuadElem(d, c, 0);
}

std::pair<BigInt, BigInt> RealQuadElem::doubled() const {
  if (half_basis()) return {2 * u_ + v_, v_};
  return {2 * u_, 2 * v_};
}

RealQuadElem RealQuadElem::from_doubled(std::int64_t d, const BigInt& P, const BigInt& V) {
  if (d % 4 == 1) {
    BigInt diff = P - V;
    if (!mpz_even_p(diff.get_mpz_t()))
      throw ContractError("doubled coordinates do not represent a ring element");
    return RealQuadElem(d, diff / 2, V);
  }
  if (!mpz_even_p(P.get_mpz_t()) || !mpz_even_p(V.get_mpz_t()))
    throw ContractError("doubled coordinates do not represent a ring element");
  return RealQuadElem(d, P / 2, V / 2);
}

RealQuadElem RealQuadElem::operator+(const RealQuadElem& o) const {
  return RealQuadElem(d_, u_ + o.u_, v_ + o.v_);
}

RealQuadElem RealQuadElem::operator-(const RealQuadElem& o) const {
  return RealQuadElem(d_, u_ - o.u_, v_ - o.v_);
}

RealQuadElem RealQuadElem::operator-() const { return RealQuadElem(d_, -u_, -v_); }

RealQuadElem RealQuadElem::operator*(const RealQuadElem& o) const {
  const BigInt vv = v_ * o.v_;
  BigInt u = u_ * o.u_;
  BigInt v = u_ * o.v_ + o.u_ * v_;
  if (half_basis()) {
    // omega^2 = omega + (d-1)/4
    u += vv * ((d_ - 1) / 4);
    v += vv;
  } else {
    u += vv * d_;
  }
  return RealQuadElem(d_, std::move(u), std::move(v));
}

BigInt trace(const RealQuadElem& x) { return x.doubled().first; }

BigInt norm(const RealQuadElem& x) {
  auto [P, V] = x.doubled();
  return (P * P - BigInt(x.d()) * V * V) / 4;
}

std::pair<double, double> embeddings(const RealQuadElem& x) {
  auto [P, V] = x.doubled();
  const long double s = std::sqrt(static_cast<long double>(x.d()));
  const long double p = P.get_d();
  const long double v = V.get_d();
  return {static_cast<double>((p + v * s) / 2), static_cast<double>((p - v * s) / 2)};
}

int sign_p_plus_v_sqrt(const BigInt& P, const BigInt& V, std::int64_t d) {
  const int sp = sgn(P);
  const int sv = sgn(V);
  if (sv == 0) return sp;
  if (sp == 0 || sp == sv) return sv;
  // Opposite signs: compare P^2 with d V^2 (never equal for square-free d >= 2).
  const int cmp_ = cmp(P * P, BigInt(d) * V * V);
  return cmp_ > 0 ? sp : sv;
}

int sign_p_plus_v_sqrt(i128 P, i128 V, std::int64_t d) {
  const int sp = (P > 0) - (P < 0);
  const int sv = (V > 0) - (V < 0);
  if (sv == 0) return sp;
  if (sp == 0 || sp == sv) return sv;
  const i128 p2 = checked_mul(P, P);
  const i128 v2 = checked_mul(checked_mul(V, V), static_cast<i128>(d));
  return p2 > v2 ? sp : sv;
}

int embedding_sign(const RealQuadElem& x, int which) {
  auto [P, V] = x.doubled();
  if (which == 2) V = -V;
  return sign_p_plus_v_sqrt(P, V, x.d());
}

bool totally_positive(const RealQuadElem& x) {
  return embedding_sign(x, 1) > 0 && embedding_sign(x, 2) > 0;
}

std::optional<RealQuadElem> sqrt_in_ring(const RealQuadElem& x) {
  if (embedding_sign(x, 1) < 0 || embedding_sign(x, 2) < 0) return std::nullopt;
  const auto [e1, e2] = embeddings(x);
  const long double s = std::sqrt(static_cast<long double>(x.d()));
  const long double r1 = std::sqrt(std::max(0.0L, static_cast<long double>(e1)));
  const long double r2 = std::sqrt(std::max(0.0L, static_cast<long double>(e2)));
  // Candidate square roots up to overall sign: sigma_2(r) = +r2 or -r2.
  for (const long double s2 : {r2, -r2}) {
    // 2r = P + V*sqrt(d) with P = sigma_1(r) + sigma_2(r), V*sqrt(d) = sigma_1(r) - sigma_2(r).
    const long double P = r1 + s2;
    const long double V = (r1 - s2) / s;
    if (std::fabs(P) > 1e15L || std::fabs(V) > 1e15L)
      throw CapacityError("sqrt_in_ring: element too large for candidate reconstruction");
    const auto Pr = static_cast<long long>(std::llround(P));
    const auto Vr = static_cast<long long>(std::llround(V));
    for (long long dp = -1; dp <= 1; ++dp) {
      for (long long dv = -1; dv <= 1; ++dv) {
        const BigInt PP(static_cast<long>(Pr + dp));
        const BigInt VV(static_cast<long>(Vr + dv));
        const bool ok_parity = x.half_basis()
                                   ? mpz_even_p(BigInt(PP - VV).get_mpz_t()) != 0
                                   : (mpz_even_p(PP.get_mpz_t()) && mpz_even_p(VV.get_mpz_t()));
        if (!ok_parity) continue;
        RealQuadElem r = RealQuadElem::from_doubled(x.d(), PP, VV);
        if (r * r == x) return r;
      }
    }
  }
  return std::nullopt;
}

}  // namespace salem
