#include "salem/bianchi.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <tuple>

namespace salem {

namespace {

void require_d(std::int64_t D) {
  if (D < 1 || !is_squarefree(D))
    throw DomainError("D must be a square-free positive integer, got " + std::to_string(D));
}

struct Entry {
  std::int64_t A;
  std::int64_t B;
  TraceCoord t;
  auto operator<=>(const Entry&) const = default;
};

// lambda <= Q for rational y = lambda^{1/2} + lambda^{-1/2} > 2:
// lambda^{1/2} <= sqrt(Q)  <=>  y <= sqrt(Q) + 1/sqrt(Q)  <=>  y^2 Q <= (Q + 1)^2.
bool rational_y_within(std::int64_t y, std::int64_t Q) {
  const i128 yy = static_cast<i128>(y) * y;
  const i128 q1 = static_cast<i128>(Q) + 1;
  return checked_mul<i128>(yy, Q) <= q1 * q1;
}

struct BandResult {
  std::vector<Entry> accepted;
  std::vector<std::int64_t> rational_y;
  BianchiDiagnostics diag;
};

void scan_trace(std::int64_t D, std::int64_t Q, std::int64_t u, std::int64_t v, BandResult& out) {
  ++out.diag.traces_scanned;
  const QuadIntK t(D, u, v);
  const BigInt N = norm(t);
  const BigInt Tr = trace_sq(t);

  if (t.is_real() || t.is_purely_imaginary()) {
    if (t.is_real()) ++out.diag.excluded_real;
    else ++out.diag.excluded_imaginary;
    // Real t: y roots {2, t^2 - 2}; purely imaginary: {-2, N + 2}.
    const BigInt y = t.is_real() ? BigInt(N - 2) : BigInt(N + 2);
    if (y > 2 && rational_y_within(to_int64(y), Q)) out.rational_y.push_back(to_int64(y));
    return;
  }

  auto s = salem_from_trace(D, t);
  if (!s) {
    ++out.diag.excluded_reducible;
    const auto root = is_perfect_square(N * N - 4 * Tr + 16);
    const BigInt y = (N + *root) / 2;
    if (y > 2 && rational_y_within(to_int64(y), Q)) out.rational_y.push_back(to_int64(y));
    return;
  }
  const SalemQuartic p = s->lifted();
  if (detail::sign_at(to_int64(p.a), to_int64(p.b), Q) < 0) {
    ++out.diag.above_bound;
    return;
  }
  out.accepted.push_back({s->A, s->B, {u, v}});
}

}  // namespace

double BianchiSalem::y_plus() const {
  const long double a = A;
  const long double disc = a * a - 4 * (static_cast<long double>(B) - 2);
  return static_cast<double>((-a + std::sqrt(disc)) / 2);
}

double BianchiSalem::lambda() const {
  const long double y = y_plus();
  const long double half = (y + std::sqrt(y * y - 4)) / 2;
  return static_cast<double>(half * half);
}

std::optional<BianchiSalem> salem_from_trace(std::int64_t D, const QuadIntK& t) {
  require_d(D);
  if (t.D() != D) throw DomainError("trace belongs to a different field");
  if (t.is_real() || t.is_purely_imaginary()) return std::nullopt;
  const BigInt N = norm(t);
  const BigInt Tr = trace_sq(t);
  // Irreducibility of z^2 - N z + (Tr - 4): discriminant must not be a square.
  if (is_perfect_square(N * N - 4 * Tr + 16)) return std::nullopt;
  BianchiSalem s;
  s.A = to_int64(BigInt(-N));
  s.B = to_int64(BigInt(Tr - 2));
  s.witnesses.push_back({to_int64(t.u()), to_int64(t.v())});
  s.witness_total = 1;
  return s;
}

std::int64_t trace_norm_bound(std::int64_t Q) {
  if (Q < 2) throw DomainError("Q must be >= 2, got " + std::to_string(Q));
  return checked_add<std::int64_t>(isqrt(Q), 3);
}

BianchiCensus bianchi_census(std::int64_t D, std::int64_t Q, Parallelism par) {
  require_d(D);
  const std::int64_t M = trace_norm_bound(Q);
  const bool half = D % 4 == 3;

  // Half basis: N(t) = ((2u + v)^2 + D v^2) / 4, so scan s = 2u + v with s = v (mod 2).
  const std::int64_t scale = half ? 4 : 1;
  const std::int64_t limit = checked_mul(scale, M);
  const std::int64_t vmax = isqrt(limit / D);
  const std::int64_t bands = 2 * vmax + 1;

  std::vector<BandResult> results(static_cast<std::size_t>(bands));
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(par.resolved())
  for (std::int64_t i = 0; i < bands; ++i) {
    try {
      const std::int64_t v = i - vmax;
      BandResult& out = results[static_cast<std::size_t>(i)];
      const std::int64_t rest = limit - D * v * v;
      const std::int64_t wmax = isqrt(rest);
      for (std::int64_t w = -wmax; w <= wmax; ++w) {
        if (half) {
          if (((w - v) & 1) != 0) continue;
          scan_trace(D, Q, (w - v) / 2, v, out);
        } else {
          scan_trace(D, Q, w, v, out);
        }
      }
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  BianchiCensus census;
  census.D = D;
  census.Q = Q;
  std::vector<Entry> entries;
  std::vector<std::int64_t> rational;
  auto& dg = census.diagnostics;
  for (auto& r : results) {
    entries.insert(entries.end(), r.accepted.begin(), r.accepted.end());
    rational.insert(rational.end(), r.rational_y.begin(), r.rational_y.end());
    dg.traces_scanned += r.diag.traces_scanned;
    dg.excluded_real += r.diag.excluded_real;
    dg.excluded_imaginary += r.diag.excluded_imaginary;
    dg.excluded_reducible += r.diag.excluded_reducible;
    dg.above_bound += r.diag.above_bound;
  }

  // Key order: N(t) ascending (A descending), then B ascending, then trace coordinates.
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return std::tie(y.A, x.B, x.t) < std::tie(x.A, y.B, y.t);
  });
  for (const Entry& e : entries) {
    if (census.members.empty() || census.members.back().A != e.A ||
        census.members.back().B != e.B) {
      census.members.push_back({e.A, e.B, {}, 0});
    }
    BianchiSalem& m = census.members.back();
    if (m.witnesses.size() < BianchiSalem::kWitnessCap) m.witnesses.push_back(e.t);
    ++m.witness_total;
  }
  census.count = static_cast<std::int64_t>(census.members.size());

  std::sort(rational.begin(), rational.end());
  rational.erase(std::unique(rational.begin(), rational.end()), rational.end());
  dg.distinct_lengths_all = census.count + static_cast<std::int64_t>(rational.size());
  return census;
}

double marklof_constant(std::int64_t D) {
  require_d(D);
  const double root = std::sqrt(static_cast<double>(D));
  return D % 4 == 3 ? std::numbers::pi / (2 * root) : std::numbers::pi / (4 * root);
}

}  // namespace salem
