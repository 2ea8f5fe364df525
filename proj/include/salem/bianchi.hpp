#pragma once

// Square-rootable Salem numbers generated by the Bianchi orbifold H^3 / PSL(2, o_K),
// K = Q(sqrt(-D)).
//
// A loxodromic element with trace t has eigenvalue mu, mu + 1/mu = t, and its
// closed geodesic has real length l with |mu|^2 = e^l. The Salem number is
// lambda = e^{2l}; its square root lambda^{1/2} = |mu|^2 satisfies
// y = lambda^{1/2} + lambda^{-1/2}, a root of z^2 - N(t) z + (Tr(t^2) - 4).
// Hence the minimal quartic of lambda^{1/2} is x^4 + A x^3 + B x^2 + A x + 1
// with A = -N(t), B = Tr(t^2) - 2.

#include <cstdint>
#include <optional>
#include <vector>

#include "salem/algebra.hpp"
#include "salem/parallel.hpp"
#include "salem/salem_core.hpp"

namespace salem {

struct TraceCoord {
  std::int64_t u = 0;
  std::int64_t v = 0;
  auto operator<=>(const TraceCoord&) const = default;
};

struct BianchiSalem {
  static constexpr std::size_t kWitnessCap = 16;

  std::int64_t A = 0;  // -N(t)
  std::int64_t B = 0;  // Tr(t^2) - 2
  std::vector<TraceCoord> witnesses;  // capped at kWitnessCap
  std::int64_t witness_total = 0;     // traces mapping to this key, uncapped

  SalemQuartic half_quartic() const { return SalemQuartic(A, B); }
  SalemQuartic lifted() const { return lift_half_power(half_quartic()); }
  /// p(-1) = (B - 2)^2 for the lifted quartic, so k = |B - 2|.
  std::int64_t k() const { return B >= 2 ? B - 2 : 2 - B; }
  /// lambda^{1/2} + lambda^{-1/2}, the larger root of z^2 + A z + (B - 2).
  double y_plus() const;
  double lambda() const;
};

/// Quartic of lambda^{1/2} for a trace t, or empty when t is real, purely
/// imaginary, or gives a rational y (degree below 4).
std::optional<BianchiSalem> salem_from_trace(std::int64_t D, const QuadIntK& t);

struct BianchiDiagnostics {
  std::int64_t traces_scanned = 0;
  std::int64_t excluded_real = 0;
  std::int64_t excluded_imaginary = 0;
  std::int64_t excluded_reducible = 0;  // non-real, Re t != 0, rational y
  std::int64_t above_bound = 0;         // accepted traces with lambda > Q
  /// Distinct lambda <= Q of degree <= 4, counting rational-y lengths too.
  std::int64_t distinct_lengths_all = 0;
};

struct BianchiCensus {
  std::int64_t D = 0;
  std::int64_t Q = 0;
  std::vector<BianchiSalem> members;  // sorted by N(t) ascending, then B ascending
  std::int64_t count = 0;
  BianchiDiagnostics diagnostics;
};

/// Traces are scanned over N(t) <= floor(sqrt(Q)) + 3.
std::int64_t trace_norm_bound(std::int64_t Q);

BianchiCensus bianchi_census(std::int64_t D, std::int64_t Q, Parallelism par = {});

/// Leading constant of the distinct real length count: pi/(4 sqrt D) for
/// D = 1, 2 (mod 4) and pi/(2 sqrt D) for D = 3 (mod 4).
double marklof_constant(std::int64_t D);

}  // namespace salem
