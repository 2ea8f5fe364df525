#pragma once

// Censuses over Z: degree-4 Salem numbers <= Q, the square-rootable subclass,
// degree-2 Salem numbers, and the closed-form box sums.
//
// Every kernel comes in two forms. The functions in `salem::` are the
// OpenMP-parallel kernels; `salem::reference::` holds the plain serial scans
// that apply the predicates from salem_core one candidate at a time. Tests and
// the benchmark compare the two.
//
// Enumeration order: a = -1, -2, ..., -(Q+2); b ascending within each a.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "salem/parallel.hpp"

namespace salem {

enum class SourceKind { direct, bianchi, totally_real };

struct Source {
  SourceKind kind = SourceKind::direct;
  std::int64_t param = 0;  // D for bianchi, d for totally_real

  /// "direct", "bianchi(D)", "totally_real(d)".
  std::string str() const;
  bool operator==(const Source&) const = default;
};

struct CensusRecord {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::optional<std::int64_t> k;  // present iff 2 + b - 2a is a perfect square
  double lambda_approx = 0.0;
  Source source;

  bool operator==(const CensusRecord&) const = default;
};

using RecordSink = std::function<void(const CensusRecord&)>;

/// Exact lower bound on b for lambda <= Q at fixed a: p(Q) >= 0 iff b >= bound.
std::int64_t min_b_for_bound(std::int64_t a, std::int64_t Q);

// --- parallel kernels ---------------------------------------------------------

void stream_salem_deg4(std::int64_t Q, const RecordSink& sink, Parallelism par = {});
std::vector<CensusRecord> enumerate_salem_deg4(std::int64_t Q, Parallelism par = {});
std::int64_t count_salem_deg4(std::int64_t Q, Parallelism par = {});

void stream_sr(std::int64_t Q, const RecordSink& sink, Parallelism par = {});
std::vector<CensusRecord> enumerate_sr(std::int64_t Q, Parallelism par = {});
std::int64_t count_sr(std::int64_t Q, Parallelism par = {});

/// Number of (a, k) pairs the square-rootable scan rejects as reducible, and how
/// many of those fall outside the three quadratic-factor families
/// b = 2, b = a + 1, a + b = 1 (expected: zero).
struct ReducibleAudit {
  std::int64_t reducible = 0;
  std::int64_t outside_families = 0;
};
ReducibleAudit audit_sr_reducible(std::int64_t Q);

struct BoxSums {
  std::int64_t sr = 0;    // sum_{j=1}^{Q+2} (ceil(2 sqrt j) - 1)
  std::int64_t deg4 = 0;  // sum_{j=1}^{Q+2} (4j - 1)
};
BoxSums paper_box_sums(std::int64_t Q);

/// Irreducible x^2 + a x + 1 with root in (1, Q]; enumerated, not by formula.
std::int64_t count_deg2(std::int64_t Q);

// --- serial references ----------------------------------------------------------

namespace reference {

std::vector<CensusRecord> enumerate_salem_deg4(std::int64_t Q);
std::int64_t count_salem_deg4(std::int64_t Q);
std::vector<CensusRecord> enumerate_sr(std::int64_t Q);
std::int64_t count_sr(std::int64_t Q);

}  // namespace reference

}  // namespace salem
