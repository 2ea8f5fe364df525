#include "salem/census_q.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>

#include "salem/algebra.hpp"
#include "salem/salem_core.hpp"

namespace salem {

int Parallelism::resolved() const { return workers > 0 ? workers : omp_get_max_threads(); }

std::string Source::str() const {
  switch (kind) {
    case SourceKind::direct:
      return "direct";
    case SourceKind::bianchi:
      return "bianchi(" + std::to_string(param) + ")";
    case SourceKind::totally_real:
      return "totally_real(" + std::to_string(param) + ")";
  }
  return "direct";
}

namespace {

void require_q(std::int64_t Q) {
  if (Q < 2) throw DomainError("Q must be >= 2, got " + std::to_string(Q));
}

std::int64_t ceil_sqrt(i128 n) {
  if (n <= 0) return 0;
  const std::int64_t r = isqrt(n);
  return static_cast<i128>(r) * r == n ? r : r + 1;
}

CensusRecord make_record(std::int64_t a, std::int64_t b) {
  CensusRecord rec;
  rec.a = a;
  rec.b = b;
  rec.k = perfect_square_root(static_cast<i128>(2) + b - 2 * static_cast<i128>(a));
  rec.lambda_approx = detail::salem_value_unchecked(a, b);
  return rec;
}

// b-range of the deg-4 box at fixed a intersected with lambda <= Q.
std::pair<std::int64_t, std::int64_t> deg4_b_range(std::int64_t a, std::int64_t Q) {
  const std::int64_t lo = std::max(checked_sub<std::int64_t>(checked_mul<std::int64_t>(2, a), 1),
                                   min_b_for_bound(a, Q));
  const std::int64_t hi = checked_sub<std::int64_t>(checked_mul<std::int64_t>(-2, a), 3);
  return {lo, hi};
}

bool reducible_disc(i128 disc) { return perfect_square_root(disc).has_value(); }

void deg4_records_for_a(std::int64_t a, std::int64_t Q, std::vector<CensusRecord>& out) {
  const auto [lo, hi] = deg4_b_range(a, Q);
  const i128 a2 = static_cast<i128>(a) * a;
  for (std::int64_t b = lo; b <= hi; ++b) {
    if (reducible_disc(a2 - 4 * static_cast<i128>(b) + 8)) continue;
    out.push_back(make_record(a, b));
  }
}

std::int64_t sr_kmin(std::int64_t a, std::int64_t Q) {
  const i128 m = static_cast<i128>(min_b_for_bound(a, Q)) - 2 * static_cast<i128>(a) + 2;
  return std::max<std::int64_t>(1, ceil_sqrt(m));
}

std::int64_t sr_kmax(std::int64_t a) {
  return isqrt(checked_sub<i128>(checked_mul<i128>(-4, a), 1));
}

void sr_records_for_a(std::int64_t a, std::int64_t Q, std::vector<CensusRecord>& out) {
  const std::int64_t kmax = sr_kmax(a);
  const i128 am4 = static_cast<i128>(a) - 4;
  for (std::int64_t k = sr_kmin(a, Q); k <= kmax; ++k) {
    const i128 k2 = static_cast<i128>(k) * k;
    if (reducible_disc(am4 * am4 - 4 * k2)) continue;
    const std::int64_t b = to_int64(k2 + 2 * static_cast<i128>(a) - 2);
    CensusRecord rec;
    rec.a = a;
    rec.b = b;
    rec.k = k;
    rec.lambda_approx = detail::salem_value_unchecked(a, b);
    out.push_back(rec);
  }
}

// Processes a = -1, -2, ..., -(Q+2) in ordered blocks. Within a block each a
// is handled independently (in parallel); blocks are emitted in order, so the
// sink sees the same sequence for every worker count.
template <typename PerA>
void stream_blocks(std::int64_t Q, const RecordSink& sink, Parallelism par,
                   std::int64_t records_per_unit_a, PerA per_a) {
  constexpr std::int64_t kBlockBudget = 1 << 20;  // records buffered per block
  const std::int64_t amax = checked_add<std::int64_t>(Q, 2);
  std::int64_t first = 1;
  std::vector<std::vector<CensusRecord>> buffers;
  while (first <= amax) {
    const std::int64_t per = std::max<std::int64_t>(1, records_per_unit_a * first);
    const std::int64_t len = std::clamp<std::int64_t>(kBlockBudget / per, 1, amax - first + 1);
    buffers.assign(static_cast<std::size_t>(len), {});
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(par.resolved())
    for (std::int64_t i = 0; i < len; ++i) {
      try {
        per_a(-(first + i), buffers[static_cast<std::size_t>(i)]);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    for (const auto& buf : buffers) {
      for (const auto& rec : buf) sink(rec);
    }
    first += len;
  }
}

// Exceptions may not leave an OpenMP region; the first one is rethrown after it.
template <typename Body>
std::int64_t parallel_sum_over_a(std::int64_t Q, Parallelism par, Body body) {
  const std::int64_t amax = checked_add<std::int64_t>(Q, 2);
  std::int64_t total = 0;
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : total) num_threads(par.resolved())
  for (std::int64_t j = 1; j <= amax; ++j) {
    try {
      total += body(-j);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return total;
}

}  // namespace

std::int64_t min_b_for_bound(std::int64_t a, std::int64_t Q) {
  const i128 q = Q;
  const i128 q2 = checked_mul(q, q);
  const i128 q3 = checked_mul(q2, q);
  const i128 q4 = checked_mul(q3, q);
  const i128 rest =
      checked_add<i128>(checked_add<i128>(checked_add<i128>(q4, checked_mul<i128>(a, q3)),
                                          checked_mul<i128>(a, q)),
                        1);
  return to_int64(ceil_div(-rest, q2));
}

// --- parallel kernels ---------------------------------------------------------

void stream_salem_deg4(std::int64_t Q, const RecordSink& sink, Parallelism par) {
  require_q(Q);
  stream_blocks(Q, sink, par, 4, [Q](std::int64_t a, std::vector<CensusRecord>& out) {
    deg4_records_for_a(a, Q, out);
  });
}

std::vector<CensusRecord> enumerate_salem_deg4(std::int64_t Q, Parallelism par) {
  std::vector<CensusRecord> out;
  stream_salem_deg4(Q, [&out](const CensusRecord& r) { out.push_back(r); }, par);
  return out;
}

std::int64_t count_salem_deg4(std::int64_t Q, Parallelism par) {
  require_q(Q);
  return parallel_sum_over_a(Q, par, [Q](std::int64_t a) -> std::int64_t {
    const auto [lo, hi] = deg4_b_range(a, Q);
    if (lo > hi) return 0;
    // Reducible b in [lo, hi]: a^2 + 8 - 4b = s^2 with s >= 0, s = a (mod 2).
    const i128 a2p8 = static_cast<i128>(a) * a + 8;
    std::int64_t smin = ceil_sqrt(a2p8 - 4 * static_cast<i128>(hi));
    const std::int64_t smax = isqrt(a2p8 - 4 * static_cast<i128>(lo));
    const std::int64_t parity = a & 1;
    if ((smin & 1) != parity) ++smin;
    const std::int64_t reducible = smin > smax ? 0 : (smax - smin) / 2 + 1;
    return (hi - lo + 1) - reducible;
  });
}

void stream_sr(std::int64_t Q, const RecordSink& sink, Parallelism par) {
  require_q(Q);
  const std::int64_t per_unit = 1;  // ~2 sqrt(-a) records per a; 1 * |a| bounds it.
  stream_blocks(Q, sink, par, per_unit, [Q](std::int64_t a, std::vector<CensusRecord>& out) {
    sr_records_for_a(a, Q, out);
  });
}

std::vector<CensusRecord> enumerate_sr(std::int64_t Q, Parallelism par) {
  std::vector<CensusRecord> out;
  stream_sr(Q, [&out](const CensusRecord& r) { out.push_back(r); }, par);
  return out;
}

std::int64_t count_sr(std::int64_t Q, Parallelism par) {
  require_q(Q);
  return parallel_sum_over_a(Q, par, [Q](std::int64_t a) -> std::int64_t {
    const std::int64_t kmax = sr_kmax(a);
    const i128 am4 = static_cast<i128>(a) - 4;
    const i128 am4sq = am4 * am4;
    std::int64_t n = 0;
    for (std::int64_t k = sr_kmin(a, Q); k <= kmax; ++k) {
      if (!reducible_disc(am4sq - 4 * static_cast<i128>(k) * k)) ++n;
    }
    return n;
  });
}

ReducibleAudit audit_sr_reducible(std::int64_t Q) {
  require_q(Q);
  ReducibleAudit audit;
  for (std::int64_t j = 1; j <= Q + 2; ++j) {
    const std::int64_t a = -j;
    const std::int64_t kmax = sr_kmax(a);
    for (std::int64_t k = 1; k <= kmax; ++k) {
      const std::int64_t b = k * k + 2 * a - 2;
      if (is_salem(a, b)) continue;
      ++audit.reducible;
      if (!(b == 2 || b == a + 1 || a + b == 1)) ++audit.outside_families;
    }
  }
  return audit;
}

BoxSums paper_box_sums(std::int64_t Q) {
  if (Q < 0) throw DomainError("Q must be >= 0");
  BoxSums s;
  for (std::int64_t j = 1; j <= Q + 2; ++j) {
    s.sr = checked_add<std::int64_t>(s.sr, ceil_sqrt(4 * static_cast<i128>(j)) - 1);
  }
  s.deg4 = to_int64(checked_mul<i128>(static_cast<i128>(Q) + 2, 2 * static_cast<i128>(Q) + 5));
  return s;
}

std::int64_t count_deg2(std::int64_t Q) {
  if (Q < 3) throw DomainError("degree-2 census needs Q >= 3, got " + std::to_string(Q));
  std::int64_t n = 0;
  const i128 q = Q;
  // 0 < -a < Q + 1; a = -1 has no real root and a = -2 gives lambda = 1.
  for (std::int64_t a = -3; -a < Q + 1; --a) {
    const i128 disc = static_cast<i128>(a) * a - 4;
    if (perfect_square_root(disc)) continue;
    // Roots lambda > 1 > 1/lambda; Q >= 1 > 1/lambda, so Q^2 + aQ + 1 >= 0 iff lambda <= Q.
    if (q * q + a * q + 1 >= 0) ++n;
  }
  return n;
}

// --- serial references ----------------------------------------------------------

namespace reference {

std::vector<CensusRecord> enumerate_salem_deg4(std::int64_t Q) {
  require_q(Q);
  std::vector<CensusRecord> out;
  for (std::int64_t a = -1; a > -(Q + 3); --a) {
    for (std::int64_t b = 2 * a - 1; b <= -2 * a - 3; ++b) {
      if (is_salem(a, b) && salem_le(a, b, Q)) out.push_back(make_record(a, b));
    }
  }
  return out;
}

std::int64_t count_salem_deg4(std::int64_t Q) {
  return static_cast<std::int64_t>(enumerate_salem_deg4(Q).size());
}

std::vector<CensusRecord> enumerate_sr(std::int64_t Q) {
  require_q(Q);
  std::vector<CensusRecord> out;
  for (std::int64_t a = -1; a > -(Q + 3); --a) {
    for (std::int64_t k = 1; k * k < -4 * a; ++k) {
      const std::int64_t b = k * k + 2 * a - 2;
      if (is_salem(a, b) && salem_le(a, b, Q)) out.push_back(make_record(a, b));
    }
  }
  return out;
}

std::int64_t count_sr(std::int64_t Q) {
  require_q(Q);
  std::int64_t n = 0;
  for (std::int64_t a = -1; a > -(Q + 3); --a) {
    for (std::int64_t k = 1; k * k < -4 * a; ++k) {
      const std::int64_t b = k * k + 2 * a - 2;
      if (is_salem(a, b) && salem_le(a, b, Q)) ++n;
    }
  }
  return n;
}

}  // namespace reference

}  // namespace salem
