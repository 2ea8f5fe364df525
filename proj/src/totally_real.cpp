#include "salem/totally_real.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <random>

#include "salem/salem_core.hpp"

namespace salem {

const char* to_string(Branch b) {
  switch (b) {
    case Branch::first:
      return "1";
    case Branch::second:
      return "2";
    case Branch::both:
      return "both";
  }
  return "?";
}

namespace {

void require_field(std::int64_t d) {
  if (d < 2 || !is_squarefree(d))
    throw DomainError("field parameter d must be square-free and >= 2, got " + std::to_string(d));
}

void require_q(std::int64_t Q) {
  if (Q < 2) throw DomainError("Q must be >= 2, got " + std::to_string(Q));
}

// 2x = p + v sqrt(d): fixed-width element of o_L used by the kernels.
struct Dbl {
  i128 p = 0;
  i128 v = 0;
};

Dbl operator+(Dbl x, Dbl y) { return {x.p + y.p, x.v + y.v}; }
Dbl operator-(Dbl x, Dbl y) { return {x.p - y.p, x.v - y.v}; }
Dbl operator*(i128 c, Dbl x) { return {c * x.p, c * x.v}; }
Dbl cst(i128 c) { return {2 * c, 0}; }

Dbl mul(Dbl x, Dbl y, std::int64_t d) {
  const i128 p = checked_add(checked_mul(x.p, y.p), checked_mul(checked_mul(x.v, y.v), i128{d}));
  const i128 v = checked_add(checked_mul(x.p, y.v), checked_mul(y.p, x.v));
  return {p / 2, v / 2};
}

int s1(Dbl x, std::int64_t d) { return sign_p_plus_v_sqrt(x.p, x.v, d); }
int s2(Dbl x, std::int64_t d) { return sign_p_plus_v_sqrt(x.p, -x.v, d); }

bool is_ring_element(Dbl x, std::int64_t d) {
  if (d % 4 == 1) return ((x.p - x.v) & 1) == 0;
  return (x.p & 1) == 0 && (x.v & 1) == 0;
}

RealQuadElem from_dbl(std::int64_t d, Dbl x) {
  return RealQuadElem::from_doubled(d, to_big(x.p), to_big(x.v));
}

bool a_ok(Dbl a, std::int64_t Q, std::int64_t d) {
  return s1(a, d) < 0 && s1(a + cst(i128{Q} + 3), d) > 0 && s2(cst(4) - a, d) > 0 &&
         s2(a + cst(4), d) > 0;
}

std::optional<Branch> k_ok(Dbl a, Dbl k, std::int64_t d) {
  if (s1(k, d) <= 0) return std::nullopt;
  if (s1(mul(k, k, d) + 4 * a, d) >= 0) return std::nullopt;
  const bool first = s2(2 * k - a + cst(4), d) > 0 && s2(cst(4) - k, d) > 0;
  const bool second = s2(k + cst(4), d) > 0 && s2(cst(4) - a - 2 * k, d) > 0;
  if (first && second) return Branch::both;
  if (first) return Branch::first;
  if (second) return Branch::second;
  return std::nullopt;
}

struct Embedded {
  long double s1;
  long double s2;
};

Embedded embed(Dbl x, long double root) {
  const long double p = static_cast<long double>(x.p);
  const long double v = static_cast<long double>(x.v);
  return {(p + v * root) / 2, (p - v * root) / 2};
}

bool is_square_in_ring(Dbl x, std::int64_t d) {
  if (s1(x, d) < 0 || s2(x, d) < 0) return false;
  const long double root = std::sqrt(static_cast<long double>(d));
  const Embedded e = embed(x, root);
  const long double r1 = std::sqrt(std::max(0.0L, e.s1));
  const long double r2 = std::sqrt(std::max(0.0L, e.s2));
  for (const long double t2 : {r2, -r2}) {
    const auto P = static_cast<i128>(std::llround(r1 + t2));
    const auto V = static_cast<i128>(std::llround((r1 - t2) / root));
    for (int dp = -1; dp <= 1; ++dp) {
      for (int dv = -1; dv <= 1; ++dv) {
        const Dbl r{P + dp, V + dv};
        if (!is_ring_element(r, d)) continue;
        const Dbl sq = mul(r, r, d);
        if (sq.p == x.p && sq.v == x.v) return true;
      }
    }
  }
  return false;
}

bool verify_fast(Dbl a, Dbl k, std::int64_t d) {
  const long double root = std::sqrt(static_cast<long double>(d));
  const Dbl b = mul(k, k, d) + 2 * a - cst(2);
  const Embedded ea = embed(a, root);
  const Embedded eb = embed(b, root);
  if (!classify_palindromic(static_cast<double>(ea.s1), static_cast<double>(eb.s1)).salem)
    return false;
  if (!classify_palindromic(static_cast<double>(ea.s2), static_cast<double>(eb.s2))
           .all_on_unit_circle)
    return false;
  auto totally_pos = [d](Dbl x) { return s1(x, d) > 0 && s2(x, d) > 0; };
  if (!totally_pos(cst(4) - a + 2 * k) && !totally_pos(cst(4) - a - 2 * k)) return false;
  const Dbl disc = mul(a, a, d) - 4 * (b - cst(2));
  return !is_square_in_ring(disc, d);
}

struct Range {
  std::int64_t lo;
  std::int64_t hi;
};

// Integer range covering the open real interval (lo, hi) with one unit of slack;
// exact predicates trim it.
Range slack_range(long double lo, long double hi) {
  return {static_cast<std::int64_t>(std::floor(lo)) - 1, static_cast<std::int64_t>(std::ceil(hi)) + 1};
}

// Visits every a in the search box (exactly filtered) for one doubled V-coordinate.
template <typename Fn>
void for_each_a_in_band(std::int64_t d, std::int64_t Q, std::int64_t V, Fn fn) {
  const long double root = std::sqrt(static_cast<long double>(d));
  const long double vs = V * root;
  // sigma_1(a) = (p + V s)/2 in (-Q-3, 0); sigma_2(a) = (p - V s)/2 in (-4, 4).
  const Range pr = slack_range(std::max(-2.0L * Q - 6 - vs, -8 + vs), std::min(-vs, 8 + vs));
  for (std::int64_t p = pr.lo; p <= pr.hi; ++p) {
    const Dbl a{p, V};
    if (!is_ring_element(a, d)) continue;
    if (a_ok(a, Q, d)) fn(a);
  }
}

template <typename Fn>
void for_each_k(std::int64_t d, Dbl a, Fn fn) {
  const long double root = std::sqrt(static_cast<long double>(d));
  const long double r = 2 * std::sqrt(std::max(0.0L, -embed(a, root).s1));
  // sigma_1(k) in (0, r), sigma_2(k) in (-4, 4).
  const Range vr = slack_range(-4 / root, (r + 4) / root);
  for (std::int64_t V = vr.lo; V <= vr.hi; ++V) {
    const long double vs = V * root;
    const Range pr = slack_range(std::max(-vs, -8 + vs), std::min(2 * r - vs, 8 + vs));
    for (std::int64_t p = pr.lo; p <= pr.hi; ++p) {
      const Dbl k{p, V};
      if (!is_ring_element(k, d)) continue;
      if (auto br = k_ok(a, k, d)) fn(k, *br);
    }
  }
}

Range a_band_range(std::int64_t d, std::int64_t Q) {
  const long double root = std::sqrt(static_cast<long double>(d));
  // V s = sigma_1(a) - sigma_2(a) in (-Q-7, 4).
  return slack_range(-(static_cast<long double>(Q) + 7) / root, 4 / root);
}

}  // namespace

std::optional<Branch> system_branch(const RealQuadElem& a, const RealQuadElem& k, std::int64_t Q) {
  if (a.d() != k.d()) throw DomainError("a and k belong to different fields");
  const std::int64_t d = a.d();
  auto c = [d](std::int64_t x) { return RealQuadElem::constant(d, x); };
  if (embedding_sign(a, 1) >= 0) return std::nullopt;
  if (embedding_sign(a + c(Q + 3), 1) <= 0) return std::nullopt;
  if (embedding_sign(c(4) - a, 2) <= 0 || embedding_sign(a + c(4), 2) <= 0) return std::nullopt;
  if (embedding_sign(k, 1) <= 0) return std::nullopt;
  if (embedding_sign(k * k + c(4) * a, 1) >= 0) return std::nullopt;
  const bool first =
      embedding_sign(c(2) * k - a + c(4), 2) > 0 && embedding_sign(c(4) - k, 2) > 0;
  const bool second =
      embedding_sign(k + c(4), 2) > 0 && embedding_sign(c(4) - a - c(2) * k, 2) > 0;
  if (first && second) return Branch::both;
  if (first) return Branch::first;
  if (second) return Branch::second;
  return std::nullopt;
}

void stream_system(std::int64_t d, std::int64_t Q, const SolutionSink& sink, Parallelism par) {
  require_field(d);
  require_q(Q);
  const Range bands = a_band_range(d, Q);
  const std::int64_t n = bands.hi - bands.lo + 1;
  constexpr std::int64_t kChunk = 64;
  for (std::int64_t first = 0; first < n; first += kChunk) {
    const std::int64_t len = std::min(kChunk, n - first);
    std::vector<std::vector<SystemSolution>> buffers(static_cast<std::size_t>(len));
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(par.resolved())
    for (std::int64_t i = 0; i < len; ++i) {
      try {
        auto& out = buffers[static_cast<std::size_t>(i)];
        for_each_a_in_band(d, Q, bands.lo + first + i, [&](Dbl a) {
          for_each_k(d, a, [&](Dbl k, Branch br) {
            const Dbl b = mul(k, k, d) + 2 * a - cst(2);
            out.push_back({from_dbl(d, a), from_dbl(d, k), from_dbl(d, b), br});
          });
        });
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    for (const auto& buf : buffers) {
      for (const auto& s : buf) sink(s);
    }
  }
}

std::vector<SystemSolution> enumerate_system(std::int64_t d, std::int64_t Q, Parallelism par) {
  std::vector<SystemSolution> out;
  stream_system(d, Q, [&out](const SystemSolution& s) { out.push_back(s); }, par);
  return out;
}

std::int64_t count_system(std::int64_t d, std::int64_t Q, bool verified, Parallelism par) {
  require_field(d);
  require_q(Q);
  const Range bands = a_band_range(d, Q);
  std::int64_t total = 0;
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total) num_threads(par.resolved())
  for (std::int64_t V = bands.lo; V <= bands.hi; ++V) {
    try {
      for_each_a_in_band(d, Q, V, [&](Dbl a) {
        for_each_k(d, a, [&](Dbl k, Branch) {
          if (!verified || verify_fast(a, k, d)) ++total;
        });
      });
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return total;
}

bool verify_salem_over_L(std::int64_t d, const SystemSolution& s) {
  require_field(d);
  const auto c = [d](std::int64_t x) { return RealQuadElem::constant(d, x); };
  const auto [a1, a2] = embeddings(s.a);
  const auto [b1, b2] = embeddings(s.b);
  if (!classify_palindromic(a1, b1).salem) return false;
  if (!classify_palindromic(a2, b2).all_on_unit_circle) return false;
  if (!totally_positive(c(4) - s.a + c(2) * s.k) && !totally_positive(c(4) - s.a - c(2) * s.k))
    return false;
  const RealQuadElem disc = s.a * s.a - c(4) * (s.b - c(2));
  return !sqrt_in_ring(disc).has_value();
}

LatticeGeometry lattice_geometry(std::int64_t d) {
  require_field(d);
  LatticeGeometry g;
  g.d = d;
  g.h = 2;
  g.disc = d % 4 == 1 ? d : 4 * d;
  const double root = std::sqrt(static_cast<double>(d));
  const double w1 = d % 4 == 1 ? (1 + root) / 2 : root;
  const double w2 = d % 4 == 1 ? (1 - root) / 2 : -root;
  const double plus = std::hypot(1 + w1, 1 + w2);
  const double minus = std::hypot(1 - w1, 1 - w2);
  g.delta = 2 * std::max(plus, minus);
  return g;
}

double c2_upper_bound(int h, double delta, std::int64_t disc) {
  if (h < 1 || delta < 0 || disc == 0) throw DomainError("c2 bound needs h >= 1, delta >= 0, disc != 0");
  return std::pow(2.0, 2 * h + 2) * std::pow(12 + 7 * delta + delta * delta, h - 1) /
         (3.0 * std::fabs(static_cast<double>(disc)));
}

double c2_upper_bound(std::int64_t d) {
  const LatticeGeometry g = lattice_geometry(d);
  return c2_upper_bound(g.h, g.delta, g.disc);
}

double volume_leading(int h, double delta, double Q) {
  if (h < 1 || delta < 0 || Q < 1) throw DomainError("volume needs h >= 1, delta >= 0, Q >= 1");
  return std::pow(48 + 28 * delta + 4 * delta * delta, h - 1) * (8.0 / 3.0) * std::pow(Q, 1.5);
}

VolumeEstimate sample_volume(int h, double delta, double Q, std::int64_t samples,
                             std::uint64_t seed, Parallelism par) {
  if (h < 1 || delta < 0 || Q < 1 || samples < 1)
    throw DomainError("sample_volume needs h >= 1, delta >= 0, Q >= 1, samples >= 1");
  // Bounding box of S_L(Q, delta).
  const double x1_lo = -Q - 3 - delta;
  const double x1_hi = delta;
  const double y1_hi = 2 * std::sqrt(Q + 3 + delta) + delta;
  const double xi_hi = 4 + delta;
  const double yi_lo = (-xi_hi - 4) / 2 - delta;
  const double yi_hi = 4 + delta;
  const double box = (x1_hi - x1_lo) * (2 * y1_hi) *
                     std::pow((2 * xi_hi) * (yi_hi - yi_lo), h - 1);

  constexpr std::int64_t kChunk = 1 << 16;
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  std::int64_t hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits) num_threads(par.resolved())
  for (std::int64_t c = 0; c < chunks; ++c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::int64_t n = std::min(kChunk, samples - c * kChunk);
    for (std::int64_t i = 0; i < n; ++i) {
      const double x1 = x1_lo + (x1_hi - x1_lo) * unit(rng);
      const double y1 = -y1_hi + 2 * y1_hi * unit(rng);
      if (!(-delta < -x1 && -x1 < Q + 3 + delta)) continue;
      bool inside = std::fabs(y1) < std::sqrt(std::max(0.0, -4 * x1)) + delta;
      for (int j = 1; j < h; ++j) {
        const double xi = -xi_hi + 2 * xi_hi * unit(rng);
        const double yi = yi_lo + (yi_hi - yi_lo) * unit(rng);
        inside = inside && std::fabs(xi) < xi_hi && (xi - 4) / 2 - delta < yi && yi < yi_hi;
      }
      if (inside) ++hits;
    }
  }
  VolumeEstimate est;
  est.samples = samples;
  const double frac = static_cast<double>(hits) / static_cast<double>(samples);
  est.volume = box * frac;
  est.std_error = box * std::sqrt(frac * (1 - frac) / static_cast<double>(samples));
  return est;
}

namespace reference {

std::vector<SystemSolution> enumerate_system(std::int64_t d, std::int64_t Q) {
  require_field(d);
  require_q(Q);
  const double root = std::sqrt(static_cast<double>(d));
  const bool half = d % 4 == 1;
  // Doubled-coordinate boxes: P = sigma_1 + sigma_2, V sqrt(d) = sigma_1 - sigma_2.
  auto uv_box = [&](double plo, double phi, double vlo, double vhi) {
    const double Vlo = vlo / root;
    const double Vhi = vhi / root;
    struct Box {
      std::int64_t ulo, uhi, vlo, vhi;
    } b{};
    if (half) {
      b.vlo = static_cast<std::int64_t>(std::floor(Vlo)) - 1;
      b.vhi = static_cast<std::int64_t>(std::ceil(Vhi)) + 1;
      b.ulo = static_cast<std::int64_t>(std::floor((plo - Vhi) / 2)) - 1;
      b.uhi = static_cast<std::int64_t>(std::ceil((phi - Vlo) / 2)) + 1;
    } else {
      b.vlo = static_cast<std::int64_t>(std::floor(Vlo / 2)) - 1;
      b.vhi = static_cast<std::int64_t>(std::ceil(Vhi / 2)) + 1;
      b.ulo = static_cast<std::int64_t>(std::floor(plo / 2)) - 1;
      b.uhi = static_cast<std::int64_t>(std::ceil(phi / 2)) + 1;
    }
    return b;
  };
  const double q = static_cast<double>(Q);
  const auto abox = uv_box(-q - 7, 4, -q - 7, 4);
  const double kr = 2 * std::sqrt(q + 3);
  const auto kbox = uv_box(-4, kr + 4, -4, kr + 4);

  std::vector<SystemSolution> out;
  const auto c = [d](std::int64_t x) { return RealQuadElem::constant(d, x); };
  for (std::int64_t av = abox.vlo; av <= abox.vhi; ++av) {
    for (std::int64_t au = abox.ulo; au <= abox.uhi; ++au) {
      const RealQuadElem a(d, au, av);
      // Conditions on a alone, with a k that passes everything k-related: reuse system_branch
      // by filtering a first through its own inequalities.
      if (embedding_sign(a, 1) >= 0 || embedding_sign(a + c(Q + 3), 1) <= 0 ||
          embedding_sign(c(4) - a, 2) <= 0 || embedding_sign(a + c(4), 2) <= 0)
        continue;
      for (std::int64_t kv = kbox.vlo; kv <= kbox.vhi; ++kv) {
        for (std::int64_t ku = kbox.ulo; ku <= kbox.uhi; ++ku) {
          const RealQuadElem k(d, ku, kv);
          if (auto br = system_branch(a, k, Q)) {
            out.push_back({a, k, k * k + c(2) * a - c(2), *br});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace reference

}  // namespace salem
