#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>

#include "oracle.hpp"
#include "salem/bianchi.hpp"
#include "salem/census_q.hpp"

using namespace salem;

namespace {

std::complex<double> trace_value(std::int64_t D, long u, long v) {
  const double s = std::sqrt(static_cast<double>(D));
  const std::complex<double> w = D % 4 == 3 ? std::complex<double>(0.5, s / 2) : std::complex<double>(0, s);
  return static_cast<double>(u) + static_cast<double>(v) * w;
}

// |mu|^2 for the larger eigenvalue of [[t, -1], [1, 0]] (roots of z^2 - t z + 1).
double half_lambda_from_eigen(std::complex<double> t) {
  const std::complex<double> disc = std::sqrt(t * t - 4.0);
  const std::complex<double> m1 = (t + disc) / 2.0, m2 = (t - disc) / 2.0;
  const double m = std::max(std::abs(m1), std::abs(m2));
  return m * m;
}

}  // namespace

TEST(SalemFromTrace, WorkedExample) {
  const auto s = salem_from_trace(1, QuadIntK(1, 1, 2));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->A, -5);
  EXPECT_EQ(s->B, -8);
  EXPECT_EQ(s->k(), 10);
  const double y = (5 + std::sqrt(65.0)) / 2;  // larger root of z^2 - 5z - 10
  EXPECT_NEAR(s->y_plus(), y, 1e-12);
  EXPECT_NEAR(std::sqrt(s->lambda()), (y + std::sqrt(y * y - 4)) / 2, 1e-10);
  EXPECT_NEAR(std::sqrt(s->lambda()), 6.37425, 1e-5);
  EXPECT_NEAR(s->lambda(), 40.63, 0.01);
  EXPECT_EQ(s->lifted(), SalemQuartic(-41, 16));
  EXPECT_EQ(*is_perfect_square(s->lifted().eval(BigInt(-1))), 10);
}

TEST(SalemFromTrace, Exclusions) {
  EXPECT_FALSE(salem_from_trace(1, QuadIntK(1, 3, 0)));
  EXPECT_FALSE(salem_from_trace(1, QuadIntK(1, 0, 2)));
  EXPECT_THROW(salem_from_trace(12, QuadIntK(1, 1, 1)), DomainError);
  EXPECT_THROW(salem_from_trace(2, QuadIntK(1, 1, 1)), DomainError);
}

TEST(SalemFromTrace, SpectralIdentity) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> coord(-30, 30);
  int checked = 0;
  for (std::int64_t D : {1, 2, 3, 7}) {
    while (checked < 250 * (D == 7 ? 4 : D == 3 ? 3 : D == 2 ? 2 : 1)) {
      const long u = coord(rng), v = coord(rng);
      const auto s = salem_from_trace(D, QuadIntK(D, u, v));
      if (!s) continue;
      ++checked;
      const double h = half_lambda_from_eigen(trace_value(D, u, v));
      // 2 cosh(l) with l = log |mu|^2.
      ASSERT_NEAR(h + 1 / h, s->y_plus(), 1e-9 * s->y_plus());
      ASSERT_NEAR(s->lambda(), h * h, 1e-9 * h * h);
      ASSERT_TRUE(is_salem(SalemQuartic(s->A, s->B)));
      ASSERT_LT(s->A, 0);
    }
  }
}

TEST(SalemFromTrace, SymmetricTracesShareKey) {
  for (std::int64_t D : {1, 2, 3, 7, 11}) {
    for (long u = -12; u <= 12; ++u) {
      for (long v = -12; v <= 12; ++v) {
        const QuadIntK t(D, u, v);
        if (norm(t) > 100) continue;
        const auto s = salem_from_trace(D, t);
        for (const QuadIntK& o : {-t, t.conj(), -t.conj()}) {
          const auto so = salem_from_trace(D, o);
          ASSERT_EQ(s.has_value(), so.has_value());
          if (s) {
            ASSERT_EQ(s->A, so->A);
            ASSERT_EQ(s->B, so->B);
          }
        }
      }
    }
  }
}

// Independent census: complex-arithmetic traces, numeric lambda, dedupe on (A, B).
TEST(BianchiCensus, MatchesComplexOracle) {
  for (std::int64_t D : {1, 2, 3, 7}) {
    for (std::int64_t Q : {10, 100, 2000}) {
      std::set<std::pair<std::int64_t, std::int64_t>> expected;
      const long R = 2 * static_cast<long>(std::sqrt(static_cast<double>(Q))) + 20;
      for (long u = -R; u <= R; ++u) {
        for (long v = -R; v <= R; ++v) {
          const auto t = trace_value(D, u, v);
          if (v == 0 || std::abs(t.real()) < 1e-12) continue;
          const double N = std::norm(t);
          const double Tr = 2 * (t * t).real();
          const long Ni = std::lround(N), Tri = std::lround(Tr);
          if (oracle::numerically_reducible(-static_cast<double>(Ni), static_cast<double>(Tri - 2))) continue;
          const double h = half_lambda_from_eigen(t);
          ASSERT_GT(std::abs(h * h - static_cast<double>(Q)), 1e-6);
          if (h * h <= static_cast<double>(Q)) expected.insert({-Ni, Tri - 2});
        }
      }
      const auto c = bianchi_census(D, Q);
      std::set<std::pair<std::int64_t, std::int64_t>> got;
      for (const auto& m : c.members) got.insert({m.A, m.B});
      EXPECT_EQ(got, expected) << "D=" << D << " Q=" << Q;
      EXPECT_EQ(c.count, static_cast<std::int64_t>(expected.size()));
    }
  }
}

TEST(BianchiCensus, SubsetOfSquareRootableCensus) {
  for (std::int64_t D : {1, 2, 3}) {
    for (std::int64_t Q : {50, 1000}) {
      std::set<std::pair<std::int64_t, std::int64_t>> sr;
      for (const auto& r : enumerate_sr(Q)) sr.insert({r.a, r.b});
      for (const auto& m : bianchi_census(D, Q).members) {
        const SalemQuartic p = m.lifted();
        ASSERT_TRUE(sr.count({p.a.get_si(), p.b.get_si()})) << m.A << "," << m.B;
        ASSERT_TRUE(square_root_witness(p).has_value());
      }
    }
  }
}

TEST(BianchiCensus, WitnessesAndOrder) {
  const auto c = bianchi_census(1, 100000);
  ASSERT_FALSE(c.members.empty());
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    const auto& m = c.members[i];
    ASSERT_GE(m.witness_total, 1);
    ASSERT_LE(m.witnesses.size(), BianchiSalem::kWitnessCap);
    ASSERT_EQ(m.witnesses.size(), std::min<std::size_t>(m.witness_total, BianchiSalem::kWitnessCap));
    for (const auto& w : m.witnesses) {
      const auto s = salem_from_trace(1, QuadIntK(1, w.u, w.v));
      ASSERT_TRUE(s);
      ASSERT_EQ(s->A, m.A);
      ASSERT_EQ(s->B, m.B);
    }
    if (i > 0) {
      const auto& p = c.members[i - 1];
      ASSERT_TRUE(p.A > m.A || (p.A == m.A && p.B < m.B));
    }
    ASSERT_TRUE(salem_le(m.lifted(), BigInt(100000)));
  }
  EXPECT_GE(c.diagnostics.distinct_lengths_all, c.count);
}

TEST(BianchiCensus, IndependentOfWorkers) {
  const auto a = bianchi_census(7, 1000000, Parallelism{1});
  const auto b = bianchi_census(7, 1000000, Parallelism{4});
  ASSERT_EQ(a.count, b.count);
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    ASSERT_EQ(a.members[i].A, b.members[i].A);
    ASSERT_EQ(a.members[i].B, b.members[i].B);
    ASSERT_EQ(a.members[i].witnesses, b.members[i].witnesses);
  }
  EXPECT_EQ(a.diagnostics.traces_scanned, b.diagnostics.traces_scanned);
}

TEST(BianchiCensus, Validation) {
  EXPECT_THROW(bianchi_census(12, 100), DomainError);
  EXPECT_THROW(bianchi_census(1, 1), DomainError);
  EXPECT_EQ(trace_norm_bound(100), 13);
}

TEST(MarklofConstant, Examples) {
  EXPECT_NEAR(marklof_constant(1), 0.7853981633974483, 1e-12);
  EXPECT_NEAR(marklof_constant(3), 0.9068996821171089, 1e-12);
  EXPECT_NEAR(marklof_constant(2), 0.5553603672697958, 1e-12);
  EXPECT_THROW(marklof_constant(4), DomainError);
}

TEST(BianchiCensus, LeadingConstantD1D3) {
  for (std::int64_t D : {1, 3}) {
    const auto c = bianchi_census(D, 100000000);
    const double ratio = static_cast<double>(c.count) / 1e4;
    EXPECT_NEAR(ratio, marklof_constant(D), D == 1 ? 0.08 : 0.09);
  }
}
