#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "oracle.hpp"
#include "salem/totally_real.hpp"

using namespace salem;

namespace {

using Coords = std::tuple<long, long, long, long>;  // a_u, a_v, k_u, k_v

Coords coords(const SystemSolution& s) {
  return {s.a.u().get_si(), s.a.v().get_si(), s.k.u().get_si(), s.k.v().get_si()};
}

std::set<Coords> coord_set(const std::vector<SystemSolution>& v) {
  std::set<Coords> out;
  for (const auto& s : v) out.insert(coords(s));
  return out;
}

RealQuadElem E(std::int64_t d, long u, long v) { return RealQuadElem(d, u, v); }

// Floating evaluation of the system with a safety margin; returns -1 when too close to call.
int float_system(std::int64_t d, const RealQuadElem& a, const RealQuadElem& k, double Q) {
  const auto [a1, a2] = embeddings(a);
  const auto [k1, k2] = embeddings(k);
  const double eps = 1e-9;
  const std::vector<double> slack = {-a1, a1 + Q + 3, 4 - a2, a2 + 4, k1, -4 * a1 - k1 * k1};
  const std::vector<double> b1 = {k2 - (a2 - 4) / 2, 4 - k2};
  const std::vector<double> b2 = {k2 + 4, (4 - a2) / 2 - k2};
  auto ok = [&](const std::vector<double>& xs) {
    int r = 1;
    for (double x : xs) {
      if (std::abs(x) < eps) return -1;
      if (x < 0) r = 0;
    }
    return r;
  };
  (void)d;
  const int base = ok(slack), f = ok(b1), s = ok(b2);
  if (base < 0 || f < 0 || s < 0) return -1;
  return base && (f || s);
}

}  // namespace

TEST(SystemBranch, Examples) {
  // a = -5 is outside |sigma_2(a)| < 4 and is rejected.
  EXPECT_FALSE(system_branch(E(2, -5, 0), E(2, 1, 0), 100));
  // sigma_1(-5 + 4 sqrt2) > 0.
  EXPECT_FALSE(system_branch(E(2, -5, 4), E(2, 1, 0), 100));
  EXPECT_EQ(system_branch(E(2, -3, 0), E(2, 1, 0), 100), Branch::both);
  EXPECT_THROW(system_branch(E(2, -3, 0), E(5, 1, 0), 100), DomainError);
}

TEST(SystemBranch, AgreesWithFloatingEvaluation) {
  for (std::int64_t d : {2, 3, 5}) {
    for (long au = -30; au <= 5; ++au)
      for (long av = -20; av <= 20; ++av)
        for (long ku = -8; ku <= 8; ++ku)
          for (long kv = -6; kv <= 6; ++kv) {
            const RealQuadElem a = E(d, au, av), k = E(d, ku, kv);
            const int f = float_system(d, a, k, 30);
            if (f < 0) continue;
            ASSERT_EQ(system_branch(a, k, 30).has_value(), f == 1) << d << " " << au << " " << av << " " << ku << " " << kv;
          }
  }
}

TEST(EnumerateSystem, ParallelMatchesReference) {
  for (std::int64_t d : {2, 3, 5, 6, 13}) {
    for (std::int64_t Q : {2, 10, 40}) {
      const auto fast = enumerate_system(d, Q);
      const auto ref = reference::enumerate_system(d, Q);
      ASSERT_EQ(fast.size(), ref.size()) << d << " " << Q;
      EXPECT_EQ(coord_set(fast), coord_set(ref)) << d << " " << Q;
      EXPECT_EQ(count_system(d, Q, false), static_cast<std::int64_t>(ref.size()));
    }
  }
}

TEST(EnumerateSystem, SolutionInvariants) {
  for (std::int64_t d : {2, 5}) {
    const auto sols = enumerate_system(d, 100);
    ASSERT_FALSE(sols.empty());
    const auto two = RealQuadElem::constant(d, 2);
    for (const auto& s : sols) {
      ASSERT_EQ(s.b, s.k * s.k + two * s.a - two);
      ASSERT_EQ(system_branch(s.a, s.k, 100), s.branch);
      const auto [a1, a2] = embeddings(s.a);
      const auto [k1, k2] = embeddings(s.k);
      ASSERT_LT(k1 * k1, -4 * a1 + 1e-9);
      ASSERT_GT(-a1, -1e-9);
      ASSERT_LT(std::abs(a2), 4 + 1e-9);
      (void)k2;
    }
    // Ordered, no duplicates.
    EXPECT_EQ(coord_set(sols).size(), sols.size());
  }
}

TEST(EnumerateSystem, OutputIndependentOfWorkers) {
  const auto a = enumerate_system(5, 300, Parallelism{1});
  const auto b = enumerate_system(5, 300, Parallelism{4});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].a, b[i].a);
    ASSERT_EQ(a[i].k, b[i].k);
    ASSERT_EQ(a[i].branch, b[i].branch);
  }
  EXPECT_EQ(count_system(5, 300, true, Parallelism{1}), count_system(5, 300, true, Parallelism{3}));
}

// Rational solutions (v = 0) are the integer (a, k) pairs with k^2 < -4a, k > 0
// and |a| < 4, since sigma_2 = sigma_1 on Q.
TEST(EnumerateSystem, RationalSection) {
  std::set<std::pair<long, long>> expected;
  for (long a = -3; a <= -1; ++a)
    for (long k = 1; k * k < -4 * a; ++k) expected.insert({a, k});
  for (std::int64_t d : {2, 3, 5, 7}) {
    for (std::int64_t Q : {2, 50, 200}) {
      std::set<std::pair<long, long>> got;
      for (const auto& s : enumerate_system(d, Q))
        if (s.a.v() == 0 && s.k.v() == 0) got.insert({s.a.u().get_si(), s.k.u().get_si()});
      EXPECT_EQ(got, expected) << d << " " << Q;
    }
  }
}

TEST(EnumerateSystem, Validation) {
  EXPECT_THROW(enumerate_system(1, 10), DomainError);
  EXPECT_THROW(enumerate_system(8, 10), DomainError);
  EXPECT_THROW(count_system(2, 1, false), DomainError);
}

TEST(VerifySalemOverL, Examples) {
  const auto c = [](long x) { return RealQuadElem::constant(2, x); };
  // Rational a = -5 fails on the conjugate side: p^sigma = p is not on the circle.
  EXPECT_FALSE(verify_salem_over_L(2, {c(-5), c(1), c(-11), Branch::both}));
  // Identity root condition fails for a = -5 + 4 sqrt2.
  const RealQuadElem a = E(2, -5, 4), k = c(1);
  EXPECT_FALSE(verify_salem_over_L(2, {a, k, k * k + c(2) * a - c(2), Branch::first}));
}

// Oracle: Eigen roots for both embedded quartics; sqrt_in_ring for irreducibility.
TEST(VerifySalemOverL, AgreesWithEigenRoots) {
  int checked = 0, passed = 0;
  for (std::int64_t d : {2, 5}) {
    const auto c = [d](long x) { return RealQuadElem::constant(d, x); };
    for (const auto& s : enumerate_system(d, 60)) {
      const auto [a1, a2] = embeddings(s.a);
      const auto [b1, b2] = embeddings(s.b);
      const auto p1 = oracle::classify(a1, b1, 1e-9);
      const auto p2 = oracle::classify(a2, b2, 1e-9);
      const auto p1l = oracle::classify(a1, b1, 1e-6);
      const auto p2l = oracle::classify(a2, b2, 1e-6);
      if (p1.salem_shape != p1l.salem_shape || p2.on_circle != p2l.on_circle) continue;
      const bool alpha = totally_positive(c(4) - s.a + c(2) * s.k) || totally_positive(c(4) - s.a - c(2) * s.k);
      const bool irreducible = !sqrt_in_ring(s.a * s.a - c(4) * (s.b - c(2)));
      const bool expected = p1.salem_shape && p2.on_circle && alpha && irreducible;
      ASSERT_EQ(verify_salem_over_L(d, s), expected);
      ++checked;
      passed += expected;
      if (expected) {
        ASSERT_GE(p1.lambda, 1 + 1e-9);
      }
    }
  }
  EXPECT_GT(checked, 1000);
  EXPECT_GT(passed, 0);
}

TEST(CountSystem, VerifiedFastPathMatchesExactCheck) {
  for (std::int64_t d : {2, 3, 5, 13}) {
    std::int64_t ok = 0;
    for (const auto& s : enumerate_system(d, 150)) ok += verify_salem_over_L(d, s);
    EXPECT_EQ(count_system(d, 150, true), ok) << d;
    EXPECT_LE(count_system(d, 150, true), count_system(d, 150, false));
  }
}

TEST(LatticeGeometry, Examples) {
  const auto g5 = lattice_geometry(5);
  EXPECT_EQ(g5.disc, 5);
  EXPECT_EQ(g5.h, 2);
  EXPECT_NEAR(g5.delta, 2 * std::sqrt(7.0), 1e-12);
  const auto g2 = lattice_geometry(2);
  EXPECT_EQ(g2.disc, 8);
  EXPECT_NEAR(g2.delta, 2 * std::sqrt(6.0), 1e-12);
  EXPECT_EQ(lattice_geometry(3).disc, 12);
  EXPECT_THROW(lattice_geometry(4), DomainError);
}

TEST(C2Bound, FormulaValues) {
  const double d5 = 2 * std::sqrt(7.0);
  EXPECT_NEAR(c2_upper_bound(5), 64.0 / 15 * (12 + 7 * d5 + d5 * d5), 1e-9);
  EXPECT_NEAR(c2_upper_bound(5), 328.706, 1e-3);
  EXPECT_NEAR(c2_upper_bound(2), 187.45, 0.01);
  EXPECT_GT(c2_upper_bound(2, 3.0, 8), c2_upper_bound(2, 3.0, 12));
}

TEST(VolumeLeading, Examples) {
  EXPECT_NEAR(volume_leading(1, 0, 100), 8000.0 / 3, 1e-9);
  EXPECT_DOUBLE_EQ(volume_leading(1, 0, 100) / 2, 4.0 / 3 * 1000);
  EXPECT_NEAR(volume_leading(2, 0, 1), 128, 1e-12);
  EXPECT_THROW(volume_leading(0, 0, 1), DomainError);
}

TEST(SampleVolume, DeterministicAndClose) {
  const auto a = sample_volume(2, 1.0, 1e4, 400000, 42, Parallelism{1});
  const auto b = sample_volume(2, 1.0, 1e4, 400000, 42, Parallelism{4});
  EXPECT_EQ(a.volume, b.volume);
  const double lead = volume_leading(2, 1.0, 1e4);
  EXPECT_NEAR(a.volume / lead, 1.0, 0.03);
  EXPECT_GT(a.std_error, 0);
  const auto h1 = sample_volume(1, 0.0, 1e4, 400000, 7);
  EXPECT_NEAR(h1.volume / volume_leading(1, 0.0, 1e4), 1.0, 0.01);
}
