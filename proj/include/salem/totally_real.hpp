#pragma once

// Salem quartics over a real quadratic field L = Q(sqrt d) that are
// square-rootable over L: integer solutions (a, k) in o_L x o_L of
//
//   0 < -a < Q + 3,   -4 < a^s < 4,   k^2 < -4a,   k > 0,
//   (a^s - 4)/2 < k^s < 4   or   -4 < k^s < (4 - a^s)/2,
//
// where x^s is the non-identity embedding, inequalities without a superscript
// use the identity embedding, and b = k^2 + 2a - 2.
// Also: the geometry-of-numbers constants bounding the growth constant.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "salem/algebra.hpp"
#include "salem/parallel.hpp"

namespace salem {

enum class Branch { first = 1, second = 2, both = 3 };

const char* to_string(Branch b);

struct SystemSolution {
  RealQuadElem a;
  RealQuadElem k;
  RealQuadElem b;  // k^2 + 2a - 2
  Branch branch = Branch::first;
};

/// Exact membership test of (a, k) in the system at bound Q; the branch that held.
std::optional<Branch> system_branch(const RealQuadElem& a, const RealQuadElem& k, std::int64_t Q);

using SolutionSink = std::function<void(const SystemSolution&)>;

/// Parallel kernel. Order: a by (V, P) doubled coordinates ascending, then k likewise.
void stream_system(std::int64_t d, std::int64_t Q, const SolutionSink& sink, Parallelism par = {});
std::vector<SystemSolution> enumerate_system(std::int64_t d, std::int64_t Q, Parallelism par = {});
std::int64_t count_system(std::int64_t d, std::int64_t Q, bool verified, Parallelism par = {});

/// Full Salem-over-L check: numeric root pattern in both embeddings (tolerance 1e-9),
/// 4 - a + 2k or 4 - a - 2k totally positive, and irreducibility over L.
bool verify_salem_over_L(std::int64_t d, const SystemSolution& s);

struct LatticeGeometry {
  std::int64_t d = 0;
  int h = 2;
  std::int64_t disc = 0;  // field discriminant
  double delta = 0.0;     // twice the longer diagonal of the standard-basis parallelotope
};

LatticeGeometry lattice_geometry(std::int64_t d);

/// 2^{2h+2} (12 + 7 delta + delta^2)^{h-1} / (3 |disc|).
double c2_upper_bound(int h, double delta, std::int64_t disc);
double c2_upper_bound(std::int64_t d);

/// (48 + 28 delta + 4 delta^2)^{h-1} (8/3) Q^{3/2}.
double volume_leading(int h, double delta, double Q);

struct VolumeEstimate {
  double volume = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// Monte Carlo volume of the thickened region S_L(Q, delta) in R^{2h}.
/// Deterministic for a given seed regardless of worker count.
VolumeEstimate sample_volume(int h, double delta, double Q, std::int64_t samples,
                             std::uint64_t seed, Parallelism par = {});

namespace reference {

/// Brute-force scan of a rectangular (u, v) box in big-integer arithmetic.
std::vector<SystemSolution> enumerate_system(std::int64_t d, std::int64_t Q);

}  // namespace reference

}  // namespace salem
