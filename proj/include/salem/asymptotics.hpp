#pragma once

// Closed-form constants and the fitting/report helpers built on the censuses.

#include <cstdint>
#include <optional>
#include <vector>

#include "salem/algebra.hpp"

namespace salem {

/// omega_m = 2^{m(m+1)} / (m+1) * prod_{k=0}^{m-1} k!^2 / (2k+1)!, the leading
/// constant of the degree-2(m+1) Salem count ~ omega_m Q^{m+1}.
BigRational omega(int m);

struct FitPoint {
  double q = 0.0;
  double count = 0.0;
};

struct FitResult {
  double constant = 0.0;
  double exponent = 0.0;
  double residual = 0.0;  // RMS of log-space residuals
  int points_used = 0;
  std::vector<double> excluded_q;  // smallest-Q points dropped, in drop order
};

/// Least squares of log count = log c + s log Q. While the residual exceeds
/// `threshold` and more than 3 points remain, the smallest-Q point is dropped.
FitResult power_fit(const std::vector<FitPoint>& points, double threshold = 0.01);

struct MultiplicityRow {
  double ell = 0.0;
  double geodesic_count = 0.0;
  double salem_bound = 0.0;
  double mean_mult_lower = 0.0;
};

/// Rows at ell = step, 2 step, ..., <= ell_max for even dimension n >= 4.
/// geodesic_count = e^{(n-1) ell} / ((n-1) ell);
/// salem_bound = sum_{m=1}^{n/2-1} omega_m e^{(m+1) ell} + (e^ell - 2).
std::vector<MultiplicityRow> multiplicity_report(int n, double ell_max, double step);

}  // namespace salem
