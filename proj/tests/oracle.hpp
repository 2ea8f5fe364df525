#pragma once

// Test-side numeric oracles. Independent of the library's y = x + 1/x route:
// roots come from the companion matrix eigenvalues.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

/// Roots of the monic polynomial with coefficients c[0] + c[1] x + ... + x^n.
inline std::vector<cd> roots(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<std::size_t>(i)];
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<cd> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

inline std::vector<cd> palindromic_roots(double a, double b) { return roots({1, a, b, a}); }

struct Pattern {
  bool salem_shape = false;  // lambda > 1, 1/lambda, non-real unit pair
  bool on_circle = false;    // all |x| within tol of 1
  double lambda = 0.0;
  double margin = 1e300;     // smallest distance of a deciding quantity to its threshold
};

inline Pattern classify(double a, double b, double tol) {
  const auto rs = palindromic_roots(a, b);
  Pattern p;
  int big = 0, small = 0, unit_nonreal = 0, unit = 0;
  for (const cd& r : rs) {
    const double dm = std::abs(std::abs(r) - 1.0);
    p.margin = std::min(p.margin, std::abs(dm - tol));
    if (dm <= tol) {
      ++unit;
      if (std::abs(r.imag()) > tol) ++unit_nonreal;
    } else if (std::abs(r) > 1 && std::abs(r.imag()) <= tol && r.real() > 0) {
      ++big;
      p.lambda = r.real();
    } else if (std::abs(r) < 1 && std::abs(r.imag()) <= tol && r.real() > 0) {
      ++small;
    }
  }
  p.salem_shape = big == 1 && small == 1 && unit_nonreal == 2;
  p.on_circle = unit == 4;
  return p;
}

/// Numeric irreducibility of an integer palindromic quartic: reducible exactly when
/// some x + 1/x over the roots lands on an integer (a rational root of r(y)).
inline bool numerically_reducible(double a, double b) {
  for (const cd& r : palindromic_roots(a, b)) {
    const cd y = r + 1.0 / r;
    if (std::abs(y.imag()) < 1e-6 && std::abs(y.real() - std::round(y.real())) < 1e-6) return true;
  }
  return false;
}

/// Salem classification of x^4 + a x^3 + b x^2 + a x + 1 over Z by root pattern.
inline bool is_salem(long a, long b, double tol = 1e-9) {
  const double da = static_cast<double>(a), db = static_cast<double>(b);
  return classify(da, db, tol).salem_shape && !numerically_reducible(da, db);
}

}  // namespace oracle
