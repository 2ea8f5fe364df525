#include "salem/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace salem {

BigRational omega(int m) {
  if (m < 1) throw DomainError("omega needs m >= 1, got " + std::to_string(m));
  BigInt num;
  mpz_ui_pow_ui(num.get_mpz_t(), 2, static_cast<unsigned long>(m) * (m + 1));
  BigInt den = m + 1;
  BigInt kfact = 1;     // k!
  BigInt oddfact = 1;   // (2k+1)!
  for (int k = 0; k < m; ++k) {
    if (k > 0) {
      kfact *= k;
      oddfact *= 2 * k;
      oddfact *= 2 * k + 1;
    }
    num *= kfact * kfact;
    den *= oddfact;
  }
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

struct Ols {
  double intercept;
  double slope;
  double rms;
};

Ols ols(const std::vector<FitPoint>& pts) {
  const double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0;
  for (const auto& p : pts) {
    sx += std::log(p.q);
    sy += std::log(p.count);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    const double dx = std::log(p.q) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.count) - my);
  }
  if (sxx == 0) throw DomainError("power_fit needs at least two distinct Q values");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0;
  for (const auto& p : pts) {
    const double r = std::log(p.count) - (intercept + slope * std::log(p.q));
    ss += r * r;
  }
  return {intercept, slope, std::sqrt(ss / n)};
}

}  // namespace

FitResult power_fit(const std::vector<FitPoint>& points, double threshold) {
  if (points.size() < 3) throw DomainError("power_fit needs at least 3 points");
  for (const auto& p : points) {
    if (!(p.q > 0) || !(p.count > 0)) throw DomainError("power_fit needs positive Q and counts");
  }
  std::vector<FitPoint> pts = points;
  std::stable_sort(pts.begin(), pts.end(),
                   [](const FitPoint& x, const FitPoint& y) { return x.q < y.q; });
  FitResult res;
  Ols fit = ols(pts);
  while (fit.rms > threshold && pts.size() > 3) {
    res.excluded_q.push_back(pts.front().q);
    pts.erase(pts.begin());
    fit = ols(pts);
  }
  res.constant = std::exp(fit.intercept);
  res.exponent = fit.slope;
  res.residual = fit.rms;
  res.points_used = static_cast<int>(pts.size());
  return res;
}

std::vector<MultiplicityRow> multiplicity_report(int n, double ell_max, double step) {
  if (n < 4 || n % 2 != 0) throw DomainError("n must be even and >= 4, got " + std::to_string(n));
  if (!(step >= 1) || !(step <= ell_max))
    throw DomainError("need 1 <= step <= ell_max");
  std::vector<double> om;
  for (int m = 1; m <= n / 2 - 1; ++m) om.push_back(omega(m).get_d());
  std::vector<MultiplicityRow> rows;
  const auto steps = static_cast<std::int64_t>(std::floor(ell_max / step + 1e-9));
  for (std::int64_t i = 1; i <= steps; ++i) {
    const double ell = static_cast<double>(i) * step;
    MultiplicityRow r;
    r.ell = ell;
    r.geodesic_count = std::exp((n - 1) * ell) / ((n - 1) * ell);
    double bound = std::exp(ell) - 2;
    for (int m = 1; m <= n / 2 - 1; ++m) bound += om[m - 1] * std::exp((m + 1) * ell);
    r.salem_bound = bound;
    if (!std::isfinite(r.geodesic_count) || !std::isfinite(r.salem_bound))
      throw CapacityError("multiplicity report overflows double at ell = " + std::to_string(ell));
    r.mean_mult_lower = r.geodesic_count / r.salem_bound;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace salem
