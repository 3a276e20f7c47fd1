#include "isodet/disc_scattering.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "isodet/specfun.hpp"

namespace isodet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFirstY0Zero = 0.8935769662791675;

// J/Y from scaled values; both have the same sign structure so the ratio is
// representable even when J underflows and Y overflows.
double jy_ratio(const Scaled& j, const Scaled& y) {
  const double e = j.log_scale - y.log_scale;
  if (e < -745.0) return 0.0;
  return (j.mantissa / y.mantissa) * std::exp(e);
}

double delta_from(int n, double x, const Scaled& j, const Scaled& y) {
  const bool below = n == 0 ? x < kFirstY0Zero : x <= n;
  if (below) return std::atan(jy_ratio(j, y));
  // Oscillatory side: principal arg of H1 placed on the Debye branch.
  const double theta_p = std::atan2(y.value(), j.value());
  const double nn = static_cast<double>(n);
  const double wkb = std::sqrt(x * x - nn * nn) - nn * std::acos(nn / x) - kPi / 4.0;
  const double theta = theta_p + 2.0 * kPi * std::round((wkb - theta_p) / (2.0 * kPi));
  return -(theta + kPi / 2.0);
}

}  // namespace

int disc_truncation_order(double x) { return static_cast<int>(std::ceil(x + 4.0 * std::cbrt(x) + 20.0)); }

std::vector<double> phase_shifts_disc(int nmax, double x) {
  if (nmax < 0 || !(x > 0.0)) throw std::domain_error("phase_shifts_disc: need n >= 0, x > 0");
  const auto seq = bessel_jy_sequence(nmax, x);
  std::vector<double> d(nmax + 1);
  for (int n = 0; n <= nmax; ++n) d[n] = delta_from(n, x, seq.j[n], seq.y[n]);
  return d;
}

double phase_shift_disc(int n, double x) { return phase_shifts_disc(n, x)[n]; }

PhaseSample scattering_phase_disc(double r, double lambda) {
  if (!(r > 0.0) || !(lambda > 0.0)) throw std::domain_error("scattering_phase_disc: need r, lambda > 0");
  const double x = lambda * r;
  const int nt = disc_truncation_order(x);
  const auto d = phase_shifts_disc(nt + 2, x);
  PhaseSample out;
  out.N = nt;
  double sum = 2.0 * d[0];
  for (int n = 1; n <= nt; ++n) sum += 4.0 * d[n];
  out.s = -sum;
  // Beyond the turning point the shifts decay faster than geometrically.
  out.err = 4.0 * (std::fabs(d[nt + 1]) + std::fabs(d[nt + 2])) + 1e-15 * (nt + 1) * std::fabs(out.s);
  out.flagged = out.err > 1e-9 * std::fabs(out.s);
  return out;
}

PhaseTable disc_phase_model(double r) {
  PhaseTable t;
  t.radius = r;
  t.exact = [r](double l) { return scattering_phase_disc(r, l).s; };
  t.weyl = fit_weyl_tail(t.exact, 60.0 / r, 240.0 / r, 3, 64);
  t.small = fit_small_law(t.exact, 1e-3 / r, 1e-2 / r);
  return t;
}

PhaseTable disc_phase_table(double r, const std::vector<double>& grid) {
  PhaseTable t = disc_phase_model(r);
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1])))
      throw std::invalid_argument("phase grid must be positive and strictly ascending");
    const auto p = scattering_phase_disc(r, grid[i]);
    t.lambda.push_back(grid[i]);
    t.s.push_back(p.s);
    t.err.push_back(p.err);
    t.N.push_back(p.N);
  }
  return t;
}

std::vector<std::complex<double>> amplitude_disc_coefficients(double lambda) {
  if (!(lambda > 0.0) || lambda > 1.0) throw std::domain_error("amplitude_disc: lambda must lie in (0, 1]");
  int nmax = 1;
  double bound = lambda;
  while (bound >= 1e-16) {
    ++nmax;
    bound *= lambda / nmax;
  }
  const auto seq = bessel_jy_sequence(nmax, lambda);
  const std::complex<double> pref = -std::sqrt(2.0 / (kPi * lambda)) * std::polar(1.0, -kPi / 4.0);
  const std::complex<double> i(0.0, 1.0);
  std::vector<std::complex<double>> a(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    // J/H2 = J/(J - iY) = q/(q - i), q = J/Y.
    const double q = jy_ratio(seq.j[n], seq.y[n]);
    a[n] = pref * (q / (q - i));
  }
  return a;
}

std::complex<double> amplitude_disc(double lambda, double theta) {
  const auto a = amplitude_disc_coefficients(lambda);
  std::complex<double> v = a[0];
  for (size_t n = 1; n < a.size(); ++n) v += 2.0 * a[n] * std::cos(static_cast<double>(n) * theta);
  return v;
}

}  // namespace isodet
