#include "isodet/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/bessel.hpp>

namespace isodet {

namespace {

namespace bmp = boost::math::policies;
using Pol = bmp::policy<bmp::overflow_error<bmp::ignore_error>,
                        bmp::underflow_error<bmp::ignore_error>,
                        bmp::evaluation_error<bmp::ignore_error>>;

constexpr double kPi = std::numbers::pi;
constexpr double kBig = 1e250;
const double kLogBig = std::log(kBig);

void check_args(int n, double x) {
  if (n < 0) throw std::domain_error("bessel: negative order");
  if (!(x > 0.0)) throw std::domain_error("bessel: argument must be positive");
}

bool usable(double v) { return std::isfinite(v) && (v == 0.0 || std::fabs(v) >= std::numeric_limits<double>::min()); }

// e^{-x} I_nu(x) and e^{x} K_nu(x) for large x (Hankel expansion), nu = 0, 1.
double scaled_i_asym(int nu, double x) {
  double term = 1.0, sum = 1.0;
  const double mu = 4.0 * nu * nu;
  for (int k = 1; k < 60; ++k) {
    term *= -(mu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * x);
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

double scaled_k_asym(int nu, double x) {
  double term = 1.0, sum = 1.0;
  const double mu = 4.0 * nu * nu;
  for (int k = 1; k < 60; ++k) {
    term *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * x);
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return sum * std::sqrt(kPi / (2.0 * x));
}

// log I_0(x), log K_0(x), K_1/K_0 valid for all x > 0.
double log_i0(double x) {
  if (x <= 700.0) return std::log(boost::math::cyl_bessel_i(0, x, Pol()));
  return x + std::log(scaled_i_asym(0, x));
}

double log_k0(double x) {
  if (x <= 700.0) return std::log(boost::math::cyl_bessel_k(0, x, Pol()));
  return -x + std::log(scaled_k_asym(0, x));
}

double k1_over_k0(double x) {
  if (x <= 700.0) return boost::math::cyl_bessel_k(1, x, Pol()) / boost::math::cyl_bessel_k(0, x, Pol());
  return scaled_k_asym(1, x) / scaled_k_asym(0, x);
}

// I_{n+1}/I_n by modified Lentz on 1/(b1 + 1/(b2 + ...)), b_j = 2(n+j)/x.
double i_ratio_cf(int n, double x) {
  const double tiny = 1e-300;
  double f = 2.0 * (n + 1) / x;
  double c = f, d = 0.0;
  for (int j = 2; j < 1000000; ++j) {
    const double b = 2.0 * (n + j) / x;
    d = b + d;
    if (d == 0.0) d = tiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

}  // namespace

double Scaled::value() const { return mantissa * std::exp(log_scale); }

double Scaled::log_abs() const { return std::log(std::fabs(mantissa)) + log_scale; }

BesselEval cyl_bessel(BesselKind kind, int n, double x) {
  check_args(n, x);
  BesselEval e;
  e.order = n;
  e.argument = x;
  const double j = boost::math::cyl_bessel_j(n, x, Pol());
  double y = 0.0;
  if (kind != BesselKind::J) y = boost::math::cyl_neumann(n, x, Pol());
  switch (kind) {
    case BesselKind::J: e.value = j; break;
    case BesselKind::Y: e.value = y; break;
    case BesselKind::H1: e.value = {j, y}; break;
  }
  const bool in_box = x >= kBoxXMin && x <= kBoxXMax && n <= kBoxOrderMax;
  const bool finite = usable(j) && usable(y) && !(kind != BesselKind::Y && j == 0.0 && x < n);
  e.degraded = !in_box || !finite;
  // Boost's integer-order J/Y are accurate to a few hundred ulps on the box;
  // near a zero the relative error is meaningless, so report the absolute
  // scale relative to the local envelope instead.
  e.rel_err_estimate = e.degraded ? 1.0 : 1e-13;
  return e;
}

double bessel_j(int n, double x) {
  check_args(n, x);
  return boost::math::cyl_bessel_j(n, x, Pol());
}

double bessel_y(int n, double x) {
  check_args(n, x);
  return boost::math::cyl_neumann(n, x, Pol());
}

std::complex<double> hankel1(int n, double x) { return {bessel_j(n, x), bessel_y(n, x)}; }

double bessel_i(int n, double x) {
  check_args(n, x);
  return boost::math::cyl_bessel_i(n, x, Pol());
}

double bessel_k(int n, double x) {
  check_args(n, x);
  return boost::math::cyl_bessel_k(n, x, Pol());
}

std::vector<double> bessel_i_ratios(int nmax, double x) {
  check_args(nmax, x);
  std::vector<double> r(static_cast<size_t>(nmax) + 1);
  r[nmax] = i_ratio_cf(nmax, x);
  for (int k = nmax; k >= 1; --k) r[k - 1] = 1.0 / (2.0 * k / x + r[k]);
  return r;
}

std::vector<double> bessel_k_ratios(int nmax, double x) {
  check_args(nmax, x);
  std::vector<double> r(static_cast<size_t>(nmax) + 1);
  r[0] = k1_over_k0(x);
  for (int k = 1; k <= nmax; ++k) r[k] = 1.0 / r[k - 1] + 2.0 * k / x;
  return r;
}

double bessel_i_ratio(int n, double x) {
  check_args(n, x);
  return i_ratio_cf(n, x);
}

double bessel_k_ratio(int n, double x) { return bessel_k_ratios(n, x)[n]; }

double bessel_ik_product(int n, double x) {
  return 1.0 / (x * (bessel_i_ratio(n, x) + bessel_k_ratio(n, x)));
}

Scaled mod_bessel(ModBesselKind kind, int n, double x) {
  check_args(n, x);
  if (x <= 700.0) {
    const double v = kind == ModBesselKind::I ? boost::math::cyl_bessel_i(n, x, Pol())
                                              : boost::math::cyl_bessel_k(n, x, Pol());
    if (usable(v) && v > 0.0) return {v, 0.0};
  }
  double logv = 0.0;
  if (kind == ModBesselKind::I) {
    logv = log_i0(x);
    if (n > 0) {
      const auto r = bessel_i_ratios(n - 1, x);
      for (int k = 0; k < n; ++k) logv += std::log(r[k]);
    }
  } else {
    logv = log_k0(x);
    if (n > 0) {
      const auto r = bessel_k_ratios(n - 1, x);
      for (int k = 0; k < n; ++k) logv += std::log(r[k]);
    }
  }
  return {1.0, logv};
}

double bessel_zero(int n, int k) {
  if (n < 0 || k < 1) throw std::domain_error("bessel_zero: need n >= 0, k >= 1");
  return boost::math::cyl_bessel_j_zero(static_cast<double>(n), k);
}

std::vector<double> bessel_zeros(int n, double jmax) {
  std::vector<double> out;
  if (jmax <= n) return out;
  // Count estimate from the Debye phase, then extend as needed.
  const double ph = std::sqrt(jmax * jmax - double(n) * n) - n * std::acos(n / jmax);
  int count = std::max(1, static_cast<int>(ph / kPi + 2));
  std::vector<double> z(count);
  boost::math::cyl_bessel_j_zero(static_cast<double>(n), 1, count, z.begin());
  while (z.back() <= jmax) {
    std::vector<double> more(count);
    boost::math::cyl_bessel_j_zero(static_cast<double>(n), static_cast<int>(z.size()) + 1, count, more.begin());
    z.insert(z.end(), more.begin(), more.end());
  }
  for (double v : z) {
    if (v > jmax) break;
    out.push_back(v);
  }
  return out;
}

BesselSequence bessel_jy_sequence(int nmax, double x) {
  check_args(nmax, x);
  BesselSequence seq;
  seq.j.resize(nmax + 1);
  seq.y.resize(nmax + 1);

  // Forward recurrence for Y; dominant for n > x, neutral below.
  {
    double ym = boost::math::cyl_neumann(0, x, Pol());
    double yc = boost::math::cyl_neumann(1, x, Pol());
    double ls = 0.0;
    if (!std::isfinite(yc)) {
      // Only reachable for x below ~1e-300; fall back to the leading terms.
      ym = (2.0 / kPi) * std::log(x / 2.0);
      yc = -2.0 / (kPi * x);
    }
    seq.y[0] = {ym, 0.0};
    if (nmax >= 1) seq.y[1] = {yc, 0.0};
    for (int n = 1; n < nmax; ++n) {
      const double yn = (2.0 * n / x) * yc - ym;
      ym = yc;
      yc = yn;
      if (std::fabs(yc) > kBig) {
        yc /= kBig;
        ym /= kBig;
        ls += kLogBig;
      }
      seq.y[n + 1] = {yc, ls};
    }
  }

  // Miller backward recurrence for J, started well above both nmax and x.
  {
    const double top = std::max<double>(nmax, x);
    int m = static_cast<int>(top + 20.0 + 10.0 * std::sqrt(top) + std::max(0.0, -std::log10(x)));
    m += m & 1;
    std::vector<double> mant(m + 2, 0.0), lsc(m + 2, 0.0);
    double jp = 0.0, jc = 1e-300, ls = 0.0;
    for (int n = m; n >= 1; --n) {
      const double jn = (2.0 * n / x) * jc - jp;
      jp = jc;
      jc = jn;
      if (std::fabs(jc) > kBig) {
        jc /= kBig;
        jp /= kBig;
        ls += kLogBig;
      }
      mant[n - 1] = jc;
      lsc[n - 1] = ls;
      mant[n] = jp;
      lsc[n] = ls;
    }
    // Normalise against J_0, J_1 (least squares over the pair, robust near
    // zeros of either).
    const double j0 = boost::math::cyl_bessel_j(0, x, Pol());
    const double j1 = boost::math::cyl_bessel_j(1, x, Pol());
    const double ref = lsc[0];
    const double u0 = mant[0];
    const double u1 = mant[1] * std::exp(lsc[1] - ref);
    const double big = std::max(std::fabs(u0), std::fabs(u1));
    const double v0 = u0 / big, v1 = u1 / big;
    const double c = (j0 * v0 + j1 * v1) / (v0 * v0 + v1 * v1);
    const double logc = std::log(std::fabs(c)) - std::log(big) - ref;
    const double sgn = c < 0 ? -1.0 : 1.0;
    for (int n = 0; n <= nmax; ++n) seq.j[n] = {sgn * mant[n], lsc[n] + logc};
  }
  return seq;
}

std::vector<SelftestRow> specfun_selftest() {
  std::vector<SelftestRow> rows;
  const int npts = 1000;
  const int orders[] = {0, 1, 2, 3, 5, 10, 20, 50, 100, 200, 500, 1000, 1999};
  std::vector<double> xs(npts);
  for (int i = 0; i < npts; ++i) xs[i] = std::pow(10.0, -8.0 + 12.0 * i / (npts - 1));

  SelftestRow wj{"cylinder Wronskian J_n Y_{n+1} - J_{n+1} Y_n = -2/(pi x)", 0.0, 1e-9, 0};
  SelftestRow rj{"recurrence J", 0.0, 1e-9, 0};
  SelftestRow ry{"recurrence Y", 0.0, 1e-9, 0};
  SelftestRow wi{"modified Wronskian I_n K_{n+1} + I_{n+1} K_n = 1/x", 0.0, 1e-9, 0};
  SelftestRow ri{"recurrence I", 0.0, 1e-9, 0};
  SelftestRow rk{"recurrence K", 0.0, 1e-9, 0};
  for (int n : orders) {
    for (double x : xs) {
      const double ja = bessel_j(n, x), jb = bessel_j(n + 1, x);
      const double ya = bessel_y(n, x), yb = bessel_y(n + 1, x);
      if (usable(ja) && usable(jb) && usable(ya) && usable(yb) && ja != 0.0 && jb != 0.0 &&
          std::isfinite(ja * yb) && std::isfinite(jb * ya)) {
        const double w = ja * yb - jb * ya;
        const double ref = 2.0 / (kPi * x);
        wj.max_residual = std::max(wj.max_residual, std::fabs(w + ref) / ref);
        ++wj.checked;
      }
      if (n >= 1) {
        const double jm = bessel_j(n - 1, x), ym = bessel_y(n - 1, x);
        if (usable(jm) && usable(ja) && usable(jb) && jb != 0.0) {
          const double scale = std::max({std::fabs(jm), std::fabs(jb), std::fabs(2.0 * n / x * ja)});
          rj.max_residual = std::max(rj.max_residual, std::fabs(jm + jb - 2.0 * n / x * ja) / scale);
          ++rj.checked;
        }
        if (usable(ym) && usable(ya) && usable(yb)) {
          const double scale = std::max({std::fabs(ym), std::fabs(yb), std::fabs(2.0 * n / x * ya)});
          ry.max_residual = std::max(ry.max_residual, std::fabs(ym + yb - 2.0 * n / x * ya) / scale);
          ++ry.checked;
        }
      }
      const double ia = bessel_i(n, x), ib = bessel_i(n + 1, x);
      const double ka = bessel_k(n, x), kb = bessel_k(n + 1, x);
      if (usable(ia) && usable(ib) && usable(ka) && usable(kb) && ia > 0 && ib > 0 &&
          std::isfinite(ia * kb) && std::isfinite(ib * ka)) {
        const double w = ia * kb + ib * ka;
        wi.max_residual = std::max(wi.max_residual, std::fabs(w * x - 1.0));
        ++wi.checked;
      }
      if (n >= 1) {
        const double im = bessel_i(n - 1, x), km = bessel_k(n - 1, x);
        if (usable(im) && usable(ia) && usable(ib) && ib > 0) {
          const double scale = std::max({std::fabs(im), std::fabs(ib), std::fabs(2.0 * n / x * ia)});
          ri.max_residual = std::max(ri.max_residual, std::fabs(im - ib - 2.0 * n / x * ia) / scale);
          ++ri.checked;
        }
        if (usable(km) && usable(ka) && usable(kb) && km > 0) {
          const double scale = std::max({std::fabs(km), std::fabs(kb), std::fabs(2.0 * n / x * ka)});
          rk.max_residual = std::max(rk.max_residual, std::fabs(kb - km - 2.0 * n / x * ka) / scale);
          ++rk.checked;
        }
      }
    }
  }
  rows.push_back(wj);
  rows.push_back(rj);
  rows.push_back(ry);
  rows.push_back(wi);
  rows.push_back(ri);
  rows.push_back(rk);

  SelftestRow zr{"J_n(j_{n,k}) at computed zeros", 0.0, 1e-9, 0};
  SelftestRow zo{"zero ordering (interlacing violations)", 0.0, 0.0, 0};
  for (int n = 0; n <= 60; n += 3) {
    for (int k = 1; k <= 20; ++k) {
      const double z = bessel_zero(n, k);
      zr.max_residual = std::max(zr.max_residual, std::fabs(bessel_j(n, z)));
      ++zr.checked;
      const double zn1 = bessel_zero(n + 1, k), zk1 = bessel_zero(n, k + 1);
      if (!(z < zn1 && zn1 < zk1)) zo.max_residual += 1.0;
      ++zo.checked;
    }
  }
  rows.push_back(zr);
  rows.push_back(zo);
  return rows;
}

}  // namespace isodet
