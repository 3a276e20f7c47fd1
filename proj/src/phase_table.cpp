#include "isodet/phase_table.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "isodet/quadrature.hpp"

namespace isodet {

namespace {
constexpr double kPi = std::numbers::pi;
}

double WeylTail::rest(double l) const {
  double v = 0.0, p = 1.0 / l;
  for (double c : neg) {
    v += c * p;
    p /= l;
  }
  return v;
}

double SmallLaw::leading(double l) const { return leading_log(std::log(1.0 / l)); }

double SmallLaw::leading_log(double u) const { return 2.0 * std::atan((kPi / 2.0) / (u + kappa)); }

double SmallLaw::operator()(double l) const { return leading(l) + l * l * (d2 + d3 * std::log(l)); }

double PhaseTable::interpolate(double l) const {
  const size_t n = lambda.size();
  if (n == 0) throw std::logic_error("empty phase table");
  if (n == 1) return s[0];
  const auto it = std::lower_bound(lambda.begin(), lambda.end(), l);
  const long pos = static_cast<long>(it - lambda.begin());
  const long width = std::min<long>(8, static_cast<long>(n));
  long lo = std::clamp<long>(pos - width / 2, 0, static_cast<long>(n) - width);
  const double u = std::log(l);
  double v = 0.0;
  for (long i = lo; i < lo + width; ++i) {
    double w = 1.0;
    const double ui = std::log(lambda[i]);
    for (long j = lo; j < lo + width; ++j)
      if (j != i) w *= (u - std::log(lambda[j])) / (ui - std::log(lambda[j]));
    v += w * s[i];
  }
  return v;
}

double PhaseTable::operator()(double l) const {
  if (!(l > 0.0)) return 0.0;
  if (exact) return exact(l);
  if (l < lambda_min()) return small(l);
  if (l > lambda_max()) return weyl(l);
  return interpolate(l);
}

WeylTail fit_weyl_tail(const std::function<double(double)>& s, double lo, double hi, int n_neg, int npts) {
  std::vector<double> xs(npts), ys(npts);
  for (int i = 0; i < npts; ++i) {
    // Chebyshev nodes on [lo, hi].
    const double c = std::cos(kPi * (i + 0.5) / npts);
    xs[i] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * c;
    ys[i] = s(xs[i]);
  }
  const int ncol = 3 + n_neg;
  Eigen::MatrixXd a(npts, ncol);
  Eigen::VectorXd b(npts);
  // Columns scaled by powers of hi for conditioning; rows weighted by 1/l^2
  // so the fit is relative to the leading growth.
  for (int i = 0; i < npts; ++i) {
    const double x = xs[i] / hi, w = 1.0 / (x * x);
    a(i, 0) = w * x * x;
    a(i, 1) = w * x;
    a(i, 2) = w;
    double p = 1.0 / x;
    for (int k = 0; k < n_neg; ++k) {
      a(i, 3 + k) = w * p;
      p /= x;
    }
    b(i) = w * ys[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  WeylTail t;
  t.c2 = c(0) / (hi * hi);
  t.c1 = c(1) / hi;
  t.c0 = c(2);
  double p = hi;
  for (int k = 0; k < n_neg; ++k) {
    t.neg.push_back(c(3 + k) * p);
    p *= hi;
  }
  t.fit_lo = lo;
  t.fit_hi = hi;
  double res = 0.0;
  for (int i = 0; i < npts; ++i) res = std::max(res, std::fabs(t(xs[i]) - ys[i]));
  t.fit_residual = res;
  return t;
}

WeylTail fit_weyl_tail(const PhaseTable& table, double frac, int n_neg) {
  std::vector<double> xs, ys;
  const double lo = frac * table.lambda_max();
  for (size_t i = 0; i < table.lambda.size(); ++i)
    if (table.lambda[i] >= lo) {
      xs.push_back(table.lambda[i]);
      ys.push_back(table.s[i]);
    }
  const int ncol = 3 + n_neg;
  if (static_cast<int>(xs.size()) < 2 * ncol) throw std::invalid_argument("too few table nodes for the Weyl tail fit");
  const double hi = table.lambda_max();
  Eigen::MatrixXd a(xs.size(), ncol);
  Eigen::VectorXd b(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i] / hi, w = 1.0 / (x * x);
    a(i, 0) = w * x * x;
    a(i, 1) = w * x;
    a(i, 2) = w;
    double p = 1.0 / x;
    for (int k = 0; k < n_neg; ++k) {
      a(i, 3 + k) = w * p;
      p /= x;
    }
    b(i) = w * ys[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  WeylTail t;
  t.c2 = c(0) / (hi * hi);
  t.c1 = c(1) / hi;
  t.c0 = c(2);
  double p = hi;
  for (int k = 0; k < n_neg; ++k) {
    t.neg.push_back(c(3 + k) * p);
    p *= hi;
  }
  t.fit_lo = lo;
  t.fit_hi = hi;
  double res = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) res = std::max(res, std::fabs(t(xs[i]) - ys[i]));
  t.fit_residual = res;
  return t;
}

SmallLaw fit_small_law(const std::function<double(double)>& s, double lo, double hi, int npts) {
  const auto xs = log_space(lo, hi, npts);
  std::vector<double> ys(npts);
  for (int i = 0; i < npts; ++i) ys[i] = s(xs[i]);
  // For fixed kappa the remaining coefficients are linear; golden-section
  // search on kappa.
  auto solve = [&](double kappa, SmallLaw& out) {
    SmallLaw m;
    m.kappa = kappa;
    Eigen::MatrixXd a(npts, 2);
    Eigen::VectorXd b(npts);
    for (int i = 0; i < npts; ++i) {
      const double l = xs[i];
      a(i, 0) = l * l;
      a(i, 1) = l * l * std::log(l);
      b(i) = ys[i] - m.leading(l);
    }
    const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
    m.d2 = c(0);
    m.d3 = c(1);
    double res = 0.0;
    for (int i = 0; i < npts; ++i) res += std::pow(m(xs[i]) - ys[i], 2);
    out = m;
    return res;
  };
  double a = -std::log(1.0 / hi) + 1e-3, b = 10.0;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  SmallLaw tmp;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = solve(x1, tmp), f2 = solve(x2, tmp);
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = solve(x1, tmp);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = solve(x2, tmp);
    }
  }
  SmallLaw best;
  solve(0.5 * (a + b), best);
  best.fit_lo = lo;
  best.fit_hi = hi;
  double res = 0.0;
  for (int i = 0; i < npts; ++i) res = std::max(res, std::fabs(best(xs[i]) - ys[i]));
  best.fit_residual = res;
  return best;
}

}  // namespace isodet
