#include "isodet/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace isodet {

constexpr int kMaxDepth = 15;

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

// Bisection on a finite interval, stopping when the Kronrod error estimate
// meets either the relative or the absolute tolerance. The absolute floor
// matters for integrands that are small differences of large quantities.
QuadResult adapt(const RealFn& f, double a, double b, double tol, double abs_tol, int depth) {
  QuadResult r;
  double l1 = 0.0;
  r.value = GK::integrate(f, a, b, 0, 0.0, &r.err, &l1);
  if (depth == 0 || r.err <= std::max(tol * l1, abs_tol)) return r;
  const double m = 0.5 * (a + b);
  const auto lo = adapt(f, a, m, tol, 0.5 * abs_tol, depth - 1);
  const auto hi = adapt(f, m, b, tol, 0.5 * abs_tol, depth - 1);
  return {lo.value + hi.value, lo.err + hi.err};
}

}  // namespace

QuadResult integrate(const RealFn& f, double a, double b, double tol, double abs_tol) {
  if (a == b) return {};
  if (std::isinf(b)) {
    if (std::isinf(a)) throw std::invalid_argument("integrate: doubly infinite range");
    // x = a + u / (1 - u)
    auto g = [&](double u) {
      const double w = 1.0 - u;
      return f(a + u / w) / (w * w);
    };
    return adapt(g, 0.0, 1.0, tol, abs_tol, kMaxDepth);
  }
  return adapt(f, a, b, tol, abs_tol, kMaxDepth);
}

QuadResult integrate_panels(const RealFn& f, const std::vector<double>& pts, double tol, double abs_tol) {
  QuadResult r;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto p = integrate(f, pts[i], pts[i + 1], tol, abs_tol);
    r.value += p.value;
    r.err += p.err;
  }
  return r;
}

QuadResult integrate_log(const RealFn& f, double a, double b, double tol, double abs_tol) {
  if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("integrate_log: need 0 < a < b");
  const double ua = std::log(a), ub = std::log(b);
  const int panels = std::max(1, static_cast<int>(std::ceil((ub - ua) / std::log(10.0))));
  auto g = [&](double u) {
    const double x = std::exp(u);
    return f(x) * x;
  };
  QuadResult r;
  for (int i = 0; i < panels; ++i) {
    const double lo = ua + (ub - ua) * i / panels;
    const double hi = ua + (ub - ua) * (i + 1) / panels;
    const auto p = integrate(g, lo, hi, tol, abs_tol / panels);
    r.value += p.value;
    r.err += p.err;
  }
  return r;
}

std::vector<double> log_space(double a, double b, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < n; ++i) v[i] = std::exp(la + (lb - la) * i / (n - 1));
  v.front() = a;
  v.back() = b;
  return v;
}

std::vector<double> lin_space(double a, double b, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace isodet
