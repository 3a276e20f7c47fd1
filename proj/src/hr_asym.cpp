#include "isodet/hr_asym.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace isodet {

double ilg(double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) throw std::domain_error("ilg: argument must lie in (0,1)");
  return -1.0 / std::log(lambda);
}

HRResult hr_integral(const RealFn& h, double support_end) {
  HRResult out;
  const double h0 = h(0.0);
  const double tol = 1e-14;

  // int_1^inf h dx/x is shared by every epsilon.
  double tail = 0.0;
  if (support_end > 1.0) {
    auto g = [&](double x) { return h(x) / x; };
    tail = std::isinf(support_end) ? integrate(g, 1.0, support_end, tol).value
                                   : integrate_log(g, 1.0, support_end, tol).value;
  }

  const int kmin = 3, levels = 11;
  std::vector<std::vector<double>> table(levels);
  double prev_head = 0.0;
  for (int i = 0; i < levels; ++i) {
    const int k = kmin + i;
    const double eps = std::ldexp(1.0, -k);
    const double eps_hi = i == 0 ? 1.0 : std::ldexp(1.0, -(k - 1));
    // int_eps^1 h dx/x accumulated piecewise over [2^-k, 2^-(k-1)].
    const double inner_hi = std::min(eps_hi, std::max(support_end, eps));
    double piece = 0.0;
    if (inner_hi > eps)
      piece = integrate([&](double u) { return h(std::exp(u)); }, std::log(eps), std::log(inner_hi), tol).value;
    prev_head += piece;
    const double f = prev_head + tail - h0 * std::log(1.0 / eps);
    out.eps.push_back(eps);
    out.partial.push_back(f);
    table[i].push_back(f);
    for (int j = 1; j <= i; ++j) {
      const double p = std::ldexp(1.0, j);
      table[i].push_back(table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (p - 1.0));
    }
  }
  const auto& last = table[levels - 1];
  const auto& before = table[levels - 2];
  // Use the diagonal entry whose neighbours agree best.
  double best = last.back(), res = std::fabs(last.back() - before.back());
  for (int j = 1; j < levels - 1; ++j) {
    const double r = std::fabs(last[j] - before[j]);
    if (r < res) {
      res = r;
      best = last[j];
    }
  }
  out.value = best;
  out.residual = res;
  out.converged = res < 1e-9 * (1.0 + std::fabs(best));
  return out;
}

double fiber_integral(const Density2& v, double x, double support) {
  // x1 = e^u ranges over [x/S, S]; the b-density dx1/x1 becomes du.
  const double lo = std::log(x / support), hi = std::log(support);
  const int panels = std::max(1, static_cast<int>(std::ceil(hi - lo)));
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = lo + (hi - lo) * i / panels, b = lo + (hi - lo) * (i + 1) / panels;
    sum += integrate([&](double u) {
             const double x1 = std::exp(u);
             return v(x1, x / x1);
           }, a, b, 1e-13).value;
  }
  return sum;
}

PushforwardResult pushforward_coeffs(const Density2& v, double support) {
  PushforwardResult r;
  r.q0 = v(0.0, 0.0);
  const auto h1 = hr_integral([&](double x) { return v(x, 0.0); }, support);
  const auto h2 = hr_integral([&](double x) { return v(0.0, x); }, support);
  r.p0 = h1.value + h2.value;

  const int m = 40;
  Eigen::MatrixXd a(m, 6);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    const double x = std::pow(10.0, -6.0 + 4.0 * i / (m - 1));
    const double l = std::log(1.0 / x);
    a.row(i) << 1.0, l, x, x * l, x * x, x * x * l;
    b(i) = fiber_integral(v, x, support);
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  r.fit_p0 = c(0);
  r.fit_q0 = c(1);
  r.residual = std::max(std::fabs(r.fit_p0 - r.p0), std::fabs(r.fit_q0 - r.q0));
  r.flagged = r.residual > 1e-5;
  return r;
}

}  // namespace isodet
