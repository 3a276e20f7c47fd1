#include "isodet/zeta_det.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include <boost/math/special_functions/expint.hpp>

#include "isodet/heat_trace.hpp"
#include "isodet/quadrature.hpp"

namespace isodet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = std::numbers::egamma;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kU0 = 25.0;  // below e^{-25} only the small-lambda law is used
// Absolute tolerance per panel for integrands built from s - P, where s is a
// sum of many phase shifts and carries rounding noise of order 1e-16 N |s|.
constexpr double kNoise = 1e-11;

double reliable_top(const PhaseTable& p) {
  const double top = p.has_exact() ? p.weyl.fit_hi : p.lambda_max();
  return std::max(top, 2.0);
}

std::vector<double> doubling(double lo, double hi) {
  std::vector<double> pts{lo};
  while (pts.back() * 2.0 < hi) pts.push_back(pts.back() * 2.0);
  pts.push_back(hi);
  return pts;
}

// int_1^inf (s - P)(l) g(l) dl, the tail through the fitted remainder.
double upper_part(const PhaseTable& p, const RealFn& g) {
  const double top = reliable_top(p);
  const auto& w = p.weyl;
  double v = integrate_panels([&](double l) { return (p(l) - w.poly(l)) * g(l); }, doubling(1.0, top), 1e-12, kNoise).value;
  v += integrate([&](double l) { return w.rest(l) * g(l); }, top, std::numeric_limits<double>::infinity(), 1e-12, kNoise).value;
  return v;
}

// int_a^1 (1 - chi)(s - P)(l) g(l) dl
double bridge_part(const PhaseTable& p, const CutoffSpec& chi, const RealFn& g) {
  return integrate([&](double l) { return chi.complement(l) * (p(l) - p.weyl.poly(l)) * g(l); }, chi.a, 1.0, 1e-12, kNoise)
      .value;
}

// e^{-x} minus its Taylor polynomial through degree m.
double exp_remainder(double x, int m) {
  if (x > 1.0) {
    double poly = 0.0, term = 1.0;
    for (int k = 0; k <= m; ++k) {
      poly += term;
      term *= -x / (k + 1);
    }
    return std::exp(-x) - poly;
  }
  double term = 1.0;
  for (int k = 1; k <= m + 1; ++k) term *= -x / k;
  double sum = 0.0;
  for (int k = m + 1; k < m + 60; ++k) {
    sum += term;
    term *= -x / (k + 1);
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

// Ladder coefficients of f(t) e^{-mu t} from those of f: j = -2..jmax.
std::vector<double> shift_by_mu(const std::vector<double>& a, double mu) {
  std::vector<double> c(a.size(), 0.0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    double fac = 1.0;
    for (std::size_t m = 0; 2 * m <= j; ++m) {
      c[j] += a[j - 2 * m] * fac;
      fac *= -mu / (m + 1);
    }
  }
  return c;
}

// zeta'(0) from a Mellin split at t = 1: c[j+2] are the subtracted ladder
// coefficients, F the finite integral.
double mellin_zeta_prime(const std::vector<double>& c, double F) {
  double z = F + kEuler * c[2];
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int j = static_cast<int>(k) - 2;
    if (j != 0) z += 2.0 * c[k] / j;
  }
  return z;
}

// int_0^a l^{k+1} / (l^2 + mu) dl in closed form.
double plateau_moment(int k, double a, double mu) {
  const double rm = std::sqrt(mu);
  switch (k) {
    case 0: return 0.5 * std::log1p(a * a / mu);
    case 1: return a - rm * std::atan(a / rm);
    case 2: return 0.5 * a * a - 0.5 * mu * std::log1p(a * a / mu);
  }
  throw std::logic_error("plateau_moment: k out of range");
}

}  // namespace

double CutoffSpec::operator()(double l) const {
  if (l <= a) return 1.0;
  if (l >= 1.0) return 0.0;
  const double x = (l - a) / (1.0 - a);
  const double f0 = std::exp(-1.0 / (1.0 - x)), f1 = std::exp(-1.0 / x);
  return f0 / (f0 + f1);
}

CutoffSpec make_cutoff(double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("cutoff plateau must lie in (0, 1)");
  return CutoffSpec{a};
}

double zeta1_ext(const PhaseTable& p, const CutoffSpec& chi, double s) {
  if (!(s < 0.0)) throw std::domain_error("zeta1_ext: s must be negative");
  const double ua = std::log(1.0 / chi.a);
  auto f = [&](double u) { return chi(std::exp(-u)) * p(std::exp(-u)) * std::exp(2.0 * s * u); };
  double v = integrate(f, 0.0, ua).value;
  std::vector<double> pts{ua};
  for (double u : {2.0, 5.0, 10.0, kU0})
    if (u > pts.back()) pts.push_back(u);
  v += integrate_panels(f, pts).value;
  // u > U0: leading small-lambda law, pi/u part exact.
  v += kPi * boost::math::expint(1, -2.0 * s * kU0);
  v += integrate([&](double u) { return std::exp(2.0 * s * u) * (p.small.leading_log(u) - kPi / u); }, kU0,
                 std::numeric_limits<double>::infinity())
           .value;
  return -(s / kPi) * v;
}

double zeta2_ext(const PhaseTable& p, const CutoffSpec& chi, double s) {
  if (!(s < 0.5) || s == 0.0) throw std::domain_error("zeta2_ext: need s < 1/2, s != 0");
  auto g = [s](double l) { return std::pow(l, -2.0 * s - 1.0); };
  double v = bridge_part(p, chi, g) + upper_part(p, g);
  const double ck[3] = {p.weyl.c0, p.weyl.c1, p.weyl.c2};
  for (int k = 0; k <= 2; ++k) {
    const double m = integrate([&](double l) { return chi.complement(l) * std::pow(l, k - 2.0 * s - 1.0); }, chi.a, 1.0).value;
    v += ck[k] * (m + 1.0 / (2.0 * s - k));
  }
  return -(s / kPi) * v;
}

double zeta_ext(const PhaseTable& p, const CutoffSpec& chi, double s) {
  return zeta1_ext(p, chi, s) + zeta2_ext(p, chi, s);
}

double zeta2_prime0(const PhaseTable& p, const CutoffSpec& chi, double mu) {
  if (!(mu >= 0.0)) throw std::domain_error("zeta2_prime0: mu must be nonnegative");
  const double ck[3] = {p.weyl.c0, p.weyl.c1, p.weyl.c2};
  double v = 0.0;
  if (mu == 0.0) {
    auto g = [](double l) { return 1.0 / l; };
    v = bridge_part(p, chi, g) + upper_part(p, g);
    for (int k = 0; k <= 2; ++k) {
      double m = integrate([&](double l) { return chi.complement(l) * std::pow(l, k - 1.0); }, chi.a, 1.0).value;
      if (k != 0) m -= 1.0 / k;
      v += ck[k] * m;
    }
  } else {
    auto g = [mu](double l) { return l / (l * l + mu); };
    v = bridge_part(p, chi, g) + upper_part(p, g);
    // Finite parts at s = 0 of int_0^inf l^{k+1} (l^2 + mu)^{-s-1} dl.
    const double fp[3] = {-0.5 * std::log(mu), -0.5 * kPi * std::sqrt(mu), 0.5 * mu * (std::log(mu) - 1.0)};
    for (int k = 0; k <= 2; ++k) {
      const double inner = plateau_moment(k, chi.a, mu) +
                           integrate([&](double l) { return chi(l) * std::pow(l, k + 1.0) / (l * l + mu); }, chi.a, 1.0).value;
      v += ck[k] * (fp[k] - inner);
    }
  }
  return -v / kPi;
}

double e2_heat(const PhaseTable& p, const CutoffSpec& chi, double t) {
  auto f = [&](double l) { return chi.complement(l) * p(l) * l * std::exp(-l * l * t); };
  const double upper = std::max(1.0, std::sqrt(46.0 / t));
  double v = integrate(f, chi.a, 1.0).value;
  if (upper > 1.0) v += integrate_panels(f, doubling(1.0, upper)).value;
  return -(t / kPi) * v;
}

ZetaExpansion fit_zeta_expansion(const PhaseTable& p, const CutoffSpec& chi, double s_lo, double s_hi, int npts) {
  if (!(s_lo < s_hi && s_hi < 0.0)) throw std::invalid_argument("zeta fit grid must satisfy s_lo < s_hi < 0");
  ZetaExpansion z;
  const auto mags = log_space(-s_lo, -s_hi, npts);
  Eigen::MatrixXd a(npts, 6);
  Eigen::VectorXd b(npts);
  for (int i = 0; i < npts; ++i) {
    const double s = -mags[i], ls = std::log(-s);
    z.s_grid.push_back(s);
    z.zeta.push_back(zeta_ext(p, chi, s));
    a.row(i) << 1.0, s * ls, s, s * s * ls, s * s, s * s * s * ls;
    b(i) = z.zeta.back();
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  z.a0 = c(0);
  z.slog_coeff = c(1);
  z.a2 = c(2);
  z.fit_residual = (a * c - b).cwiseAbs().maxCoeff();
  return z;
}

ClosedFormParts closed_form_parts(const PhaseTable& p, const CutoffSpec& chi) {
  ClosedFormParts c;
  c.hr_beta = hr_integral([](double b) { return std::exp(-2.0 * b); }).value;
  const double a = chi.a;
  c.hr_chi = -std::log(std::log(1.0 / a)) +
             integrate([&](double l) { return chi(l) * ilg(l) / l; }, a, 1.0).value;
  c.zeta2p = zeta2_prime0(p, chi, 0.0);

  // (1/pi) int_0^1 chi (s - pi ilg) dl / l, in u = log(1/l) below a.
  double st = integrate([&](double l) { return chi(l) * (p(l) - kPi * ilg(l)) / l; }, a, 1.0).value;
  const double ua = std::log(1.0 / a);
  std::vector<double> pts{ua};
  for (double u : {2.0, 5.0, 10.0, kU0})
    if (u > pts.back()) pts.push_back(u);
  st += integrate_panels([&](double u) { return p(std::exp(-u)) - kPi / u; }, pts).value;
  st += integrate([&](double u) { return p.small.leading_log(u) - kPi / u; }, kU0,
                  std::numeric_limits<double>::infinity())
            .value;
  c.s_tilde = st / kPi;
  c.value = c.hr_beta + c.hr_chi - c.zeta2p + c.s_tilde;
  c.value_flipped = -c.hr_beta + c.hr_chi - c.zeta2p + c.s_tilde;
  return c;
}

ExteriorModDet log_det_ext_mod(const PhaseTable& p, const CutoffSpec& chi) {
  ExteriorModDet d;
  d.expansion = fit_zeta_expansion(p, chi);
  // Error from moving the window out by a factor 4.
  const ZetaExpansion wide = fit_zeta_expansion(p, chi, -2e-3, -2e-6);
  const double spread = std::fabs(wide.a2 - d.expansion.a2);
  d.a2_fit = {"exterior", "a2-fit", 0.0, -d.expansion.a2, spread, chi.a, d.expansion.slog_coeff, d.expansion.fit_residual};

  d.parts = closed_form_parts(p, chi);
  d.closed_form_definition = d.parts.value;
  d.closed_form_flipped = d.parts.value_flipped;
  d.definition_sign_selected =
      std::fabs(d.closed_form_definition - d.a2_fit.value) <= std::fabs(d.closed_form_flipped - d.a2_fit.value);
  const double v = d.definition_sign_selected ? d.closed_form_definition : d.closed_form_flipped;
  d.closed_form = {"exterior", "closed-form", 0.0, v, 1e-8, chi.a, 1.0, 0.0};
  return d;
}

DetValue log_det_ext_mu(const PhaseTable& p, const CutoffSpec& chi, double mu) {
  if (!(mu > 0.0)) throw std::domain_error("log_det_ext_mu: mu must be positive (use log_det_ext_mod at 0)");
  // (1/pi) int_0^1 chi s l/(l^2+mu) dl - zeta_2'(0).
  auto f = [&](double l) { return chi(l) * p(l) * l / (l * l + mu); };
  const double lo = std::min(1e-6 * std::sqrt(mu), 1e-3 * chi.a);
  double first = integrate_log(f, lo, chi.a).value + integrate(f, chi.a, 1.0).value;
  first += p(lo) * lo * lo / (2.0 * mu);
  DetValue d;
  d.object = "exterior";
  d.method = "lambda-integral";
  d.mu = mu;
  d.chi_a = chi.a;
  d.value = first / kPi - zeta2_prime0(p, chi, mu);
  d.err = 1e-9 * (1.0 + std::fabs(d.value));
  return d;
}

DetValue log_det_ext_mellin(const PhaseTable& p, double mu, double t_min) {
  if (!(mu > 0.0)) throw std::domain_error("log_det_ext_mellin: mu must be positive");
  const auto& w = p.weyl;
  // Exterior ladder a_{-2}, a_{-1}, a_0, a_1 from the Weyl coefficients of s.
  const std::vector<double> a = {-w.c2 / (2.0 * kPi), -w.c1 / (4.0 * kSqrtPi), -w.c0 / (2.0 * kPi),
                                 -w.c_minus1() / (2.0 * kSqrtPi)};
  const std::vector<double> c = shift_by_mu(a, mu);
  // R(t) = rtr e^{-mu t} - sum c_j t^{j/2}, assembled without cancellation.
  auto rem = [&](double t) {
    const double x = mu * t;
    double r = a[0] / t * exp_remainder(x, 1) + a[1] / std::sqrt(t) * exp_remainder(x, 1) + a[2] * exp_remainder(x, 0);
    r += rtr_exterior_remainder(p, t).value * std::exp(-x) + a[3] * std::sqrt(t) * std::expm1(-x);
    return r / t;
  };
  double F = integrate_log(rem, t_min, 1.0, 1e-10, 1e-11).value;
  const double T = 1.0 + 46.0 / mu;
  F += integrate_log([&](double t) { return rtr_exterior(p, t).value * std::exp(-mu * t) / t; }, 1.0, T, 1e-10, 1e-11)
           .value;
  DetValue d;
  d.object = "exterior";
  d.method = "mellin";
  d.mu = mu;
  d.value = -mellin_zeta_prime(c, F);
  d.err = std::fabs(rem(t_min)) * t_min;
  return d;
}

double ext_large_mu_model(const PhaseTable& p, double mu) {
  const auto& w = p.weyl;
  const double am2 = -w.c2 / (2.0 * kPi), am1 = -w.c1 / (4.0 * kSqrtPi), a0 = -w.c0 / (2.0 * kPi);
  return -am2 * mu * (std::log(mu) - 1.0) + 2.0 * kSqrtPi * am1 * std::sqrt(mu) + a0 * std::log(mu);
}

LargeMuFit fit_large_mu(const PhaseTable& p, const CutoffSpec& chi, const std::vector<double>& mus) {
  if (mus.size() < 2) throw std::invalid_argument("fit_large_mu: need at least two mu values");
  LargeMuFit f;
  for (double mu : mus) {
    f.mu.push_back(mu);
    f.residual.push_back(log_det_ext_mu(p, chi, mu).value - ext_large_mu_model(p, mu));
  }
  // residual ~ p0 + p1 mu^{-1/2} (+ p2 / mu when three or more points).
  auto fit = [&](int ncol) {
    const int n = static_cast<int>(f.mu.size());
    Eigen::MatrixXd a(n, ncol);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < ncol; ++k) a(i, k) = std::pow(f.mu[i], -0.5 * k);
      b(i) = f.residual[i];
    }
    return a.colPivHouseholderQr().solve(b)(0);
  };
  const int ncol = std::min<int>(3, static_cast<int>(mus.size()));
  f.p0 = fit(ncol);
  f.p0_err = ncol > 2 ? std::fabs(f.p0 - fit(2)) : std::fabs(f.residual.back() - f.p0);
  return f;
}

double log_det_int_disc_closed(double r) {
  constexpr double zeta_prime_m1 = -0.16542114370045092;
  return -(5.0 / 12.0 + 2.0 * zeta_prime_m1 + 0.5 * std::log(kPi) + std::log(2.0) / 6.0) - std::log(r) / 3.0;
}

namespace {

// Disc heat ladder through t^{3/2}, unit radius.
const double kDiscLadder[6] = {0.25, -kSqrtPi / 4.0, 1.0 / 6.0, kSqrtPi / 128.0, 2.0 / 315.0, 37.0 * kSqrtPi / 16384.0};

}  // namespace

DetValue log_det_int(double r, double mu) {
  if (!(r > 0.0) || !(mu >= 0.0)) throw std::domain_error("log_det_int: need r > 0, mu >= 0");
  std::vector<double> b(6);
  for (int j = -2; j <= 3; ++j) b[j + 2] = kDiscLadder[j + 2] * std::pow(r, -j);
  const std::vector<double> c = shift_by_mu(b, mu);

  const double t_min = mu > 0.0 ? std::min(2e-3 * r * r, 2e-3 / mu) : 2e-3 * r * r;
  const auto spec = disc_dirichlet_spectrum_cached(r, interior_cutoff(r, t_min));
  auto k = [&](double t) { return tr_interior(spec, t).value * std::exp(-mu * t); };
  auto rem = [&](double t) {
    double v = k(t);
    for (int j = -2; j <= 3; ++j) v -= c[j + 2] * std::pow(t, 0.5 * j);
    return v / t;
  };
  double F = 0.0;
  if (t_min < 1.0) F += integrate_log(rem, t_min, 1.0, 1e-11, 1e-10).value;
  const double j01 = 2.404825557695773;
  const double T = 1.0 + 50.0 / (j01 * j01 / (r * r) + mu);
  F += integrate_log([&](double t) { return k(t) / t; }, 1.0, T, 1e-11, 1e-10).value;
  DetValue d;
  d.object = "interior";
  d.method = "mellin";
  d.mu = mu;
  d.value = -mellin_zeta_prime(c, F);
  d.err = std::fabs(rem(t_min)) * t_min;
  return d;
}

double laplace_trace_pair(const PhaseTable& p, double r, double mu) {
  if (!(mu > 0.0)) throw std::domain_error("laplace_trace_pair: mu must be positive");
  const auto& w = p.weyl;
  const double t0 = 2e-3 * r * r;
  // Below t0: interior ladder plus exterior closed form. The t^{-1} terms
  // cancel between the two up to the tail fit error and are dropped.
  std::vector<double> b(6);
  for (int j = -2; j <= 3; ++j) b[j + 2] = kDiscLadder[j + 2] * std::pow(r, -j);
  const double am1 = -w.c1 / (4.0 * kSqrtPi), a1 = -w.c_minus1() / (2.0 * kSqrtPi);
  auto small = [&](double v) {  // t = v^2, dt = 2 v dv
    const double t = v * v;
    double s = (b[1] + am1) / v + (b[2] - w.c0 / (2.0 * kPi)) + b[3] * v + b[4] * t + b[5] * t * v;
    s += rtr_exterior_remainder(p, t).value + a1 * v;
    return 2.0 * v * s * std::exp(-mu * t);
  };
  double total = integrate(small, 0.0, std::sqrt(t0), 1e-10, 1e-11).value;
  const auto spec = disc_dirichlet_spectrum_cached(r, interior_cutoff(r, t0));
  const double T = 1.0 + 46.0 / mu;
  total += integrate_log([&](double t) { return (tr_interior(spec, t).value + rtr_exterior(p, t).value) * std::exp(-mu * t); },
                         t0, T, 1e-10, 1e-11)
               .value;
  return total;
}

}  // namespace isodet
