#include "isodet/jump_operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "isodet/quadrature.hpp"
#include "isodet/specfun.hpp"

namespace isodet {

namespace {

constexpr double kPi = std::numbers::pi;

void check(double r, double mu) {
  if (!(r > 0.0)) throw std::domain_error("jump operator: radius must be positive");
  if (!(mu >= 0.0)) throw std::domain_error("jump operator: mu must be nonnegative");
}

}  // namespace

double ModeCheck::max_residual() const {
  return std::max({r_rinv, factor_r, factor_rinv, projector, deriv_fd, trace_route});
}

double jump_eigenvalue(double r, double mu, int n) {
  check(r, mu);
  if (mu == 0.0) return 2.0 * n / r;
  const double x = std::sqrt(mu) * r;
  return std::sqrt(mu) * (bessel_i_ratio(n, x) + bessel_k_ratio(n, x));
}

JumpSpectrum r_spectrum_circle(double r, double mu, int N) {
  check(r, mu);
  if (N < 10) throw std::invalid_argument("r_spectrum_circle: N must be at least 10");
  JumpSpectrum s;
  s.radius = r;
  s.mu = mu;
  s.lambda.resize(N + 1);
  s.mult.resize(N + 1);
  if (mu == 0.0) {
    for (int n = 0; n <= N; ++n) s.lambda[n] = 2.0 * n / r;
  } else {
    const double x = std::sqrt(mu) * r;
    const auto ri = bessel_i_ratios(N, x), rk = bessel_k_ratios(N, x);
    for (int n = 0; n <= N; ++n) s.lambda[n] = std::sqrt(mu) * (ri[n] + rk[n]);
  }
  for (int n = 0; n <= N; ++n) s.mult[n] = n == 0 ? 1 : 2;
  return s;
}

JumpDet log_det_r_circle(double r, double mu, int N) {
  check(r, mu);
  JumpDet d;
  if (mu == 0.0) {
    d.value = std::log(kPi * r);
    d.method = "closed-form";
    return d;
  }
  d.method = "mode-sum";
  const auto s = r_spectrum_circle(r, mu, N);
  const double x2 = mu * r * r;
  // log lambda_n - log(2n/r) = x^2/(2n^2) + O(n^-4); the x^2/(2n^2) part is
  // summed in closed form.
  long double acc = 0.0L;
  double prev = 0.0;
  int sign_changes = 0;
  for (int n = N; n >= 1; --n) {
    const double rem = std::log(s.lambda[n] * r / (2.0 * n)) - x2 / (2.0 * double(n) * n);
    if (n < N && n > 2.0 * std::sqrt(x2) + 10 && (rem > 0) != (prev > 0) && rem != 0.0 && prev != 0.0) ++sign_changes;
    prev = rem;
    acc += rem;
  }
  // Remainder beyond N: -x^4 / (4 n^4) summed.
  d.tail = -x2 * x2 / (12.0 * double(N) * N * N);
  d.value = std::log(s.lambda[0]) + std::log(kPi * r) + 2.0 * static_cast<double>(acc) + 2.0 * d.tail +
            x2 * kPi * kPi / 6.0;
  d.err = std::fabs(d.tail) + 1e-14 * N;
  d.flagged = sign_changes > 0;
  return d;
}

JumpDet log_det_r_ladder(double r, int N) {
  check(r, 0.0);
  // Zeta-regularised sum of log n is the limit of
  // sum_{n<=N} log n - (N log N - N + log(N)/2) with Euler-Maclaurin corrections.
  long double acc = 0.0L;
  for (int n = N; n >= 1; --n) acc += std::log(static_cast<long double>(n));
  const long double ln = std::log(static_cast<long double>(N));
  const long double nn = N;
  const long double reg = acc - (nn * ln - nn + 0.5L * ln) - 1.0L / (12.0L * nn) + 1.0L / (360.0L * nn * nn * nn);
  JumpDet d;
  d.value = static_cast<double>(2.0L * reg) - std::log(2.0 / r);
  d.err = 1.0 / (630.0 * std::pow(double(N), 5));
  d.method = "ladder-sum";
  return d;
}

double dlog_jump_eigenvalue(double r, double mu, int n) {
  check(r, mu);
  if (mu == 0.0) throw std::domain_error("dlog_jump_eigenvalue: mu must be positive");
  const double x = std::sqrt(mu) * r;
  // -d/dmu log(I_n K_n)(x), I'/I = n/x + I_{n+1}/I_n, K'/K = n/x - K_{n+1}/K_n.
  return -(r / (2.0 * std::sqrt(mu))) * (2.0 * n / x + bessel_i_ratio(n, x) - bessel_k_ratio(n, x));
}

ModeCheck mode_identities_check(double r, double mu, int n) {
  check(r, mu);
  if (mu == 0.0) throw std::domain_error("mode_identities_check: mu must be positive");
  namespace bm = boost::math;
  const double nu = std::sqrt(mu), x = nu * r;
  const double in = bm::cyl_bessel_i(n, x), kn = bm::cyl_bessel_k(n, x);
  const double ip = bm::cyl_bessel_i_prime(n, x), kp = bm::cyl_bessel_k_prime(n, x);
  const double lam = jump_eigenvalue(r, mu, n);
  const double rinv = r * in * kn;  // trace of the single-layer profile

  ModeCheck c;
  c.r_rinv = std::fabs(lam * rinv - 1.0);
  // P_dir: I_n(nu rho)/I_n(x) inside, K_n(nu rho)/K_n(x) outside; T_tr: jump
  // of d/drho, inside minus outside.
  c.factor_r = std::fabs(nu * (ip / in - kp / kn) - lam) / lam;
  // P_tr: r I_n(nu rho_<) K_n(nu rho_>); its derivative jump is 1.
  const double jump = r * nu * (ip * kn - in * kp);
  c.factor_rinv = std::max(std::fabs(rinv * lam - 1.0), std::fabs(jump - 1.0));

  auto ptr = [&](double rho) {
    return rho <= r ? r * bm::cyl_bessel_i(n, nu * rho) * kn : r * in * bm::cyl_bessel_k(n, nu * rho);
  };
  auto pdir = [&](double rho, double f) {
    return rho <= r ? f * bm::cyl_bessel_i(n, nu * rho) / in : f * bm::cyl_bessel_k(n, nu * rho) / kn;
  };
  for (double q : {0.3, 0.7, 1.0, 1.5, 3.0}) {
    const double rho = q * r;
    const double u = ptr(rho);
    c.projector = std::max(c.projector, std::fabs(pdir(rho, ptr(r)) - u) / std::max(std::fabs(u), 1e-300));
  }

  // Finite-difference derivative of log lambda_n, Richardson on two steps.
  const double an = dlog_jump_eigenvalue(r, mu, n);
  auto fd = [&](double h) {
    return (std::log(jump_eigenvalue(r, mu + h, n)) - std::log(jump_eigenvalue(r, mu - h, n))) / (2.0 * h);
  };
  const double h = 1e-3 * mu;
  const double rich = (4.0 * fd(h / 2.0) - fd(h)) / 3.0;
  c.deriv_fd = std::fabs(rich - an);

  // Mode-wise trace of the resolvent difference.
  const double inner = integrate([&](double rho) {
    const double v = bm::cyl_bessel_i(n, nu * rho);
    return (kn / in) * v * v * rho;
  }, 0.0, r).value;
  const double outer_end = r + 60.0 / nu;
  const double outer = integrate_panels([&](double rho) {
    const double v = bm::cyl_bessel_k(n, nu * rho);
    return (in / kn) * v * v * rho;
  }, {r, r + 1.0 / nu, r + 5.0 / nu, r + 20.0 / nu, outer_end}).value;
  const double trace = -inner - outer;
  c.trace_route = std::fabs(an + trace);
  return c;
}

VariationalSum jump_variational_sum(double r, double mu, int nmax) {
  check(r, mu);
  VariationalSum v;
  for (int n = nmax; n >= 0; --n) v.partial += (n == 0 ? 1 : 2) * dlog_jump_eigenvalue(r, mu, n);
  v.tail = r * r * boost::math::trigamma(static_cast<double>(nmax + 1));
  return v;
}

}  // namespace isodet
