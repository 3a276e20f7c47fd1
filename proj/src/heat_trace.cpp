#include "isodet/heat_trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "isodet/io.hpp"
#include "isodet/specfun.hpp"

namespace isodet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kExpCut = 46.0;  // e^{-46} ~ 1e-20

bool has_tail(const PhaseTable& p) { return p.weyl.c2 != 0.0 || p.weyl.c1 != 0.0 || !p.weyl.neg.empty(); }

// Quadrature of -(t/pi) int (s - P - drop/l) l e^{-l^2 t} dl over (0, inf).
QuadResult weyl_remainder(const PhaseTable& phase, double t, double drop) {
  const double upper = std::sqrt(kExpCut / t);
  double reliable = phase.has_exact() ? phase.weyl.fit_hi : phase.lambda_max();
  if (!phase.has_exact() && !has_tail(phase) && reliable < upper) {
    std::ostringstream os;
    os << "phase table ends at lambda=" << reliable << ", rtr at t=" << t << " needs lambda_max >= " << upper;
    throw std::range_error(os.str());
  }
  if (reliable <= 0.0) reliable = upper;
  const auto& w = phase.weyl;
  auto body = [&](double l) { return (phase(l) - w.poly(l) - drop / l) * l * std::exp(-l * l * t); };
  auto tail = [&](double l) { return (w.rest(l) - drop / l) * l * std::exp(-l * l * t); };

  // Absolute floor per panel; the result is scaled by t/pi afterwards.
  const double noise = 1e-11 / t;
  QuadResult q;
  auto add = [&q](QuadResult r) {
    q.value += r.value;
    q.err += r.err;
  };
  const double lo = 1e-12;
  const double top = std::min(reliable, upper);
  const double mid = std::min(1.0, top);
  add(integrate_log(body, lo, mid, 1e-12, noise));
  if (top > mid) {
    std::vector<double> pts{mid};
    while (pts.back() * 2.0 < top) pts.push_back(pts.back() * 2.0);
    pts.push_back(top);
    add(integrate_panels(body, pts, 1e-12, noise));
  }
  if (upper > top) {
    std::vector<double> pts{top};
    while (pts.back() * 2.0 < upper) pts.push_back(pts.back() * 2.0);
    pts.push_back(upper);
    add(integrate_panels(tail, pts, 1e-12, noise));
  }
  q.value *= -t / kPi;
  q.err *= t / kPi;
  return q;
}

}  // namespace

const char* to_string(HeatKind k) { return k == HeatKind::Interior ? "interior" : "exterior-regularized"; }

QuadResult rtr_exterior(const PhaseTable& phase, double t) {
  if (!(t > 0.0)) throw std::domain_error("rtr_exterior: t must be positive");
  const auto& w = phase.weyl;
  QuadResult q = weyl_remainder(phase, t, 0.0);
  q.value += -w.c2 / (2.0 * kPi * t) - w.c1 / (4.0 * std::sqrt(kPi * t)) - w.c0 / (2.0 * kPi);
  q.err += 1e-15 * std::fabs(q.value);
  return q;
}

QuadResult rtr_exterior_remainder(const PhaseTable& phase, double t) {
  if (!(t > 0.0)) throw std::domain_error("rtr_exterior_remainder: t must be positive");
  return weyl_remainder(phase, t, phase.weyl.c_minus1());
}

std::size_t DiscSpectrum::count() const {
  std::size_t c = 0;
  for (int m : mult) c += m;
  return c;
}

DiscSpectrum disc_dirichlet_spectrum(double r, double lambda_max) {
  if (!(r > 0.0) || !(lambda_max > 0.0)) throw std::domain_error("disc spectrum: r and lambda_max must be positive");
  DiscSpectrum s;
  s.radius = r;
  s.lambda_max = lambda_max;
  const double jmax = lambda_max * r;
  for (int n = 0;; ++n) {
    const auto z = bessel_zeros(n, jmax);
    if (z.empty()) break;
    for (double v : z) {
      s.lambda_sq.push_back(v * v / (r * r));
      s.mult.push_back(n == 0 ? 1 : 2);
    }
  }
  // Ascending order lets the trace stop at the first negligible term.
  std::vector<std::size_t> idx(s.lambda_sq.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.lambda_sq[a] < s.lambda_sq[b]; });
  DiscSpectrum sorted = s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    sorted.lambda_sq[i] = s.lambda_sq[idx[i]];
    sorted.mult[i] = s.mult[idx[i]];
  }
  return sorted;
}

DiscSpectrum disc_dirichlet_spectrum_cached(double r, double lambda_max) {
  std::ostringstream key;
  key << "disc-dirichlet-spectrum r=" << fmt17(r) << " lambda_max=" << fmt17(lambda_max);
  if (auto hit = cache_read(key.str())) {
    std::istringstream in(*hit);
    DiscSpectrum s;
    s.radius = r;
    s.lambda_max = lambda_max;
    double l2;
    int m;
    while (in >> l2 >> m) {
      s.lambda_sq.push_back(l2);
      s.mult.push_back(m);
    }
    if (!s.lambda_sq.empty()) return s;
  }
  DiscSpectrum s = disc_dirichlet_spectrum(r, lambda_max);
  std::string out;
  for (std::size_t i = 0; i < s.lambda_sq.size(); ++i) out += fmt17(s.lambda_sq[i]) + ' ' + std::to_string(s.mult[i]) + '\n';
  cache_write(key.str(), out);
  return s;
}

double interior_cutoff(double r, double t, double tol) {
  // sum_{l > L} e^{-t l^2} <= int_L^inf e^{-t l^2} dN, N(l) <= r^2 l^2 / 4 + r l.
  const double arg = std::max(1.0, (r * r / (4.0 * t) + r / std::sqrt(t)) / tol);
  return std::sqrt(std::log(arg) / t);
}

QuadResult tr_interior(const DiscSpectrum& spec, double t) {
  if (!(t > 0.0)) throw std::domain_error("tr_interior: t must be positive");
  const double need = interior_cutoff(spec.radius, t);
  if (spec.lambda_max < need) {
    std::ostringstream os;
    os << "disc spectrum ends at lambda=" << spec.lambda_max << ", t=" << t << " needs " << need;
    throw std::range_error(os.str());
  }
  long double sum = 0.0L;
  for (std::size_t i = 0; i < spec.lambda_sq.size(); ++i) {
    const double x = t * spec.lambda_sq[i];
    if (x > 50.0) break;
    sum += spec.mult[i] * std::exp(-x);
  }
  const double r = spec.radius, L = spec.lambda_max;
  const double bound = (r * r / (4.0 * t) + r / std::sqrt(t)) * std::exp(-t * L * L);
  return {static_cast<double>(sum), bound + 1e-16 * static_cast<double>(sum)};
}

QuadResult tr_interior(const ObstacleCurve& curve, double t) {
  if (!curve.is_disc()) throw std::invalid_argument("tr_interior: only discs are supported");
  return tr_interior(disc_dirichlet_spectrum_cached(curve.radius(), interior_cutoff(curve.radius(), t)), t);
}

HeatSamples sample_interior(const DiscSpectrum& spec, const std::vector<double>& ts) {
  HeatSamples h;
  h.kind = HeatKind::Interior;
  for (double t : ts) {
    const auto q = tr_interior(spec, t);
    h.t.push_back(t);
    h.value.push_back(q.value);
    h.err.push_back(q.err);
  }
  return h;
}

HeatSamples sample_exterior(const PhaseTable& phase, const std::vector<double>& ts) {
  HeatSamples h;
  h.kind = HeatKind::ExteriorRegularized;
  for (double t : ts) {
    const auto q = rtr_exterior(phase, t);
    h.t.push_back(t);
    h.value.push_back(q.value);
    h.err.push_back(q.err);
  }
  return h;
}

double HeatFit::coeff(int jj) const {
  for (std::size_t i = 0; i < j.size(); ++i)
    if (j[i] == jj) return a[i];
  throw std::out_of_range("heat fit has no coefficient for this index");
}

double HeatFit::error(int jj) const {
  for (std::size_t i = 0; i < j.size(); ++i)
    if (j[i] == jj) return sigma[i];
  throw std::out_of_range("heat fit has no coefficient for this index");
}

HeatFit extract_coeffs(const HeatSamples& h, int n_terms) {
  const int n = static_cast<int>(h.t.size());
  if (n_terms < 1) throw std::invalid_argument("extract_coeffs: n_terms must be positive");
  if (n < 3 * n_terms) throw std::invalid_argument("extract_coeffs: need at least 3 samples per term");
  const auto [tmin, tmax] = std::minmax_element(h.t.begin(), h.t.end());
  if (*tmax < 1e3 * *tmin) throw std::invalid_argument("extract_coeffs: samples must span 3 decades of t");

  // Rows scaled by t (the leading t^{-1} growth), columns normalised.
  Eigen::MatrixXd a(n, n_terms);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const double t = h.t[i];
    for (int k = 0; k < n_terms; ++k) a(i, k) = t * std::pow(t, 0.5 * (k - 2));
    b(i) = t * h.value[i];
  }
  Eigen::VectorXd scale = a.colwise().norm().transpose();
  for (int k = 0; k < n_terms; ++k) a.col(k) /= scale(k);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd c = svd.solve(b);
  const Eigen::VectorXd res = a * c - b;

  HeatFit f;
  const auto& sv = svd.singularValues();
  f.cond = sv(0) / sv(sv.size() - 1);
  f.ill_conditioned = f.cond > 1e12;
  f.residual = res.cwiseAbs().maxCoeff();
  const double s2 = n > n_terms ? res.squaredNorm() / (n - n_terms) : 0.0;
  // cov = s2 V S^-2 V^T
  const Eigen::MatrixXd v = svd.matrixV();
  for (int k = 0; k < n_terms; ++k) {
    double var = 0.0;
    for (int m = 0; m < sv.size(); ++m) var += v(k, m) * v(k, m) / (sv(m) * sv(m));
    f.j.push_back(k - 2);
    f.a.push_back(c(k) / scale(k));
    f.sigma.push_back(std::sqrt(s2 * var) / scale(k));
  }
  return f;
}

}  // namespace isodet
