#include "isodet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace isodet {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Eigen::Vector2d> polygon(const ObstacleCurve& c, int n) {
  std::vector<Eigen::Vector2d> p(n);
  for (int i = 0; i < n; ++i) p[i] = c.point(2.0 * kPi * i / n);
  return p;
}

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_cross(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2, const Eigen::Vector2d& q1,
                    const Eigen::Vector2d& q2) {
  const double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

double seg_dist(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (a + t * ab - p).norm();
}

bool inside(const std::vector<Eigen::Vector2d>& poly, const Eigen::Vector2d& p) {
  bool in = false;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y()) && p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x())
      in = !in;
  }
  return in;
}

double boundary_distance(const std::vector<Eigen::Vector2d>& poly, const Eigen::Vector2d& p) {
  double d = 1e300;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) d = std::min(d, seg_dist(p, poly[i], poly[(i + 1) % n]));
  return d;
}

// Real DFT of samples f(2 pi j / n): cosine and sine coefficients up to deg.
void real_dft(const std::vector<double>& f, int deg, std::vector<double>& c, std::vector<double>& s) {
  const int n = static_cast<int>(f.size());
  c.assign(deg + 1, 0.0);
  s.assign(deg + 1, 0.0);
  for (int m = 0; m <= deg; ++m) {
    double sc = 0.0, ss = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = 2.0 * kPi * m * j / n;
      sc += f[j] * std::cos(a);
      ss += f[j] * std::sin(a);
    }
    const double w = (m == 0 || 2 * m == n) ? 1.0 / n : 2.0 / n;
    c[m] = w * sc;
    s[m] = w * ss;
  }
  s[0] = 0.0;
}

}  // namespace

ObstacleCurve ObstacleCurve::disc(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("disc radius must be positive");
  ObstacleCurve c = from_trig({0.0, r}, {0.0, 0.0}, {0.0, 0.0}, {0.0, r});
  c.kind_ = Kind::Disc;
  c.radius_ = r;
  return c;
}

ObstacleCurve ObstacleCurve::ellipse(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("ellipse semi-axes must be positive");
  if (a == b) return disc(a);
  return from_trig({0.0, a}, {0.0, 0.0}, {0.0, 0.0}, {0.0, b});
}

ObstacleCurve ObstacleCurve::star(double r0, double eps, int k) {
  if (!(r0 > 0.0) || !(std::fabs(eps) < 1.0) || k < 1) throw std::invalid_argument("star: need r0 > 0, |eps| < 1, k >= 1");
  return from_polar([=](double t) { return r0 * (1.0 + eps * std::cos(k * t)); }, k + 1);
}

ObstacleCurve ObstacleCurve::from_polar(const std::function<double(double)>& r, int degree) {
  const int n = 4 * (degree + 2);
  std::vector<double> xs(n), ys(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * j / n;
    const double rt = r(t);
    if (!(rt > 0.0)) throw std::invalid_argument("radial function must be positive");
    xs[j] = rt * std::cos(t);
    ys[j] = rt * std::sin(t);
  }
  std::vector<double> xc, xsn, yc, ysn;
  real_dft(xs, degree, xc, xsn);
  real_dft(ys, degree, yc, ysn);
  auto clean = [](std::vector<double>& v) {
    for (auto& e : v)
      if (std::fabs(e) < 1e-15) e = 0.0;
  };
  clean(xc);
  clean(xsn);
  clean(yc);
  clean(ysn);
  return from_trig(xc, xsn, yc, ysn);
}

ObstacleCurve ObstacleCurve::from_trig(std::vector<double> xc, std::vector<double> xs, std::vector<double> yc,
                                       std::vector<double> ys) {
  const size_t m = std::max({xc.size(), xs.size(), yc.size(), ys.size()});
  if (m < 2) throw std::invalid_argument("curve needs at least first-order Fourier terms");
  xc.resize(m, 0.0);
  xs.resize(m, 0.0);
  yc.resize(m, 0.0);
  ys.resize(m, 0.0);
  xs[0] = ys[0] = 0.0;
  ObstacleCurve c;
  c.xc_ = std::move(xc);
  c.xs_ = std::move(xs);
  c.yc_ = std::move(yc);
  c.ys_ = std::move(ys);
  c.normalise_orientation();
  return c;
}

void ObstacleCurve::normalise_orientation() {
  // Signed area from the coefficients: A = pi sum m (xc_m ys_m - xs_m yc_m).
  double a = 0.0;
  for (size_t m = 1; m < xc_.size(); ++m) a += kPi * m * (xc_[m] * ys_[m] - xs_[m] * yc_[m]);
  if (a < 0.0) {
    for (auto& v : xs_) v = -v;
    for (auto& v : ys_) v = -v;
  }
}

Eigen::Vector2d ObstacleCurve::eval(double t, int deriv) const {
  double x = 0.0, y = 0.0;
  for (size_t m = 0; m < xc_.size(); ++m) {
    const double c = std::cos(m * t), s = std::sin(m * t);
    double fc = c, fs = s;
    const double mm = static_cast<double>(m);
    if (deriv == 1) {
      fc = -mm * s;
      fs = mm * c;
    } else if (deriv == 2) {
      fc = -mm * mm * c;
      fs = -mm * mm * s;
    }
    x += xc_[m] * fc + xs_[m] * fs;
    y += yc_[m] * fc + ys_[m] * fs;
  }
  return {x, y};
}

Eigen::Vector2d ObstacleCurve::point(double t) const { return eval(t, 0); }
Eigen::Vector2d ObstacleCurve::d1(double t) const { return eval(t, 1); }
Eigen::Vector2d ObstacleCurve::d2(double t) const { return eval(t, 2); }

std::string ObstacleCurve::canonical() const {
  char buf[160];
  if (is_disc()) {
    std::snprintf(buf, sizeof buf, "disc %.17g\n", radius_);
    return buf;
  }
  // Complex coefficients of the m >= 0 half: x_m = (xc - i xs)/2, x_0 = xc_0.
  std::string out;
  for (size_t m = 0; m < xc_.size(); ++m) {
    const double f = m == 0 ? 1.0 : 0.5;
    std::snprintf(buf, sizeof buf, "%zu, %.17g, %.17g, %.17g, %.17g\n", m, f * xc_[m], -f * xs_[m], f * yc_[m],
                  -f * ys_[m]);
    out += buf;
  }
  return out;
}

bool self_intersects(const ObstacleCurve& curve, int n) {
  const auto p = polygon(curve, n);
  for (int i = 0; i < n; ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % n];
    const double xmin = std::min(a.x(), b.x()), xmax = std::max(a.x(), b.x());
    const double ymin = std::min(a.y(), b.y()), ymax = std::max(a.y(), b.y());
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const auto& c = p[j];
      const auto& d = p[(j + 1) % n];
      if (std::max(c.x(), d.x()) < xmin || std::min(c.x(), d.x()) > xmax) continue;
      if (std::max(c.y(), d.y()) < ymin || std::min(c.y(), d.y()) > ymax) continue;
      if (segments_cross(a, b, c, d)) return true;
    }
  }
  return false;
}

CurveMetrics curve_metrics(const ObstacleCurve& curve, int n_resample) {
  CurveMetrics m;
  // Trapezoid rule is spectrally accurate for periodic integrands; double n
  // until the length settles.
  int n = std::max(64, 8 * (curve.degree() + 1));
  double prev = -1.0;
  std::vector<double> speed;
  for (; n <= (1 << 16); n *= 2) {
    double l = 0.0, a = 0.0, k2 = 0.0;
    speed.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * kPi * j / n;
      const auto p = curve.point(t), v = curve.d1(t), w = curve.d2(t);
      const double sp = v.norm();
      if (!(sp > 0.0)) throw std::invalid_argument("degenerate parametrisation (zero speed)");
      speed[j] = sp;
      l += sp;
      a += 0.5 * cross(p, v);
      const double k = cross(v, w) / (sp * sp * sp);
      k2 += k * k * sp;
    }
    const double h = 2.0 * kPi / n;
    m.length = l * h;
    m.area = a * h;
    m.kappa_sq_integral = k2 * h;
    if (std::fabs(m.length - prev) <= 1e-14 * m.length) break;
    prev = m.length;
  }
  if (!(m.area > 0.0)) throw std::invalid_argument("curve encloses no area");
  if (self_intersects(curve)) throw std::invalid_argument("self-intersecting curve");

  // Arclength s(t) from the Fourier series of the speed, then invert.
  const int deg = std::min<int>(static_cast<int>(speed.size()) / 2 - 1, 256);
  std::vector<double> sc, ss;
  real_dft(speed, deg, sc, ss);
  auto s_of_t = [&](double t) {
    double s = sc[0] * t;
    for (int k = 1; k <= deg; ++k) s += (sc[k] * std::sin(k * t) - ss[k] * (std::cos(k * t) - 1.0)) / k;
    return s;
  };
  m.arclength.resize(n_resample);
  m.kappa.resize(n_resample);
  double t = 0.0;
  for (int i = 0; i < n_resample; ++i) {
    const double target = m.length * i / n_resample;
    for (int it = 0; it < 50; ++it) {
      const double dt = (s_of_t(t) - target) / curve.d1(t).norm();
      t -= dt;
      if (std::fabs(dt) < 1e-15) break;
    }
    const auto v = curve.d1(t), w = curve.d2(t);
    const double sp = v.norm();
    m.arclength[i] = target;
    m.kappa[i] = cross(v, w) / (sp * sp * sp);
  }
  return m;
}

double a1_curvature_coefficient() { return 1.0 / (256.0 * std::sqrt(kPi)); }

HeatInvariants heat_invariants(double area, double length, double kappa_sq_integral, HeatSide side) {
  HeatInvariants h;
  h.side = side;
  const double sgn = side == HeatSide::Interior ? 1.0 : -1.0;
  h.a_minus2 = sgn * area / (4.0 * kPi);
  h.a_minus1 = -length / (8.0 * std::sqrt(kPi));
  h.a_0 = sgn / 6.0;
  h.a_1 = a1_curvature_coefficient() * kappa_sq_integral;
  return h;
}

HeatInvariants heat_invariants(const ObstacleCurve& curve, HeatSide side) {
  if (curve.is_disc()) {
    const double r = curve.radius();
    return heat_invariants(kPi * r * r, 2.0 * kPi * r, 2.0 * kPi / r, side);
  }
  const auto m = curve_metrics(curve, 16);
  return heat_invariants(m.area, m.length, m.kappa_sq_integral, side);
}

double inradius_lower_bound(double area, double length) {
  if (!(area >= 0.0) || !(length > 0.0)) throw std::invalid_argument("inradius bound: need A >= 0, L > 0");
  return 2.0 * area / (25.0 * kPi * length);
}

double circumradius(const ObstacleCurve& curve) {
  double r = 0.0;
  const int n = 2048;
  for (int i = 0; i < n; ++i) r = std::max(r, curve.point(2.0 * kPi * i / n).norm());
  return r;
}

double inradius_sampled(const ObstacleCurve& curve, int grid) {
  const auto poly = polygon(curve, 1024);
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& p : poly) {
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  }
  Eigen::Vector2d best(0, 0);
  double bestd = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const Eigen::Vector2d p(xmin + (xmax - xmin) * (i + 0.5) / grid, ymin + (ymax - ymin) * (j + 0.5) / grid);
      if (!inside(poly, p)) continue;
      const double d = boundary_distance(poly, p);
      if (d > bestd) {
        bestd = d;
        best = p;
      }
    }
  }
  // Pattern search from the best grid point.
  double step = std::max(xmax - xmin, ymax - ymin) / grid;
  while (step > 1e-9 * (xmax - xmin)) {
    bool moved = false;
    for (const Eigen::Vector2d& dir : {Eigen::Vector2d(1, 0), Eigen::Vector2d(-1, 0), Eigen::Vector2d(0, 1),
                                      Eigen::Vector2d(0, -1)}) {
      const Eigen::Vector2d q = best + step * dir;
      if (!inside(poly, q)) continue;
      const double d = boundary_distance(poly, q);
      if (d > bestd) {
        bestd = d;
        best = q;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return bestd;
}

std::vector<std::pair<std::string, ObstacleCurve>> shape_corpus() {
  std::vector<std::pair<std::string, ObstacleCurve>> v;
  for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) v.emplace_back("disc r=" + std::to_string(r), ObstacleCurve::disc(r));
  const std::pair<double, double> ell[] = {{1, 0.5}, {1, 0.2}, {2, 1}, {1, 0.1}, {3, 0.5}};
  for (auto [a, b] : ell)
    v.emplace_back("ellipse " + std::to_string(a) + "x" + std::to_string(b), ObstacleCurve::ellipse(a, b));
  const std::pair<double, int> stars[] = {{0.1, 3}, {0.2, 3}, {0.1, 5}, {0.05, 8}, {0.2, 2},
                                          {0.3, 2}, {0.15, 4}, {0.1, 6}, {0.25, 3}, {0.04, 12}};
  for (auto [e, k] : stars)
    v.emplace_back("star eps=" + std::to_string(e) + " k=" + std::to_string(k), ObstacleCurve::star(1.0, e, k));
  return v;
}

ObstacleCurve parse_curve_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<int, std::pair<std::complex<double>, std::complex<double>>> coef;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "disc") {
      double r = 0.0;
      if (!(ls >> r) || !(r > 0.0)) throw std::invalid_argument("curve line " + std::to_string(lineno) + ": bad disc radius");
      return ObstacleCurve::disc(r);
    }
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ns(line);
    int m;
    double a, b, c, d;
    if (!(ns >> m >> a >> b >> c >> d))
      throw std::invalid_argument("curve line " + std::to_string(lineno) + ": expected m, Re x, Im x, Re y, Im y");
    coef[m] = {{a, b}, {c, d}};
  }
  if (coef.empty()) throw std::invalid_argument("curve file has no coefficients");
  const bool has_negative = coef.begin()->first < 0;
  int mmax = 0;
  for (const auto& [m, _] : coef) mmax = std::max(mmax, std::abs(m));
  std::vector<double> xc(mmax + 1, 0.0), xs(mmax + 1, 0.0), yc(mmax + 1, 0.0), ys(mmax + 1, 0.0);
  for (int m = 0; m <= mmax; ++m) {
    std::complex<double> xp, yp, xn, yn;
    if (auto it = coef.find(m); it != coef.end()) std::tie(xp, yp) = it->second;
    if (m == 0) {
      xc[0] = xp.real();
      yc[0] = yp.real();
      continue;
    }
    if (has_negative) {
      if (auto it = coef.find(-m); it != coef.end()) std::tie(xn, yn) = it->second;
    } else {
      xn = std::conj(xp);
      yn = std::conj(yp);
    }
    // Re(x_m e^{imt} + x_{-m} e^{-imt}).
    xc[m] = xp.real() + xn.real();
    xs[m] = -xp.imag() + xn.imag();
    yc[m] = yp.real() + yn.real();
    ys[m] = -yp.imag() + yn.imag();
  }
  return ObstacleCurve::from_trig(xc, xs, yc, ys);
}

ObstacleCurve read_curve_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open curve file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_curve_text(ss.str());
}

}  // namespace isodet
