#include "isodet/obstacle_scattering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <boost/math/special_functions/bessel.hpp>

#include "isodet/io.hpp"

namespace isodet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = std::numbers::egamma;
const std::complex<double> kI(0.0, 1.0);

struct Boundary {
  int m = 0;  // number of nodes, even
  std::vector<double> t, speed;
  std::vector<Eigen::Vector2d> x, dx, ddx;
};

Boundary discretise(const ObstacleCurve& c, int m) {
  Boundary b;
  b.m = m;
  for (int j = 0; j < m; ++j) {
    const double t = 2.0 * kPi * j / m;
    b.t.push_back(t);
    b.x.push_back(c.point(t));
    b.dx.push_back(c.d1(t));
    b.ddx.push_back(c.d2(t));
    b.speed.push_back(b.dx.back().norm());
  }
  return b;
}

struct H01 {
  double j0, j1, y0, y1;
};

H01 hankel01(double z) {
  return {boost::math::cyl_bessel_j(0, z), boost::math::cyl_bessel_j(1, z), boost::math::cyl_neumann(0, z),
          boost::math::cyl_neumann(1, z)};
}

double coupling(double k) { return std::max(k, 0.5); }

// Combined-field system (I + K - i eta S) phi = rhs with Kress' splitting of
// the logarithmic singularity.
Eigen::MatrixXcd nystrom_matrix(const Boundary& b, double k, double eta) {
  const int m = b.m, n = m / 2;
  std::vector<double> w(m);
  for (int l = 0; l < m; ++l) {
    double s = 0.0;
    for (int p = 1; p < n; ++p) s += std::cos(p * kPi * l / n) / p;
    w[l] = -(2.0 * kPi / n) * s - (kPi / (double(n) * n)) * ((l % 2) ? -1.0 : 1.0);
  }
  Eigen::MatrixXcd a(m, m);
  const double h = kPi / n;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const auto& xp = b.dx[j];
      std::complex<double> l1, l2, m1, m2;
      if (i == j) {
        const auto& xpp = b.ddx[j];
        l1 = 0.0;
        l2 = -(xp.x() * xpp.y() - xp.y() * xpp.x()) / (2.0 * kPi * b.speed[j] * b.speed[j]);
        m1 = -b.speed[j] / (2.0 * kPi);
        m2 = (0.5 * kI - kEuler / kPi - std::log(k * b.speed[j] / 2.0) / kPi) * b.speed[j];
      } else {
        const Eigen::Vector2d d = b.x[i] - b.x[j];
        const double r = d.norm();
        const auto hv = hankel01(k * r);
        const double br = xp.y() * d.x() - xp.x() * d.y();
        const std::complex<double> h0(hv.j0, hv.y0), h1(hv.j1, hv.y1);
        const std::complex<double> lf = 0.5 * kI * k * br * h1 / r;
        const std::complex<double> mf = 0.5 * kI * h0 * b.speed[j];
        l1 = -(k / (2.0 * kPi)) * br * hv.j1 / r;
        m1 = -hv.j0 * b.speed[j] / (2.0 * kPi);
        const double sn = std::sin((b.t[i] - b.t[j]) / 2.0);
        const double lg = std::log(4.0 * sn * sn);
        l2 = lf - l1 * lg;
        m2 = mf - m1 * lg;
      }
      const std::complex<double> k1 = l1 - kI * eta * m1, k2 = l2 - kI * eta * m2;
      a(i, j) = (i == j ? 1.0 : 0.0) + w[std::abs(i - j)] * k1 + h * k2;
    }
  }
  return a;
}

}  // namespace

int nystrom_points(const ObstacleCurve& curve, double lambda, const NystromOptions& opt) {
  const double len = curve.is_disc() ? 2.0 * kPi * curve.radius() : curve_metrics(curve, 8).length;
  int m = std::max(opt.min_points, opt.points_per_wave * static_cast<int>(std::ceil(lambda * len / (2.0 * kPi))));
  return m + (m & 1);
}

int far_field_modes(const ObstacleCurve& curve, double lambda) {
  const double kr = lambda * circumradius(curve);
  return static_cast<int>(std::ceil(kr + 4.0 * std::cbrt(kr) + 20.0));
}

Eigen::MatrixXcd far_field_physical(const ObstacleCurve& curve, double k, const std::vector<double>& out_angles,
                                    const std::vector<double>& in_angles, const NystromOptions& opt,
                                    double contour_radius, double* rcond, Eigen::MatrixXcd* densities) {
  if (!(k > 0.0)) throw std::domain_error("wavenumber must be positive");
  const Boundary b = discretise(curve, nystrom_points(curve, k, opt));
  const double eta = coupling(k);
  const Eigen::MatrixXcd sys = nystrom_matrix(b, k, eta);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys);
  const double rc = lu.rcond();
  if (rcond) *rcond = rc;
  if (!(rc >= opt.min_rcond))
    throw std::runtime_error("boundary system ill-conditioned at lambda=" + std::to_string(k) +
                             " (rcond=" + std::to_string(rc) + ")");

  const int m = b.m, nin = static_cast<int>(in_angles.size()), nout = static_cast<int>(out_angles.size());
  Eigen::MatrixXcd rhs(m, nin);
  for (int j = 0; j < nin; ++j) {
    const Eigen::Vector2d d(std::cos(in_angles[j]), std::sin(in_angles[j]));
    for (int i = 0; i < m; ++i) rhs(i, j) = -2.0 * std::exp(kI * k * b.x[i].dot(d));
  }
  const Eigen::MatrixXcd phi = lu.solve(rhs);
  if (densities) *densities = phi;

  // Scattered field and its radial derivative on |z| = R from
  // u(x) = int (d Phi/d nu_y - i eta Phi) phi ds.
  const double rc_obs = circumradius(curve);
  const double big_r = contour_radius > 0.0 ? contour_radius : opt.contour_factor * rc_obs;
  const int q = 2 * static_cast<int>(std::ceil(k * (big_r + rc_obs))) + 64;
  Eigen::MatrixXcd ku(q, m), kd(q, m);
  const double hw = kPi / (m / 2);
  for (int p = 0; p < q; ++p) {
    const double th = 2.0 * kPi * p / q;
    const Eigen::Vector2d nz(std::cos(th), std::sin(th));
    const Eigen::Vector2d z = big_r * nz;
    for (int j = 0; j < m; ++j) {
      const Eigen::Vector2d d = z - b.x[j];
      const double r = d.norm();
      const Eigen::Vector2d ny(b.dx[j].y() / b.speed[j], -b.dx[j].x() / b.speed[j]);
      const auto hv = hankel01(k * r);
      const std::complex<double> h0(hv.j0, hv.y0), h1(hv.j1, hv.y1);
      const double nd = ny.dot(d);
      const std::complex<double> dl = 0.25 * kI * k * h1 * nd / r;  // d Phi / d nu_y
      const std::complex<double> sl = 0.25 * kI * h0;
      // Gradients in x of the two kernels, projected on nu_z.
      const std::complex<double> gdl =
          0.25 * kI * k * ((k * r * h0 - 2.0 * h1) * nd * d.dot(nz) / (r * r * r) + h1 * ny.dot(nz) / r);
      const std::complex<double> gsl = -0.25 * kI * k * h1 * d.dot(nz) / r;
      const double wq = hw * b.speed[j];
      ku(p, j) = (dl - kI * eta * sl) * wq;
      kd(p, j) = (gdl - kI * eta * gsl) * wq;
    }
  }
  const Eigen::MatrixXcd us = ku * phi, dus = kd * phi;

  const std::complex<double> gam = std::polar(1.0, kPi / 4.0) / std::sqrt(8.0 * kPi * k);
  const double wc = 2.0 * kPi * big_r / q;
  Eigen::MatrixXcd e1(nout, q), e2(nout, q);
  for (int i = 0; i < nout; ++i) {
    const Eigen::Vector2d xh(std::cos(out_angles[i]), std::sin(out_angles[i]));
    for (int p = 0; p < q; ++p) {
      const double th = 2.0 * kPi * p / q;
      const Eigen::Vector2d nz(std::cos(th), std::sin(th));
      const std::complex<double> e = std::exp(-kI * k * big_r * xh.dot(nz));
      e1(i, p) = gam * wc * e * (-kI * k * xh.dot(nz));
      e2(i, p) = -gam * wc * e;
    }
  }
  return e1 * us + e2 * dus;
}

DirectSolution solve_direct(const ObstacleCurve& curve, double lambda, double omega, int n_angles,
                            const NystromOptions& opt, double contour_radius) {
  DirectSolution out;
  out.lambda = lambda;
  out.incidence = omega;
  for (int i = 0; i < n_angles; ++i) out.angles.push_back(2.0 * kPi * i / n_angles);
  Eigen::MatrixXcd dens;
  const Eigen::MatrixXcd u = far_field_physical(curve, lambda, out.angles, {omega}, opt, contour_radius, &out.rcond, &dens);
  out.density = dens.col(0);
  const int m = static_cast<int>(dens.rows());
  for (int j = 0; j < m; ++j) out.nodes.push_back(2.0 * kPi * j / m);
  out.far_field = (std::polar(1.0, -kPi / 4.0) * u.col(0).conjugate()).eval();
  return out;
}

FarFieldMatrix far_field_matrix(const ObstacleCurve& curve, double lambda, const NystromOptions& opt) {
  FarFieldMatrix f;
  f.lambda = lambda;
  const int nm = 2 * far_field_modes(curve, lambda) + 1;
  for (int i = 0; i < nm; ++i) f.angles.push_back(2.0 * kPi * i / nm);
  f.quadrature_points = nystrom_points(curve, lambda, opt);
  const Eigen::MatrixXcd u = far_field_physical(curve, lambda, f.angles, f.angles, opt, 0.0, &f.rcond);
  f.A = std::polar(1.0, -kPi / 4.0) * u.conjugate();
  f.S = Eigen::MatrixXcd::Identity(nm, nm) + std::sqrt(lambda / (2.0 * kPi)) * (2.0 * kPi / nm) * f.A;
  const Eigen::MatrixXcd d = f.S.adjoint() * f.S - Eigen::MatrixXcd::Identity(nm, nm);
  f.unitarity_defect = d.cwiseAbs().maxCoeff();
  return f;
}

PhaseTable scattering_phase_nystrom(const ObstacleCurve& curve, const std::vector<double>& grid,
                                    const NystromOptions& opt) {
  if (grid.empty()) throw std::invalid_argument("empty lambda grid");
  for (size_t i = 0; i < grid.size(); ++i)
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1])))
      throw std::invalid_argument("lambda grid must be positive and strictly ascending");

  // S here is already the conjugate of the physical matrix, so s = arg det S
  // on the continuous branch.
  struct DetSample {
    std::complex<double> det;
    double err;
    int m;
  };
  auto sample = [&](double l) {
    const auto f = far_field_matrix(curve, l, opt);
    const std::complex<double> d = f.S.partialPivLu().determinant();
    return DetSample{d, std::fabs(std::log(std::abs(d))) + f.unitarity_defect, f.quadrature_points};
  };

  PhaseTable t;
  t.radius = 0.0;
  // First point: sum of principal eigenphases (each small at small lambda).
  {
    const auto f = far_field_matrix(curve, grid[0], opt);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(f.S, false);
    double s = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) s += std::arg(es.eigenvalues()(i));
    const std::complex<double> d = f.S.partialPivLu().determinant();
    t.lambda.push_back(grid[0]);
    t.s.push_back(s);
    t.err.push_back(std::fabs(std::log(std::abs(d))) + f.unitarity_defect);
    t.N.push_back(f.quadrature_points);
    DetSample prev{d, t.err.back(), f.quadrature_points};

    std::function<double(double, const DetSample&, double, const DetSample&, int)> advance =
        [&](double la, const DetSample& da, double lb, const DetSample& db, int depth) -> double {
      const double step = std::arg(db.det / da.det);
      if (std::fabs(step) <= opt.max_phase_step) return step;
      if (depth >= opt.max_bisect_depth)
        throw std::runtime_error("branch tracking failed between lambda=" + std::to_string(la) + " and " +
                                 std::to_string(lb));
      const double mid = 0.5 * (la + lb);
      const DetSample dm = sample(mid);
      return advance(la, da, mid, dm, depth + 1) + advance(mid, dm, lb, db, depth + 1);
    };

    // The principal arg of a ratio cannot see whole turns, so each grid step
    // is first cut into pieces whose expected phase change (from the Weyl
    // rate A l + L/2, doubled) stays below pi/2.
    const CurveMetrics cm = curve_metrics(curve);
    for (size_t i = 1; i < grid.size(); ++i) {
      const double rate = 2.0 * (cm.area * grid[i] + 0.5 * cm.length) + 1.0;
      const int pieces = std::max(1, static_cast<int>(std::ceil(rate * (grid[i] - grid[i - 1]) / (0.5 * kPi))));
      double dphi = 0.0;
      double la = grid[i - 1];
      DetSample da = prev;
      for (int k = 1; k < pieces; ++k) {
        const double lb = grid[i - 1] + (grid[i] - grid[i - 1]) * k / pieces;
        const DetSample db = sample(lb);
        dphi += advance(la, da, lb, db, 0);
        la = lb;
        da = db;
      }
      const DetSample cur = sample(grid[i]);
      dphi += advance(la, da, grid[i], cur, 0);
      t.lambda.push_back(grid[i]);
      t.s.push_back(t.s.back() + dphi);
      t.err.push_back(cur.err);
      t.N.push_back(cur.m);
      prev = cur;
    }
  }

  attach_models(t);
  return t;
}

void attach_models(PhaseTable& t) {
  // Tail fitted on the top half of the table, so that the heat coefficients
  // downstream are recovered from the data, not from the curve.
  if (t.lambda.size() >= 12) t.weyl = fit_weyl_tail(t, 0.5, 1);
  if (t.lambda_min() <= 0.2 && t.lambda_max() >= 0.5) {
    const PhaseTable& ref = t;
    t.small = fit_small_law([&ref](double l) { return ref.interpolate(l); }, 0.2, 0.5);
  }
}

PhaseTable scattering_phase_nystrom_cached(const ObstacleCurve& curve, const std::vector<double>& grid,
                                           const NystromOptions& opt) {
  std::string key = "nystrom-phase " + curve.canonical() + " grid";
  for (double l : grid) key += ' ' + fmt17(l);
  key += " opt " + std::to_string(opt.min_points) + ' ' + std::to_string(opt.points_per_wave) + ' ' +
         fmt17(opt.contour_factor) + ' ' + fmt17(opt.max_phase_step);
  if (auto hit = cache_read(key)) {
    try {
      PhaseTable t = phase_table_from_text(*hit);
      if (t.lambda == grid) {
        attach_models(t);
        return t;
      }
    } catch (const std::invalid_argument&) {
    }
  }
  PhaseTable t = scattering_phase_nystrom(curve, grid, opt);
  cache_write(key, phase_table_text(t));
  return t;
}

}  // namespace isodet
