#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "isodet/geometry.hpp"
#include "isodet/phase_table.hpp"

namespace isodet {

struct NystromOptions {
  int min_points = 64;             // M = max(min_points, points_per_wave * ceil(l L / 2pi))
  int points_per_wave = 8;
  double contour_factor = 2.0;     // far field from the circle |z| = factor * circumradius
  double min_rcond = 1e-12;
  int max_bisect_depth = 10;
  double max_phase_step = 0.7853981633974483;  // per grid step, radians
};

// Scattered far field in the convention S = Id + sqrt(l/2pi) A with
// s = -i log det S > 0 at small l; A(theta, omega) = e^{i pi/4} a.
struct FarFieldMatrix {
  double lambda = 0.0;
  int quadrature_points = 0;        // boundary nodes M
  std::vector<double> angles;       // shared grid for theta (rows) and omega (columns)
  Eigen::MatrixXcd A;
  Eigen::MatrixXcd S;               // discretised Id + sqrt(l/2pi) A (2pi/n weights)
  double unitarity_defect = 0.0;    // max |(S* S - Id)_ij|
  double rcond = 0.0;               // of the boundary system
};

struct DirectSolution {
  double lambda = 0.0;
  double incidence = 0.0;           // direction omega of the incoming wave e^{-i l z.omega}
  std::vector<double> nodes;        // t_j
  Eigen::VectorXcd density;
  std::vector<double> angles;       // theta grid for the far-field row
  Eigen::VectorXcd far_field;       // A(theta_i, omega)
  double rcond = 0.0;
};

// Physical far-field pattern u_inf(xhat, d) of the Dirichlet problem with
// incident e^{i k x.d}, from the combined-field density via the contour
// integral on |z| = R. Rows: out_angles, columns: in_angles.
Eigen::MatrixXcd far_field_physical(const ObstacleCurve& curve, double k, const std::vector<double>& out_angles,
                                    const std::vector<double>& in_angles, const NystromOptions& opt,
                                    double contour_radius = 0.0, double* rcond = nullptr,
                                    Eigen::MatrixXcd* densities = nullptr);

DirectSolution solve_direct(const ObstacleCurve& curve, double lambda, double omega, int n_angles = 64,
                            const NystromOptions& opt = {}, double contour_radius = 0.0);

int nystrom_points(const ObstacleCurve& curve, double lambda, const NystromOptions& opt = {});
int far_field_modes(const ObstacleCurve& curve, double lambda);

FarFieldMatrix far_field_matrix(const ObstacleCurve& curve, double lambda, const NystromOptions& opt = {});

// Total scattering phase along an ascending grid with branch tracking; the
// table carries a Weyl tail (top half of the grid) and the small-lambda law
// fitted on [0.2, 0.5] when the grid covers it.
PhaseTable scattering_phase_nystrom(const ObstacleCurve& curve, const std::vector<double>& grid,
                                    const NystromOptions& opt = {});
// Same, stored in the on-disk cache keyed by the curve, the grid and the options.
PhaseTable scattering_phase_nystrom_cached(const ObstacleCurve& curve, const std::vector<double>& grid,
                                           const NystromOptions& opt = {});
// Weyl tail and small-lambda law fitted from the samples.
void attach_models(PhaseTable& t);

}  // namespace isodet
