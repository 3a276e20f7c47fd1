#pragma once

#include <string>
#include <vector>

namespace isodet {

// Neumann jump operator on the circle of radius r: eigenvalue on the mode
// e^{i n theta} is the jump of normal derivatives of the bounded
// (Delta + mu)-harmonic extensions of it, interior minus exterior.
struct JumpSpectrum {
  double radius = 1.0;
  double mu = 0.0;
  std::vector<double> lambda;  // n = 0..N
  std::vector<int> mult;       // 1 for n = 0, else 2
};

// 1 / (r I_n(x) K_n(x)), x = sqrt(mu) r; for mu = 0 the limit 2n/r.
double jump_eigenvalue(double r, double mu, int n);
JumpSpectrum r_spectrum_circle(double r, double mu, int N);

struct JumpDet {
  double value = 0.0;
  double err = 0.0;
  double tail = 0.0;        // estimated size of the neglected O(n^-4) remainder
  bool flagged = false;     // remainders not monotone
  std::string method;       // "closed-form" or "ladder-sum" or "mode-sum"
};

// log det R(mu) for mu > 0, log det' R for mu = 0 (closed form log(pi r)).
JumpDet log_det_r_circle(double r, double mu, int N = 10000);
// mu = 0 only: the zeta-regularised ladder summed numerically with
// Euler-Maclaurin end corrections.
JumpDet log_det_r_ladder(double r, int N = 1000);

// d/dmu log lambda_n(mu), analytic.
double dlog_jump_eigenvalue(double r, double mu, int n);

struct ModeCheck {
  double r_rinv = 0.0;         // |R R^{-1} - 1|
  double factor_r = 0.0;       // |T_tr P_dir - lambda_n| / lambda_n
  double factor_rinv = 0.0;    // |T_dir P_tr - 1/lambda_n| * lambda_n
  double projector = 0.0;      // max over rho of |P_dir T_dir P_tr - P_tr|
  double deriv_fd = 0.0;       // |finite difference - analytic| for d/dmu log lambda_n
  double trace_route = 0.0;    // |analytic + mode resolvent trace|
  double max_residual() const;
};

ModeCheck mode_identities_check(double r, double mu, int n);

// sum_{n <= nmax} mult_n d/dmu log lambda_n plus the r^2 psi'(nmax + 1) tail.
struct VariationalSum {
  double partial = 0.0;
  double tail = 0.0;
  double total() const { return partial + tail; }
};
VariationalSum jump_variational_sum(double r, double mu, int nmax = 200);

}  // namespace isodet
