#pragma once

#include <functional>
#include <vector>

namespace isodet {

// Large-lambda model s(l) ~ c2 l^2 + c1 l + c0 + sum_k neg[k] l^{-(k+1)}.
struct WeylTail {
  double c2 = 0.0, c1 = 0.0, c0 = 0.0;
  std::vector<double> neg;
  double fit_lo = 0.0, fit_hi = 0.0, fit_residual = 0.0;

  double poly(double l) const { return (c2 * l + c1) * l + c0; }
  double rest(double l) const;
  double operator()(double l) const { return poly(l) + rest(l); }
  double c_minus1() const { return neg.empty() ? 0.0 : neg[0]; }
};

// Small-lambda model s(l) ~ 2 atan((pi/2)/(log(1/l) + kappa)) + d2 l^2 + d3 l^2 log l.
// Its ilg expansion is pi ilg - pi kappa ilg^2 + ...
struct SmallLaw {
  double kappa = 0.0, d2 = 0.0, d3 = 0.0;
  double fit_lo = 0.0, fit_hi = 0.0, fit_residual = 0.0;
  double operator()(double l) const;
  double leading(double l) const;  // the atan part only
  double leading_log(double u) const;  // same at l = e^{-u}, usable far below the double range
};

// Branch-continuous samples of s(lambda) plus the models used outside the
// sampled range. Disc tables carry an exact evaluator used instead of
// interpolation.
struct PhaseTable {
  double radius = 0.0;  // disc radius, 0 for general obstacles
  std::vector<double> lambda, s, err;
  std::vector<int> N;
  WeylTail weyl;
  SmallLaw small;
  std::function<double(double)> exact;

  bool has_exact() const { return static_cast<bool>(exact); }
  double lambda_min() const { return lambda.empty() ? 0.0 : lambda.front(); }
  double lambda_max() const { return lambda.empty() ? 0.0 : lambda.back(); }
  double operator()(double l) const;
  double interpolate(double l) const;  // table only, local Lagrange in log l
};

WeylTail fit_weyl_tail(const std::function<double(double)>& s, double lo, double hi, int n_neg = 3, int npts = 64);
// Uses table nodes in [frac * lambda_max, lambda_max].
WeylTail fit_weyl_tail(const PhaseTable& table, double frac = 0.5, int n_neg = 3);
SmallLaw fit_small_law(const std::function<double(double)>& s, double lo = 0.2, double hi = 0.5, int npts = 24);

}  // namespace isodet
