#pragma once

#include <functional>
#include <vector>

namespace isodet {

using RealFn = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double err = 0.0;
};

// Adaptive 31-point Gauss-Kronrod by bisection; b may be +infinity. A panel
// is accepted when its error estimate is below tol * int|f| or abs_tol.
QuadResult integrate(const RealFn& f, double a, double b, double tol = 1e-12, double abs_tol = 0.0);

// Sum over consecutive breakpoints pts[i], pts[i+1].
QuadResult integrate_panels(const RealFn& f, const std::vector<double>& pts, double tol = 1e-12,
                            double abs_tol = 0.0);

// int_a^b f(x) dx with x = e^u, one panel per decade (0 < a < b < inf).
QuadResult integrate_log(const RealFn& f, double a, double b, double tol = 1e-12, double abs_tol = 0.0);

std::vector<double> log_space(double a, double b, int n);
std::vector<double> lin_space(double a, double b, int n);

}  // namespace isodet
