#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "isodet/quadrature.hpp"

namespace isodet {

// 1/log(1/lambda) on (0,1).
double ilg(double lambda);

struct HRResult {
  double value = 0.0;
  std::vector<double> eps;     // the epsilon sequence 2^-k that was used
  std::vector<double> partial; // F(eps) = int_eps^inf h dx/x - h(0) log(1/eps)
  double residual = 0.0;       // spread of the last two extrapolants
  bool converged = false;
};

// Hadamard-regularised int_0^inf h(x) dx/x: the constant term of
// int_eps^inf h dx/x - h(0) log(1/eps) as eps -> 0. `support_end` may be
// finite when h vanishes beyond it.
HRResult hr_integral(const RealFn& h, double support_end = std::numeric_limits<double>::infinity());

using Density2 = std::function<double(double, double)>;

// Fiber integral of v(x1,x2) dx1/x1 dx2/x2 over x1 x2 = x, support in [0,S]^2.
double fiber_integral(const Density2& v, double x, double support = 1.0);

struct PushforwardResult {
  double q0 = 0.0;      // v(0,0)
  double p0 = 0.0;      // HR int v(x,0) dx/x + HR int v(0,x) dx/x
  double fit_q0 = 0.0;  // from fitting the fiber integral on [1e-6, 1e-2]
  double fit_p0 = 0.0;
  double residual = 0.0;  // max(|fit_p0 - p0|, |fit_q0 - q0|)
  bool flagged = false;   // residual > 1e-5
};

PushforwardResult pushforward_coeffs(const Density2& v, double support = 1.0);

}  // namespace isodet
