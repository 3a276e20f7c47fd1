#pragma once

#include <complex>
#include <vector>

#include "isodet/phase_table.hpp"

namespace isodet {

// Continuous phase shift delta_n(x), x = lambda r, with
// e^{2 i delta_n} = -H2_n(x)/H1_n(x) and delta_n -> 0 as x -> 0.
double phase_shift_disc(int n, double x);
// delta_n for n = 0..nmax at one argument.
std::vector<double> phase_shifts_disc(int nmax, double x);

int disc_truncation_order(double x);  // ceil(x + 4 x^{1/3} + 20)

struct PhaseSample {
  double s = 0.0;
  double err = 0.0;
  int N = 0;
  bool flagged = false;  // truncation error above 1e-9 |s|
};

// s(lambda) = -(2 delta_0 + 4 sum_{n>=1} delta_n) at x = lambda r.
PhaseSample scattering_phase_disc(double r, double lambda);

// Samples on `grid` plus the exact evaluator and the fitted Weyl tail.
PhaseTable disc_phase_table(double r, const std::vector<double>& grid);
// Evaluator-only table (no samples); weyl tail fitted on [60/r, 240/r].
PhaseTable disc_phase_model(double r);

// Fourier coefficients a_n(lambda) of the unit-disc amplitude kernel,
// n = 0..nmax (a_{-n} = a_n), in the convention S = Id + sqrt(l/2pi) e^{i pi/4} a
// with s = -i log det S > 0 at small lambda.
std::vector<std::complex<double>> amplitude_disc_coefficients(double lambda);
std::complex<double> amplitude_disc(double lambda, double theta);

}  // namespace isodet
