#pragma once

#include <string>
#include <vector>

#include "isodet/geometry.hpp"
#include "isodet/phase_table.hpp"
#include "isodet/quadrature.hpp"

namespace isodet {

enum class HeatKind { Interior, ExteriorRegularized };
const char* to_string(HeatKind k);

struct HeatSamples {
  HeatKind kind = HeatKind::Interior;
  std::vector<double> t, value, err;
};

// rtr e^{-t Delta_ext} = -(t/pi) int_0^inf s(l) e^{-l^2 t} l dl. The Weyl
// polynomial of the table is integrated in closed form; the rest by
// quadrature up to the last reliable node and through the tail model beyond.
QuadResult rtr_exterior(const PhaseTable& phase, double t);
// Same with the l^{-1} tail term also removed: rtr minus its four leading
// ladder terms a_{-2}/t + a_{-1}/sqrt t + a_0 + a_1 sqrt t. O(t log t).
QuadResult rtr_exterior_remainder(const PhaseTable& phase, double t);

// Dirichlet eigenvalues of the disc of radius r: l^2 = j_{n,k}^2 / r^2 up to
// lambda_max, with multiplicity 1 (n = 0) or 2.
struct DiscSpectrum {
  double radius = 1.0;
  double lambda_max = 0.0;
  std::vector<double> lambda_sq;
  std::vector<int> mult;
  std::size_t count() const;  // with multiplicity
};

DiscSpectrum disc_dirichlet_spectrum(double r, double lambda_max);
// Cached on disk when a cache directory is configured (see io.hpp).
DiscSpectrum disc_dirichlet_spectrum_cached(double r, double lambda_max);

// Largest lambda needed so that the discarded part of the trace at t is
// below tol (integral comparison with the Weyl count).
double interior_cutoff(double r, double t, double tol = 1e-12);

QuadResult tr_interior(const DiscSpectrum& spec, double t);
QuadResult tr_interior(const ObstacleCurve& curve, double t);

HeatSamples sample_interior(const DiscSpectrum& spec, const std::vector<double>& ts);
HeatSamples sample_exterior(const PhaseTable& phase, const std::vector<double>& ts);

struct HeatFit {
  std::vector<int> j;            // ladder index: coefficient of t^{j/2}
  std::vector<double> a, sigma;  // values and standard errors
  double residual = 0.0;         // max relative misfit
  double cond = 0.0;
  bool ill_conditioned = false;
  double coeff(int jj) const;
  double error(int jj) const;
};

// Least squares of sum a_j t^{j/2}, j = -2 .. n_terms - 3, relative weights.
HeatFit extract_coeffs(const HeatSamples& samples, int n_terms);

}  // namespace isodet
