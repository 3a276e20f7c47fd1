#pragma once

#include <complex>
#include <string>
#include <vector>

namespace isodet {

enum class BesselKind { J, Y, H1 };
enum class ModBesselKind { I, K };

struct BesselEval {
  int order = 0;
  double argument = 0.0;
  std::complex<double> value;
  double rel_err_estimate = 0.0;
  bool degraded = false;  // outside the supported box, or over/underflowed
};

// A real number stored as mantissa * exp(log_scale), for values far outside
// the double range (I_n, K_n at large argument, J_n/Y_n at high order).
struct Scaled {
  double mantissa = 0.0;
  double log_scale = 0.0;

  double value() const;
  double log_abs() const;
};

// Supported box for the relative-accuracy guarantee.
inline constexpr double kBoxXMin = 1e-8;
inline constexpr double kBoxXMax = 1e4;
inline constexpr int kBoxOrderMax = 2000;

BesselEval cyl_bessel(BesselKind kind, int n, double x);
double bessel_j(int n, double x);
double bessel_y(int n, double x);
std::complex<double> hankel1(int n, double x);

double bessel_i(int n, double x);
double bessel_k(int n, double x);
// Always finite; for x > 700 this is the only way to get I_n and K_n.
Scaled mod_bessel(ModBesselKind kind, int n, double x);

// I_{n+1}(x)/I_n(x) by continued fraction, K_{n+1}(x)/K_n(x) by forward
// recurrence. Neither overflows.
double bessel_i_ratio(int n, double x);
double bessel_k_ratio(int n, double x);
// I_n(x) K_n(x) from the Wronskian: 1 / (x (I_{n+1}/I_n + K_{n+1}/K_n)).
double bessel_ik_product(int n, double x);
// Ratio tables for n = 0..nmax: out[n] = I_{n+1}/I_n resp. K_{n+1}/K_n.
std::vector<double> bessel_i_ratios(int nmax, double x);
std::vector<double> bessel_k_ratios(int nmax, double x);

double bessel_zero(int n, int k);
// All positive zeros of J_n up to jmax, ascending.
std::vector<double> bessel_zeros(int n, double jmax);

// J_n(x), Y_n(x) for n = 0..nmax in scaled form: Miller backward recurrence
// for J, forward recurrence for Y.
struct BesselSequence {
  std::vector<Scaled> j;
  std::vector<Scaled> y;
};
BesselSequence bessel_jy_sequence(int nmax, double x);

struct SelftestRow {
  std::string name;
  double max_residual = 0.0;
  double bound = 0.0;
  long checked = 0;
  bool ok() const { return max_residual <= bound; }
};

std::vector<SelftestRow> specfun_selftest();

}  // namespace isodet
