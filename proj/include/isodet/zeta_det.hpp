#pragma once

#include <string>
#include <vector>

#include "isodet/hr_asym.hpp"
#include "isodet/phase_table.hpp"

namespace isodet {

// chi = 1 on [0, a], 0 on [1, inf), smooth monotone bridge in between.
struct CutoffSpec {
  double a = 0.4;

  double operator()(double l) const;
  double complement(double l) const { return 1.0 - (*this)(l); }  // exact where chi is 0 or 1
  // Same profile stretched by `factor`: chi_f(l) = chi(l / factor).
  double dilated(double l, double factor) const { return (*this)(l / factor); }
};

CutoffSpec make_cutoff(double a);  // validates 0 < a < 1

struct ZetaExpansion {
  double a0 = 0.0;
  double slog_coeff = 0.0;  // q in a0 + q s log(-s) + a2 s + ...
  double a2 = 0.0;
  double fit_residual = 0.0;
  std::vector<double> s_grid, zeta;
};

struct DetValue {
  std::string object;  // "exterior", "interior", "jump"
  std::string method;  // "a2-fit", "closed-form", "mellin", "spectral-sum", "lambda-integral"
  double mu = 0.0;
  double value = 0.0;
  double err = 0.0;
  double chi_a = 0.0;
  double slog_coeff = 0.0;
  double fit_residual = 0.0;
};

// Exterior zeta pieces at mu = 0, split by chi, for real s < 0.
double zeta1_ext(const PhaseTable& phase, const CutoffSpec& chi, double s);
double zeta2_ext(const PhaseTable& phase, const CutoffSpec& chi, double s);
double zeta_ext(const PhaseTable& phase, const CutoffSpec& chi, double s);

// zeta_2'(0) of the (1 - chi) part at weight e^{-mu t}, mu >= 0.
double zeta2_prime0(const PhaseTable& phase, const CutoffSpec& chi, double mu = 0.0);
// e_2(t) = -(t/pi) int (1 - chi) s l e^{-l^2 t} dl.
double e2_heat(const PhaseTable& phase, const CutoffSpec& chi, double t);

ZetaExpansion fit_zeta_expansion(const PhaseTable& phase, const CutoffSpec& chi, double s_lo = -5e-4,
                                 double s_hi = -5e-7, int npts = 24);

struct ClosedFormParts {
  double hr_beta = 0.0;     // HR int e^{-2b} db/b by definition
  double hr_chi = 0.0;      // HR int chi(e^{-1/x}) dx/x
  double zeta2p = 0.0;      // zeta_2'(0)
  double s_tilde = 0.0;     // (1/pi) int chi (s - pi ilg) dl/l
  double value = 0.0;       // hr_beta + hr_chi - zeta2p + s_tilde
  double value_flipped = 0.0;  // with -hr_beta
};
ClosedFormParts closed_form_parts(const PhaseTable& phase, const CutoffSpec& chi);

struct ExteriorModDet {
  DetValue a2_fit;
  DetValue closed_form;          // sign of the HR term chosen to agree with a2_fit
  double closed_form_definition = 0.0;  // HR term as defined
  double closed_form_flipped = 0.0;     // HR term with the opposite sign
  bool definition_sign_selected = true;
  ZetaExpansion expansion;
  ClosedFormParts parts;
};
ExteriorModDet log_det_ext_mod(const PhaseTable& phase, const CutoffSpec& chi);

// log det(Delta_ext + mu), mu > 0: (1/pi) FP int s(l) l / (l^2 + mu)^{1+s} dl.
DetValue log_det_ext_mu(const PhaseTable& phase, const CutoffSpec& chi, double mu);
// Same through the Mellin transform of rtr e^{-mu t}.
DetValue log_det_ext_mellin(const PhaseTable& phase, double mu, double t_min = 1e-7);

// Large-mu subtraction: -a_{-2} mu (log mu - 1) + 2 sqrt(pi) a_{-1} sqrt(mu) + a_0 log mu.
double ext_large_mu_model(const PhaseTable& phase, double mu);
struct LargeMuFit {
  std::vector<double> mu, residual;
  double p0 = 0.0, p0_err = 0.0;
};
LargeMuFit fit_large_mu(const PhaseTable& phase, const CutoffSpec& chi, const std::vector<double>& mus);

// Dirichlet disc of radius r, log det(Delta_int + mu) by the Mellin transform
// of the eigenvalue heat trace.
DetValue log_det_int(double r, double mu);
// The known unit-disc closed form -(5/12 + 2 zeta'(-1) + log(pi)/2 + log(2)/6),
// shifted by -2 zeta(0) log r = -(1/3) log r.
double log_det_int_disc_closed(double r);

// int_0^inf e^{-mu t} (rtr_ext(t) + tr_int(t)) dt for the disc.
double laplace_trace_pair(const PhaseTable& phase, double r, double mu);

}  // namespace isodet
