#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isodet/zeta_det.hpp"

namespace isodet {

struct MuRow {
  double mu = 0.0;
  double ext = 0.0, interior = 0.0, jump = 0.0;
  double sum() const { return ext + interior + jump; }
};

std::vector<MuRow> mu_constancy(double r, const std::vector<double>& mus, double chi_a = 0.4);

struct ComponentFD {
  std::string name;
  double d_h = 0.0, d_h2 = 0.0, d_h4 = 0.0;  // central differences at h, h/2, h/4
  double ratio() const;                       // (d_h - d_h2) / (d_h2 - d_h4), ~4 when O(h^2)
};

struct VariationalReport {
  double r = 1.0, mu = 1.0, h = 0.0;
  double residual = 0.0;       // central difference of the three-term sum at h
  double residual_half = 0.0;  // same at h/2
  std::vector<ComponentFD> components;  // exterior, interior, jump
  double pair_derivative = 0.0;  // d/dmu (ext + int), Richardson
  double laplace_trace = 0.0;    // int e^{-mu t} (rtr + tr_int) dt
  double jump_route = 0.0;       // sum of d/dmu log lambda_n with tail
  double trace_residual() const { return pair_derivative - laplace_trace; }
  double jump_residual() const { return laplace_trace + jump_route; }
};

VariationalReport variational_residual(double r, double mu, double h, double chi_a = 0.4);

struct SmallMuBridge {
  double mu = 0.0;
  double ext_shifted = 0.0;   // log det(ext + mu) - log log mu^{-1/2}
  double jump_shifted = 0.0;  // log det R(mu) + log log mu^{-1/2}
  double interior = 0.0;
};
SmallMuBridge small_mu_bridge(double r, double mu, double chi_a = 0.4);

struct SurgeryReport {
  double radius = 1.0;
  double chi_a = 0.4;
  DetValue logdet_ext_mod;     // a2-fit
  DetValue logdet_ext_closed;  // closed form, HR sign selected against the a2-fit
  DetValue logdet_int;
  DetValue logdet_r_mod;
  double slog_coeff = 0.0;
  double hr_beta = 0.0;
  bool hr_definition_sign = true;
  double thm_constant = 0.0;   // gamma + log(L/pi)
  double alt_constant = 0.0;   // -gamma + log(L/(4 pi))
  double sum = 0.0;            // ext + int + R at mu = 0
  double residual_thm = 0.0, residual_alt = 0.0;
  std::string winner;          // "thm", "alt" or "none"
  bool low_confidence = false;
  std::vector<MuRow> mu_table;
  double mu_spread = 0.0;
  std::optional<VariationalReport> variational;
  std::optional<SmallMuBridge> bridge;
};

// Surgery identity at mu = 0 for the disc of radius r, plus the mu table.
SurgeryReport surgery_residual(double r, double chi_a = 0.4);

std::string surgery_report_json(const SurgeryReport& rep);
std::string det_report_json(const DetValue& d);

}  // namespace isodet
