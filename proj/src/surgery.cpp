#include "isodet/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "isodet/disc_scattering.hpp"
#include "isodet/jump_operator.hpp"

namespace isodet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGamma = 0.5772156649;
constexpr double kSmall = 5e-3;
constexpr double kLowConfidence = 2e-3;

DetValue from_jump(const JumpDet& j, double mu) {
  DetValue d;
  d.object = "jump";
  d.method = j.method;
  d.mu = mu;
  d.value = j.value;
  d.err = j.err;
  return d;
}

double loglog(double mu) { return std::log(std::log(std::pow(mu, -0.5))); }

}  // namespace

double ComponentFD::ratio() const { return (d_h - d_h2) / (d_h2 - d_h4); }

SurgeryReport surgery_residual(double r, double chi_a) {
  if (!(r >= 0.25 && r <= 4.0)) throw std::domain_error("surgery_residual: radius must lie in [0.25, 4]");
  const CutoffSpec chi = make_cutoff(chi_a);
  const PhaseTable phase = disc_phase_model(r);

  auto ext_job = std::async(std::launch::async, [&] { return log_det_ext_mod(phase, chi); });
  auto int_job = std::async(std::launch::async, [&] { return log_det_int(r, 0.0); });
  auto r_job = std::async(std::launch::async, [&] { return log_det_r_ladder(r); });

  SurgeryReport rep;
  rep.radius = r;
  rep.chi_a = chi_a;
  const ExteriorModDet ext = ext_job.get();
  rep.logdet_ext_mod = ext.a2_fit;
  rep.logdet_ext_closed = ext.closed_form;
  rep.slog_coeff = ext.expansion.slog_coeff;
  rep.hr_beta = ext.parts.hr_beta;
  rep.hr_definition_sign = ext.definition_sign_selected;
  rep.logdet_int = int_job.get();
  rep.logdet_r_mod = from_jump(r_job.get(), 0.0);

  const double L = 2.0 * kPi * r;
  rep.thm_constant = kGamma + std::log(L / kPi);
  rep.alt_constant = -kGamma + std::log(L / (4.0 * kPi));
  rep.sum = rep.logdet_ext_mod.value + rep.logdet_int.value + rep.logdet_r_mod.value;
  rep.residual_thm = rep.sum - rep.thm_constant;
  rep.residual_alt = rep.sum - rep.alt_constant;
  const double at = std::fabs(rep.residual_thm), aa = std::fabs(rep.residual_alt);
  if (std::min(at, aa) > kSmall)
    rep.winner = "none";
  else
    rep.winner = at <= aa ? "thm" : "alt";
  rep.low_confidence = std::max({rep.logdet_ext_mod.err, rep.logdet_int.err, rep.logdet_r_mod.err}) > kLowConfidence;

  rep.mu_table = mu_constancy(r, {0.5, 1.0, 2.0, 5.0, 10.0}, chi_a);
  double lo = rep.mu_table.front().sum(), hi = lo;
  for (const auto& row : rep.mu_table) {
    lo = std::min(lo, row.sum());
    hi = std::max(hi, row.sum());
  }
  rep.mu_spread = hi - lo;
  return rep;
}

std::vector<MuRow> mu_constancy(double r, const std::vector<double>& mus, double chi_a) {
  const CutoffSpec chi = make_cutoff(chi_a);
  const PhaseTable phase = disc_phase_model(r);
  std::vector<MuRow> rows;
  for (double mu : mus) {
    if (!(mu > 0.0)) throw std::domain_error("mu_constancy: mu must be positive");
    auto e = std::async(std::launch::async, [&] { return log_det_ext_mu(phase, chi, mu).value; });
    auto i = std::async(std::launch::async, [&] { return log_det_int(r, mu).value; });
    MuRow row;
    row.mu = mu;
    row.jump = log_det_r_circle(r, mu).value;
    row.ext = e.get();
    row.interior = i.get();
    rows.push_back(row);
  }
  return rows;
}

VariationalReport variational_residual(double r, double mu, double h, double chi_a) {
  if (!(h > 0.0) || !(mu > h)) throw std::domain_error("variational_residual: need mu > h > 0");
  const CutoffSpec chi = make_cutoff(chi_a);
  const PhaseTable phase = disc_phase_model(r);

  // Each component on mu +- h, mu +- h/2, mu +- h/4.
  const std::vector<double> steps = {h, h / 2.0, h / 4.0};
  auto diffs = [&](auto&& f) {
    std::vector<double> d;
    for (double k : steps) d.push_back((f(mu + k) - f(mu - k)) / (2.0 * k));
    return d;
  };
  auto e_job = std::async(std::launch::async, [&] {
    return diffs([&](double m) { return log_det_ext_mu(phase, chi, m).value; });
  });
  auto i_job = std::async(std::launch::async, [&] { return diffs([&](double m) { return log_det_int(r, m).value; }); });
  const auto dj = diffs([&](double m) { return log_det_r_circle(r, m).value; });
  const auto de = e_job.get();
  const auto di = i_job.get();

  VariationalReport v;
  v.r = r;
  v.mu = mu;
  v.h = h;
  v.residual = de[0] + di[0] + dj[0];
  v.residual_half = de[1] + di[1] + dj[1];
  const char* names[] = {"exterior", "interior", "jump"};
  const std::vector<double>* ds[] = {&de, &di, &dj};
  for (int k = 0; k < 3; ++k) {
    const auto& d = *ds[k];
    v.components.push_back({names[k], d[0], d[1], d[2]});
  }
  // Richardson on the two finest steps.
  auto rich = [](const std::vector<double>& d) { return d[2] + (d[2] - d[1]) / 3.0; };
  v.pair_derivative = rich(de) + rich(di);
  v.laplace_trace = laplace_trace_pair(phase, r, mu);
  v.jump_route = jump_variational_sum(r, mu).total();
  return v;
}

SmallMuBridge small_mu_bridge(double r, double mu, double chi_a) {
  const CutoffSpec chi = make_cutoff(chi_a);
  const PhaseTable phase = disc_phase_model(r);
  SmallMuBridge b;
  b.mu = mu;
  b.ext_shifted = log_det_ext_mu(phase, chi, mu).value - loglog(mu);
  b.jump_shifted = log_det_r_circle(r, mu).value + loglog(mu);
  b.interior = log_det_int(r, mu).value;
  return b;
}

namespace {

nlohmann::ordered_json det_json(const DetValue& d) {
  nlohmann::ordered_json j;
  j["object"] = d.object;
  j["mu"] = d.mu;
  j["method"] = d.method;
  j["value"] = d.value;
  j["err"] = d.err;
  j["chi_a"] = d.chi_a;
  j["diagnostics"] = {{"slog_coeff", d.slog_coeff}, {"fit_residual", d.fit_residual}};
  return j;
}

}  // namespace

std::string det_report_json(const DetValue& d) { return det_json(d).dump(2) + "\n"; }

std::string surgery_report_json(const SurgeryReport& rep) {
  nlohmann::ordered_json j;
  j["radius"] = rep.radius;
  j["chi_a"] = rep.chi_a;
  j["logdet_ext_mod"] = det_json(rep.logdet_ext_mod);
  j["logdet_ext_closed"] = det_json(rep.logdet_ext_closed);
  j["logdet_int"] = det_json(rep.logdet_int);
  j["logdet_r_mod"] = det_json(rep.logdet_r_mod);
  j["sum"] = rep.sum;
  j["thm_constant"] = rep.thm_constant;
  j["alt_constant"] = rep.alt_constant;
  j["residual_thm"] = rep.residual_thm;
  j["residual_alt"] = rep.residual_alt;
  j["winner"] = rep.winner;
  j["hr_beta"] = rep.hr_beta;
  j["hr_sign"] = rep.hr_definition_sign ? "definition" : "flipped";
  j["low_confidence"] = rep.low_confidence;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : rep.mu_table)
    rows.push_back({{"mu", r.mu}, {"sum", r.sum()}, {"ext", r.ext}, {"int", r.interior}, {"jump", r.jump}});
  j["mu_table"] = rows;
  j["mu_spread"] = rep.mu_spread;
  if (rep.variational) {
    const auto& v = *rep.variational;
    nlohmann::ordered_json vj;
    vj["mu"] = v.mu;
    vj["h"] = v.h;
    vj["residual"] = v.residual;
    vj["residual_half_step"] = v.residual_half;
    vj["pair_derivative"] = v.pair_derivative;
    vj["laplace_trace"] = v.laplace_trace;
    vj["jump_route"] = v.jump_route;
    vj["trace_residual"] = v.trace_residual();
    vj["jump_residual"] = v.jump_residual();
    auto comps = nlohmann::ordered_json::array();
    for (const auto& c : v.components)
      comps.push_back({{"name", c.name}, {"d_h", c.d_h}, {"d_h2", c.d_h2}, {"d_h4", c.d_h4}, {"ratio", c.ratio()}});
    vj["components"] = comps;
    j["variational"] = vj;
  }
  if (rep.bridge) {
    const auto& b = *rep.bridge;
    j["small_mu"] = {{"mu", b.mu},
                     {"ext_minus_loglog", b.ext_shifted},
                     {"jump_plus_loglog", b.jump_shifted},
                     {"int", b.interior},
                     {"ext_constant", b.ext_shifted - rep.logdet_ext_mod.value}};
  }
  return j.dump(2) + "\n";
}

}  // namespace isodet
