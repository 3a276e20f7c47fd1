// isodet command-line front end.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "isodet/disc_scattering.hpp"
#include "isodet/geometry.hpp"
#include "isodet/heat_trace.hpp"
#include "isodet/hr_asym.hpp"
#include "isodet/io.hpp"
#include "isodet/jump_operator.hpp"
#include "isodet/obstacle_scattering.hpp"
#include "isodet/specfun.hpp"
#include "isodet/surgery.hpp"
#include "isodet/zeta_det.hpp"

using namespace isodet;
using ojson = nlohmann::ordered_json;

namespace {

constexpr double kGamma = 0.5772156649015329;
constexpr double kLowConfidence = 2e-3;

// Thrown for bad input; exit status 1.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Computation finished but failed its own accuracy checks; exit status 2.
struct ConfidenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double disc = 0.0;
  std::string curve_file;
  double chi_a = 0.4;
  std::string out;
  std::string format;
  std::string cache;

  double lmin = 1e-3, lmax = 10.0;
  int n = 200;
  std::string spacing = "log";

  double tmin = 1e-3, tmax = 1.0;
  std::string side = "interior";
  int fit_terms = 0;
  double table_lmax = 30.0;
  int table_n = 240;

  std::string object = "exterior";
  std::string method;
  double mu = 0.0;

  int nmax = 100;

  std::string kernel = "exp2b";
  double factor = 2.0;

  bool no_variational = false;
};

ObstacleCurve obstacle(const RunConfig& c) {
  const bool has_disc = c.disc != 0.0, has_curve = !c.curve_file.empty();
  if (has_disc == has_curve) throw ValidationError("exactly one of --disc and --curve is required");
  if (has_disc) {
    if (!(c.disc > 0.0)) throw ValidationError("--disc radius must be positive");
    return ObstacleCurve::disc(c.disc);
  }
  try {
    return read_curve_file(c.curve_file);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("curve file: ") + e.what());
  }
}

CutoffSpec cutoff(const RunConfig& c) {
  if (!(c.chi_a > 0.0 && c.chi_a < 1.0)) throw ValidationError("--chi-a must lie in (0, 1)");
  return make_cutoff(c.chi_a);
}

void check_format(const RunConfig& c, const char* wanted) {
  if (!c.format.empty() && c.format != wanted)
    throw ValidationError("format " + c.format + " is not available for this subcommand (use " + wanted + ")");
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  write_file_atomic(c.out, text);
}

std::vector<double> grid(double lo, double hi, int n, const std::string& spacing, const char* what) {
  if (!(lo > 0.0) || !(hi > lo)) throw ValidationError(std::string(what) + " grid must satisfy 0 < min < max");
  if (n < 2) throw ValidationError(std::string(what) + " grid needs at least 2 points");
  if (spacing == "log") return log_space(lo, hi, n);
  if (spacing == "lin") return lin_space(lo, hi, n);
  throw ValidationError("--spacing must be log or lin");
}

PhaseTable curve_table(const ObstacleCurve& curve, const RunConfig& c) {
  if (!(c.table_lmax > 0.5) || c.table_n < 24) throw ValidationError("--table-lmax must exceed 0.5 and --table-n be >= 24");
  return scattering_phase_nystrom_cached(curve, lin_space(0.2, c.table_lmax, c.table_n));
}

PhaseTable exterior_phase(const ObstacleCurve& curve, const RunConfig& c) {
  return curve.is_disc() ? disc_phase_model(curve.radius()) : curve_table(curve, c);
}

int run_phase(const RunConfig& c) {
  check_format(c, "csv");
  const auto curve = obstacle(c);
  const auto g = grid(c.lmin, c.lmax, c.n, c.spacing, "lambda");
  const PhaseTable t = curve.is_disc() ? disc_phase_table(curve.radius(), g) : scattering_phase_nystrom_cached(curve, g);
  emit(c, phase_csv(t));
  return 0;
}

int run_heat(const RunConfig& c) {
  check_format(c, "csv");
  const auto curve = obstacle(c);
  const auto ts = grid(c.tmin, c.tmax, c.n, c.spacing, "t");
  HeatSamples h;
  if (c.side == "interior") {
    if (!curve.is_disc()) throw ValidationError("interior heat trace is available for discs only");
    h = sample_interior(disc_dirichlet_spectrum_cached(curve.radius(), interior_cutoff(curve.radius(), c.tmin)), ts);
  } else if (c.side == "exterior") {
    h = sample_exterior(exterior_phase(curve, c), ts);
  } else {
    throw ValidationError("--side must be interior or exterior");
  }
  emit(c, heat_csv(h));
  if (c.fit_terms > 0) {
    HeatFit f;
    try {
      f = extract_coeffs(h, c.fit_terms);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(e.what());
    }
    for (std::size_t i = 0; i < f.j.size(); ++i)
      std::fprintf(stderr, "a_%d = %.12g +- %.3g\n", f.j[i], f.a[i], f.sigma[i]);
    if (f.ill_conditioned) throw ConfidenceError("heat fit is ill-conditioned");
  }
  return 0;
}

int run_det(const RunConfig& c) {
  check_format(c, "json");
  const auto curve = obstacle(c);
  if (!(c.mu >= 0.0)) throw ValidationError("--mu must be nonnegative");
  DetValue d;
  if (c.object == "exterior") {
    const auto chi = cutoff(c);
    const PhaseTable p = exterior_phase(curve, c);
    const std::string m = c.method.empty() ? (c.mu == 0.0 ? "a2-fit" : "lambda-integral") : c.method;
    if (c.mu == 0.0) {
      if (m != "a2-fit" && m != "closed-form") throw ValidationError("exterior at mu = 0: method must be a2-fit or closed-form");
      const auto ext = log_det_ext_mod(p, chi);
      d = m == "a2-fit" ? ext.a2_fit : ext.closed_form;
    } else if (m == "lambda-integral") {
      d = log_det_ext_mu(p, chi, c.mu);
    } else if (m == "mellin") {
      d = log_det_ext_mellin(p, c.mu);
      d.chi_a = c.chi_a;
    } else {
      throw ValidationError("exterior at mu > 0: method must be lambda-integral or mellin");
    }
  } else if (c.object == "interior") {
    if (!curve.is_disc()) throw ValidationError("interior determinant is available for discs only");
    if (!c.method.empty() && c.method != "mellin") throw ValidationError("interior: method must be mellin");
    d = log_det_int(curve.radius(), c.mu);
  } else if (c.object == "jump") {
    if (!curve.is_disc()) throw ValidationError("jump determinant is available for discs only");
    const double r = curve.radius();
    JumpDet j;
    if (c.method.empty() || c.method == "mode-sum" || c.method == "closed-form")
      j = log_det_r_circle(r, c.mu);
    else if (c.method == "ladder-sum" && c.mu == 0.0)
      j = log_det_r_ladder(r);
    else
      throw ValidationError("jump: method must be mode-sum, closed-form, or ladder-sum (mu = 0 only)");
    d.object = "jump";
    d.method = j.method;
    d.mu = c.mu;
    d.value = j.value;
    d.err = j.err;
  } else {
    throw ValidationError("--object must be exterior, interior or jump");
  }
  emit(c, det_report_json(d));
  if (d.err > kLowConfidence) throw ConfidenceError("determinant error estimate " + fmt17(d.err) + " above 2e-3");
  return 0;
}

int run_jump(const RunConfig& c) {
  check_format(c, "csv");
  const auto curve = obstacle(c);
  if (!curve.is_disc()) throw ValidationError("jump spectrum is available for discs only");
  if (!(c.mu >= 0.0)) throw ValidationError("--mu must be nonnegative");
  if (c.nmax < 10) throw ValidationError("--nmax must be at least 10");
  emit(c, spectrum_csv(r_spectrum_circle(curve.radius(), c.mu, c.nmax)));
  return 0;
}

int run_hr(const RunConfig& c) {
  check_format(c, "json");
  ojson j;
  j["kernel"] = c.kernel;
  HRResult r;
  if (c.kernel == "exp2b") {
    r = hr_integral([](double b) { return std::exp(-2.0 * b); });
    j["reference"] = -(kGamma + std::log(2.0));
  } else if (c.kernel == "cutoff" || c.kernel == "dilated") {
    const auto chi = cutoff(c);
    if (!(c.factor > 0.0)) throw ValidationError("--factor must be positive");
    const double f = c.kernel == "cutoff" ? 1.0 : c.factor;
    r = hr_integral([&](double x) { return chi.dilated(x, f); }, f);
    j["chi_a"] = c.chi_a;
    j["factor"] = f;
  } else if (c.kernel == "pushforward") {
    const auto chi = cutoff(c);
    const auto p = pushforward_coeffs([&](double a, double b) { return chi(a) * chi(b) * (1.0 + a - 0.5 * b); });
    j["q0"] = p.q0;
    j["p0"] = p.p0;
    j["fit_q0"] = p.fit_q0;
    j["fit_p0"] = p.fit_p0;
    j["residual"] = p.residual;
    emit(c, j.dump(2) + "\n");
    if (p.flagged) throw ConfidenceError("pushforward residual above 1e-5");
    return 0;
  } else {
    throw ValidationError("--kernel must be exp2b, cutoff, dilated or pushforward");
  }
  j["value"] = r.value;
  j["residual"] = r.residual;
  j["converged"] = r.converged;
  emit(c, j.dump(2) + "\n");
  if (!r.converged) throw ConfidenceError("HR extrapolation did not converge");
  return 0;
}

int run_surgery(const RunConfig& c) {
  check_format(c, "json");
  const auto curve = obstacle(c);
  if (!curve.is_disc()) throw ValidationError("surgery is implemented for discs only");
  const double r = curve.radius();
  if (!(r >= 0.25 && r <= 4.0)) throw ValidationError("surgery: disc radius must lie in [0.25, 4]");
  cutoff(c);
  SurgeryReport rep = surgery_residual(r, c.chi_a);
  if (!c.no_variational) {
    rep.variational = variational_residual(r, 1.0, 1e-2, c.chi_a);
    rep.bridge = small_mu_bridge(r, 1e-8, c.chi_a);
  }
  emit(c, surgery_report_json(rep));

  auto& o = c.out.empty() || c.out == "-" ? std::cerr : std::cout;
  char line[160];
  std::snprintf(line, sizeof line, "%-28s %18s %12s\n", "quantity", "value", "err");
  o << line;
  auto row = [&](const char* name, double v, double e) {
    std::snprintf(line, sizeof line, "%-28s %18.10f %12.2e\n", name, v, e);
    o << line;
  };
  row("log det' ext (a2-fit)", rep.logdet_ext_mod.value, rep.logdet_ext_mod.err);
  row("log det' ext (closed form)", rep.logdet_ext_closed.value, rep.logdet_ext_closed.err);
  row("log det int", rep.logdet_int.value, rep.logdet_int.err);
  row("log det' R", rep.logdet_r_mod.value, rep.logdet_r_mod.err);
  row("sum", rep.sum, 0.0);
  row("gamma + log(L/pi)", rep.thm_constant, 0.0);
  row("-gamma + log(L/4pi)", rep.alt_constant, 0.0);
  row("residual (printed)", rep.residual_thm, 0.0);
  row("residual (sign-corrected)", rep.residual_alt, 0.0);
  for (const auto& m : rep.mu_table) {
    std::snprintf(line, sizeof line, "sum at mu = %-16g %18.10f\n", m.mu, m.sum());
    o << line;
  }
  if (rep.variational) row("d/dmu sum at mu = 1", rep.variational->residual, 0.0);
  o << "winner: " << rep.winner << (rep.low_confidence ? " (low confidence)" : "") << "\n";
  if (rep.low_confidence || rep.winner == "none") throw ConfidenceError("surgery identity not confirmed");
  return 0;
}

std::vector<SelftestRow> hr_selftest() {
  std::vector<SelftestRow> rows;
  const auto e = hr_integral([](double b) { return std::exp(-2.0 * b); });
  rows.push_back({"HR int e^{-2b} db/b = -(gamma + log 2)", std::fabs(e.value + kGamma + std::log(2.0)), 1e-8, 1});
  SelftestRow dil{"HR dilation chi(x/f) shifts by log f", 0.0, 1e-8, 0};
  for (double a : {0.3, 0.4, 0.5}) {
    const auto chi = make_cutoff(a);
    const double base = hr_integral([&](double x) { return chi(x); }, 1.0).value;
    for (double f : {0.5, 2.0, 3.0}) {
      const double v = hr_integral([&](double x) { return chi.dilated(x, f); }, f).value;
      dil.max_residual = std::max(dil.max_residual, std::fabs(v - base - std::log(f)));
      ++dil.checked;
    }
  }
  rows.push_back(dil);
  SelftestRow pf{"pushforward p0, q0 cross-check", 0.0, 1e-5, 0};
  for (double a : {0.3, 0.5}) {
    const auto chi = make_cutoff(a);
    const auto p = pushforward_coeffs([&](double x, double y) { return chi(x) * chi(y) * (1.0 + x - 0.5 * y); });
    pf.max_residual = std::max(pf.max_residual, p.residual);
    ++pf.checked;
  }
  rows.push_back(pf);
  return rows;
}

int print_rows(const std::vector<SelftestRow>& rows) {
  bool ok = true;
  for (const auto& r : rows) {
    std::printf("%-4s %-60s max %.3e bound %.1e n=%ld\n", r.ok() ? "ok" : "FAIL", r.name.c_str(), r.max_residual,
                r.bound, r.checked);
    ok = ok && r.ok();
  }
  return ok ? 0 : 2;
}

int run_selftest() {
  auto rows = specfun_selftest();
  for (auto& r : hr_selftest()) rows.push_back(r);
  return print_rows(rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isodet: exterior, interior and jump-operator determinants of planar obstacles"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&c](CLI::App* s) {
    s->add_option("--disc", c.disc, "disc radius");
    s->add_option("--curve", c.curve_file, "curve file (Fourier coefficients or 'disc r')");
    s->add_option("--chi-a", c.chi_a, "cutoff plateau a, chi = 1 on [0, a]");
    s->add_option("--out", c.out, "output file (default stdout)");
    s->add_option("--format", c.format, "csv or json");
    s->add_option("--cache", c.cache, "cache directory (overrides ISODET_CACHE; 'off' disables)");
  };
  auto table = [&c](CLI::App* s) {
    s->add_option("--table-lmax", c.table_lmax, "top of the Nystrom phase table for curves");
    s->add_option("--table-n", c.table_n, "nodes of the Nystrom phase table");
  };

  auto* phase = app.add_subcommand("phase", "scattering phase s(lambda) as CSV");
  common(phase);
  phase->add_option("--lmin", c.lmin);
  phase->add_option("--lmax", c.lmax);
  phase->add_option("--n", c.n);
  phase->add_option("--spacing", c.spacing, "log or lin");

  auto* heat = app.add_subcommand("heat", "heat trace samples as CSV");
  common(heat);
  table(heat);
  heat->add_option("--tmin", c.tmin);
  heat->add_option("--tmax", c.tmax);
  heat->add_option("--n", c.n);
  heat->add_option("--spacing", c.spacing, "log or lin");
  heat->add_option("--side", c.side, "interior or exterior");
  heat->add_option("--fit", c.fit_terms, "fit this many ladder coefficients (printed to stderr)");

  auto* det = app.add_subcommand("det", "one log-determinant as JSON");
  common(det);
  table(det);
  det->add_option("--object", c.object, "exterior, interior or jump");
  det->add_option("--method", c.method);
  det->add_option("--mu", c.mu);

  auto* jump = app.add_subcommand("jump", "jump operator spectrum as CSV");
  common(jump);
  jump->add_option("--mu", c.mu);
  jump->add_option("--nmax", c.nmax);

  auto* hr = app.add_subcommand("hr", "Hadamard-regularised integrals as JSON");
  common(hr);
  hr->add_option("--kernel", c.kernel, "exp2b, cutoff, dilated or pushforward");
  hr->add_option("--factor", c.factor, "dilation factor");

  auto* surgery = app.add_subcommand("surgery", "surgery identity report as JSON");
  common(surgery);
  surgery->add_flag("--no-variational", c.no_variational, "skip the variational and small-mu sections");

  auto* selftest = app.add_subcommand("selftest", "special-function and HR invariant grids");
  auto* spec_selftest = app.add_subcommand("specfun-selftest", "");
  spec_selftest->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (!c.cache.empty()) ::setenv("ISODET_CACHE", c.cache.c_str(), 1);

  try {
    if (*phase) return run_phase(c);
    if (*heat) return run_heat(c);
    if (*det) return run_det(c);
    if (*jump) return run_jump(c);
    if (*hr) return run_hr(c);
    if (*surgery) return run_surgery(c);
    if (*selftest) return run_selftest();
    if (*spec_selftest) return print_rows(specfun_selftest());
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfidenceError& e) {
    std::cerr << "low-confidence: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "low-confidence: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
