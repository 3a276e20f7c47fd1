// Acceptance run: one PASS/FAIL line per criterion. `acceptance N` runs
// criterion N only, no argument runs all of them.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "isodet/disc_scattering.hpp"
#include "isodet/geometry.hpp"
#include "isodet/heat_trace.hpp"
#include "isodet/hr_asym.hpp"
#include "isodet/jump_operator.hpp"
#include "isodet/obstacle_scattering.hpp"
#include "isodet/quadrature.hpp"
#include "isodet/surgery.hpp"
#include "isodet/zeta_det.hpp"

using namespace isodet;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGamma = 0.5772156649015329;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char b[64];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

double loglog(double mu) { return std::log(std::log(std::pow(mu, -0.5))); }

Verdict mu_constancy_unit() {
  const auto rows = mu_constancy(1.0, {0.5, 1.0, 2.0, 5.0, 10.0});
  double worst = 0, lo = 1e300, hi = -1e300;
  for (const auto& r : rows) {
    worst = std::max(worst, std::fabs(r.sum()));
    lo = std::min(lo, r.sum());
    hi = std::max(hi, r.sum());
  }
  return {worst <= 5e-3 && hi - lo <= 5e-3, "max |sum| " + fmt("%.2e", worst) + ", spread " + fmt("%.2e", hi - lo)};
}

Verdict variational() {
  const auto v = variational_residual(1.0, 1.0, 2e-2);
  bool quad = true;
  std::string ratios;
  for (const auto& c : v.components) {
    quad = quad && c.ratio() > 3.5 && c.ratio() < 4.5;
    ratios += " " + c.name + " " + fmt("%.3f", c.ratio());
  }
  // v.residual_half is the h = 1e-2 difference
  const bool ok = std::fabs(v.residual_half) <= 1e-3 && quad;
  return {ok, "d/dmu sum " + fmt("%.2e", v.residual_half) + " at h=1e-2, h-halving ratios" + ratios};
}

Verdict surgery_identity() {
  std::string winner;
  bool same = true, small = true;
  double worst = 0;
  for (double r : {0.5, 1.0, 2.0})
    for (double a : {0.3, 0.4, 0.5}) {
      const auto rep = surgery_residual(r, a);
      if (winner.empty()) winner = rep.winner;
      same = same && rep.winner == winner;
      const double m = std::min(std::fabs(rep.residual_thm), std::fabs(rep.residual_alt));
      small = small && m <= 5e-3;
      worst = std::max(worst, m);
    }
  const std::string name = winner == "alt" ? "-gamma + log(L/4pi)" : winner == "thm" ? "gamma + log(L/pi)" : "none";
  return {same && small && winner != "none", "winner " + name + " at all radii and plateaus, max residual " + fmt("%.2e", worst)};
}

Verdict small_mu() {
  const auto phase = disc_phase_model(1.0);
  const auto chi = make_cutoff(0.4);
  const std::vector<double> mus = {1e-6, 1e-8, 1e-10};
  std::vector<double> rj, re;
  for (double mu : mus) {
    rj.push_back(log_det_r_circle(1.0, mu).value + loglog(mu));
    re.push_back(log_det_ext_mu(phase, chi, mu).value - loglog(mu));
  }
  auto cauchy = [](const std::vector<double>& v) {
    double d = 0;
    for (std::size_t i = 1; i < v.size(); ++i) d = std::max(d, std::fabs(v[i] - v[i - 1]));
    return d;
  };
  const double cr = cauchy(rj), ce = cauchy(re);
  const double limit_gap = std::fabs(rj.back() - std::log(kPi));
  const double di = std::fabs(log_det_int(1.0, 1e-6).value - log_det_int(1.0, 0.0).value);
  const bool ok = cr <= 1e-3 && limit_gap <= 1e-3 && ce <= 5e-3 && di <= 1e-5;
  return {ok, "R+loglog Cauchy " + fmt("%.2e", cr) + " (need 1e-3), gap to log pi " + fmt("%.2e", limit_gap) +
                  "; ext-loglog Cauchy " + fmt("%.2e", ce) + "; int drift " + fmt("%.2e", di)};
}

Verdict large_mu() {
  const auto f = fit_large_mu(disc_phase_model(1.0), make_cutoff(0.4), {10, 100, 1000});
  return {std::fabs(f.p0) <= 1e-2, "p0 = " + fmt("%.3e", f.p0) + " +- " + fmt("%.1e", f.p0_err)};
}

Verdict small_lambda() {
  // Smallest C with |s - pi ilg| <= C ilg^2 on a log grid of [1e-6, 1e-2].
  auto bound = [](int n) {
    double c = 0;
    for (double l : log_space(1e-6, 1e-2, n)) {
      const double s = scattering_phase_disc(1.0, l).s, g = ilg(l);
      c = std::max(c, std::fabs(s - kPi * g) / (g * g));
    }
    return c;
  };
  const double c1 = bound(25), c2 = bound(49), c3 = bound(97);
  const bool stable = std::fabs(c2 / c1 - 1) <= 0.2 && std::fabs(c3 / c2 - 1) <= 0.2;
  return {stable, "C = " + fmt("%.6f", c1) + ", " + fmt("%.6f", c2) + ", " + fmt("%.6f", c3) + " on 25/49/97 points"};
}

Verdict heat_coefficients() {
  const auto ti = log_space(1e-4, 0.1, 60);
  const auto in = extract_coeffs(sample_interior(disc_dirichlet_spectrum(1.0, interior_cutoff(1.0, 1e-4)), ti), 6);
  const auto te = log_space(1e-5, 1e-2, 60);
  const auto ex = extract_coeffs(sample_exterior(disc_phase_model(1.0), te), 4);
  const double di = std::fabs(in.coeff(-2) - 0.25), de = std::fabs(ex.coeff(-2) + 0.25);
  const double d1 = std::fabs(std::fabs(in.coeff(-1)) - std::fabs(ex.coeff(-1)));
  return {di <= 1e-4 && de <= 1e-3 && d1 <= 1e-3, "interior a_-2 " + fmt("%.8f", in.coeff(-2)) + ", exterior a_-2 " +
                                                      fmt("%.8f", ex.coeff(-2)) + ", |a_-1| gap " + fmt("%.2e", d1)};
}

Verdict hr_machinery() {
  const auto h = hr_integral([](double b) { return std::exp(-2 * b); });
  const double dh = std::fabs(h.value + kGamma + std::log(2.0));
  const auto chi = make_cutoff(0.4);
  const auto p = pushforward_coeffs([&](double x, double y) { return chi(x) * chi(y) * (1.5 + x - 0.5 * y); });
  const bool ok = dh <= 1e-8 && p.residual <= 1e-5 && p.q0 == 1.5;
  return {ok, "HR e^{-2b} error " + fmt("%.2e", dh) + ", pushforward residual " + fmt("%.2e", p.residual) +
                  ", q0 " + fmt("%.17g", p.q0)};
}

Verdict jump_exactness() {
  double worst = 0;
  for (double mu : {0.1, 1.0, 10.0}) {
    const auto s = r_spectrum_circle(1.0, mu, 100);
    const double x = std::sqrt(mu);
    for (int n = 0; n <= 100; ++n)
      worst = std::max(worst, std::fabs(s.lambda[n] * boost::math::cyl_bessel_i(n, x) * boost::math::cyl_bessel_k(n, x) - 1));
  }
  const double dl = std::fabs(log_det_r_ladder(1.0).value - std::log(kPi));
  return {worst <= 1e-10 && dl <= 1e-8, "max |lambda r I K - 1| " + fmt("%.2e", worst) + ", ladder - log pi " + fmt("%.2e", dl)};
}

Verdict general_obstacle() {
  const auto g = lin_space(0.2, 5.0, 49);
  const auto t = scattering_phase_nystrom(ObstacleCurve::disc(1.0), g);
  double dev = 0;
  for (std::size_t i = 0; i < g.size(); ++i) dev = std::max(dev, std::fabs(t.s[i] - scattering_phase_disc(1.0, g[i]).s));

  const auto ell = ObstacleCurve::ellipse(1.0, 0.5);
  const auto table = scattering_phase_nystrom_cached(ell, lin_space(0.2, 30.0, 240));
  const auto fit = extract_coeffs(sample_exterior(table, log_space(1e-3, 1.0, 60)), 4);
  const double L = curve_metrics(ell).length;
  const double a2 = fit.coeff(-2), perim = -8 * std::sqrt(kPi) * fit.coeff(-1);
  const bool ok = dev <= 1e-6 && std::fabs(a2 + 0.125) <= 1e-3 && std::fabs(perim / L - 1) <= 1e-2;
  return {ok, "disc deviation " + fmt("%.2e", dev) + ", ellipse a_-2 " + fmt("%.6f", a2) + ", perimeter " +
                  fmt("%.5f", perim) + " vs " + fmt("%.5f", L)};
}

Verdict inradius() {
  int bad = 0;
  double margin = 1e300;
  const auto corpus = shape_corpus();
  for (const auto& [name, c] : corpus) {
    const auto m = curve_metrics(c);
    const double bound = inradius_lower_bound(m.area, m.length), r = inradius_sampled(c);
    if (r < bound) ++bad;
    margin = std::min(margin, r / bound);
  }
  return {bad == 0, std::to_string(corpus.size()) + " shapes, " + std::to_string(bad) + " violations, min ratio " +
                        fmt("%.2f", margin)};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>> kCriteria = {
    {"mu-constancy", mu_constancy_unit},
    {"variational formula", variational},
    {"surgery identity", surgery_identity},
    {"mu -> 0 expansions", small_mu},
    {"large-mu constant", large_mu},
    {"small-lambda phase", small_lambda},
    {"heat coefficients", heat_coefficients},
    {"HR machinery", hr_machinery},
    {"jump spectrum", jump_exactness},
    {"general obstacle", general_obstacle},
    {"inradius bound", inradius},
};

}  // namespace

int main(int argc, char** argv) {
  int first = 1, last = static_cast<int>(kCriteria.size());
  if (argc > 1) {
    first = last = std::atoi(argv[1]);
    if (first < 1 || first > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "usage: acceptance [1-%zu]\n", kCriteria.size());
      return 1;
    }
  }
  int failed = 0;
  for (int i = first; i <= last; ++i) {
    Verdict v;
    try {
      v = kCriteria[i - 1].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d %-22s %s  %s\n", i, kCriteria[i - 1].first.c_str(), v.pass ? "PASS" : "FAIL",
                v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed ? 1 : 0;
}
