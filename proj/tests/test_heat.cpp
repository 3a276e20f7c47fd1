#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isodet/disc_scattering.hpp"
#include "isodet/heat_trace.hpp"
#include "isodet/quadrature.hpp"

using namespace isodet;
constexpr double pi = std::numbers::pi;

TEST_CASE("exterior regularised trace, unit disc") {
  const auto p = disc_phase_model(1.0);
  const double t = 0.01;
  const double v = rtr_exterior(p, t).value;
  CHECK(v == doctest::Approx(-29.3).epsilon(0.5 / 29.3));
  CHECK(v == doctest::Approx(-1 / (4 * t) - 2 * pi / (8 * std::sqrt(pi * t))).epsilon(0.05));
  for (double T : {1e3, 1e4, 1e6}) {
    const double r = rtr_exterior(p, T).value;
    CHECK(r < 0);
    CHECK(std::fabs(r) <= 1 / std::log(T));
  }
}

TEST_CASE("exterior trace radius scaling") {
  const auto p1 = disc_phase_model(1.0);
  const auto p2 = disc_phase_model(2.0);
  for (double t : {0.04, 0.4, 4.0})
    CHECK(rtr_exterior(p2, t).value == doctest::Approx(rtr_exterior(p1, t / 4).value).epsilon(1e-8));
}

TEST_CASE("coverage is enforced for bare tables") {
  PhaseTable bare;
  bare.lambda = {0.1, 0.2, 0.3};
  bare.s = {1, 1, 1};
  bare.err = {0, 0, 0};
  bare.N = {1, 1, 1};
  CHECK_THROWS_AS(rtr_exterior(bare, 1.0), std::range_error);
  CHECK_THROWS_AS(rtr_exterior(disc_phase_model(1.0), 0.0), std::domain_error);
}

TEST_CASE("interior trace") {
  const auto spec = disc_dirichlet_spectrum(1.0, interior_cutoff(1.0, 0.01));
  CHECK(tr_interior(spec, 0.01).value == doctest::Approx(20.74).epsilon(0.05 / 20.74));
  CHECK(tr_interior(spec, 0.05).value == doctest::Approx(3.1884709539906935).epsilon(1e-12));  // mpmath zeros
  CHECK(tr_interior(spec, 0.3).value == doctest::Approx(0.20170048161418977).epsilon(1e-12));
  const double j01 = 2.4048255576957728;
  CHECK(tr_interior(spec, 3.0).value == doctest::Approx(std::exp(-3 * j01 * j01)).epsilon(1e-6));
  double prev = 1e300;
  for (double t : log_space(0.01, 3.0, 40)) {
    const double v = tr_interior(spec, t).value;
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(tr_interior(spec, 1e-4), std::range_error);
}

TEST_CASE("coefficient fits") {
  const auto ts = log_space(1e-4, 0.1, 60);
  const auto spec = disc_dirichlet_spectrum(1.0, interior_cutoff(1.0, 1e-4));
  const auto in = extract_coeffs(sample_interior(spec, ts), 6);
  CHECK(in.coeff(-2) == doctest::Approx(0.25).epsilon(1e-4 / 0.25));
  CHECK(in.coeff(-1) == doctest::Approx(-std::sqrt(pi) / 4).epsilon(1e-3));
  CHECK(in.coeff(0) == doctest::Approx(1.0 / 6).epsilon(1e-3 * 6));
  CHECK(in.coeff(1) == doctest::Approx(std::sqrt(pi) / 128).epsilon(5e-2));
  CHECK_FALSE(in.ill_conditioned);

  const auto ex = extract_coeffs(sample_exterior(disc_phase_model(1.0), ts), 4);
  CHECK(ex.coeff(-2) == doctest::Approx(-0.25).epsilon(1e-3 / 0.25));
  CHECK(std::fabs(std::fabs(ex.coeff(-1)) - std::fabs(in.coeff(-1))) < 1e-3);
  CHECK(ex.coeff(0) == doctest::Approx(-1.0 / 6).epsilon(1e-2));

  HeatSamples few;
  few.t = {0.1, 0.2};
  few.value = {1, 1};
  few.err = {0, 0};
  CHECK_THROWS_AS(extract_coeffs(few, 4), std::invalid_argument);
}
