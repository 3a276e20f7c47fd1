#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

#include "isodet/jump_operator.hpp"

using namespace isodet;
constexpr double pi = std::numbers::pi;

TEST_CASE("eigenvalues") {
  CHECK(jump_eigenvalue(1, 0, 3) == 6.0);
  CHECK(jump_eigenvalue(1, 1, 0) == doctest::Approx(1.8760153641569363).epsilon(1e-13));  // mpmath
  CHECK(jump_eigenvalue(1, 1, 1) == doctest::Approx(2.9396776594638621).epsilon(1e-13));
  CHECK(jump_eigenvalue(1, 1, 5) == doctest::Approx(10.205383253346256).epsilon(1e-13));
  CHECK(jump_eigenvalue(1, 1, 50) == doctest::Approx(100.02000599478934).epsilon(1e-13));
  CHECK(jump_eigenvalue(2, 0.1, 3) == doctest::Approx(3.0728635017655857).epsilon(1e-13));
  CHECK(1.0 / jump_eigenvalue(1, 1, 0) == doctest::Approx(0.53302).epsilon(1e-4));
}

TEST_CASE("lowest eigenvalue as mu goes to 0") {
  // 1/lambda_0 = log(1/sqrt mu) + O(1): unit slope in log(1/sqrt mu)
  const double a = 1 / jump_eigenvalue(1, 1e-6, 0), b = 1 / jump_eigenvalue(1, 1e-10, 0);
  const double slope = (b - a) / (std::log(1 / std::sqrt(1e-10)) - std::log(1 / std::sqrt(1e-6)));
  CHECK(slope == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("spectrum against Boost products") {
  for (double mu : {0.1, 1.0, 10.0}) {
    const auto s = r_spectrum_circle(1.0, mu, 100);
    const double x = std::sqrt(mu);
    for (int n = 0; n <= 100; ++n) {
      const double ik = boost::math::cyl_bessel_i(n, x) * boost::math::cyl_bessel_k(n, x);
      CHECK(s.lambda[n] * ik == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(s.mult[0] == 1);
    CHECK(s.mult[7] == 2);
  }
  CHECK_THROWS_AS(r_spectrum_circle(1, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(jump_eigenvalue(-1, 1, 0), std::domain_error);
}

TEST_CASE("determinants") {
  CHECK(log_det_r_circle(1, 0).value == doctest::Approx(std::log(pi)).epsilon(1e-14));
  CHECK(log_det_r_ladder(1).value == doctest::Approx(std::log(pi)).epsilon(1e-8));
  for (double r : {0.5, 2.0}) CHECK(log_det_r_ladder(r).value == doctest::Approx(std::log(pi * r)).epsilon(1e-8));
  // mpmath nsum oracle
  CHECK(log_det_r_circle(1, 1).value == doctest::Approx(3.1955914969478911).epsilon(1e-11));
  CHECK(log_det_r_circle(1, 0.01).value == doctest::Approx(0.2899590584176353).epsilon(1e-11));
  CHECK(log_det_r_circle(2, 1).value == doctest::Approx(6.3089113935001155).epsilon(1e-11));
}

TEST_CASE("mode identities") {
  const auto c = mode_identities_check(1, 1, 2);
  CHECK(c.r_rinv <= 1e-12);
  CHECK(c.max_residual() <= 1e-8);
  const auto c0 = mode_identities_check(1, 1, 0);
  CHECK(c0.deriv_fd <= 1e-8);
  // d/dmu log lambda_0 from d/dx (I_0 K_0) = I_1 K_0 - I_0 K_1 by Boost
  const double x = 1.0;
  const double i0 = boost::math::cyl_bessel_i(0, x), k0 = boost::math::cyl_bessel_k(0, x);
  const double d = (boost::math::cyl_bessel_i(1, x) * k0 - i0 * boost::math::cyl_bessel_k(1, x)) / (i0 * k0);
  CHECK(dlog_jump_eigenvalue(1, 1, 0) == doctest::Approx(-d / (2 * std::sqrt(1.0))).epsilon(1e-12));
}

TEST_CASE("small-mu expansion of log det R") {
  auto shifted = [](double mu) { return log_det_r_circle(1, mu).value + std::log(std::log(std::pow(mu, -0.5))); };
  const double a = shifted(1e-6), b = shifted(1e-8), c = shifted(1e-10);
  // approaches log pi from below, O(1/log(1/sqrt mu))
  CHECK(a < b);
  CHECK(b < c);
  CHECK(c < std::log(pi));
  CHECK(std::log(pi) - c == doctest::Approx(0.12 / std::log(1e5)).epsilon(0.3));
}
