#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isodet/specfun.hpp"

using namespace isodet;

// Reference values come from tests/oracles/small_arg_oracles.py (mpmath).

TEST_CASE("J and Y at the origin") {
  CHECK(bessel_j(0, 1e-12) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(bessel_j(1, 1e-12)) < 1e-12);
  const auto h = hankel1(0, 1e-6);
  // H1_0 = 1 + (2i/pi)(log(x/2) + gamma) + O(x^2)
  CHECK(h.real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(h.imag() == doctest::Approx(2.0 / std::numbers::pi * (std::log(0.5e-6) + 0.5772156649015329)).epsilon(1e-10));
  // leading (2i/pi) log x, O(1) remainder
  CHECK(std::fabs(h.imag() - 2.0 / std::numbers::pi * std::log(1e-6)) < 1.0);
}

TEST_CASE("modified Bessel reference values") {
  CHECK(bessel_i(0, 1.0) == doctest::Approx(1.2660658777520083).epsilon(1e-14));
  CHECK(bessel_k(0, 1.0) == doctest::Approx(0.42102443824070833).epsilon(1e-14));
  // I_n K_n -> 1/(2n)
  CHECK(1000.0 * bessel_ik_product(500, 1.0) == doctest::Approx(0.99999799999800007).epsilon(1e-12));
  CHECK(std::fabs(1000.0 * bessel_ik_product(500, 1.0) - 1.0) < 1e-5);
}

TEST_CASE("scaled I and K beyond overflow") {
  const auto i = mod_bessel(ModBesselKind::I, 3, 900.0);
  const auto k = mod_bessel(ModBesselKind::K, 3, 900.0);
  // log I ~ x - log(2 pi x)/2, log K ~ -x + log(pi/2x)/2
  CHECK(i.log_abs() == doctest::Approx(900.0 - 0.5 * std::log(2 * std::numbers::pi * 900.0)).epsilon(1e-5));
  CHECK(k.log_abs() == doctest::Approx(-900.0 + 0.5 * std::log(std::numbers::pi / 1800.0)).epsilon(1e-5));
  // Wronskian product survives
  CHECK(900.0 * std::exp(i.log_abs() + k.log_abs()) * (bessel_i_ratio(3, 900.0) + bessel_k_ratio(3, 900.0)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Bessel zeros") {
  CHECK(bessel_zero(0, 1) == doctest::Approx(2.4048255576957728).epsilon(1e-14));
  CHECK(bessel_zero(1, 1) == doctest::Approx(3.8317059702075123).epsilon(1e-14));
  CHECK(bessel_zero(1, 2) == doctest::Approx(7.0155866698156188).epsilon(1e-14));
  CHECK(bessel_zero(5, 3) == doctest::Approx(15.700174079711671).epsilon(1e-14));
  CHECK(bessel_zero(20, 1) == doctest::Approx(25.417140814072524).epsilon(1e-14));
}

TEST_CASE("zero interlacing") {
  for (int n = 0; n < 30; ++n)
    for (int k = 1; k < 8; ++k) {
      CHECK(bessel_zero(n, k) < bessel_zero(n + 1, k));
      CHECK(bessel_zero(n + 1, k) < bessel_zero(n, k + 1));
    }
  const auto z = bessel_zeros(3, 40.0);
  REQUIRE(!z.empty());
  CHECK(z.back() <= 40.0);
  for (std::size_t i = 1; i < z.size(); ++i) CHECK(z[i] > z[i - 1]);
}

TEST_CASE("invariant grid") {
  for (const auto& row : specfun_selftest()) {
    INFO(row.name);
    CHECK(row.ok());
    CHECK(row.checked > 0);
  }
}
