#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isodet/geometry.hpp"

using namespace isodet;
constexpr double pi = std::numbers::pi;

TEST_CASE("disc metrics") {
  auto m = curve_metrics(ObstacleCurve::disc(1.0));
  CHECK(m.length == doctest::Approx(2 * pi).epsilon(1e-12));
  CHECK(m.area == doctest::Approx(pi).epsilon(1e-12));
  CHECK(m.kappa_sq_integral == doctest::Approx(2 * pi).epsilon(1e-10));
  m = curve_metrics(ObstacleCurve::disc(2.0));
  CHECK(m.length == doctest::Approx(4 * pi).epsilon(1e-12));
  CHECK(m.area == doctest::Approx(4 * pi).epsilon(1e-12));
}

TEST_CASE("ellipse perimeter against the complete elliptic integral") {
  const auto m = curve_metrics(ObstacleCurve::ellipse(1.0, 0.5));
  CHECK(m.area == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(m.length == doctest::Approx(4.8442241102738381).epsilon(1e-10));  // 4 E(3/4), mpmath
}

TEST_CASE("heat invariants") {
  const auto in = heat_invariants(ObstacleCurve::disc(1.0), HeatSide::Interior);
  CHECK(in.a_minus2 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(in.a_minus1 == doctest::Approx(-std::sqrt(pi) / 4).epsilon(1e-12));
  CHECK(in.a_0 == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(in.a_1 == doctest::Approx(2 * pi * a1_curvature_coefficient()).epsilon(1e-9));
  const auto ex = heat_invariants(ObstacleCurve::disc(1.0), HeatSide::ExteriorRegularized);
  CHECK(ex.a_minus2 == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(ex.a_minus1 == doctest::Approx(in.a_minus1).epsilon(1e-12));
  CHECK(ex.a_0 == doctest::Approx(-1.0 / 6).epsilon(1e-12));
}

TEST_CASE("inradius bound") {
  CHECK(inradius_lower_bound(pi, 2 * pi) == doctest::Approx(1.0 / (25 * pi)).epsilon(1e-14));
  CHECK(inradius_lower_bound(1e-300, 1.0) < 1e-299);
  const double L = 4.8442241102738381;
  CHECK(inradius_lower_bound(pi / 2, L) == doctest::Approx(0.008257).epsilon(1e-3));
  CHECK(inradius_sampled(ObstacleCurve::ellipse(1.0, 0.5)) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("corpus is well formed") {
  const auto corpus = shape_corpus();
  CHECK(corpus.size() == 20);
  for (const auto& [name, c] : corpus) {
    INFO(name);
    CHECK_FALSE(self_intersects(c));
  }
}

TEST_CASE("curve text") {
  CHECK(parse_curve_text("disc 1.5\n").is_disc());
  CHECK(parse_curve_text("disc 1.5\n").radius() == 1.5);
  // ellipse x = cos t, y = 0.5 sin t as complex Fourier data: x_1 = 1/2, y_1 = -i/4
  const auto c = parse_curve_text("# ellipse\n1, 0.5, 0, 0, -0.25\n");
  const auto p = c.point(0.3);
  CHECK(p.x() == doctest::Approx(std::cos(0.3)).epsilon(1e-14));
  CHECK(p.y() == doctest::Approx(0.5 * std::sin(0.3)).epsilon(1e-14));
  CHECK_THROWS_AS(parse_curve_text("1, 2, 3\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_curve_text("disc -1\n"), std::invalid_argument);
  // figure eight
  CHECK_THROWS(curve_metrics(ObstacleCurve::from_trig({0, 0, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 1})));
}
