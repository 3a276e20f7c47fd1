#include <doctest.h>

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "isodet/surgery.hpp"

using namespace isodet;

TEST_CASE("unit disc report") {
  const auto rep = surgery_residual(1.0, 0.4);
  CHECK(rep.thm_constant == doctest::Approx(1.2703629).epsilon(1e-7));
  CHECK(rep.logdet_r_mod.value == doctest::Approx(1.1447299).epsilon(1e-7));
  CHECK(rep.winner == "alt");
  CHECK(std::fabs(rep.residual_alt) <= 5e-3);
  CHECK(std::fabs(rep.residual_thm) > 5e-3);
  CHECK_FALSE(rep.low_confidence);
  REQUIRE(rep.mu_table.size() == 5);
  for (const auto& row : rep.mu_table) CHECK(std::fabs(row.sum()) <= 5e-3);
  CHECK(rep.mu_spread <= 5e-3);

  const auto j = nlohmann::json::parse(surgery_report_json(rep));
  CHECK(j.contains("residual_thm"));
  CHECK(j.contains("residual_alt"));
  CHECK(j["winner"] == "alt");
  CHECK(j["logdet_ext_mod"]["diagnostics"].contains("slog_coeff"));
}

TEST_CASE("the winner is stable") {
  for (double r : {0.5, 2.0}) {
    const auto rep = surgery_residual(r, 0.4);
    CHECK(rep.winner == "alt");
    CHECK(std::fabs(rep.residual_alt) <= 5e-3);
  }
  CHECK_THROWS_AS(surgery_residual(10.0), std::domain_error);
}

TEST_CASE("mu table at r = 2") {
  const auto rows = mu_constancy(2.0, {1.0});
  CHECK(std::fabs(rows[0].sum()) <= 5e-3);
}

TEST_CASE("variational formula") {
  const auto v = variational_residual(1.0, 1.0, 1e-2);
  CHECK(std::fabs(v.residual) <= 1e-3);
  for (const auto& c : v.components) {
    INFO(c.name);
    CHECK(c.ratio() == doctest::Approx(4.0).epsilon(0.1));
  }
  CHECK(std::fabs(v.trace_residual()) <= 1e-6);
  CHECK(std::fabs(v.jump_residual()) <= 1e-3);
  CHECK_THROWS_AS(variational_residual(1.0, 0.01, 0.02), std::domain_error);
}

TEST_CASE("small-mu bridge") {
  const auto b = small_mu_bridge(1.0, 1e-8);
  const auto rep = surgery_residual(1.0, 0.4);
  const double ext_drift = b.ext_shifted - rep.logdet_ext_mod.value - (0.5772156649 + std::log(2.0));
  const double jump_drift = b.jump_shifted - std::log(std::numbers::pi);
  // each piece is still O(1/log(1/sqrt mu)) from its limit, about 1.25e-2 here
  CHECK(std::fabs(ext_drift) <= 2e-2);
  CHECK(std::fabs(jump_drift) <= 2e-2);
  // and the drifts cancel: the bridge reproduces the mu = 0 sum
  CHECK(std::fabs(ext_drift + jump_drift + (b.interior - rep.logdet_int.value)) <= 1e-5);
}
