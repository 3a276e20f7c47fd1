#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "isodet/disc_scattering.hpp"
#include "isodet/heat_trace.hpp"
#include "isodet/io.hpp"
#include "isodet/jump_operator.hpp"
#include "isodet/quadrature.hpp"

using namespace isodet;
namespace fs = std::filesystem;

TEST_CASE("formatting") {
  CHECK(fmt17(0.1) == "0.10000000000000001");
  CHECK(fmt17(-0.0) == "0");
  CHECK(content_hash("abc") == content_hash("abc"));
  CHECK(content_hash("abc") != content_hash("abd"));
  CHECK(content_hash("").size() == 16);
}

TEST_CASE("csv round trip") {
  const auto t = disc_phase_table(1.0, log_space(0.1, 10.0, 30));
  const std::string text = phase_csv(t);
  CHECK(text.rfind("lambda,s,err,N\n", 0) == 0);
  const auto back = phase_table_from_text(text);
  REQUIRE(back.lambda.size() == 30);
  for (std::size_t i = 0; i < 30; ++i) {
    CHECK(back.lambda[i] == t.lambda[i]);
    CHECK(back.s[i] == t.s[i]);
  }
  CHECK(heat_csv(HeatSamples{}) == "t,value,err,kind\n");
  CHECK(spectrum_csv(r_spectrum_circle(1, 1, 10)).rfind("n,multiplicity,lambda\n0,1,", 0) == 0);
  CHECK_THROWS_AS(phase_table_from_text("x,y\n"), std::invalid_argument);
}

TEST_CASE("cache") {
  const fs::path dir = fs::temp_directory_path() / "isodet-test-cache";
  fs::remove_all(dir);
  ::setenv("ISODET_CACHE", dir.c_str(), 1);
  CHECK(cache_dir() == dir.string());
  CHECK_FALSE(cache_read("k1").has_value());
  cache_write("k1", "payload\n");
  REQUIRE(cache_read("k1").has_value());
  CHECK(*cache_read("k1") == "payload\n");
  CHECK_FALSE(cache_read("k2").has_value());
  // a cached spectrum equals a fresh one
  const auto a = disc_dirichlet_spectrum_cached(1.0, 30.0);
  const auto b = disc_dirichlet_spectrum_cached(1.0, 30.0);
  CHECK(a.lambda_sq == b.lambda_sq);
  CHECK(a.lambda_sq == disc_dirichlet_spectrum(1.0, 30.0).lambda_sq);
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().string().find(".tmp.") == std::string::npos);

  ::setenv("ISODET_CACHE", "off", 1);
  CHECK(cache_dir().empty());
  cache_write("k3", "x");
  CHECK_FALSE(cache_read("k3").has_value());
  ::setenv("ISODET_CACHE", "", 1);
  CHECK(cache_dir().empty());
  ::unsetenv("ISODET_CACHE");
  fs::remove_all(dir);
}
