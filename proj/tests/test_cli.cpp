#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

fs::path workdir() {
  static const fs::path d = [] {
    fs::path p = fs::temp_directory_path() / "isodet-cli-test";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d;
}

int run(const std::string& args) {
  const std::string cmd = "cd '" + workdir().string() + "' && ISODET_CACHE=off '" ISODET_CLI "' " + args + " 2>stderr.txt";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& name) {
  std::ifstream in(workdir() / name, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("phase csv") {
  REQUIRE(run("phase --disc 1 --lmin 1e-6 --lmax 100 --n 2000 --out s.csv") == 0);
  std::istringstream in(slurp("s.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "lambda,s,err,N");
  int rows = 0;
  double prev = 0;
  while (std::getline(in, line)) {
    const double l = std::stod(line.substr(0, line.find(',')));
    CHECK(l > prev);
    prev = l;
    ++rows;
  }
  CHECK(rows == 2000);
  REQUIRE(run("phase --disc 1 --lmin 1e-6 --lmax 100 --n 2000 --out s2.csv") == 0);
  CHECK(slurp("s.csv") == slurp("s2.csv"));
}

TEST_CASE("surgery report") {
  REQUIRE(run("surgery --disc 1 --chi-a 0.4 --out report.json > table.txt") == 0);
  const auto j = nlohmann::json::parse(slurp("report.json"));
  for (const char* k : {"residual_thm", "residual_alt", "winner", "mu_table", "variational", "thm_constant"})
    CHECK(j.contains(k));
  CHECK(slurp("table.txt").find("winner: alt") != std::string::npos);
  REQUIRE(run("surgery --disc 1 --chi-a 0.4 --out report2.json > /dev/null") == 0);
  CHECK(slurp("report.json") == slurp("report2.json"));
}

TEST_CASE("other subcommands") {
  REQUIRE(run("det --disc 1 --object interior --out d.json") == 0);
  const auto d = nlohmann::json::parse(slurp("d.json"));
  CHECK(d["object"] == "interior");
  CHECK(d["diagnostics"].contains("fit_residual"));
  CHECK(d["value"].get<double>() == doctest::Approx(-0.7737138523).epsilon(1e-8));

  REQUIRE(run("jump --disc 1 --mu 1 --nmax 20 --out j.csv") == 0);
  CHECK(slurp("j.csv").rfind("n,multiplicity,lambda\n", 0) == 0);

  REQUIRE(run("heat --disc 1 --side interior --tmin 1e-3 --tmax 1 --n 40 --out h.csv") == 0);
  CHECK(slurp("h.csv").find(",interior\n") != std::string::npos);

  REQUIRE(run("hr --kernel exp2b --out hr.json") == 0);
  CHECK(nlohmann::json::parse(slurp("hr.json"))["value"].get<double>() == doctest::Approx(-1.2703628454614782));

  std::ofstream(workdir() / "ell.txt") << "# ellipse 1 x 0.5\n1, 0.5, 0, 0, -0.25\n";
  REQUIRE(run("phase --curve ell.txt --lmin 0.5 --lmax 2 --n 4 --spacing lin --out e.csv") == 0);
  CHECK(slurp("e.csv").rfind("lambda,s,err,N\n0.5,", 0) == 0);
}

TEST_CASE("selftest") {
  CHECK(run("selftest > self.txt") == 0);
  CHECK(slurp("self.txt").find("FAIL") == std::string::npos);
  CHECK(run("specfun-selftest > spec.txt") == 0);
}

TEST_CASE("validation failures exit 1 with one line") {
  CHECK(run("phase --disc -1") == 1);
  CHECK(run("phase --disc 1 --curve x.txt") == 1);
  CHECK(run("det --disc 1 --chi-a 1.5") == 1);
  CHECK(run("phase --disc 1 --lmin 5 --lmax 1") == 1);
  CHECK(run("heat --curve missing.txt --side interior") == 1);
  CHECK(run("phase --disc 1 --format json") == 1);
  CHECK(run("nonsense") == 1);
  const std::string err = slurp("stderr.txt");
  CHECK(std::count(err.begin(), err.end(), '\n') == 1);
}
