// Runs the pgof executable and checks exit codes and output.
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "paretogof/distributions.hpp"
#include "paretogof/golf.hpp"
#include "paretogof/rng.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PGOF_EXE) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path path = fs::temp_directory_path() / ("pgof_cli_" + name);
  std::ofstream(path) << content;
  return path;
}

// p-value column of a CSV results report.
std::vector<double> p_values(const std::string& csv) {
  std::vector<double> ps;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::istringstream fields(line);
    std::string item;
    while (std::getline(fields, item, ',')) f.push_back(item);
    if (f.size() > 4 && !f[4].empty()) ps.push_back(std::stod(f[4]));
  }
  return ps;
}

// MME statistic of a test in a CSV results report, rounded to 3 dp.
double statistic(const std::string& csv, const std::string& test) {
  const std::regex row("\n" + test + ",MME,([-0-9.e]+),");
  std::smatch m;
  if (!std::regex_search(csv, m, row)) return -1.0;
  return std::round(std::stod(m[1]) * 1000.0) / 1000.0;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("golf prints the PGA average with space separators") {
  const Run r = run("golf --b 200 --seed 3");
  CHECK(r.status == 0);
  CHECK(r.out.find("6 098 395") != std::string::npos);
  CHECK(r.out.find("7 989 306") != std::string::npos);
}

TEST_CASE("golf is reproducible for a fixed seed") {
  const Run a = run("golf --b 100 --seed 1");
  const Run b = run("golf --b 100 --seed 1");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("LIV under the MLE rejects nothing at 10%") {
  const Run r = run("golf --tour liv --estimator mle --b 2000 --seed 5 --alpha 0.10 --format csv");
  REQUIRE(r.status == 0);
  const std::regex row(R"(\nLIV,([A-Za-z0-9]+),MLE,[^\n]*,([01])(?=\n))");
  int rows = 0;
  for (auto it = std::sregex_iterator(r.out.begin(), r.out.end(), row); it != std::sregex_iterator(); ++it) {
    ++rows;
    INFO((*it)[1]);
    CHECK((*it)[2] == "0");
  }
  CHECK(rows == 7);
}

TEST_CASE("test reports the PGA statistics from a file") {
  std::string content;
  for (const double v : pgof::golf_dataset(pgof::Tour::PGA).earnings) content += std::to_string(v) + "\n";
  const fs::path path = temp_file("pga.txt", content);
  const Run r = run("test " + path.string() +
                    " --scale 3500000 --estimator mme --b 500 --seed 2 --format csv");
  CHECK(r.status == 0);
  CHECK(statistic(r.out, "KS") == doctest::Approx(0.255));
  CHECK(statistic(r.out, "AD") == doctest::Approx(1.655));
  CHECK(statistic(r.out, "ZA") == doctest::Approx(3.484));
  fs::remove(path);
}

TEST_CASE("Pareto data is not rejected") {
  pgof::RandomStream rng(99, 0);
  const pgof::Sample s = pgof::pareto_sample(2.0, 1000, rng);
  std::string content;
  for (const double v : s.values()) content += std::to_string(v) + "\n";
  const fs::path path = temp_file("p2.txt", content);
  const Run r = run("test " + path.string() + " --b 500 --seed 4 --format csv");
  REQUIRE(r.status == 0);
  const auto ps = p_values(r.out);
  CHECK(ps.size() == 7);
  for (const double p : ps) CHECK(p > 0.01);
  fs::remove(path);
}

TEST_CASE("a non-numeric line is a parse error naming the line") {
  const fs::path path = temp_file("bad.txt", "2.5\n3.1\nabc\n4\n");
  const std::string cmd = std::string(PGOF_EXE) + " test " + path.string() + " --b 100 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 512> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  const int raw = pclose(p);
  CHECK(WEXITSTATUS(raw) == 3);
  CHECK(out.find("line 3") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("values at or below one are a domain error") {
  const fs::path path = temp_file("low.txt", "2.5\n0.5\n");
  CHECK(run("test " + path.string() + " --b 100").status == 4);
  fs::remove(path);
}

TEST_CASE("test without an input is a usage error") {
  CHECK(run("test").status == 2);
  CHECK(run("power --alpha 2").status == 2);
  CHECK(run("power --alternatives nonsense:1").status == 2);
}

TEST_CASE("power output is byte-identical for a fixed seed") {
  const std::string args = "power --n 10 --alternatives pareto:2,gamma:1 --tests ks,mp2 --seed 7 --format csv";
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("n,alternative,test,estimator,power", 0) == 0);
}

TEST_CASE("power against Gamma(1) and the Pareto null row") {
  const Run g = run("power --n 20 --scale-factor 0.1 --alternatives gamma:1.0 --tests mp2 --seed 11 --format csv");
  REQUIRE(g.status == 0);
  const std::regex mme(R"(20,gamma:1,MP2,MME,([0-9.]+),)");
  std::smatch m;
  REQUIRE(std::regex_search(g.out, m, mme));
  CHECK(std::abs(std::stod(m[1]) - 0.48) <= 0.05);

  const Run p = run("power --n 20 --alternatives pareto:2 --seed 12 --format csv");
  REQUIRE(p.status == 0);
  const std::regex cell(R"(20,pareto:2,[A-Za-z0-9]+,M[LM]E,([0-9.]+),)");
  int cells = 0;
  for (auto it = std::sregex_iterator(p.out.begin(), p.out.end(), cell); it != std::sregex_iterator(); ++it) {
    ++cells;
    CHECK(std::abs(std::stod((*it)[1]) - 0.05) <= 0.025);
  }
  CHECK(cells == 14);
}

TEST_CASE("power writes table files and a manifest") {
  const fs::path dir = fs::temp_directory_path() / "pgof_cli_power";
  fs::create_directories(dir);
  const std::string prefix = (dir / "t").string();
  const Run r = run("power --n 10 --alternatives pareto:2 --tests ks --seed 1 --output " + prefix);
  CHECK(r.status == 0);
  CHECK(fs::exists(prefix + "_n10.csv"));
  CHECK(fs::exists(prefix + "_n10.md"));
  CHECK(fs::exists(prefix + "_manifest.json"));
  fs::remove_all(dir);
}

TEST_CASE("critical-values prints a table") {
  const Run r = run("critical-values --n 10 --alphas 0.05,0.1 --tests mp1,ks --reps 1000 --seed 3 --format csv");
  CHECK(r.status == 0);
  CHECK(r.out.find("MP1") != std::string::npos);
}

}  // TEST_SUITE
