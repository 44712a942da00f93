#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "paretogof/error.hpp"
#include "paretogof/golf.hpp"
#include "paretogof/study.hpp"

using namespace pgof;

namespace {

StudyConfig tiny_config() {
  StudyConfig c = StudyConfig::defaults();
  c.sample_sizes = {10};
  c.tests = {TestKind::make(TestTag::KS), TestKind::make(TestTag::MP2),
             TestKind::make(TestTag::ExpCV)};
  c.alternatives = {AlternativeSpec::make(Family::Pareto, 2.0),
                    AlternativeSpec::make(Family::Gamma, 1.0)};
  c.replications = {10000, 10000, 10000};
  c.seed = 7;
  return c;
}

std::size_t count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST_SUITE("study") {

TEST_CASE("render rounds power to an integer percentage") {
  PowerTable t;
  t.n = 20;
  t.rows = {AlternativeSpec::make(Family::Gamma, 1.0)};
  t.columns = {{TestKind::make(TestTag::MP2), Estimator::MME}};
  PowerEstimate e;
  e.alternative = t.rows[0];
  e.kind = t.columns[0].kind;
  e.estimator = Estimator::MME;
  e.n = 20;
  e.rejections = 487;
  e.replications = 1000;
  t.cells = {{PowerCell{e, ""}}};
  const std::string md = render_table(t, TableFormat::Markdown);
  CHECK(md.find("| Gamma(1) | 49 |") != std::string::npos);
  const std::string csv = render_table(t, TableFormat::Csv);
  CHECK(csv.find(",0.4870,") != std::string::npos);
  CHECK(count_lines(csv) == 2);
}

TEST_CASE("empty alternatives render headers only") {
  StudyConfig c = tiny_config();
  c.alternatives.clear();
  const auto tables = run_power_table(c);
  REQUIRE(tables.size() == 1);
  const std::string csv = render_table(tables[0], TableFormat::Csv);
  CHECK(count_lines(csv) == 1);
  CHECK(csv.rfind("n,alternative,test,estimator,power", 0) == 0);
  const std::string md = render_table(tables[0], TableFormat::Markdown);
  CHECK(md.find("| Distribution |") != std::string::npos);
  CHECK(md.find("P(") == std::string::npos);
}

TEST_CASE("column order follows the reference tables") {
  const auto cols = power_columns(StudyConfig::defaults());
  std::vector<std::string> names;
  for (const auto& c : cols) names.push_back(c.kind.name() + " " + std::string(estimator_name(c.estimator)));
  const std::vector<std::string> expected{"KS MME", "KS MLE", "CV MME", "CV MLE", "AD MME",
                                          "AD MLE", "ZA MME", "ZA MLE", "G MME",  "G MLE",
                                          "MP1 MME", "MP1 MLE", "MP2 MME", "MP2 MLE"};
  CHECK(names == expected);
  StudyConfig c = StudyConfig::defaults();
  c.tests = {TestKind::make(TestTag::ExpKS)};
  const auto exp_cols = power_columns(c);
  REQUIRE(exp_cols.size() == 1);
  CHECK(exp_cols[0].estimator == Estimator::MLE);
}

TEST_CASE("default grids") {
  const auto grid = fixed_alternatives_grid();
  CHECK(grid.size() == 27);
  CHECK(label(grid[0]) == "P(2)");
  CHECK(label(grid[2]) == "P(10)");
  const auto mix = mixture_grid(Contaminant::ShiftedExponential);
  CHECK(mix.size() == 5);
  CHECK(std::get<MixtureSpec>(mix[4]).p == doctest::Approx(0.9));
}

TEST_CASE("config validation and scaling") {
  StudyConfig c = StudyConfig::defaults();
  CHECK_NOTHROW(c.validate());
  const auto eff = c.effective_replications();
  CHECK(eff.critical == 10000);
  CHECK(eff.power == 1000);
  CHECK(eff.warp_speed == 5000);
  c.scale_factor = 0.001;
  CHECK(c.effective_replications().power == kMinScaledReplications);
  c.scale_factor = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.scale_factor = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = StudyConfig::defaults();
  c.sample_sizes = {1};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = StudyConfig::defaults();
  c.alpha = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = StudyConfig::defaults();
  c.tests.clear();
  CHECK_THROWS_AS(run_power_table(c), ConfigError);
}

TEST_CASE("config json") {
  StudyConfig c = StudyConfig::defaults();
  c.apply_json(R"({"sample_sizes": [25], "alpha": 0.1, "tests": ["mp2", "g"], "tuning_a": 2,
                   "estimators": ["mme"], "alternatives": ["gamma:1", "mix-ln:0.5"],
                   "replications": {"power": 20000}, "scale_factor": 0.5, "seed": 9})");
  CHECK(c.sample_sizes == std::vector<std::size_t>{25});
  CHECK(c.alpha == 0.1);
  REQUIRE(c.tests.size() == 2);
  CHECK(c.tests[1].tuning_a == 2.0);
  CHECK(c.estimators == std::vector<Estimator>{Estimator::MME});
  CHECK(c.alternatives.size() == 2);
  CHECK(c.replications.power == 20000);
  CHECK(c.replications.critical == 100000);
  CHECK(c.seed == 9);

  StudyConfig d = StudyConfig::defaults();
  d.apply_json(c.to_json());
  CHECK(d.to_json() == c.to_json());

  CHECK_THROWS_AS(c.apply_json("{not json"), ConfigError);
  CHECK_THROWS_AS(c.apply_json(R"({"tests": ["nope"]})"), ConfigError);
  CHECK_THROWS_AS(c.apply_json(R"({"alpha": "high"})"), ConfigError);
  CHECK_THROWS_AS(c.apply_json(R"({"alternatives": ["zeta:1"]})"), ConfigError);
}

TEST_CASE("power table run is reproducible and uses the cache") {
  StudyConfig c = tiny_config();
  const auto first = run_power_table(c);
  const auto second = run_power_table(c);
  REQUIRE(first.size() == 1);
  const auto& t = first[0];
  CHECK(t.rows.size() == 2);
  CHECK(t.columns.size() == 5);
  for (const auto& row : t.cells) {
    for (const auto& cell : row) {
      CHECK(cell.estimate.has_value());
      CHECK(cell.error.empty());
    }
  }
  CHECK(render_table(first[0], TableFormat::Csv) == render_table(second[0], TableFormat::Csv));
  const auto* null_cell = t.cell(0, TestTag::MP2, Estimator::MME);
  REQUIRE(null_cell != nullptr);
  CHECK(null_cell->estimate->replications == 1000);
  CHECK(t.cell(0, TestTag::ExpCV, Estimator::MME) != nullptr);

  const auto cache = std::filesystem::temp_directory_path() / "pgof_study_cache.txt";
  std::filesystem::remove(cache);
  c.critical_value_cache = cache;
  const auto cached = run_power_table(c);
  CHECK(std::filesystem::exists(cache));
  const auto reused = run_power_table(c);
  CHECK(render_table(cached[0], TableFormat::Csv) == render_table(first[0], TableFormat::Csv));
  CHECK(render_table(reused[0], TableFormat::Csv) == render_table(first[0], TableFormat::Csv));
  std::filesystem::remove(cache);

  const auto manifest = nlohmann::json::parse(study_manifest(c, first));
  CHECK(manifest["version"] == std::string(library_version()));
  CHECK(manifest["config"]["seed"] == 7);
  CHECK(manifest["tables"].size() == 1);
}

TEST_CASE("P(1) rows run under both estimators") {
  StudyConfig c = tiny_config();
  c.alternatives = {AlternativeSpec::make(Family::Dhillon, 0.0)};
  const auto tables = run_power_table(c);
  for (const auto& cell : tables[0].cells[0]) CHECK(cell.estimate.has_value());
}

TEST_CASE("golf datasets") {
  for (const Tour tour : {Tour::PGA, Tour::LIV}) {
    const auto d = golf_dataset(tour);
    CHECK(d.earnings.size() == 28);
    for (const double x : d.earnings) CHECK(x > 3.5e6);
    const Sample scaled = d.scaled();
    for (const double x : scaled.values()) CHECK(x > 1.0);
  }
  CHECK(std::llround(golf_dataset(Tour::PGA).average_earnings()) == 6098395);
  CHECK(std::llround(golf_dataset(Tour::LIV).average_earnings()) == 7989306);
  CHECK(tour_name(Tour::LIV) == "LIV");
  CHECK_THROWS_AS(golf_dataset(Tour::PGA, 4.0e6).scaled(), DomainError);
}

TEST_CASE("golf application") {
  std::vector<TestKind> tests;
  for (const TestTag t : kParetoTests) tests.push_back(TestKind::make(t));
  const auto res = run_golf_application(Tour::PGA, {Estimator::MME, Estimator::MLE}, tests, 300, 1);
  REQUIRE(res.size() == 14);
  const Sample pga = golf_dataset(Tour::PGA).scaled();
  for (const auto& r : res) {
    CHECK(r.statistic == doctest::Approx(evaluate(r.kind, pga, r.estimator).value).epsilon(1e-12));
    CHECK(r.replications == 300);
  }
  const auto again = run_golf_application(Tour::PGA, {Estimator::MME, Estimator::MLE}, tests, 300, 1);
  for (std::size_t i = 0; i < res.size(); ++i) CHECK(*res[i].p_value == *again[i].p_value);
  const std::string md = render_table(res, TableFormat::Markdown, 0.05);
  CHECK(md.find("| KS | 0.255 |") != std::string::npos);
  const std::string csv = render_table(res, TableFormat::Csv, 0.05);
  CHECK(count_lines(csv) == 15);
}

}  // TEST_SUITE
