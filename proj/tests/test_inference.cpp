#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <vector>

#include "paretogof/error.hpp"
#include "paretogof/inference.hpp"
#include "paretogof/rng.hpp"

using namespace pgof;

namespace {

std::vector<TestKind> all_kinds() {
  std::vector<TestKind> kinds;
  for (const TestTag t : kParetoTests) kinds.push_back(TestKind::make(t));
  for (const TestTag t : kExponentialityTests) kinds.push_back(TestKind::make(t));
  return kinds;
}

}  // namespace

TEST_SUITE("inference") {

TEST_CASE("upper quantile uses the ceiling order statistic") {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(upper_quantile(v, 0.05) == 95.0);
  CHECK(upper_quantile(v, 0.10) == 90.0);
  CHECK(upper_quantile(v, 0.01) == 99.0);
  CHECK(upper_quantile(v, 1.0) == 1.0);
  const std::vector<double> three{3.0, 1.0, 2.0};
  CHECK(upper_quantile(three, 0.5) == 2.0);
  CHECK(upper_quantile(three, 0.001) == 3.0);
  CHECK_THROWS_AS(upper_quantile(std::vector<double>{}, 0.05), ArgumentError);
  CHECK_THROWS_AS(upper_quantile(v, 0.0), ArgumentError);
}

TEST_CASE("null simulation does not depend on the number of workers") {
  const auto kinds = all_kinds();
  const auto one = simulate_null_statistics(kinds, 15, 3000, 99, 1);
  const auto three = simulate_null_statistics(kinds, 15, 3000, 99, 3);
  const auto seven = simulate_null_statistics(kinds, 15, 3000, 99, 7);
  CHECK(one == three);
  CHECK(one == seven);
  CHECK(simulate_null_statistics(kinds, 15, 3000, 100, 1) != one);
}

TEST_CASE("critical values: alpha = 1 gives the minimum and levels are ordered") {
  const auto kind = TestKind::make(TestTag::AD);
  const auto stats = simulate_null_statistics(std::vector<TestKind>{kind}, 20, 2000, 5);
  const double lowest = *std::min_element(stats[0].begin(), stats[0].end());
  CHECK(null_critical_value(kind, Estimator::MLE, 20, 1.0, 2000, 5) == lowest);
  const double c01 = null_critical_value(kind, Estimator::MLE, 20, 0.01, 2000, 5);
  const double c05 = null_critical_value(kind, Estimator::MLE, 20, 0.05, 2000, 5);
  const double c10 = null_critical_value(kind, Estimator::MLE, 20, 0.10, 2000, 5);
  CHECK(c01 >= c05);
  CHECK(c05 >= c10);
}

TEST_CASE("critical value errors") {
  const auto mp2 = TestKind::make(TestTag::MP2);
  CHECK_THROWS_AS(null_critical_value(mp2, Estimator::MME, 20, 0.05, 2000, 1), UnsupportedError);
  CHECK_THROWS_AS(null_critical_value(mp2, Estimator::MLE, 20, 0.05, 999, 1), ArgumentError);
  CHECK_THROWS_AS(null_critical_value(mp2, Estimator::MLE, 1, 0.05, 2000, 1), ArgumentError);
  // Exponentiality tests carry their own estimator and are always pivotal.
  CHECK_NOTHROW(null_critical_value(TestKind::make(TestTag::ExpKS), Estimator::MME, 10, 0.05, 1000, 1));
  CriticalValueTable empty;
  CHECK_THROWS_AS(empty.value(mp2, 20, 0.05), ConfigError);
  CHECK_THROWS_AS(power_fixed_critical(mp2, AlternativeSpec::make(Family::Gamma, 1.0), 20, 0.05,
                                       100, empty, 1),
                  ConfigError);
}

TEST_CASE("critical value table round trip") {
  const auto kinds = all_kinds();
  const std::vector<double> alphas{0.01, 0.05, 0.1};
  CriticalValueTable table;
  table.generate(kinds, 12, alphas, 1000, 42);
  table.generate(std::vector<TestKind>{TestKind::make(TestTag::MellinG, 2.5)}, 30, alphas, 1000, 43);
  CHECK(table.size() == kinds.size() * 3 + 3);

  const auto copy = CriticalValueTable::from_text(table.to_text());
  REQUIRE(copy.size() == table.size());
  for (const auto& e : table.entries()) {
    const auto found = copy.find(e.kind, e.n, e.alpha);
    REQUIRE(found.has_value());
    CHECK(found->value == e.value);
    CHECK(found->reps == e.reps);
    CHECK(found->seed == e.seed);
  }

  const auto path = std::filesystem::temp_directory_path() / "pgof_cv_roundtrip.txt";
  table.save(path);
  const auto loaded = CriticalValueTable::load(path);
  std::filesystem::remove(path);
  CHECK(loaded.to_text() == table.to_text());

  CHECK_THROWS_AS(CriticalValueTable::from_text("kind,estimator,n,alpha,reps,seed,value\n"), ParseError);
  CHECK_THROWS_AS(CriticalValueTable::load("/nonexistent/pgof/cache.txt"), IoError);
}

TEST_CASE("insert replaces an entry with the same key") {
  CriticalValueTable t;
  const auto ks = TestKind::make(TestTag::KS);
  t.insert({ks, Estimator::MLE, 20, 0.05, 1000, 1, 0.2});
  t.insert({ks, Estimator::MLE, 20, 0.05, 1000, 2, 0.3});
  CHECK(t.size() == 1);
  CHECK(t.value(ks, 20, 0.05) == 0.3);
}

TEST_CASE("bootstrap p-values stay in range and are reproducible") {
  RandomStream r(3, 0);
  const Sample s = pareto_sample(2.0, 25, r);
  for (const TestTag tag : kParetoTests) {
    for (const Estimator e : {Estimator::MLE, Estimator::MME}) {
      const auto res = bootstrap_pvalue(TestKind::make(tag), e, s, 200, 17);
      REQUIRE(res.p_value.has_value());
      CHECK(*res.p_value >= 1.0 / 201.0);
      CHECK(*res.p_value <= 1.0);
      const auto again = bootstrap_pvalue(TestKind::make(tag), e, s, 200, 17, 4);
      CHECK(*again.p_value == *res.p_value);
    }
  }
  CHECK_THROWS_AS(bootstrap_pvalue(TestKind::make(TestTag::KS), Estimator::MLE, s, 0, 1), ArgumentError);
}

TEST_CASE("rejection rules") {
  TestResult r;
  r.statistic = 1.0;
  r.critical_value = 0.9;
  CHECK(r.rejects(0.05));
  r.critical_value = 1.0;
  CHECK_FALSE(r.rejects(0.05));
  r.p_value = 0.05;
  CHECK(r.rejects(0.05));
  CHECK_FALSE(r.rejects(0.04));
}

TEST_CASE("mle p-value routes agree") {
  RandomStream r(4, 0);
  const Sample s = pareto_sample(3.0, 20, r);
  for (const TestTag tag : {TestTag::KS, TestTag::MP2, TestTag::MellinG}) {
    const auto kind = TestKind::make(tag);
    const double boot = *bootstrap_pvalue(kind, Estimator::MLE, s, 4000, 8).p_value;
    const double null = *null_distribution_pvalue(kind, s, 4000, 9).p_value;
    // Both estimate the same probability; allow about four standard errors.
    const double se = std::sqrt(0.25 / 4000.0) * std::sqrt(2.0);
    CHECK(std::abs(boot - null) < 4.0 * se);
  }
}

TEST_CASE("null samples from P(1) rarely give tiny p-values") {
  int small = 0;
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    RandomStream r(6, rep);
    const Sample s = pareto_sample(1.0, 30, r);
    const double p = *bootstrap_pvalue(TestKind::make(TestTag::MP2), Estimator::MME, s, 500, rep).p_value;
    small += p <= 0.01;
  }
  CHECK(small <= 2);
}

TEST_CASE("size of the fixed-critical-value tests") {
  const auto kinds = all_kinds();
  CriticalValueTable table;
  const double alphas[] = {0.05};
  table.generate(kinds, 20, alphas, 20000, 71);
  const auto estimates =
      power_fixed_critical(kinds, AlternativeSpec::make(Family::Pareto, 5.0), 20, 0.05, 5000, table, 72);
  REQUIRE(estimates.size() == kinds.size());
  for (const auto& e : estimates) {
    CAPTURE(e.kind.name());
    CHECK(std::abs(e.power() - 0.05) < 0.012);
    CHECK(e.std_error() == doctest::Approx(std::sqrt(e.power() * (1 - e.power()) / e.replications)));
  }
}

TEST_CASE("size of the warp-speed tests") {
  std::vector<TestKind> kinds;
  for (const TestTag t : kParetoTests) kinds.push_back(TestKind::make(t));
  const auto estimates = warp_speed_power(kinds, Estimator::MME,
                                          AlternativeSpec::make(Family::Pareto, 2.0), 20, 0.05,
                                          10000, 73);
  for (const auto& e : estimates) {
    CAPTURE(e.kind.name());
    CHECK(std::abs(e.power() - 0.05) < 0.012);
  }
}

TEST_CASE("power estimates are deterministic across worker counts") {
  const auto alt = Alternative(AlternativeSpec::make(Family::Gamma, 1.0));
  const auto kinds = all_kinds();
  CriticalValueTable table;
  const double alphas[] = {0.05};
  table.generate(kinds, 20, alphas, 2000, 1);
  const auto a = power_fixed_critical(kinds, alt, 20, 0.05, 1500, table, 2, 1);
  const auto b = power_fixed_critical(kinds, alt, 20, 0.05, 1500, table, 2, 4);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].rejections == b[i].rejections);
  std::vector<TestKind> pareto(kinds.begin(), kinds.begin() + 7);
  const auto c = warp_speed_power(pareto, Estimator::MME, alt, 20, 0.05, 1500, 3, 1);
  const auto d = warp_speed_power(pareto, Estimator::MME, alt, 20, 0.05, 1500, 3, 5);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i].rejections == d[i].rejections);
}

TEST_CASE("single-kind overloads agree with the batch") {
  const auto alt = Alternative(AlternativeSpec::make(Family::Weibull, 1.2));
  const auto kind = TestKind::make(TestTag::MP1);
  const auto batch = warp_speed_power(std::vector<TestKind>{kind}, Estimator::MLE, alt, 15, 0.1, 1200, 4);
  const auto single = warp_speed_power(kind, Estimator::MLE, alt, 15, 0.1, 1200, 4);
  CHECK(batch[0].rejections == single.rejections);
  CHECK(single.replications == 1200);
  CHECK(single.failures == 0);
}

}  // TEST_SUITE
