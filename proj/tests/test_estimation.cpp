#include <doctest.h>

#include <cmath>
#include <vector>

#include "paretogof/distributions.hpp"
#include "paretogof/error.hpp"
#include "paretogof/estimation.hpp"
#include "paretogof/rng.hpp"

using namespace pgof;

TEST_SUITE("estimation") {

TEST_CASE("mle examples") {
  const double e = std::exp(1.0);
  CHECK(estimate_mle(Sample({e, e, e})).beta == doctest::Approx(1.0));
  CHECK(estimate_mle(Sample({e, e * e, e * e * e})).beta == doctest::Approx(0.5));
  CHECK(estimate_mle(Sample({e})).method == Estimator::MLE);
}

TEST_CASE("mme examples") {
  CHECK(estimate_mme(Sample({1.5, 2.5})).beta == doctest::Approx(2.0));
  CHECK(estimate_mme(Sample({1.25, 1.75})).beta == doctest::Approx(3.0));
}

TEST_CASE("estimators are consistent") {
  RandomStream r1(31, 0);
  CHECK(std::abs(estimate_mle(pareto_sample(2.5, 100000, r1)).beta - 2.5) < 0.03);
  RandomStream r2(31, 1);
  CHECK(std::abs(estimate_mme(pareto_sample(3.0, 100000, r2)).beta - 3.0) < 0.05);
}

TEST_CASE("pivotal transform") {
  const double e = std::exp(1.0);
  const Sample t = pivotal_transform(Sample({e, e * e, e * e * e}));
  CHECK(t[0] == doctest::Approx(std::exp(0.5)));
  CHECK(t[1] == doctest::Approx(e));
  CHECK(t[2] == doctest::Approx(std::exp(1.5)));

  RandomStream r(8, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const Sample s = pareto_sample(0.3 + rep * 0.2, 25, r);
    const Sample once = pivotal_transform(s);
    CHECK(std::abs(estimate_mle(once).beta - 1.0) < 1e-12);
    const Sample twice = pivotal_transform(once);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(twice[i] == doctest::Approx(once[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("pivotal transform of a P(7) sample looks like P(1)") {
  RandomStream r(8, 1);
  const Sample t = pivotal_transform(pareto_sample(7.0, 100000, r));
  std::vector<double> v(t.sorted().begin(), t.sorted().end());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = pareto_cdf(v[i], 1.0);
    d = std::max({d, std::abs(f - static_cast<double>(i) / v.size()),
                  std::abs(static_cast<double>(i + 1) / v.size() - f)});
  }
  // Kolmogorov 1% critical value at this n.
  CHECK(d < 1.63 / std::sqrt(100000.0));
}

TEST_CASE("power invariance of the mle") {
  RandomStream r(9, 0);
  const Sample s = pareto_sample(1.7, 40, r);
  for (const double c : {0.1, 0.5, 2.0, 13.0}) {
    std::vector<double> powered;
    for (const double x : s.values()) powered.push_back(std::pow(x, c));
    const double lhs = estimate_mle(Sample(powered)).beta;
    const double rhs = estimate_mle(s).beta / c;
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, rhs));
  }
}

TEST_CASE("mme always exceeds one") {
  RandomStream r(10, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const Sample s = pareto_sample(0.5 + 0.05 * rep, 10, r);
    CHECK(estimate_mme(s).beta > 1.0);
  }
}

TEST_CASE("estimator names") {
  CHECK(estimator_name(Estimator::MLE) == "MLE");
  CHECK(parse_estimator("mme") == Estimator::MME);
  CHECK(parse_estimator("MLE") == Estimator::MLE);
  CHECK_FALSE(parse_estimator("ols").has_value());
  CHECK(std::isnan(mle_from_logs(std::vector<double>{0.0, 0.0})));
  CHECK(std::isnan(mme_from_values(std::vector<double>{1.0, 1.0})));
}

}  // TEST_SUITE
