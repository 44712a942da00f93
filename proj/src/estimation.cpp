#include "paretogof/estimation.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "paretogof/error.hpp"

namespace pgof {

std::string_view estimator_name(Estimator e) noexcept {
  return e == Estimator::MLE ? "MLE" : "MME";
}

std::optional<Estimator> parse_estimator(std::string_view text) noexcept {
  if (text == "mle" || text == "MLE") return Estimator::MLE;
  if (text == "mme" || text == "MME") return Estimator::MME;
  return std::nullopt;
}

double mle_from_logs(std::span<const double> logs) noexcept {
  const double total = std::accumulate(logs.begin(), logs.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(logs.size()) / total;
}

double mme_from_values(std::span<const double> values) noexcept {
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (!(mean > 1.0) || !std::isfinite(mean)) return std::numeric_limits<double>::quiet_NaN();
  return mean / (mean - 1.0);
}

ShapeEstimate estimate_mle(const Sample& sample) {
  std::vector<double> logs(sample.size());
  for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = std::log(sample[i]);
  const double beta = mle_from_logs(logs);
  if (!std::isfinite(beta)) throw DomainError("maximum likelihood estimate is undefined for this sample");
  return {Estimator::MLE, beta};
}

ShapeEstimate estimate_mme(const Sample& sample) {
  const double beta = mme_from_values(sample.values());
  if (!std::isfinite(beta)) throw DomainError("moment estimate is undefined for this sample");
  return {Estimator::MME, beta};
}

ShapeEstimate estimate(const Sample& sample, Estimator method) {
  return method == Estimator::MLE ? estimate_mle(sample) : estimate_mme(sample);
}

Sample pivotal_transform(const Sample& sample) {
  const double beta = estimate_mle(sample).beta;
  std::vector<double> y(sample.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::exp(beta * std::log(sample[i]));
  return Sample(std::move(y));
}

}  // namespace pgof
