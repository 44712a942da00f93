#ifndef PARETOGOF_ESTIMATION_HPP
#define PARETOGOF_ESTIMATION_HPP

#include <optional>
#include <span>
#include <string_view>

#include "paretogof/distributions.hpp"

namespace pgof {

enum class Estimator { MLE, MME };

std::string_view estimator_name(Estimator e) noexcept;
std::optional<Estimator> parse_estimator(std::string_view text) noexcept;

struct ShapeEstimate {
  Estimator method;
  double beta;
};

/// n / sum(log X_j).
ShapeEstimate estimate_mle(const Sample& sample);

/// mean / (mean - 1).
ShapeEstimate estimate_mme(const Sample& sample);

ShapeEstimate estimate(const Sample& sample, Estimator method);

/// Y_j = X_j^b where b is the MLE of the sample; the MLE of Y is exactly 1.
Sample pivotal_transform(const Sample& sample);

// Unchecked kernels for simulation loops. Return NaN when the estimate is
// undefined (a value at or below 1 makes the denominator vanish).
double mle_from_logs(std::span<const double> logs) noexcept;
double mme_from_values(std::span<const double> values) noexcept;

}  // namespace pgof

#endif  // PARETOGOF_ESTIMATION_HPP
