#ifndef PARETOGOF_GOLF_HPP
#define PARETOGOF_GOLF_HPP

#include <span>
#include <string_view>

#include "paretogof/distributions.hpp"

namespace pgof {

enum class Tour { PGA, LIV };

std::string_view tour_name(Tour tour) noexcept;

/// Selection threshold of the 2022 earnings lists; dividing by it maps the
/// earnings onto (1, inf).
inline constexpr double kGolfScaleDivisor = 3'500'000.0;

/// 2022 season earnings (USD) of the 28 players per tour who earned more
/// than 3.5 million.
struct GolfDataset {
  Tour tour;
  std::span<const double> earnings;
  double scale_divisor = kGolfScaleDivisor;

  Sample scaled() const;
  double average_earnings() const noexcept;
};

GolfDataset golf_dataset(Tour tour, double scale_divisor = kGolfScaleDivisor);

}  // namespace pgof

#endif  // PARETOGOF_GOLF_HPP
