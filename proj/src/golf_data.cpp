#include "paretogof/golf.hpp"

#include <array>
#include <numeric>

namespace pgof {

namespace {

constexpr std::array<double, 28> kLivEarnings{
    36'071'517, 16'993'416, 15'124'499, 13'422'785, 12'765'714, 9'792'500, 8'755'785,
    8'297'000,  8'169'167,  8'033'500,  7'638'000,  6'755'314,  5'741'000, 5'718'500,
    5'109'000,  4'992'618,  4'843'367,  4'614'500,  4'596'000,  4'535'000, 4'459'964,
    4'434'314,  4'382'417,  3'877'583,  3'700'000,  3'693'666,  3'599'100, 3'584'333,
};

constexpr std::array<double, 28> kPgaEarnings{
    14'046'909, 10'107'897, 9'405'081, 9'369'605, 8'654'566, 7'427'299, 7'073'986,
    7'012'672,  6'829'575,  6'520'597, 6'117'886, 5'776'298, 5'567'974, 5'289'842,
    5'248'220,  5'076'060,  5'018'443, 4'940'600, 4'868'461, 4'837'271, 4'722'433,
    4'310'047,  3'940'513,  3'876'590, 3'757'425, 3'718'990, 3'623'137, 3'616'679,
};

}  // namespace

std::string_view tour_name(Tour tour) noexcept { return tour == Tour::PGA ? "PGA" : "LIV"; }

Sample GolfDataset::scaled() const { return Sample::scaled(earnings, scale_divisor); }

double GolfDataset::average_earnings() const noexcept {
  return std::accumulate(earnings.begin(), earnings.end(), 0.0) /
         static_cast<double>(earnings.size());
}

GolfDataset golf_dataset(Tour tour, double scale_divisor) {
  return GolfDataset{tour, tour == Tour::PGA ? std::span<const double>(kPgaEarnings)
                                             : std::span<const double>(kLivEarnings),
                     scale_divisor};
}

}  // namespace pgof
