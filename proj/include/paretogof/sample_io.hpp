#ifndef PARETOGOF_SAMPLE_IO_HPP
#define PARETOGOF_SAMPLE_IO_HPP

#include <cstddef>
#include <filesystem>
#include <string_view>
#include <vector>

#include "paretogof/distributions.hpp"

namespace pgof {

struct Observation {
  double value;
  std::size_t line;  // 1-based line in the source text
};

/// One number per line. Blank lines and lines starting with '#' are skipped;
/// surrounding whitespace and double quotes are ignored. When `allow_header`
/// is set, a non-numeric first data line is taken as a column header. Any
/// other unparseable line raises ParseError naming the line.
std::vector<Observation> parse_observations(std::string_view text, bool allow_header);

/// Reads a plain-text or single-column CSV file. A header line is accepted
/// only for files with a .csv extension.
std::vector<Observation> read_observations(const std::filesystem::path& path);

/// Reads, divides by `scale_divisor` and validates. A value at or below 1
/// after scaling raises DomainError naming the value and its line.
Sample load_sample(const std::filesystem::path& path, double scale_divisor = 1.0);

}  // namespace pgof

#endif  // PARETOGOF_SAMPLE_IO_HPP
