#include "paretogof/sample_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "paretogof/error.hpp"

namespace pgof {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size() && std::isfinite(out);
}

}  // namespace

std::vector<Observation> parse_observations(std::string_view text, bool allow_header) {
  std::vector<Observation> out;
  std::size_t line_no = 0;
  bool header_possible = allow_header;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    std::string_view token = trim(raw);
    if (token.empty() || token.front() == '#') continue;
    if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
      token = trim(token.substr(1, token.size() - 2));
    }
    if (token.find(',') != std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected a single column, got '" +
                           std::string(token) + "'",
                       line_no);
    }
    double value = 0.0;
    if (!parse_double(token, value)) {
      if (header_possible) {
        header_possible = false;
        continue;
      }
      throw ParseError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(token) +
                           "' as a number",
                       line_no);
    }
    header_possible = false;
    out.push_back({value, line_no});
  }
  return out;
}

std::vector<Observation> read_observations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return parse_observations(buf.str(), ext == ".csv");
}

Sample load_sample(const std::filesystem::path& path, double scale_divisor) {
  if (!(scale_divisor > 0.0) || !std::isfinite(scale_divisor)) {
    throw DomainError("scale divisor must be positive");
  }
  const auto obs = read_observations(path);
  if (obs.empty()) throw ArgumentError("input file " + path.string() + " contains no observations");
  std::vector<double> values;
  values.reserve(obs.size());
  for (const auto& o : obs) {
    const double v = o.value / scale_divisor;
    if (!(v > 1.0)) {
      std::ostringstream msg;
      msg << "line " << o.line << ": value " << o.value;
      if (scale_divisor != 1.0) msg << " (scaled: " << v << ")";
      msg << " is not greater than 1; the Pareto support is (1, inf)";
      throw DomainError(msg.str());
    }
    values.push_back(v);
  }
  return Sample(std::move(values));
}

}  // namespace pgof
