#ifndef PARETOGOF_DISTRIBUTIONS_HPP
#define PARETOGOF_DISTRIBUTIONS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "paretogof/rng.hpp"

namespace pgof {

/// Observations on the Pareto support (1, inf). Immutable once built.
///
/// Keeps the values in the order given plus an ascending copy; every
/// statistic works from the ascending view.
class Sample {
 public:
  /// Throws DomainError naming the first value that is not > 1 (or not
  /// finite) and ArgumentError for an empty input.
  explicit Sample(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> sorted() const noexcept { return sorted_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double mean() const noexcept;

  /// Divides every value by `divisor` and validates the result.
  static Sample scaled(std::span<const double> raw, double divisor);

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

enum class Family {
  Pareto,
  Gamma,
  Weibull,
  LogNormal,
  HalfNormal,
  LinearFailureRate,
  BetaExponential,
  TiltedPareto,
  Dhillon,
};

/// One of the fixed alternatives. Every family except Pareto is shifted right
/// by one unit so that it lives on (1, inf).
struct AlternativeSpec {
  Family family = Family::Pareto;
  double theta = 1.0;
  double shift = 0.0;

  /// Builds a spec with the conventional shift. theta must be > 0
  /// (Dhillon also accepts 0, where it coincides with P(1)).
  static AlternativeSpec make(Family family, double theta);

  std::string label() const;
};

enum class Contaminant { ShiftedExponential, ShiftedHalfNormal, ShiftedLogNormal };

/// Contaminated Pareto: with probability p an observation comes from the
/// contaminant, otherwise from a Pareto whose mean equals the contaminant mean.
struct MixtureSpec {
  double p = 0.0;
  Contaminant contaminant = Contaminant::ShiftedExponential;
  double contaminant_mean = 3.0;

  static MixtureSpec make(double p, Contaminant contaminant, double contaminant_mean = 3.0);

  /// mean / (mean - 1), so that the Pareto component has the same mean.
  double pareto_beta() const;
  std::string label() const;
};

/// Anything a power study can sample from.
using Alternative = std::variant<AlternativeSpec, MixtureSpec>;

std::string label(const Alternative& alt);
std::string_view family_name(Family family) noexcept;
std::string_view contaminant_name(Contaminant contaminant) noexcept;

/// Parses "gamma:1.2", "pareto:2", "tp:3", "mix-exp:0.9", "mix-ln:0.5:3", ...
/// Throws ConfigError on unknown names or bad numbers.
Alternative parse_alternative(std::string_view text);
std::string alternative_token(const Alternative& alt);

// Pareto null --------------------------------------------------------------

double pareto_cdf(double x, double beta);
double pareto_quantile(double u, double beta);
Sample pareto_sample(double beta, std::size_t n, RandomStream& rng);

// Alternatives -------------------------------------------------------------

double alt_cdf(const AlternativeSpec& spec, double x);

/// Closed-form inverse CDF. Throws UnsupportedError for Gamma, LogNormal and
/// HalfNormal, which are sampled with standard generators instead.
double alt_quantile(const AlternativeSpec& spec, double u);
bool has_closed_form_quantile(Family family) noexcept;

Sample alt_sample(const AlternativeSpec& spec, std::size_t n, RandomStream& rng);

double mixture_cdf(const MixtureSpec& spec, double x);
double contaminant_cdf(const MixtureSpec& spec, double x);
Sample mixture_sample(const MixtureSpec& spec, std::size_t n, RandomStream& rng);

/// Analytic means of the two mixture components (contaminant, Pareto).
double contaminant_mean_analytic(const MixtureSpec& spec);

double cdf(const Alternative& alt, double x);
Sample sample(const Alternative& alt, std::size_t n, RandomStream& rng);

/// Fills `out` with i.i.d. draws without validating the support. Simulation
/// loops use this to avoid per-replication allocation.
void draw(const Alternative& alt, RandomStream& rng, std::span<double> out);
void draw_pareto(double beta, RandomStream& rng, std::span<double> out);

}  // namespace pgof

#endif  // PARETOGOF_DISTRIBUTIONS_HPP
