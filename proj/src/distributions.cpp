#include "paretogof/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "paretogof/error.hpp"

namespace pgof {

namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite, got " + format_number(v));
  }
}

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

constexpr double kLogNormalSigma = 1.0;

double halfnormal_scale(double mean) { return (mean - 1.0) * std::sqrt(std::numbers::pi / 2.0); }

double lognormal_mu(double mean) {
  return std::log(mean - 1.0) - 0.5 * kLogNormalSigma * kLogNormalSigma;
}

double draw_shifted(const AlternativeSpec& spec, RandomStream& rng) {
  switch (spec.family) {
    case Family::Gamma: return 1.0 + rng.gamma(spec.theta);
    case Family::LogNormal: return 1.0 + std::exp(spec.theta * rng.normal());
    case Family::HalfNormal: return 1.0 + spec.theta * std::fabs(rng.normal());
    default: return alt_quantile(spec, rng.uniform());
  }
}

double draw_contaminant(const MixtureSpec& spec, RandomStream& rng) {
  const double m = spec.contaminant_mean;
  switch (spec.contaminant) {
    case Contaminant::ShiftedExponential: return 1.0 + (m - 1.0) * rng.exponential();
    case Contaminant::ShiftedHalfNormal: return 1.0 + halfnormal_scale(m) * std::fabs(rng.normal());
    case Contaminant::ShiftedLogNormal:
      return 1.0 + std::exp(lognormal_mu(m) + kLogNormalSigma * rng.normal());
  }
  return 1.0;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_number(std::string_view text, std::string_view context) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("invalid number '" + std::string(text) + "' in alternative '" +
                      std::string(context) + "'");
  }
  return v;
}

}  // namespace

// Sample -------------------------------------------------------------------

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ArgumentError("sample must contain at least one observation");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || !(v > 1.0)) {
      throw DomainError("observation " + std::to_string(i + 1) + " has value " + format_number(v) +
                        "; values must lie in (1, inf)");
    }
  }
  sorted_ = values_;
  std::stable_sort(sorted_.begin(), sorted_.end());
}

double Sample::mean() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

Sample Sample::scaled(std::span<const double> raw, double divisor) {
  require_positive(divisor, "scale divisor");
  std::vector<double> v(raw.begin(), raw.end());
  for (double& x : v) x /= divisor;
  return Sample(std::move(v));
}

// Specs --------------------------------------------------------------------

AlternativeSpec AlternativeSpec::make(Family family, double theta) {
  const bool zero_ok = family == Family::Dhillon;
  if (!std::isfinite(theta) || theta < 0.0 || (!zero_ok && theta == 0.0)) {
    throw DomainError("alternative parameter must be positive, got " + format_number(theta));
  }
  return AlternativeSpec{family, theta, family == Family::Pareto ? 0.0 : 1.0};
}

std::string_view family_name(Family family) noexcept {
  switch (family) {
    case Family::Pareto: return "P";
    case Family::Gamma: return "Gamma";
    case Family::Weibull: return "W";
    case Family::LogNormal: return "LN";
    case Family::HalfNormal: return "HN";
    case Family::LinearFailureRate: return "LFR";
    case Family::BetaExponential: return "BE";
    case Family::TiltedPareto: return "TP";
    case Family::Dhillon: return "D";
  }
  return "?";
}

std::string_view contaminant_name(Contaminant contaminant) noexcept {
  switch (contaminant) {
    case Contaminant::ShiftedExponential: return "Exp";
    case Contaminant::ShiftedHalfNormal: return "HN";
    case Contaminant::ShiftedLogNormal: return "LN";
  }
  return "?";
}

std::string AlternativeSpec::label() const {
  return std::string(family_name(family)) + "(" + format_number(theta) + ")";
}

MixtureSpec MixtureSpec::make(double p, Contaminant contaminant, double contaminant_mean) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("mixing proportion must lie in [0, 1], got " + format_number(p));
  }
  if (!std::isfinite(contaminant_mean) || !(contaminant_mean > 1.0)) {
    throw DomainError("contaminant mean must exceed 1, got " + format_number(contaminant_mean));
  }
  return MixtureSpec{p, contaminant, contaminant_mean};
}

double MixtureSpec::pareto_beta() const { return contaminant_mean / (contaminant_mean - 1.0); }

std::string MixtureSpec::label() const {
  std::string out = std::string(contaminant_name(contaminant)) + "Mix(p=" + format_number(p);
  if (contaminant_mean != 3.0) out += ",mean=" + format_number(contaminant_mean);
  return out + ")";
}

std::string label(const Alternative& alt) {
  return std::visit([](const auto& s) { return s.label(); }, alt);
}

Alternative parse_alternative(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("alternative '" + std::string(text) + "' must look like name:parameter");
  }
  const std::string name = lower(text.substr(0, colon));
  std::string_view rest = text.substr(colon + 1);

  if (name.rfind("mix-", 0) == 0) {
    Contaminant c{};
    const std::string kind = name.substr(4);
    if (kind == "exp") {
      c = Contaminant::ShiftedExponential;
    } else if (kind == "hn" || kind == "halfnormal") {
      c = Contaminant::ShiftedHalfNormal;
    } else if (kind == "ln" || kind == "lognormal") {
      c = Contaminant::ShiftedLogNormal;
    } else {
      throw ConfigError("unknown mixture contaminant '" + kind + "'");
    }
    double mean = 3.0;
    const auto second = rest.find(':');
    if (second != std::string_view::npos) {
      mean = parse_number(rest.substr(second + 1), text);
      rest = rest.substr(0, second);
    }
    try {
      return MixtureSpec::make(parse_number(rest, text), c, mean);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }

  static const std::pair<const char*, Family> names[] = {
      {"pareto", Family::Pareto},       {"p", Family::Pareto},
      {"gamma", Family::Gamma},         {"g", Family::Gamma},
      {"weibull", Family::Weibull},     {"w", Family::Weibull},
      {"lognormal", Family::LogNormal}, {"ln", Family::LogNormal},
      {"halfnormal", Family::HalfNormal}, {"hn", Family::HalfNormal},
      {"lfr", Family::LinearFailureRate}, {"betaexp", Family::BetaExponential},
      {"be", Family::BetaExponential},  {"tp", Family::TiltedPareto},
      {"tiltedpareto", Family::TiltedPareto}, {"dhillon", Family::Dhillon},
      {"d", Family::Dhillon},
  };
  for (const auto& [key, family] : names) {
    if (name == key) {
      try {
        return AlternativeSpec::make(family, parse_number(rest, text));
      } catch (const DomainError& e) {
        throw ConfigError(e.what());
      }
    }
  }
  throw ConfigError("unknown alternative family '" + name + "'");
}

std::string alternative_token(const Alternative& alt) {
  if (const auto* mix = std::get_if<MixtureSpec>(&alt)) {
    std::string kind = mix->contaminant == Contaminant::ShiftedExponential ? "exp"
                       : mix->contaminant == Contaminant::ShiftedHalfNormal ? "hn"
                                                                            : "ln";
    std::string out = "mix-" + kind + ":" + format_number(mix->p);
    if (mix->contaminant_mean != 3.0) out += ":" + format_number(mix->contaminant_mean);
    return out;
  }
  const auto& spec = std::get<AlternativeSpec>(alt);
  static const char* tokens[] = {"pareto", "gamma", "weibull", "lognormal", "halfnormal",
                                 "lfr",    "betaexp", "tp",    "dhillon"};
  return std::string(tokens[static_cast<int>(spec.family)]) + ":" + format_number(spec.theta);
}

// Pareto -------------------------------------------------------------------

double pareto_cdf(double x, double beta) {
  require_positive(beta, "shape beta");
  if (!(x > 1.0)) return 0.0;
  return -std::expm1(-beta * std::log(x));
}

double pareto_quantile(double u, double beta) {
  require_positive(beta, "shape beta");
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("quantile level must lie in [0, 1)");
  return std::pow(1.0 - u, -1.0 / beta);
}

void draw_pareto(double beta, RandomStream& rng, std::span<double> out) {
  const double inv = -1.0 / beta;
  for (double& x : out) x = std::pow(1.0 - rng.uniform(), inv);
}

Sample pareto_sample(double beta, std::size_t n, RandomStream& rng) {
  require_positive(beta, "shape beta");
  if (n == 0) throw ArgumentError("sample size must be at least 1");
  std::vector<double> v(n);
  draw_pareto(beta, rng, v);
  return Sample(std::move(v));
}

// Alternatives -------------------------------------------------------------

double alt_cdf(const AlternativeSpec& spec, double x) {
  const double theta = spec.theta;
  if (spec.family == Family::Pareto) return pareto_cdf(x, theta);
  if (!(x > 1.0)) return 0.0;
  const double y = x - 1.0;
  switch (spec.family) {
    case Family::Gamma: return boost::math::gamma_p(theta, y);
    case Family::Weibull: return -std::expm1(-std::pow(y, theta));
    case Family::LogNormal: return standard_normal_cdf(std::log(y) / theta);
    case Family::HalfNormal: return std::erf(y / (theta * std::numbers::sqrt2));
    case Family::LinearFailureRate: return -std::expm1(-y - 0.5 * theta * y * y);
    case Family::BetaExponential: return std::pow(-std::expm1(-y), theta);
    case Family::TiltedPareto: return 1.0 - (1.0 + theta) / (x + theta);
    case Family::Dhillon: return -std::expm1(-std::pow(std::log(x), theta + 1.0));
    case Family::Pareto: break;
  }
  return 0.0;
}

bool has_closed_form_quantile(Family family) noexcept {
  return family != Family::Gamma && family != Family::LogNormal && family != Family::HalfNormal;
}

double alt_quantile(const AlternativeSpec& spec, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("quantile level must lie in [0, 1)");
  const double theta = spec.theta;
  // -log(1-u): the standard exponential quantile.
  const double e = -std::log1p(-u);
  switch (spec.family) {
    case Family::Pareto: return pareto_quantile(u, theta);
    case Family::Weibull: return 1.0 + std::pow(e, 1.0 / theta);
    case Family::LinearFailureRate:
      // Root of theta/2 y^2 + y = e, written to stay stable as theta -> 0.
      return 1.0 + 2.0 * e / (1.0 + std::sqrt(1.0 + 2.0 * theta * e));
    case Family::BetaExponential: return 1.0 - std::log1p(-std::pow(u, 1.0 / theta));
    case Family::TiltedPareto: return (1.0 + theta) / (1.0 - u) - theta;
    case Family::Dhillon: return std::exp(std::pow(e, 1.0 / (theta + 1.0)));
    case Family::Gamma:
    case Family::LogNormal:
    case Family::HalfNormal: break;
  }
  throw UnsupportedError("no closed-form quantile for " + spec.label());
}

Sample alt_sample(const AlternativeSpec& spec, std::size_t n, RandomStream& rng) {
  if (n == 0) throw ArgumentError("sample size must be at least 1");
  std::vector<double> v(n);
  draw(spec, rng, v);
  return Sample(std::move(v));
}

double contaminant_cdf(const MixtureSpec& spec, double x) {
  if (!(x > 1.0)) return 0.0;
  const double y = x - 1.0;
  const double m = spec.contaminant_mean;
  switch (spec.contaminant) {
    case Contaminant::ShiftedExponential: return -std::expm1(-y / (m - 1.0));
    case Contaminant::ShiftedHalfNormal:
      return std::erf(y / (halfnormal_scale(m) * std::numbers::sqrt2));
    case Contaminant::ShiftedLogNormal:
      return standard_normal_cdf((std::log(y) - lognormal_mu(m)) / kLogNormalSigma);
  }
  return 0.0;
}

double mixture_cdf(const MixtureSpec& spec, double x) {
  return spec.p * contaminant_cdf(spec, x) + (1.0 - spec.p) * pareto_cdf(x, spec.pareto_beta());
}

double contaminant_mean_analytic(const MixtureSpec& spec) {
  const double m = spec.contaminant_mean;
  switch (spec.contaminant) {
    case Contaminant::ShiftedExponential: return 1.0 + (m - 1.0);
    case Contaminant::ShiftedHalfNormal:
      return 1.0 + halfnormal_scale(m) * std::sqrt(2.0 / std::numbers::pi);
    case Contaminant::ShiftedLogNormal:
      return 1.0 + std::exp(lognormal_mu(m) + 0.5 * kLogNormalSigma * kLogNormalSigma);
  }
  return 0.0;
}

Sample mixture_sample(const MixtureSpec& spec, std::size_t n, RandomStream& rng) {
  const MixtureSpec checked = MixtureSpec::make(spec.p, spec.contaminant, spec.contaminant_mean);
  if (n == 0) throw ArgumentError("sample size must be at least 1");
  std::vector<double> v(n);
  draw(checked, rng, v);
  return Sample(std::move(v));
}

double cdf(const Alternative& alt, double x) {
  if (const auto* mix = std::get_if<MixtureSpec>(&alt)) return mixture_cdf(*mix, x);
  return alt_cdf(std::get<AlternativeSpec>(alt), x);
}

Sample sample(const Alternative& alt, std::size_t n, RandomStream& rng) {
  if (const auto* mix = std::get_if<MixtureSpec>(&alt)) return mixture_sample(*mix, n, rng);
  return alt_sample(std::get<AlternativeSpec>(alt), n, rng);
}

void draw(const Alternative& alt, RandomStream& rng, std::span<double> out) {
  if (const auto* mix = std::get_if<MixtureSpec>(&alt)) {
    const double beta = mix->pareto_beta();
    for (double& x : out) {
      x = rng.uniform() < mix->p ? draw_contaminant(*mix, rng)
                                 : std::pow(1.0 - rng.uniform(), -1.0 / beta);
    }
    return;
  }
  const auto& spec = std::get<AlternativeSpec>(alt);
  if (spec.family == Family::Pareto) {
    draw_pareto(spec.theta, rng, out);
    return;
  }
  for (double& x : out) x = draw_shifted(spec, rng);
}

}  // namespace pgof
