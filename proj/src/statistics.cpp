#include "paretogof/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "paretogof/error.hpp"

namespace pgof {

namespace {

constexpr struct {
  TestTag tag;
  const char* name;
} kTestNames[] = {
    {TestTag::MP1, "MP1"},         {TestTag::MP2, "MP2"},     {TestTag::KS, "KS"},
    {TestTag::CV, "CV"},           {TestTag::AD, "AD"},       {TestTag::ZA, "ZA"},
    {TestTag::MellinG, "G"},       {TestTag::ExpKS, "ExpKS"}, {TestTag::ExpCV, "ExpCV"},
    {TestTag::ExpAD, "ExpAD"},     {TestTag::ExpZA, "ExpZA"},
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<double> sorted_logs(const Sample& sample) {
  const auto sorted = sample.sorted();
  std::vector<double> logs(sorted.size());
  std::transform(sorted.begin(), sorted.end(), logs.begin(), [](double x) { return std::log(x); });
  return logs;
}

void require_shape(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("shape must be positive and finite, got " + std::to_string(beta));
  }
}

StatisticValue make_value(TestTag tag, double value, std::size_t n, double beta, bool clamped = false,
                          double a = 1.0) {
  return StatisticValue{TestKind{tag, a}, value, n, beta, clamped};
}

struct EdfValues {
  std::vector<double> f, log_f, log_s;
  std::size_t clamped = 0;
};

EdfValues edf(std::span<const double> logs, double beta, DegeneracyPolicy policy) {
  EdfValues out;
  out.clamped = kernel::edf_values(logs, beta, policy, out.f, out.log_f, out.log_s);
  return out;
}

double edf_statistic(TestTag tag, const EdfValues& e) {
  switch (tag) {
    case TestTag::KS:
    case TestTag::ExpKS: return kernel::ks(e.f);
    case TestTag::CV:
    case TestTag::ExpCV: return kernel::cv(e.f);
    case TestTag::AD:
    case TestTag::ExpAD: return kernel::ad(e.log_f, e.log_s);
    case TestTag::ZA:
    case TestTag::ExpZA: return kernel::za(e.log_f, e.log_s);
    default: break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

TestTag pareto_counterpart(TestTag tag) {
  switch (tag) {
    case TestTag::ExpKS: return TestTag::KS;
    case TestTag::ExpCV: return TestTag::CV;
    case TestTag::ExpAD: return TestTag::AD;
    case TestTag::ExpZA: return TestTag::ZA;
    default: return tag;
  }
}

double evaluate_on_logs(const TestKind& kind, std::span<const double> logs, double beta,
                        DegeneracyPolicy policy, bool& clamped) {
  switch (kind.tag) {
    case TestTag::MP1: return kernel::mp1(logs, beta);
    case TestTag::MP2: return kernel::mp2(logs, beta);
    case TestTag::MellinG: return kernel::mellin_g(logs, beta, kind.tuning_a);
    default: {
      const EdfValues e = edf(logs, beta, policy);
      clamped = e.clamped > 0;
      return edf_statistic(kind.tag, e);
    }
  }
}

}  // namespace

std::string_view test_name(TestTag tag) noexcept {
  for (const auto& entry : kTestNames) {
    if (entry.tag == tag) return entry.name;
  }
  return "?";
}

std::optional<TestTag> parse_test_tag(std::string_view text) noexcept {
  const std::string key = lower(text);
  for (const auto& entry : kTestNames) {
    if (key == lower(entry.name)) return entry.tag;
  }
  if (key == "mellin" || key == "melling" || key == "g1") return TestTag::MellinG;
  if (key == "cm") return TestTag::CV;
  return std::nullopt;
}

bool is_exponentiality_test(TestTag tag) noexcept {
  return tag == TestTag::ExpKS || tag == TestTag::ExpCV || tag == TestTag::ExpAD ||
         tag == TestTag::ExpZA;
}

TestKind TestKind::make(TestTag tag, double tuning_a) {
  if (!(tuning_a > 0.0) || !std::isfinite(tuning_a)) {
    throw DomainError("Mellin tuning parameter must be positive");
  }
  return TestKind{tag, tag == TestTag::MellinG ? tuning_a : 1.0};
}

std::string TestKind::name() const {
  std::string out(test_name(tag));
  if (tag == TestTag::MellinG && tuning_a != 1.0) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "(a=%g)", tuning_a);
    out += buf;
  }
  return out;
}

// Mellin weights -----------------------------------------------------------

double mellin_i0(double x, double a) { return 1.0 / (a + std::log(x)); }

double mellin_i1(double x, double a) {
  const double l = std::log(x);
  return (1.0 - a - l) / ((a + l) * (a + l));
}

double mellin_i2(double x, double a) {
  const double l = std::log(x);
  const double c = a + l;
  return (2.0 - 2.0 * a + a * a + 2.0 * (a - 1.0) * l + l * l) / (c * c * c);
}

// Kernels ------------------------------------------------------------------

namespace kernel {

double mp1(std::span<const double> logs, double beta) noexcept {
  const std::size_t n = logs.size();
  const double nd = static_cast<double>(n);
  double single = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    single += std::exp(-1.5 * beta * logs[i]);
    weighted += order_weight(i + 1, n) * std::exp(-0.5 * beta * logs[i]);
  }
  return 2.0 * single / (3.0 * nd) - weighted / (nd * nd) + 8.0 / 15.0;
}

double mp2(std::span<const double> logs, double beta) noexcept {
  const std::size_t n = logs.size();
  const double nd = static_cast<double>(n);
  double weighted = 0.0;
  double weighted_log = 0.0;
  double bracket = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double l = logs[i];
    const double s = std::exp(-beta * l);
    const double v = order_weight(i + 1, n);
    weighted += v * s;
    weighted_log += v * s * l;
    bracket += -std::expm1(-2.0 * beta * l) / (2.0 * beta) - s * s * l;
  }
  return 10.0 / 9.0 - weighted / (nd * nd) - beta * weighted_log / (nd * nd) - beta * bracket / nd;
}

double mellin_g(std::span<const double> logs, double beta, double a) noexcept {
  const std::size_t n = logs.size();
  const double nd = static_cast<double>(n);
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  auto accumulate = [&](double c, double weight) {
    const double inv = 1.0 / c;
    const double inv2 = inv * inv;
    s0 += weight * inv;
    s1 += weight * (1.0 - c) * inv2;
    s2 += weight * (2.0 - 2.0 * c + c * c) * inv2 * inv;
  };
  double single0 = 0.0, single1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    accumulate(a + 2.0 * logs[j], 1.0);
    for (std::size_t k = j + 1; k < n; ++k) accumulate(a + logs[j] + logs[k], 2.0);
    const double c = a + logs[j];
    single0 += 1.0 / c;
    single1 += (1.0 - c) / (c * c);
  }
  const double b1 = beta + 1.0;
  return (b1 * b1 * s0 + s2 + 2.0 * b1 * s1) / nd +
         beta * (nd * beta / a - 2.0 * b1 * single0 - 2.0 * single1);
}

std::size_t edf_values(std::span<const double> logs, double beta, DegeneracyPolicy policy,
                       std::vector<double>& f, std::vector<double>& log_f,
                       std::vector<double>& log_s) {
  const std::size_t n = logs.size();
  f.resize(n);
  log_f.resize(n);
  log_s.resize(n);
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ls = -beta * logs[i];
    double fi = -std::expm1(ls);
    double lf = std::log(fi);
    double lsv = ls;
    if (!std::isfinite(lf) || !std::isfinite(lsv)) {
      if (policy == DegeneracyPolicy::Throw) {
        throw DegenerateError("fitted distribution function is 0 or 1 at order statistic " +
                              std::to_string(i + 1));
      }
      fi = std::clamp(fi, kDegeneracyEpsilon, 1.0 - kDegeneracyEpsilon);
      lf = std::log(fi);
      lsv = std::log1p(-fi);
      ++clamped;
    }
    f[i] = fi;
    log_f[i] = lf;
    log_s[i] = lsv;
  }
  return clamped;
}

double ks(std::span<const double> f) noexcept {
  const double nd = static_cast<double>(f.size());
  double d = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double j = static_cast<double>(i + 1);
    d = std::max({d, j / nd - f[i], f[i] - (j - 1.0) / nd});
  }
  return d;
}

double cv(std::span<const double> f) noexcept {
  const double nd = static_cast<double>(f.size());
  double sum = 1.0 / (12.0 * nd);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double dev = f[i] - (2.0 * static_cast<double>(i + 1) - 1.0) / (2.0 * nd);
    sum += dev * dev;
  }
  return sum;
}

double ad(std::span<const double> log_f, std::span<const double> log_s) noexcept {
  const std::size_t n = log_f.size();
  const double nd = static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 2.0 * static_cast<double>(i + 1) - 1.0;
    sum += w * (log_f[i] + log_s[n - 1 - i]);
  }
  return -nd - sum / nd;
}

double za(std::span<const double> log_f, std::span<const double> log_s) noexcept {
  const std::size_t n = log_f.size();
  const double nd = static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double j = static_cast<double>(i + 1);
    sum += log_f[i] / (nd - j + 0.5) + log_s[i] / (j - 0.5);
  }
  return -sum;
}

}  // namespace kernel

// Public API ---------------------------------------------------------------

StatisticValue mp1(const Sample& sample, double beta) {
  require_shape(beta);
  return make_value(TestTag::MP1, kernel::mp1(sorted_logs(sample), beta), sample.size(), beta);
}

StatisticValue mp2(const Sample& sample, double beta) {
  require_shape(beta);
  return make_value(TestTag::MP2, kernel::mp2(sorted_logs(sample), beta), sample.size(), beta);
}

StatisticValue ks(const Sample& sample, double beta) {
  require_shape(beta);
  const EdfValues e = edf(sorted_logs(sample), beta, DegeneracyPolicy::Clamp);
  return make_value(TestTag::KS, kernel::ks(e.f), sample.size(), beta);
}

StatisticValue cv(const Sample& sample, double beta) {
  require_shape(beta);
  const EdfValues e = edf(sorted_logs(sample), beta, DegeneracyPolicy::Clamp);
  return make_value(TestTag::CV, kernel::cv(e.f), sample.size(), beta);
}

StatisticValue ad(const Sample& sample, double beta, DegeneracyPolicy policy) {
  require_shape(beta);
  const EdfValues e = edf(sorted_logs(sample), beta, policy);
  return make_value(TestTag::AD, kernel::ad(e.log_f, e.log_s), sample.size(), beta, e.clamped > 0);
}

StatisticValue za(const Sample& sample, double beta, DegeneracyPolicy policy) {
  require_shape(beta);
  const EdfValues e = edf(sorted_logs(sample), beta, policy);
  return make_value(TestTag::ZA, kernel::za(e.log_f, e.log_s), sample.size(), beta, e.clamped > 0);
}

StatisticValue mellin_g(const Sample& sample, double beta, double a) {
  require_shape(beta);
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("Mellin tuning parameter must be positive");
  return make_value(TestTag::MellinG, kernel::mellin_g(sorted_logs(sample), beta, a), sample.size(),
                    beta, false, a);
}

std::vector<StatisticValue> exp_edf_suite(const Sample& sample, DegeneracyPolicy policy) {
  // Y = log X is exponential under the null; the rate MLE is n / sum(Y) and
  // F(y) = 1 - exp(-rate * y).
  const std::vector<double> y = sorted_logs(sample);
  const double rate = mle_from_logs(y);
  if (!std::isfinite(rate)) throw DomainError("exponential rate estimate is undefined");
  const EdfValues e = edf(y, rate, policy);
  std::vector<StatisticValue> out;
  for (const TestTag tag : kExponentialityTests) {
    const bool uses_logs = tag == TestTag::ExpAD || tag == TestTag::ExpZA;
    out.push_back(make_value(tag, edf_statistic(tag, e), sample.size(), rate, uses_logs && e.clamped > 0));
  }
  return out;
}

StatisticValue statistic_at(const TestKind& kind, const Sample& sample, double beta,
                            DegeneracyPolicy policy) {
  if (is_exponentiality_test(kind.tag)) {
    for (const StatisticValue& v : exp_edf_suite(sample, policy)) {
      if (v.kind.tag == kind.tag) return v;
    }
  }
  require_shape(beta);
  bool clamped = false;
  const double value = evaluate_on_logs(kind, sorted_logs(sample), beta, policy, clamped);
  return StatisticValue{kind, value, sample.size(), beta, clamped};
}

StatisticValue evaluate(const TestKind& kind, const Sample& sample, Estimator estimator,
                        DegeneracyPolicy policy) {
  if (is_exponentiality_test(kind.tag)) return statistic_at(kind, sample, 0.0, policy);
  std::vector<double> logs = sorted_logs(sample);
  double beta = 0.0;
  if (estimator == Estimator::MLE) {
    beta = mle_from_logs(logs);
    if (!std::isfinite(beta)) throw DomainError("maximum likelihood estimate is undefined");
    for (double& l : logs) l *= beta;
    bool clamped = false;
    const double value = evaluate_on_logs(kind, logs, 1.0, policy, clamped);
    return StatisticValue{kind, value, sample.size(), beta, clamped};
  }
  beta = estimate_mme(sample).beta;
  bool clamped = false;
  const double value = evaluate_on_logs(kind, logs, beta, policy, clamped);
  return StatisticValue{kind, value, sample.size(), beta, clamped};
}

// Engine -------------------------------------------------------------------

bool StatisticEngine::evaluate(std::span<const TestKind> kinds, std::span<const double> sorted,
                               Estimator estimator, std::span<double> out, double* beta_used) {
  const std::size_t n = sorted.size();
  logs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) logs_[i] = std::log(sorted[i]);

  const double mle = mle_from_logs(logs_);
  double beta = 0.0;
  if (estimator == Estimator::MLE) {
    beta = mle;
  } else {
    beta = mme_from_values(sorted);
  }
  if (!std::isfinite(beta)) return false;
  if (beta_used != nullptr) *beta_used = beta;

  // Working logs and shape for the Pareto tests under the chosen convention.
  std::span<const double> work = logs_;
  double shape = beta;
  if (estimator == Estimator::MLE) {
    scaled_logs_.resize(n);
    for (std::size_t i = 0; i < n; ++i) scaled_logs_[i] = mle * logs_[i];
    work = scaled_logs_;
    shape = 1.0;
  }

  bool have_edf = false;
  bool have_exp_edf = false;
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    const TestTag tag = kinds[k].tag;
    switch (tag) {
      case TestTag::MP1: out[k] = kernel::mp1(work, shape); break;
      case TestTag::MP2: out[k] = kernel::mp2(work, shape); break;
      case TestTag::MellinG: out[k] = kernel::mellin_g(work, shape, kinds[k].tuning_a); break;
      default: {
        const bool exp_test = is_exponentiality_test(tag);
        if (exp_test) {
          if (!std::isfinite(mle)) return false;
          if (!have_exp_edf) {
            clamped_ += kernel::edf_values(logs_, mle, DegeneracyPolicy::Clamp, f_, log_f_, log_s_);
            have_exp_edf = true;
            have_edf = false;
          }
        } else if (!have_edf) {
          clamped_ += kernel::edf_values(work, shape, DegeneracyPolicy::Clamp, f_, log_f_, log_s_);
          have_edf = true;
          have_exp_edf = false;
        }
        const TestTag base = pareto_counterpart(tag);
        if (base == TestTag::KS) out[k] = kernel::ks(f_);
        else if (base == TestTag::CV) out[k] = kernel::cv(f_);
        else if (base == TestTag::AD) out[k] = kernel::ad(log_f_, log_s_);
        else out[k] = kernel::za(log_f_, log_s_);
      }
    }
  }
  return true;
}

}  // namespace pgof
