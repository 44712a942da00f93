#ifndef PARETOGOF_INFERENCE_HPP
#define PARETOGOF_INFERENCE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paretogof/distributions.hpp"
#include "paretogof/estimation.hpp"
#include "paretogof/statistics.hpp"

namespace pgof {

/// Upper-tail empirical quantile: the ceil((1 - alpha) * m)-th smallest of
/// m values (1-based, clamped to [1, m]). alpha = 1 gives the minimum.
double upper_quantile(std::span<const double> values, double alpha);

/// Statistics of `reps` P(1) samples of size n under the MLE convention.
/// Result is indexed [kind][replication].
std::vector<std::vector<double>> simulate_null_statistics(std::span<const TestKind> kinds,
                                                          std::size_t n, std::size_t reps,
                                                          std::uint64_t seed, std::size_t jobs = 1);

/// Monte Carlo critical value for a pivotal (MLE-path) statistic. The MME
/// path has no parameter-free null distribution and raises UnsupportedError;
/// use warp_speed_power or bootstrap_pvalue instead. Requires reps >= 1000.
double null_critical_value(const TestKind& kind, Estimator estimator, std::size_t n, double alpha,
                           std::size_t reps, std::uint64_t seed, std::size_t jobs = 1);

struct CriticalValueEntry {
  TestKind kind;
  Estimator estimator = Estimator::MLE;
  std::size_t n = 0;
  double alpha = 0.05;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
};

/// Critical values keyed by (test, estimator, n, alpha). Persisted as a
/// versioned CSV-like text file.
class CriticalValueTable {
 public:
  static constexpr int kFormatVersion = 1;

  /// Simulates once per n and fills an entry for every (kind, alpha).
  void generate(std::span<const TestKind> kinds, std::size_t n, std::span<const double> alphas,
                std::size_t reps, std::uint64_t seed, std::size_t jobs = 1);

  /// Replaces any entry with the same key.
  void insert(const CriticalValueEntry& entry);

  std::optional<CriticalValueEntry> find(const TestKind& kind, std::size_t n, double alpha) const;

  /// Throws ConfigError when the entry is missing.
  double value(const TestKind& kind, std::size_t n, double alpha) const;

  const std::vector<CriticalValueEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::string to_text() const;
  static CriticalValueTable from_text(const std::string& text);
  void save(const std::filesystem::path& path) const;
  static CriticalValueTable load(const std::filesystem::path& path);

 private:
  std::vector<CriticalValueEntry> entries_;
};

struct PowerEstimate {
  Alternative alternative;
  TestKind kind;
  Estimator estimator = Estimator::MLE;
  std::size_t n = 0;
  double alpha = 0.05;
  std::size_t rejections = 0;
  std::size_t replications = 0;
  /// Replications dropped after exhausting redraws of a degenerate sample.
  std::size_t failures = 0;
  std::uint64_t seed = 0;

  double power() const noexcept;
  /// Binomial Monte Carlo standard error sqrt(p(1-p)/reps).
  double std_error() const noexcept;
};

/// Power of the MLE-path test against tabulated null critical values.
std::vector<PowerEstimate> power_fixed_critical(std::span<const TestKind> kinds,
                                                const Alternative& alt, std::size_t n, double alpha,
                                                std::size_t reps, const CriticalValueTable& table,
                                                std::uint64_t seed, std::size_t jobs = 1);
PowerEstimate power_fixed_critical(const TestKind& kind, const Alternative& alt, std::size_t n,
                                   double alpha, std::size_t reps, const CriticalValueTable& table,
                                   std::uint64_t seed, std::size_t jobs = 1);

/// Warp-speed bootstrap power: one parametric bootstrap sample per Monte
/// Carlo sample, with the pooled bootstrap statistics supplying a single
/// critical value. Works for either estimator.
std::vector<PowerEstimate> warp_speed_power(std::span<const TestKind> kinds, Estimator estimator,
                                            const Alternative& alt, std::size_t n, double alpha,
                                            std::size_t reps, std::uint64_t seed,
                                            std::size_t jobs = 1);
PowerEstimate warp_speed_power(const TestKind& kind, Estimator estimator, const Alternative& alt,
                               std::size_t n, double alpha, std::size_t reps, std::uint64_t seed,
                               std::size_t jobs = 1);

struct TestResult {
  TestKind kind;
  Estimator estimator = Estimator::MLE;
  double statistic = 0.0;
  double beta = 0.0;
  std::optional<double> critical_value;
  std::optional<double> p_value;
  std::size_t replications = 0;

  /// p <= alpha when a p-value is present, otherwise statistic > critical value.
  bool rejects(double alpha) const;
};

/// Parametric bootstrap p-value (1 + #{T* >= T}) / (B + 1) with B resamples
/// from P(estimated shape).
std::vector<TestResult> bootstrap_pvalues(std::span<const TestKind> kinds, Estimator estimator,
                                          const Sample& sample, std::size_t resamples,
                                          std::uint64_t seed, std::size_t jobs = 1);
TestResult bootstrap_pvalue(const TestKind& kind, Estimator estimator, const Sample& sample,
                            std::size_t resamples, std::uint64_t seed, std::size_t jobs = 1);

/// MLE-path p-value from simulated P(1) statistics (same counting rule).
TestResult null_distribution_pvalue(const TestKind& kind, const Sample& sample, std::size_t reps,
                                    std::uint64_t seed, std::size_t jobs = 1);

/// Number of redraws allowed when an estimator is undefined for a replication.
inline constexpr int kMaxRedraws = 10;

}  // namespace pgof

#endif  // PARETOGOF_INFERENCE_HPP
