#ifndef PARETOGOF_STATISTICS_HPP
#define PARETOGOF_STATISTICS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paretogof/distributions.hpp"
#include "paretogof/estimation.hpp"

namespace pgof {

enum class TestTag { MP1, MP2, KS, CV, AD, ZA, MellinG, ExpKS, ExpCV, ExpAD, ExpZA };

std::string_view test_name(TestTag tag) noexcept;
std::optional<TestTag> parse_test_tag(std::string_view text) noexcept;

/// Tests for exponentiality applied to log X with the rate MLE. They carry
/// their own estimator and ignore the Pareto estimator choice.
bool is_exponentiality_test(TestTag tag) noexcept;

/// The Pareto battery in display order: KS, CV, AD, ZA, G, MP1, MP2.
inline constexpr std::array<TestTag, 7> kParetoTests{TestTag::KS, TestTag::CV,      TestTag::AD,
                                                     TestTag::ZA, TestTag::MellinG, TestTag::MP1,
                                                     TestTag::MP2};
inline constexpr std::array<TestTag, 4> kExponentialityTests{TestTag::ExpKS, TestTag::ExpCV,
                                                             TestTag::ExpAD, TestTag::ExpZA};

struct TestKind {
  TestTag tag = TestTag::MP2;
  /// Weight decay for the Mellin statistic; unused by every other test.
  double tuning_a = 1.0;

  static TestKind make(TestTag tag, double tuning_a = 1.0);
  std::string name() const;
  friend bool operator==(const TestKind&, const TestKind&) = default;
};

enum class DegeneracyPolicy {
  Throw,  ///< DegenerateError when log F or log(1 - F) is not finite.
  Clamp,  ///< Clamp F to [1e-15, 1 - 1e-15] and set StatisticValue::clamped.
};

inline constexpr double kDegeneracyEpsilon = 1e-15;

struct StatisticValue {
  TestKind kind;
  double value = 0.0;
  std::size_t n = 0;
  double beta_used = 0.0;
  bool clamped = false;
};

// Direct evaluation with a given shape ------------------------------------

StatisticValue mp1(const Sample& sample, double beta);
StatisticValue mp2(const Sample& sample, double beta);
StatisticValue ks(const Sample& sample, double beta);
StatisticValue cv(const Sample& sample, double beta);
StatisticValue ad(const Sample& sample, double beta, DegeneracyPolicy policy = DegeneracyPolicy::Throw);
StatisticValue za(const Sample& sample, double beta, DegeneracyPolicy policy = DegeneracyPolicy::Throw);
StatisticValue mellin_g(const Sample& sample, double beta, double a = 1.0);

/// KS, CV, AD and ZA for exponentiality of log X, in that order.
std::vector<StatisticValue> exp_edf_suite(const Sample& sample,
                                          DegeneracyPolicy policy = DegeneracyPolicy::Throw);

/// Any Pareto test at a given shape (exponentiality tests ignore `beta`).
StatisticValue statistic_at(const TestKind& kind, const Sample& sample, double beta,
                            DegeneracyPolicy policy = DegeneracyPolicy::Throw);

/// Evaluation under an estimator convention. The MLE path evaluates on the
/// pivotal transform X^b with shape 1, which makes every statistic's null
/// distribution free of the true shape; the MME path plugs the moment
/// estimate into the statistic on the raw data.
StatisticValue evaluate(const TestKind& kind, const Sample& sample, Estimator estimator,
                        DegeneracyPolicy policy = DegeneracyPolicy::Throw);

// Mellin weight integrals for w(t) = exp(-a t).
double mellin_i0(double x, double a);
double mellin_i1(double x, double a);
double mellin_i2(double x, double a);

/// v_{j,n} = (n - j + 1)^2 - (n - j)^2 = 2(n - j) + 1, j = 1..n.
inline double order_weight(std::size_t j, std::size_t n) noexcept {
  return 2.0 * static_cast<double>(n - j) + 1.0;
}

/// Reusable evaluator for simulation loops: one allocation per worker, all
/// requested statistics from a single sort and log pass.
class StatisticEngine {
 public:
  /// `sorted` must be ascending. Returns false (leaving `out` untouched)
  /// when the estimator is undefined for these values. Degenerate EDF values
  /// are clamped; `clamped_count()` accumulates across calls.
  bool evaluate(std::span<const TestKind> kinds, std::span<const double> sorted,
                Estimator estimator, std::span<double> out, double* beta_used = nullptr);

  std::size_t clamped_count() const noexcept { return clamped_; }

 private:
  std::vector<double> logs_;
  std::vector<double> scaled_logs_;
  std::vector<double> f_;
  std::vector<double> log_f_;
  std::vector<double> log_s_;
  std::size_t clamped_ = 0;
};

namespace kernel {

// All kernels take ascending log-observations and a shape.
double mp1(std::span<const double> logs, double beta) noexcept;
double mp2(std::span<const double> logs, double beta) noexcept;
double mellin_g(std::span<const double> logs, double beta, double a) noexcept;

/// EDF values F = 1 - exp(-beta L) with logs of F and 1 - F. Returns the
/// number of clamped entries; throws DegenerateError under Throw.
std::size_t edf_values(std::span<const double> logs, double beta, DegeneracyPolicy policy,
                       std::vector<double>& f, std::vector<double>& log_f,
                       std::vector<double>& log_s);

double ks(std::span<const double> f) noexcept;
double cv(std::span<const double> f) noexcept;
double ad(std::span<const double> log_f, std::span<const double> log_s) noexcept;
double za(std::span<const double> log_f, std::span<const double> log_s) noexcept;

}  // namespace kernel

}  // namespace pgof

#endif  // PARETOGOF_STATISTICS_HPP
