#ifndef PARETOGOF_STUDY_HPP
#define PARETOGOF_STUDY_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paretogof/golf.hpp"
#include "paretogof/inference.hpp"

namespace pgof {

struct ReplicationCounts {
  std::size_t critical = 100'000;
  std::size_t power = 10'000;
  std::size_t warp_speed = 50'000;
};

/// Smallest replication count allowed after desk-scaling.
inline constexpr std::size_t kMinScaledReplications = 1000;

struct StudyConfig {
  std::vector<std::size_t> sample_sizes{20, 30};
  double alpha = 0.05;
  std::vector<TestKind> tests;
  std::vector<Estimator> estimators{Estimator::MME, Estimator::MLE};
  std::vector<Alternative> alternatives;
  /// Full-scale counts; `scale_factor` in (0, 1] shrinks them for desk runs.
  ReplicationCounts replications;
  double scale_factor = 0.1;
  std::uint64_t seed = 20230601;
  std::size_t jobs = 1;
  /// Reuses matching entries from this file and writes new ones back.
  std::optional<std::filesystem::path> critical_value_cache;

  /// Seven Pareto tests, both estimators, the fixed-alternative grid.
  static StudyConfig defaults();

  ReplicationCounts effective_replications() const;
  /// Throws ConfigError describing the first problem found.
  void validate() const;

  /// Overlays keys present in a JSON object onto this config.
  void apply_json(const std::string& json_text);
  std::string to_json() const;
};

/// Null rows P(2), P(5), P(10) followed by the fixed alternatives, with the
/// parameter values used in the reference power tables.
std::vector<Alternative> fixed_alternatives_grid();

/// Mixing proportions 0.1, 0.3, 0.5, 0.7, 0.9 against the given contaminant.
std::vector<Alternative> mixture_grid(Contaminant contaminant);

struct PowerColumn {
  TestKind kind;
  Estimator estimator;
};

struct PowerCell {
  std::optional<PowerEstimate> estimate;
  std::string error;
};

struct PowerTable {
  std::size_t n = 0;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  ReplicationCounts replications;
  std::vector<Alternative> rows;
  std::vector<PowerColumn> columns;
  std::vector<std::vector<PowerCell>> cells;  // [row][column]
  double wall_seconds = 0.0;

  const PowerCell* cell(std::size_t row, TestTag tag, Estimator estimator) const;
};

/// Column layout: each test with the MME then the MLE (configured
/// estimators only); exponentiality tests get a single column.
std::vector<PowerColumn> power_columns(const StudyConfig& config);

using ProgressFn = std::function<void(const std::string&)>;

/// One table per configured sample size. MLE cells use simulated null
/// critical values, MME cells use warp-speed bootstrap. A failing cell is
/// recorded in the cell and does not abort the run.
std::vector<PowerTable> run_power_table(const StudyConfig& config, const ProgressFn& progress = {});

/// Statistic and bootstrap p-value per (test, estimator) on a golf dataset.
std::vector<TestResult> run_golf_application(Tour tour, const std::vector<Estimator>& estimators,
                                             const std::vector<TestKind>& tests,
                                             std::size_t resamples, std::uint64_t seed,
                                             std::size_t jobs = 1,
                                             double scale_divisor = kGolfScaleDivisor);

/// Statistics and p-values for arbitrary data, estimator-major order.
std::vector<TestResult> run_test_battery(const Sample& sample,
                                         const std::vector<Estimator>& estimators,
                                         const std::vector<TestKind>& tests, std::size_t resamples,
                                         std::uint64_t seed, std::size_t jobs = 1);

// Rendering ----------------------------------------------------------------

enum class TableFormat { Csv, Markdown };

/// Markdown shows integer percentages; CSV is long-format with power to four
/// decimals plus standard error and counts.
std::string render_table(const PowerTable& table, TableFormat format);

/// Tables in the shape of the golf results: a statistic and p-value column
/// pair per estimator.
std::string render_table(const std::vector<TestResult>& results, TableFormat format, double alpha);

std::string render_table(const CriticalValueTable& table, TableFormat format);

/// JSON manifest: config, seeds, replication counts, timings, version.
std::string study_manifest(const StudyConfig& config, const std::vector<PowerTable>& tables);

std::string_view library_version() noexcept;

}  // namespace pgof

#endif  // PARETOGOF_STUDY_HPP
