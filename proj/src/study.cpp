#include "paretogof/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>

#include <json.hpp>

#include "paretogof/error.hpp"

namespace pgof {

namespace {

using json = nlohmann::json;

std::vector<TestKind> default_tests() {
  std::vector<TestKind> out;
  for (const TestTag tag : kParetoTests) out.push_back(TestKind::make(tag));
  return out;
}

bool contains(const std::vector<TestKind>& kinds, const TestKind& kind) {
  return std::find(kinds.begin(), kinds.end(), kind) != kinds.end();
}

bool has_estimator(const StudyConfig& config, Estimator e) {
  return std::find(config.estimators.begin(), config.estimators.end(), e) !=
         config.estimators.end();
}

std::size_t scaled_count(std::size_t full, double factor) {
  const auto scaled = static_cast<std::size_t>(std::llround(static_cast<double>(full) * factor));
  return std::max(kMinScaledReplications, scaled);
}

}  // namespace

std::string_view library_version() noexcept { return "0.1.0"; }

// Config -------------------------------------------------------------------

StudyConfig StudyConfig::defaults() {
  StudyConfig c;
  c.tests = default_tests();
  c.alternatives = fixed_alternatives_grid();
  return c;
}

ReplicationCounts StudyConfig::effective_replications() const {
  return ReplicationCounts{scaled_count(replications.critical, scale_factor),
                           scaled_count(replications.power, scale_factor),
                           scaled_count(replications.warp_speed, scale_factor)};
}

void StudyConfig::validate() const {
  if (sample_sizes.empty()) throw ConfigError("at least one sample size is required");
  for (const std::size_t n : sample_sizes) {
    if (n < 2) throw ConfigError("sample sizes must be at least 2");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (tests.empty()) throw ConfigError("at least one test is required");
  if (estimators.empty()) throw ConfigError("at least one estimator is required");
  if (!(scale_factor > 0.0 && scale_factor <= 1.0)) {
    throw ConfigError("desk-scale factor must lie in (0, 1]");
  }
  if (replications.critical == 0 || replications.power == 0 || replications.warp_speed == 0) {
    throw ConfigError("replication counts must be positive");
  }
  if (jobs == 0) throw ConfigError("jobs must be at least 1");
  for (const auto& k : tests) {
    if (!(k.tuning_a > 0.0)) throw ConfigError("Mellin tuning parameter must be positive");
  }
}

void StudyConfig::apply_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    if (j.contains("sample_sizes")) sample_sizes = j.at("sample_sizes").get<std::vector<std::size_t>>();
    if (j.contains("alpha")) alpha = j.at("alpha").get<double>();
    const double a = j.value("tuning_a", 1.0);
    if (j.contains("tests")) {
      tests.clear();
      for (const auto& name : j.at("tests")) {
        const auto tag = parse_test_tag(name.get<std::string>());
        if (!tag) throw ConfigError("unknown test '" + name.get<std::string>() + "'");
        tests.push_back(TestKind::make(*tag, a));
      }
    } else if (j.contains("tuning_a")) {
      for (auto& k : tests) k = TestKind::make(k.tag, a);
    }
    if (j.contains("estimators")) {
      estimators.clear();
      for (const auto& name : j.at("estimators")) {
        const auto e = parse_estimator(name.get<std::string>());
        if (!e) throw ConfigError("unknown estimator '" + name.get<std::string>() + "'");
        estimators.push_back(*e);
      }
    }
    if (j.contains("alternatives")) {
      alternatives.clear();
      for (const auto& token : j.at("alternatives")) {
        alternatives.push_back(parse_alternative(token.get<std::string>()));
      }
    }
    if (j.contains("replications")) {
      const auto& r = j.at("replications");
      replications.critical = r.value("critical", replications.critical);
      replications.power = r.value("power", replications.power);
      replications.warp_speed = r.value("warp_speed", replications.warp_speed);
    }
    if (j.contains("scale_factor")) scale_factor = j.at("scale_factor").get<double>();
    if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("jobs")) jobs = j.at("jobs").get<std::size_t>();
    if (j.contains("critical_value_cache")) {
      critical_value_cache = j.at("critical_value_cache").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

std::string StudyConfig::to_json() const {
  json j;
  j["sample_sizes"] = sample_sizes;
  j["alpha"] = alpha;
  j["tests"] = json::array();
  for (const auto& k : tests) j["tests"].push_back(std::string(test_name(k.tag)));
  const auto mellin = std::find_if(tests.begin(), tests.end(),
                                   [](const TestKind& k) { return k.tag == TestTag::MellinG; });
  j["tuning_a"] = mellin != tests.end() ? mellin->tuning_a : 1.0;
  j["estimators"] = json::array();
  for (const auto e : estimators) j["estimators"].push_back(std::string(estimator_name(e)));
  j["alternatives"] = json::array();
  for (const auto& alt : alternatives) j["alternatives"].push_back(alternative_token(alt));
  j["replications"] = {{"critical", replications.critical},
                       {"power", replications.power},
                       {"warp_speed", replications.warp_speed}};
  j["scale_factor"] = scale_factor;
  j["seed"] = seed;
  j["jobs"] = jobs;
  if (critical_value_cache) j["critical_value_cache"] = critical_value_cache->string();
  return j.dump(2);
}

std::vector<Alternative> fixed_alternatives_grid() {
  const std::pair<Family, std::vector<double>> grid[] = {
      {Family::Pareto, {2, 5, 10}},
      {Family::Gamma, {0.8, 1, 1.2}},
      {Family::Weibull, {0.8, 1.2, 1.5}},
      {Family::LogNormal, {1, 1.5, 2.5}},
      {Family::HalfNormal, {0.5, 1, 1.2}},
      {Family::LinearFailureRate, {0.2, 0.8, 1}},
      {Family::BetaExponential, {0.8, 1, 1.5}},
      {Family::TiltedPareto, {1, 2, 3}},
      {Family::Dhillon, {0.4, 0.6, 0.8}},
  };
  std::vector<Alternative> out;
  for (const auto& [family, thetas] : grid) {
    for (const double t : thetas) out.emplace_back(AlternativeSpec::make(family, t));
  }
  return out;
}

std::vector<Alternative> mixture_grid(Contaminant contaminant) {
  std::vector<Alternative> out;
  for (const double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    out.emplace_back(MixtureSpec::make(p, contaminant));
  }
  return out;
}

std::vector<PowerColumn> power_columns(const StudyConfig& config) {
  std::vector<PowerColumn> cols;
  for (const auto& kind : config.tests) {
    if (is_exponentiality_test(kind.tag)) {
      cols.push_back({kind, Estimator::MLE});
      continue;
    }
    for (const Estimator e : {Estimator::MME, Estimator::MLE}) {
      if (has_estimator(config, e)) cols.push_back({kind, e});
    }
  }
  return cols;
}

const PowerCell* PowerTable::cell(std::size_t row, TestTag tag, Estimator estimator) const {
  if (row >= cells.size()) return nullptr;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const bool estimator_matches =
        is_exponentiality_test(tag) || columns[c].estimator == estimator;
    if (columns[c].kind.tag == tag && estimator_matches) return &cells[row][c];
  }
  return nullptr;
}

// Power study --------------------------------------------------------------

std::vector<PowerTable> run_power_table(const StudyConfig& config, const ProgressFn& progress) {
  config.validate();
  const ReplicationCounts counts = config.effective_replications();
  const std::vector<PowerColumn> columns = power_columns(config);

  std::vector<TestKind> fixed_kinds;  // MLE path and exponentiality tests
  std::vector<TestKind> warp_kinds;   // MME path
  for (const auto& col : columns) {
    auto& target = col.estimator == Estimator::MLE ? fixed_kinds : warp_kinds;
    if (!contains(target, col.kind)) target.push_back(col.kind);
  }

  CriticalValueTable cache;
  if (config.critical_value_cache && std::filesystem::exists(*config.critical_value_cache)) {
    cache = CriticalValueTable::load(*config.critical_value_cache);
  }
  bool cache_dirty = false;

  std::vector<PowerTable> tables;
  for (const std::size_t n : config.sample_sizes) {
    const auto started = std::chrono::steady_clock::now();
    PowerTable table;
    table.n = n;
    table.alpha = config.alpha;
    table.seed = config.seed;
    table.replications = counts;
    table.rows = config.alternatives;
    table.columns = columns;
    table.cells.assign(table.rows.size(), std::vector<PowerCell>(columns.size()));

    CriticalValueTable critical;
    if (!fixed_kinds.empty()) {
      const std::uint64_t cv_seed = derive_seed(config.seed, "critical:n=" + std::to_string(n));
      std::vector<TestKind> missing;
      for (const auto& kind : fixed_kinds) {
        const auto hit = cache.find(kind, n, config.alpha);
        if (hit && hit->reps == counts.critical && hit->seed == cv_seed) {
          critical.insert(*hit);
        } else {
          missing.push_back(kind);
        }
      }
      if (!missing.empty()) {
        if (progress) {
          progress("n=" + std::to_string(n) + ": simulating " + std::to_string(counts.critical) +
                   " null samples for critical values");
        }
        const double alphas[] = {config.alpha};
        CriticalValueTable fresh;
        fresh.generate(missing, n, alphas, counts.critical, cv_seed, config.jobs);
        for (const auto& e : fresh.entries()) {
          critical.insert(e);
          cache.insert(e);
        }
        cache_dirty = true;
      }
    }

    for (std::size_t row = 0; row < table.rows.size(); ++row) {
      const Alternative& alt = table.rows[row];
      const std::uint64_t cell_seed =
          derive_seed(config.seed, "cell:n=" + std::to_string(n) + "|" + alternative_token(alt));
      auto fill = [&](Estimator estimator, const std::vector<TestKind>& kinds, auto&& compute) {
        if (kinds.empty()) return;
        try {
          const std::vector<PowerEstimate> estimates = compute();
          for (const auto& est : estimates) {
            for (std::size_t c = 0; c < columns.size(); ++c) {
              if (columns[c].kind == est.kind && columns[c].estimator == estimator) {
                table.cells[row][c].estimate = est;
              }
            }
          }
        } catch (const Error& e) {
          for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].estimator == estimator && contains(kinds, columns[c].kind)) {
              table.cells[row][c].error = e.what();
            }
          }
        }
      };
      fill(Estimator::MLE, fixed_kinds, [&] {
        return power_fixed_critical(fixed_kinds, alt, n, config.alpha, counts.power, critical,
                                    cell_seed, config.jobs);
      });
      fill(Estimator::MME, warp_kinds, [&] {
        return warp_speed_power(warp_kinds, Estimator::MME, alt, n, config.alpha,
                                counts.warp_speed, cell_seed, config.jobs);
      });
      if (progress) progress("n=" + std::to_string(n) + ": " + label(alt));
    }

    table.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    tables.push_back(std::move(table));
  }

  if (cache_dirty && config.critical_value_cache) cache.save(*config.critical_value_cache);
  return tables;
}

// Applications -------------------------------------------------------------

std::vector<TestResult> run_test_battery(const Sample& sample,
                                         const std::vector<Estimator>& estimators,
                                         const std::vector<TestKind>& tests, std::size_t resamples,
                                         std::uint64_t seed, std::size_t jobs) {
  std::vector<TestResult> out;
  for (const Estimator e : estimators) {
    const std::uint64_t s = derive_seed(seed, estimator_name(e));
    auto part = bootstrap_pvalues(tests, e, sample, resamples, s, jobs);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<TestResult> run_golf_application(Tour tour, const std::vector<Estimator>& estimators,
                                             const std::vector<TestKind>& tests,
                                             std::size_t resamples, std::uint64_t seed,
                                             std::size_t jobs, double scale_divisor) {
  const Sample sample = golf_dataset(tour, scale_divisor).scaled();
  return run_test_battery(sample, estimators, tests, resamples, derive_seed(seed, tour_name(tour)),
                          jobs);
}

}  // namespace pgof
