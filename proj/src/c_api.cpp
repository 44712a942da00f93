#include "paretogof/paretogof.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "paretogof/error.hpp"
#include "paretogof/estimation.hpp"
#include "paretogof/golf.hpp"
#include "paretogof/inference.hpp"
#include "paretogof/rng.hpp"
#include "paretogof/sample_io.hpp"
#include "paretogof/statistics.hpp"
#include "paretogof/study.hpp"

struct pgof_sample {
  pgof::Sample sample;
};

struct pgof_cv_table {
  pgof::CriticalValueTable table;
};

struct pgof_study {
  pgof::StudyConfig config = pgof::StudyConfig::defaults();
  pgof_progress_fn progress = nullptr;
  void* progress_user = nullptr;
};

struct pgof_power_tables {
  std::vector<pgof::PowerTable> tables;
};

struct pgof_results {
  std::vector<pgof::TestResult> results;
};

namespace {

thread_local std::string last_error;

pgof_status set_error(pgof_status status, const char* message) {
  last_error = message;
  return status;
}

pgof_status status_of(pgof::ErrorCode code) {
  return static_cast<pgof_status>(static_cast<int>(code));
}

template <typename F>
pgof_status guarded(F&& body) noexcept {
  try {
    body();
    return PGOF_OK;
  } catch (const pgof::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(PGOF_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(PGOF_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(PGOF_E_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw pgof::ArgumentError(what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pgof::TestKind to_kind(pgof_test_kind k) {
  require(k.test >= PGOF_TEST_MP1 && k.test <= PGOF_TEST_EXP_ZA, "unknown test");
  return pgof::TestKind::make(static_cast<pgof::TestTag>(k.test), k.tuning_a);
}

pgof_test_kind from_kind(const pgof::TestKind& k) {
  return pgof_test_kind{static_cast<pgof_test>(k.tag), k.tuning_a};
}

pgof::Estimator to_estimator(pgof_estimator e) {
  require(e == PGOF_MLE || e == PGOF_MME, "unknown estimator");
  return static_cast<pgof::Estimator>(e);
}

pgof::Tour to_tour(pgof_tour t) {
  require(t == PGOF_TOUR_PGA || t == PGOF_TOUR_LIV, "unknown tour");
  return t == PGOF_TOUR_PGA ? pgof::Tour::PGA : pgof::Tour::LIV;
}

pgof::TableFormat to_format(pgof_format f) {
  return f == PGOF_FORMAT_MARKDOWN ? pgof::TableFormat::Markdown : pgof::TableFormat::Csv;
}

std::vector<pgof::TestKind> to_kinds(const pgof_test_kind* kinds, std::size_t n) {
  require(kinds != nullptr || n == 0, "null test list");
  std::vector<pgof::TestKind> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(to_kind(kinds[i]));
  return out;
}

std::vector<pgof::Estimator> to_estimators(const pgof_estimator* e, std::size_t n) {
  require(e != nullptr || n == 0, "null estimator list");
  std::vector<pgof::Estimator> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(to_estimator(e[i]));
  return out;
}

pgof_test_result to_c(const pgof::TestResult& r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return pgof_test_result{from_kind(r.kind),
                          static_cast<pgof_estimator>(r.estimator),
                          r.statistic,
                          r.beta,
                          r.p_value.value_or(nan),
                          r.critical_value.value_or(nan),
                          r.replications};
}

std::vector<pgof::Alternative> parse_alternative_list(const std::string& text) {
  if (text == "fixed") return pgof::fixed_alternatives_grid();
  if (text == "mix-exp") return pgof::mixture_grid(pgof::Contaminant::ShiftedExponential);
  if (text == "mix-hn") return pgof::mixture_grid(pgof::Contaminant::ShiftedHalfNormal);
  if (text == "mix-ln") return pgof::mixture_grid(pgof::Contaminant::ShiftedLogNormal);
  std::vector<pgof::Alternative> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto first = token.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = token.find_last_not_of(" \t");
    out.push_back(pgof::parse_alternative(token.substr(first, last - first + 1)));
  }
  return out;
}

}  // namespace

extern "C" {

const char* pgof_version(void) {
  static const std::string v(pgof::library_version());
  return v.c_str();
}

const char* pgof_last_error(void) { return last_error.c_str(); }

void pgof_string_free(char* s) { std::free(s); }

const char* pgof_test_name(pgof_test test) {
  if (test < PGOF_TEST_MP1 || test > PGOF_TEST_EXP_ZA) return "";
  return pgof::test_name(static_cast<pgof::TestTag>(test)).data();
}

pgof_status pgof_parse_test(const char* text, pgof_test* out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    const auto tag = pgof::parse_test_tag(text);
    if (!tag) throw pgof::ConfigError(std::string("unknown test '") + text + "'");
    *out = static_cast<pgof_test>(*tag);
  });
}

pgof_status pgof_parse_estimator(const char* text, pgof_estimator* out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    const auto e = pgof::parse_estimator(text);
    if (!e) throw pgof::ConfigError(std::string("unknown estimator '") + text + "'");
    *out = static_cast<pgof_estimator>(*e);
  });
}

uint64_t pgof_derive_seed(uint64_t master, const char* label) {
  return pgof::derive_seed(master, label == nullptr ? "" : label);
}

// Samples -------------------------------------------------------------------

pgof_status pgof_sample_create(const double* values, size_t n, pgof_sample** out) {
  return guarded([&] {
    require(out != nullptr && (values != nullptr || n == 0), "null argument");
    *out = new pgof_sample{pgof::Sample(std::vector<double>(values, values + n))};
  });
}

pgof_status pgof_sample_load(const char* path, double scale_divisor, pgof_sample** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new pgof_sample{pgof::load_sample(path, scale_divisor)};
  });
}

pgof_status pgof_sample_golf(pgof_tour tour, double scale_divisor, pgof_sample** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new pgof_sample{pgof::golf_dataset(to_tour(tour), scale_divisor).scaled()};
  });
}

void pgof_sample_free(pgof_sample* s) { delete s; }

size_t pgof_sample_size(const pgof_sample* s) { return s == nullptr ? 0 : s->sample.size(); }

size_t pgof_sample_values(const pgof_sample* s, double* out, size_t capacity) {
  if (s == nullptr) return 0;
  const auto v = s->sample.values();
  for (std::size_t i = 0; i < v.size() && i < capacity && out != nullptr; ++i) out[i] = v[i];
  return v.size();
}

pgof_status pgof_sample_draw(const char* alternative, size_t n, uint64_t seed, uint64_t stream,
                             pgof_sample** out) {
  return guarded([&] {
    require(alternative != nullptr && out != nullptr, "null argument");
    const auto alt = pgof::parse_alternative(alternative);
    pgof::RandomStream rng(seed, stream);
    *out = new pgof_sample{pgof::sample(alt, n, rng)};
  });
}

size_t pgof_golf_raw(pgof_tour tour, double* out, size_t capacity) {
  if (tour != PGOF_TOUR_PGA && tour != PGOF_TOUR_LIV) return 0;
  const auto data = pgof::golf_dataset(to_tour(tour));
  for (std::size_t i = 0; i < data.earnings.size() && i < capacity && out != nullptr; ++i) {
    out[i] = data.earnings[i];
  }
  return data.earnings.size();
}

double pgof_golf_average(pgof_tour tour) {
  if (tour != PGOF_TOUR_PGA && tour != PGOF_TOUR_LIV) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return pgof::golf_dataset(to_tour(tour)).average_earnings();
}

// Estimation and statistics --------------------------------------------------

pgof_status pgof_estimate(const pgof_sample* s, pgof_estimator e, double* beta) {
  return guarded([&] {
    require(s != nullptr && beta != nullptr, "null argument");
    *beta = pgof::estimate(s->sample, to_estimator(e)).beta;
  });
}

pgof_status pgof_statistic(const pgof_sample* s, pgof_test_kind kind, pgof_estimator e,
                           double* value) {
  return guarded([&] {
    require(s != nullptr && value != nullptr, "null argument");
    *value = pgof::evaluate(to_kind(kind), s->sample, to_estimator(e)).value;
  });
}

pgof_status pgof_statistic_at(const pgof_sample* s, pgof_test_kind kind, double beta,
                              double* value) {
  return guarded([&] {
    require(s != nullptr && value != nullptr, "null argument");
    *value = pgof::statistic_at(to_kind(kind), s->sample, beta).value;
  });
}

// Inference ------------------------------------------------------------------

pgof_status pgof_bootstrap_pvalue(const pgof_sample* s, pgof_test_kind kind, pgof_estimator e,
                                  size_t resamples, uint64_t seed, size_t jobs,
                                  pgof_test_result* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = to_c(
        pgof::bootstrap_pvalue(to_kind(kind), to_estimator(e), s->sample, resamples, seed, jobs));
  });
}

pgof_status pgof_critical_value(pgof_test_kind kind, size_t n, double alpha, size_t reps,
                                uint64_t seed, size_t jobs, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = pgof::null_critical_value(to_kind(kind), pgof::Estimator::MLE, n, alpha, reps, seed,
                                     jobs);
  });
}

pgof_cv_table* pgof_cv_table_create(void) { return new (std::nothrow) pgof_cv_table{}; }

void pgof_cv_table_free(pgof_cv_table* t) { delete t; }

pgof_status pgof_cv_table_generate(pgof_cv_table* t, const pgof_test_kind* kinds, size_t nkinds,
                                   size_t n, const double* alphas, size_t nalphas, size_t reps,
                                   uint64_t seed, size_t jobs) {
  return guarded([&] {
    require(t != nullptr && alphas != nullptr, "null argument");
    const auto k = to_kinds(kinds, nkinds);
    t->table.generate(k, n, std::span<const double>(alphas, nalphas), reps, seed, jobs);
  });
}

pgof_status pgof_cv_table_lookup(const pgof_cv_table* t, pgof_test_kind kind, size_t n,
                                 double alpha, double* out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    *out = t->table.value(to_kind(kind), n, alpha);
  });
}

size_t pgof_cv_table_size(const pgof_cv_table* t) { return t == nullptr ? 0 : t->table.size(); }

pgof_status pgof_cv_table_save(const pgof_cv_table* t, const char* path) {
  return guarded([&] {
    require(t != nullptr && path != nullptr, "null argument");
    t->table.save(path);
  });
}

pgof_status pgof_cv_table_load(const char* path, pgof_cv_table** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new pgof_cv_table{pgof::CriticalValueTable::load(path)};
  });
}

pgof_status pgof_cv_table_render(const pgof_cv_table* t, pgof_format f, char** out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    *out = dup_string(pgof::render_table(t->table, to_format(f)));
  });
}

// Batteries ------------------------------------------------------------------

pgof_status pgof_test_battery(const pgof_sample* s, const pgof_estimator* estimators, size_t nest,
                              const pgof_test_kind* kinds, size_t nkinds, size_t resamples,
                              uint64_t seed, size_t jobs, pgof_results** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    auto results = pgof::run_test_battery(s->sample, to_estimators(estimators, nest),
                                          to_kinds(kinds, nkinds), resamples, seed, jobs);
    *out = new pgof_results{std::move(results)};
  });
}

pgof_status pgof_golf_run(pgof_tour tour, const pgof_estimator* estimators, size_t nest,
                          const pgof_test_kind* kinds, size_t nkinds, size_t resamples,
                          uint64_t seed, size_t jobs, double scale_divisor, pgof_results** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    auto results =
        pgof::run_golf_application(to_tour(tour), to_estimators(estimators, nest),
                                   to_kinds(kinds, nkinds), resamples, seed, jobs, scale_divisor);
    *out = new pgof_results{std::move(results)};
  });
}

void pgof_results_free(pgof_results* r) { delete r; }

size_t pgof_results_size(const pgof_results* r) { return r == nullptr ? 0 : r->results.size(); }

pgof_status pgof_results_get(const pgof_results* r, size_t i, pgof_test_result* out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    require(i < r->results.size(), "result index out of range");
    *out = to_c(r->results[i]);
  });
}

pgof_status pgof_results_render(const pgof_results* r, pgof_format f, double alpha, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = dup_string(pgof::render_table(r->results, to_format(f), alpha));
  });
}

// Power studies --------------------------------------------------------------

pgof_study* pgof_study_create(void) {
  try {
    return new pgof_study{};
  } catch (...) {
    set_error(PGOF_E_INTERNAL, "could not allocate study");
    return nullptr;
  }
}

void pgof_study_free(pgof_study* s) { delete s; }

pgof_status pgof_study_set_sample_sizes(pgof_study* s, const size_t* sizes, size_t count) {
  return guarded([&] {
    require(s != nullptr && (sizes != nullptr || count == 0), "null argument");
    s->config.sample_sizes.assign(sizes, sizes + count);
  });
}

pgof_status pgof_study_set_alpha(pgof_study* s, double alpha) {
  return guarded([&] {
    require(s != nullptr, "null argument");
    s->config.alpha = alpha;
  });
}

pgof_status pgof_study_set_tests(pgof_study* s, const pgof_test_kind* kinds, size_t count) {
  return guarded([&] {
    require(s != nullptr, "null argument");
    s->config.tests = to_kinds(kinds, count);
  });
}

pgof_status pgof_study_set_estimators(pgof_study* s, const pgof_estimator* e, size_t count) {
  return guarded([&] {
    require(s != nullptr, "null argument");
    s->config.estimators = to_estimators(e, count);
  });
}

pgof_status pgof_study_set_alternatives(pgof_study* s, const char* list) {
  return guarded([&] {
    require(s != nullptr && list != nullptr, "null argument");
    s->config.alternatives = parse_alternative_list(list);
  });
}

pgof_status pgof_study_set_replications(pgof_study* s, size_t critical, size_t power,
                                        size_t warp_speed) {
  return guarded([&] {
    require(s != nullptr, "null argument");
    s->config.replications = pgof::ReplicationCounts{critical, power, warp_speed};
  });
}

pgof_status pgof_study_set_scale_factor(pgof_study* s, double factor) {
  return guarded([&] {
    require(s != nullptr, "null argument");
    s->config.scale_factor = factor;
  });
}

pgof_status pgof_study_set_seed(pgof_study* s, uint64_t seed) {
  return guarded([&] {
    require(s != nullptr, "null argument");
    s->config.seed = seed;
  });
}

pgof_status pgof_study_set_jobs(pgof_study* s, size_t jobs) {
  return guarded([&] {
    require(s != nullptr, "null argument");
    s->config.jobs = jobs;
  });
}

pgof_status pgof_study_set_cache(pgof_study* s, const char* path) {
  return guarded([&] {
    require(s != nullptr, "null argument");
    if (path == nullptr || *path == '\0') {
      s->config.critical_value_cache.reset();
    } else {
      s->config.critical_value_cache = path;
    }
  });
}

pgof_status pgof_study_apply_json(pgof_study* s, const char* json) {
  return guarded([&] {
    require(s != nullptr && json != nullptr, "null argument");
    s->config.apply_json(json);
  });
}

pgof_status pgof_study_to_json(const pgof_study* s, char** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = dup_string(s->config.to_json());
  });
}

pgof_status pgof_study_validate(const pgof_study* s) {
  return guarded([&] {
    require(s != nullptr, "null argument");
    s->config.validate();
  });
}

void pgof_study_set_progress(pgof_study* s, pgof_progress_fn fn, void* user) {
  if (s == nullptr) return;
  s->progress = fn;
  s->progress_user = user;
}

pgof_status pgof_study_run(const pgof_study* s, pgof_power_tables** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    pgof::ProgressFn progress;
    if (s->progress != nullptr) {
      progress = [s](const std::string& msg) { s->progress(msg.c_str(), s->progress_user); };
    }
    auto tables = pgof::run_power_table(s->config, progress);
    *out = new pgof_power_tables{std::move(tables)};
  });
}

void pgof_power_tables_free(pgof_power_tables* t) { delete t; }

size_t pgof_power_tables_count(const pgof_power_tables* t) {
  return t == nullptr ? 0 : t->tables.size();
}

size_t pgof_power_table_n(const pgof_power_tables* t, size_t table) {
  return t == nullptr || table >= t->tables.size() ? 0 : t->tables[table].n;
}

size_t pgof_power_table_rows(const pgof_power_tables* t, size_t table) {
  return t == nullptr || table >= t->tables.size() ? 0 : t->tables[table].rows.size();
}

pgof_status pgof_power_table_render(const pgof_power_tables* t, size_t table, pgof_format f,
                                    char** out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    require(table < t->tables.size(), "table index out of range");
    *out = dup_string(pgof::render_table(t->tables[table], to_format(f)));
  });
}

pgof_status pgof_power_table_cell(const pgof_power_tables* t, size_t table, size_t row,
                                  pgof_test test, pgof_estimator e, pgof_power_cell* out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    require(table < t->tables.size(), "table index out of range");
    const auto kind = to_kind(pgof_test_kind{test, 1.0});
    const pgof::PowerCell* cell = t->tables[table].cell(row, kind.tag, to_estimator(e));
    if (cell == nullptr) throw pgof::ArgumentError("no such cell in the power table");
    *out = pgof_power_cell{};
    if (cell->estimate) {
      const auto& est = *cell->estimate;
      *out = pgof_power_cell{est.power(),       est.std_error(), est.rejections,
                             est.replications, est.failures,    est.seed,
                             1};
    } else {
      out->power = std::numeric_limits<double>::quiet_NaN();
      out->std_error = out->power;
      last_error = cell->error;
    }
  });
}

pgof_status pgof_power_tables_manifest(const pgof_power_tables* t, const pgof_study* s,
                                       char** out) {
  return guarded([&] {
    require(t != nullptr && s != nullptr && out != nullptr, "null argument");
    *out = dup_string(pgof::study_manifest(s->config, t->tables));
  });
}

double pgof_power_tables_wall_seconds(const pgof_power_tables* t) {
  double total = 0.0;
  if (t != nullptr) {
    for (const auto& table : t->tables) total += table.wall_seconds;
  }
  return total;
}

}  // extern "C"
