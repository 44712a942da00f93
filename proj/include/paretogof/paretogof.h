/* C interface to the paretogof library.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return a pgof_status; on failure pgof_last_error() gives a
 * message for the calling thread. Strings returned through char** outputs
 * are owned by the caller and released with pgof_string_free.
 */
#ifndef PARETOGOF_H
#define PARETOGOF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PGOF_BUILDING_LIBRARY)
#    define PGOF_API __declspec(dllexport)
#  else
#    define PGOF_API __declspec(dllimport)
#  endif
#else
#  define PGOF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pgof_status {
  PGOF_OK = 0,
  PGOF_E_ARGUMENT = 1,
  PGOF_E_DOMAIN = 2,
  PGOF_E_PARSE = 3,
  PGOF_E_CONFIG = 4,
  PGOF_E_UNSUPPORTED = 5,
  PGOF_E_DEGENERATE = 6,
  PGOF_E_IO = 7,
  PGOF_E_INTERNAL = 99
} pgof_status;

typedef enum pgof_estimator { PGOF_MLE = 0, PGOF_MME = 1 } pgof_estimator;

typedef enum pgof_test {
  PGOF_TEST_MP1 = 0,
  PGOF_TEST_MP2,
  PGOF_TEST_KS,
  PGOF_TEST_CV,
  PGOF_TEST_AD,
  PGOF_TEST_ZA,
  PGOF_TEST_G,
  PGOF_TEST_EXP_KS,
  PGOF_TEST_EXP_CV,
  PGOF_TEST_EXP_AD,
  PGOF_TEST_EXP_ZA
} pgof_test;

typedef enum pgof_format { PGOF_FORMAT_CSV = 0, PGOF_FORMAT_MARKDOWN = 1 } pgof_format;

typedef enum pgof_tour { PGOF_TOUR_PGA = 0, PGOF_TOUR_LIV = 1 } pgof_tour;

/* A test selection. tuning_a only matters for PGOF_TEST_G (use 1.0). */
typedef struct pgof_test_kind {
  pgof_test test;
  double tuning_a;
} pgof_test_kind;

typedef struct pgof_test_result {
  pgof_test_kind kind;
  pgof_estimator estimator;
  double statistic;
  double beta;
  double p_value;        /* NaN when absent */
  double critical_value; /* NaN when absent */
  size_t replications;
} pgof_test_result;

typedef struct pgof_power_cell {
  double power;
  double std_error;
  size_t rejections;
  size_t replications;
  size_t failures;
  uint64_t seed;
  int ok; /* 0 when the cell failed; see pgof_power_table_cell_error */
} pgof_power_cell;

typedef struct pgof_sample pgof_sample;
typedef struct pgof_cv_table pgof_cv_table;
typedef struct pgof_study pgof_study;
typedef struct pgof_power_tables pgof_power_tables;
typedef struct pgof_results pgof_results;

typedef void (*pgof_progress_fn)(const char* message, void* user);

/* General */
PGOF_API const char* pgof_version(void);
PGOF_API const char* pgof_last_error(void);
PGOF_API void pgof_string_free(char* s);
PGOF_API const char* pgof_test_name(pgof_test test);
PGOF_API pgof_status pgof_parse_test(const char* text, pgof_test* out);
PGOF_API pgof_status pgof_parse_estimator(const char* text, pgof_estimator* out);
PGOF_API uint64_t pgof_derive_seed(uint64_t master, const char* label);

/* Samples */
PGOF_API pgof_status pgof_sample_create(const double* values, size_t n, pgof_sample** out);
PGOF_API pgof_status pgof_sample_load(const char* path, double scale_divisor, pgof_sample** out);
PGOF_API pgof_status pgof_sample_golf(pgof_tour tour, double scale_divisor, pgof_sample** out);
PGOF_API void pgof_sample_free(pgof_sample* s);
PGOF_API size_t pgof_sample_size(const pgof_sample* s);
/* Copies min(capacity, size) values in input order; returns the sample size. */
PGOF_API size_t pgof_sample_values(const pgof_sample* s, double* out, size_t capacity);
PGOF_API pgof_status pgof_sample_draw(const char* alternative, size_t n, uint64_t seed,
                                      uint64_t stream, pgof_sample** out);

/* Golf data */
PGOF_API size_t pgof_golf_raw(pgof_tour tour, double* out, size_t capacity);
PGOF_API double pgof_golf_average(pgof_tour tour);

/* Estimation and statistics */
PGOF_API pgof_status pgof_estimate(const pgof_sample* s, pgof_estimator e, double* beta);
/* Statistic with the estimator's convention (MLE path uses the pivotal transform). */
PGOF_API pgof_status pgof_statistic(const pgof_sample* s, pgof_test_kind kind, pgof_estimator e,
                                    double* value);
/* Statistic at a given shape on the raw sample. */
PGOF_API pgof_status pgof_statistic_at(const pgof_sample* s, pgof_test_kind kind, double beta,
                                       double* value);

/* Inference */
PGOF_API pgof_status pgof_bootstrap_pvalue(const pgof_sample* s, pgof_test_kind kind,
                                           pgof_estimator e, size_t resamples, uint64_t seed,
                                           size_t jobs, pgof_test_result* out);
PGOF_API pgof_status pgof_critical_value(pgof_test_kind kind, size_t n, double alpha, size_t reps,
                                         uint64_t seed, size_t jobs, double* out);

PGOF_API pgof_cv_table* pgof_cv_table_create(void);
PGOF_API void pgof_cv_table_free(pgof_cv_table* t);
PGOF_API pgof_status pgof_cv_table_generate(pgof_cv_table* t, const pgof_test_kind* kinds,
                                            size_t nkinds, size_t n, const double* alphas,
                                            size_t nalphas, size_t reps, uint64_t seed,
                                            size_t jobs);
PGOF_API pgof_status pgof_cv_table_lookup(const pgof_cv_table* t, pgof_test_kind kind, size_t n,
                                          double alpha, double* out);
PGOF_API size_t pgof_cv_table_size(const pgof_cv_table* t);
PGOF_API pgof_status pgof_cv_table_save(const pgof_cv_table* t, const char* path);
PGOF_API pgof_status pgof_cv_table_load(const char* path, pgof_cv_table** out);
PGOF_API pgof_status pgof_cv_table_render(const pgof_cv_table* t, pgof_format f, char** out);

/* Test batteries: results for every (estimator, test) pair. */
PGOF_API pgof_status pgof_test_battery(const pgof_sample* s, const pgof_estimator* estimators,
                                       size_t nest, const pgof_test_kind* kinds, size_t nkinds,
                                       size_t resamples, uint64_t seed, size_t jobs,
                                       pgof_results** out);
PGOF_API pgof_status pgof_golf_run(pgof_tour tour, const pgof_estimator* estimators, size_t nest,
                                   const pgof_test_kind* kinds, size_t nkinds, size_t resamples,
                                   uint64_t seed, size_t jobs, double scale_divisor,
                                   pgof_results** out);
PGOF_API void pgof_results_free(pgof_results* r);
PGOF_API size_t pgof_results_size(const pgof_results* r);
PGOF_API pgof_status pgof_results_get(const pgof_results* r, size_t i, pgof_test_result* out);
PGOF_API pgof_status pgof_results_render(const pgof_results* r, pgof_format f, double alpha,
                                         char** out);

/* Power studies */
PGOF_API pgof_study* pgof_study_create(void); /* defaults: full grid, scale factor 0.1 */
PGOF_API void pgof_study_free(pgof_study* s);
PGOF_API pgof_status pgof_study_set_sample_sizes(pgof_study* s, const size_t* sizes, size_t count);
PGOF_API pgof_status pgof_study_set_alpha(pgof_study* s, double alpha);
PGOF_API pgof_status pgof_study_set_tests(pgof_study* s, const pgof_test_kind* kinds, size_t count);
PGOF_API pgof_status pgof_study_set_estimators(pgof_study* s, const pgof_estimator* e,
                                               size_t count);
/* Comma-separated tokens such as "gamma:1,pareto:2", or one of the grid
 * names "fixed", "mix-exp", "mix-hn", "mix-ln". */
PGOF_API pgof_status pgof_study_set_alternatives(pgof_study* s, const char* list);
PGOF_API pgof_status pgof_study_set_replications(pgof_study* s, size_t critical, size_t power,
                                                 size_t warp_speed);
PGOF_API pgof_status pgof_study_set_scale_factor(pgof_study* s, double factor);
PGOF_API pgof_status pgof_study_set_seed(pgof_study* s, uint64_t seed);
PGOF_API pgof_status pgof_study_set_jobs(pgof_study* s, size_t jobs);
PGOF_API pgof_status pgof_study_set_cache(pgof_study* s, const char* path);
PGOF_API pgof_status pgof_study_apply_json(pgof_study* s, const char* json);
PGOF_API pgof_status pgof_study_to_json(const pgof_study* s, char** out);
PGOF_API pgof_status pgof_study_validate(const pgof_study* s);
PGOF_API void pgof_study_set_progress(pgof_study* s, pgof_progress_fn fn, void* user);
PGOF_API pgof_status pgof_study_run(const pgof_study* s, pgof_power_tables** out);

PGOF_API void pgof_power_tables_free(pgof_power_tables* t);
PGOF_API size_t pgof_power_tables_count(const pgof_power_tables* t);
PGOF_API size_t pgof_power_table_n(const pgof_power_tables* t, size_t table);
PGOF_API size_t pgof_power_table_rows(const pgof_power_tables* t, size_t table);
PGOF_API pgof_status pgof_power_table_render(const pgof_power_tables* t, size_t table,
                                             pgof_format f, char** out);
/* Cell for the given row, test and estimator (estimator ignored for Exp tests). */
PGOF_API pgof_status pgof_power_table_cell(const pgof_power_tables* t, size_t table, size_t row,
                                           pgof_test test, pgof_estimator e,
                                           pgof_power_cell* out);
PGOF_API pgof_status pgof_power_tables_manifest(const pgof_power_tables* t, const pgof_study* s,
                                                char** out);
PGOF_API double pgof_power_tables_wall_seconds(const pgof_power_tables* t);

#ifdef __cplusplus
}
#endif

#endif /* PARETOGOF_H */
