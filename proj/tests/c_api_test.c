/* Exercises the C interface from plain C. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "paretogof/paretogof.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expectation failed: %s (%s)\n", __FILE__, \
              __LINE__, #cond, pgof_last_error());                    \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static void test_samples(void) {
  const double e = exp(1.0);
  const double values[3] = {e, e * e, e * e * e};
  pgof_sample* s = NULL;
  double beta = 0.0;
  double copy[3];
  EXPECT(pgof_sample_create(values, 3, &s) == PGOF_OK);
  EXPECT(pgof_sample_size(s) == 3);
  EXPECT(pgof_sample_values(s, copy, 3) == 3);
  EXPECT(copy[1] == values[1]);
  EXPECT(pgof_estimate(s, PGOF_MLE, &beta) == PGOF_OK);
  EXPECT(fabs(beta - 0.5) < 1e-12);
  pgof_sample_free(s);

  {
    const double bad[2] = {2.0, 0.5};
    pgof_sample* t = NULL;
    EXPECT(pgof_sample_create(bad, 2, &t) == PGOF_E_DOMAIN);
    EXPECT(t == NULL);
    EXPECT(strlen(pgof_last_error()) > 0);
  }
  {
    pgof_sample* t = NULL;
    EXPECT(pgof_sample_load("/nonexistent/pgof.txt", 1.0, &t) == PGOF_E_IO);
    EXPECT(pgof_sample_draw("gamma:1", 50, 1, 0, &t) == PGOF_OK);
    EXPECT(pgof_sample_size(t) == 50);
    pgof_sample_free(t);
    EXPECT(pgof_sample_draw("nope:1", 50, 1, 0, &t) == PGOF_E_CONFIG);
  }
}

static void test_statistics(void) {
  pgof_sample* pga = NULL;
  pgof_test_kind ks = {PGOF_TEST_KS, 1.0};
  pgof_test_kind bad = {(pgof_test)42, 1.0};
  double v = 0.0;
  pgof_test t;
  pgof_estimator est;
  EXPECT(pgof_sample_golf(PGOF_TOUR_PGA, 3.5e6, &pga) == PGOF_OK);
  EXPECT(pgof_sample_size(pga) == 28);
  EXPECT(pgof_statistic(pga, ks, PGOF_MME, &v) == PGOF_OK);
  EXPECT(fabs(v - 0.255) < 5e-4);
  EXPECT(pgof_statistic(pga, bad, PGOF_MME, &v) == PGOF_E_ARGUMENT);
  EXPECT(pgof_statistic_at(pga, ks, 0.0, &v) == PGOF_E_DOMAIN);
  EXPECT(pgof_parse_test("mp2", &t) == PGOF_OK && t == PGOF_TEST_MP2);
  EXPECT(pgof_parse_test("xx", &t) == PGOF_E_CONFIG);
  EXPECT(pgof_parse_estimator("mle", &est) == PGOF_OK && est == PGOF_MLE);
  EXPECT(strcmp(pgof_test_name(PGOF_TEST_G), "G") == 0);
  EXPECT(fabs(pgof_golf_average(PGOF_TOUR_PGA) - 6098394.857142857) < 1e-6);
  {
    double raw[28];
    EXPECT(pgof_golf_raw(PGOF_TOUR_LIV, raw, 28) == 28);
    EXPECT(raw[0] > 3.5e6);
  }
  {
    pgof_test_result r;
    EXPECT(pgof_bootstrap_pvalue(pga, ks, PGOF_MME, 200, 5, 1, &r) == PGOF_OK);
    EXPECT(r.p_value >= 1.0 / 201.0 && r.p_value <= 1.0);
    EXPECT(isnan(r.critical_value));
    EXPECT(r.replications == 200);
  }
  {
    pgof_estimator both[2] = {PGOF_MME, PGOF_MLE};
    pgof_test_kind kinds[2] = {{PGOF_TEST_MP2, 1.0}, {PGOF_TEST_G, 1.0}};
    pgof_results* res = NULL;
    pgof_test_result r;
    char* text = NULL;
    EXPECT(pgof_test_battery(pga, both, 2, kinds, 2, 100, 3, 1, &res) == PGOF_OK);
    EXPECT(pgof_results_size(res) == 4);
    EXPECT(pgof_results_get(res, 3, &r) == PGOF_OK);
    EXPECT(r.estimator == PGOF_MLE && r.kind.test == PGOF_TEST_G);
    EXPECT(pgof_results_get(res, 4, &r) == PGOF_E_ARGUMENT);
    EXPECT(pgof_results_render(res, PGOF_FORMAT_CSV, 0.05, &text) == PGOF_OK);
    EXPECT(strncmp(text, "test,estimator", 14) == 0);
    pgof_string_free(text);
    pgof_results_free(res);
  }
  {
    pgof_results* golf = NULL;
    pgof_estimator mme = PGOF_MME;
    EXPECT(pgof_golf_run(PGOF_TOUR_LIV, &mme, 1, &ks, 1, 100, 1, 1, 3.5e6, &golf) == PGOF_OK);
    EXPECT(pgof_results_size(golf) == 1);
    pgof_results_free(golf);
  }
  pgof_sample_free(pga);
}

static void test_critical_values(void) {
  pgof_test_kind kinds[2] = {{PGOF_TEST_MP1, 1.0}, {PGOF_TEST_AD, 1.0}};
  double alphas[2] = {0.05, 0.1};
  double v05 = 0.0, v10 = 0.0, direct = 0.0;
  char* text = NULL;
  const char* path = "pgof_c_api_cache.txt";
  pgof_cv_table* t = pgof_cv_table_create();
  pgof_cv_table* loaded = NULL;
  EXPECT(pgof_cv_table_generate(t, kinds, 2, 15, alphas, 2, 1000, 11, 2) == PGOF_OK);
  EXPECT(pgof_cv_table_size(t) == 4);
  EXPECT(pgof_cv_table_lookup(t, kinds[1], 15, 0.05, &v05) == PGOF_OK);
  EXPECT(pgof_cv_table_lookup(t, kinds[1], 15, 0.1, &v10) == PGOF_OK);
  EXPECT(v05 >= v10);
  EXPECT(pgof_cv_table_lookup(t, kinds[1], 16, 0.05, &v05) == PGOF_E_CONFIG);
  EXPECT(pgof_critical_value(kinds[0], 15, 0.05, 500, 1, 1, &direct) == PGOF_E_ARGUMENT);
  EXPECT(pgof_cv_table_save(t, path) == PGOF_OK);
  EXPECT(pgof_cv_table_load(path, &loaded) == PGOF_OK);
  EXPECT(pgof_cv_table_size(loaded) == 4);
  EXPECT(pgof_cv_table_render(loaded, PGOF_FORMAT_MARKDOWN, &text) == PGOF_OK);
  EXPECT(strstr(text, "MP1") != NULL);
  pgof_string_free(text);
  remove(path);
  pgof_cv_table_free(loaded);
  pgof_cv_table_free(t);
}

static int progress_calls = 0;
static void on_progress(const char* message, void* user) {
  (void)message;
  (void)user;
  ++progress_calls;
}

static void test_study(void) {
  pgof_study* s = pgof_study_create();
  pgof_power_tables* tables = NULL;
  pgof_power_cell cell;
  size_t sizes[1] = {12};
  pgof_test_kind kinds[2] = {{PGOF_TEST_MP2, 1.0}, {PGOF_TEST_EXP_KS, 1.0}};
  char* text = NULL;
  EXPECT(s != NULL);
  EXPECT(pgof_study_validate(s) == PGOF_OK);
  EXPECT(pgof_study_set_sample_sizes(s, sizes, 1) == PGOF_OK);
  EXPECT(pgof_study_set_tests(s, kinds, 2) == PGOF_OK);
  EXPECT(pgof_study_set_alternatives(s, "pareto:2, gamma:1") == PGOF_OK);
  EXPECT(pgof_study_set_replications(s, 10000, 10000, 10000) == PGOF_OK);
  EXPECT(pgof_study_set_seed(s, 7) == PGOF_OK);
  EXPECT(pgof_study_set_alternatives(s, "zeta:1") == PGOF_E_CONFIG);
  EXPECT(pgof_study_set_scale_factor(s, 2.0) == PGOF_OK);
  EXPECT(pgof_study_validate(s) == PGOF_E_CONFIG);
  EXPECT(pgof_study_set_scale_factor(s, 0.1) == PGOF_OK);
  EXPECT(pgof_study_apply_json(s, "{\"alpha\": 0.1}") == PGOF_OK);
  EXPECT(pgof_study_apply_json(s, "{oops") == PGOF_E_CONFIG);
  pgof_study_set_progress(s, on_progress, NULL);
  EXPECT(pgof_study_run(s, &tables) == PGOF_OK);
  EXPECT(progress_calls > 0);
  EXPECT(pgof_power_tables_count(tables) == 1);
  EXPECT(pgof_power_table_n(tables, 0) == 12);
  EXPECT(pgof_power_table_rows(tables, 0) == 2);
  EXPECT(pgof_power_table_cell(tables, 0, 1, PGOF_TEST_MP2, PGOF_MME, &cell) == PGOF_OK);
  EXPECT(cell.ok == 1 && cell.replications == 1000);
  EXPECT(cell.power > 0.1);
  EXPECT(pgof_power_table_cell(tables, 0, 5, PGOF_TEST_MP2, PGOF_MME, &cell) == PGOF_E_ARGUMENT);
  EXPECT(pgof_power_table_render(tables, 0, PGOF_FORMAT_MARKDOWN, &text) == PGOF_OK);
  EXPECT(strstr(text, "| Distribution |") != NULL);
  pgof_string_free(text);
  EXPECT(pgof_power_tables_manifest(tables, s, &text) == PGOF_OK);
  EXPECT(strstr(text, "\"version\"") != NULL);
  pgof_string_free(text);
  EXPECT(pgof_study_to_json(s, &text) == PGOF_OK);
  EXPECT(strstr(text, "\"alpha\": 0.1") != NULL);
  pgof_string_free(text);
  pgof_power_tables_free(tables);
  pgof_study_free(s);
}

int main(void) {
  EXPECT(strcmp(pgof_version(), "0.1.0") == 0);
  EXPECT(pgof_derive_seed(1, "a") != pgof_derive_seed(1, "b"));
  test_samples();
  test_statistics();
  test_critical_values();
  test_study();
  if (failures != 0) {
    fprintf(stderr, "%d C API expectation(s) failed\n", failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
