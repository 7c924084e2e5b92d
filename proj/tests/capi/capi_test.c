/*
 * Copyright 2026 The covspec Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Exercises the C interface from C, linking only the shared library.
 */
#include "covspec/covspec.h"

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define CHECK(cond)                                                       \
    do {                                                                  \
        if (!(cond)) {                                                    \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                   \
        }                                                                 \
    } while (0)

/* Deterministic pseudo-normal data: sum of 12 uniforms from an LCG. */
static double next_normal(unsigned long long* state) {
    double acc = 0.0;
    for (int k = 0; k < 12; ++k) {
        *state = *state * 6364136223846793005ULL + 1442695040888963407ULL;
        acc += (double)(*state >> 11) / 9007199254740992.0;
    }
    return acc - 6.0;
}

static covspec_matrix* make_data(size_t n, size_t p, unsigned long long seed) {
    double* buf = malloc(n * p * sizeof(double));
    for (size_t i = 0; i < n * p; ++i) buf[i] = next_normal(&seed);
    covspec_matrix* m = NULL;
    CHECK(covspec_matrix_create(n, p, buf, &m) == COVSPEC_OK);
    free(buf);
    return m;
}

static void test_matrix(void) {
    const double v[6] = {1, 2, 3, 4, 5, 6};
    covspec_matrix* m = NULL;
    CHECK(covspec_matrix_create(3, 2, v, &m) == COVSPEC_OK);
    CHECK(covspec_matrix_rows(m) == 3 && covspec_matrix_cols(m) == 2);
    double out[6] = {0};
    CHECK(covspec_matrix_copy(m, out, 6) == COVSPEC_OK);
    CHECK(memcmp(out, v, sizeof v) == 0);
    CHECK(covspec_matrix_copy(m, out, 5) == COVSPEC_ERR_INVALID);
    CHECK(strlen(covspec_last_error()) > 0);
    covspec_matrix_free(m);
    CHECK(covspec_matrix_read_csv("/nonexistent/covspec.csv", &m) == COVSPEC_ERR_INVALID);
}

static void test_reports(void) {
    covspec_matrix* data = make_data(200, 20, 7);
    covspec_test_options opts;
    covspec_test_options_init(&opts);
    CHECK(opts.kappa == 2 && opts.alpha == 0.05 && opts.null_kind == COVSPEC_NULL_IDENTITY);

    covspec_report* reports[4] = {NULL, NULL, NULL, NULL};
    const covspec_test_kind kinds[4] = {COVSPEC_TEST_CWST, COVSPEC_TEST_WST, COVSPEC_TEST_LWT, COVSPEC_TEST_NHT};
    for (int i = 0; i < 4; ++i) {
        CHECK(covspec_run_test(data, kinds[i], &opts, &reports[i]) == COVSPEC_OK);
        const double pv = covspec_report_p_value(reports[i]);
        CHECK(pv >= 0.0 && pv <= 1.0);
        CHECK(covspec_report_reject(reports[i]) == (pv < 0.05));
    }
    CHECK(covspec_report_df(reports[0]) == 0);
    CHECK(covspec_report_df(reports[1]) == 210);

    char* json = NULL;
    CHECK(covspec_reports_to_json((const covspec_report* const*)reports, 4, &json) == COVSPEC_OK);
    CHECK(json && strstr(json, "\"schema\": \"covspec/1\"") != NULL);
    CHECK(json && strstr(json, "\"q_n\"") != NULL);
    covspec_string_free(json);

    char* line = NULL;
    CHECK(covspec_report_summary(reports[0], &line) == COVSPEC_OK);
    CHECK(line && strncmp(line, "CWST", 4) == 0);
    covspec_string_free(line);

    double w = 0.0;
    CHECK(covspec_wst_rescaled(data, &opts, &w) == COVSPEC_OK);
    CHECK(w > 0.0);
    for (int i = 0; i < 4; ++i) covspec_report_free(reports[i]);

    /* sigma0 with a negative eigenvalue */
    const double bad[4] = {1, 2, 2, 1};
    covspec_matrix* sigma0 = NULL;
    CHECK(covspec_matrix_create(2, 2, bad, &sigma0) == COVSPEC_OK);
    covspec_matrix* small = make_data(30, 2, 3);
    opts.null_kind = COVSPEC_NULL_GENERAL;
    opts.sigma0 = sigma0;
    covspec_report* r = NULL;
    CHECK(covspec_run_test(small, COVSPEC_TEST_CWST, &opts, &r) == COVSPEC_ERR_INVALID);
    CHECK(strstr(covspec_last_error(), "eigenvalue -1") != NULL);
    CHECK(covspec_run_test(data, COVSPEC_TEST_WST, &opts, &r) == COVSPEC_ERR_INVALID);

    /* baselines accept only the identity null */
    opts.null_kind = COVSPEC_NULL_SPHERICITY;
    opts.sigma0 = NULL;
    CHECK(covspec_run_test(data, COVSPEC_TEST_LWT, &opts, &r) == COVSPEC_ERR_INVALID);

    /* duplicated column: singular sample covariance */
    double dup[40 * 3];
    unsigned long long seed = 11;
    for (int i = 0; i < 40; ++i) {
        dup[3 * i] = next_normal(&seed);
        dup[3 * i + 1] = next_normal(&seed);
        dup[3 * i + 2] = dup[3 * i];
    }
    covspec_matrix* singular = NULL;
    CHECK(covspec_matrix_create(40, 3, dup, &singular) == COVSPEC_OK);
    opts.null_kind = COVSPEC_NULL_IDENTITY;
    CHECK(covspec_run_test(singular, COVSPEC_TEST_CWST, &opts, &r) == COVSPEC_ERR_NUMERICAL);

    covspec_test_kind k;
    CHECK(covspec_parse_test_kind("nagao", &k) == COVSPEC_OK && k == COVSPEC_TEST_NHT);
    CHECK(covspec_parse_test_kind("cmt", &k) == COVSPEC_ERR_INVALID);
    covspec_null_kind nk;
    CHECK(covspec_parse_null_kind("sphericity", &nk) == COVSPEC_OK && nk == COVSPEC_NULL_SPHERICITY);

    covspec_matrix_free(singular);
    covspec_matrix_free(small);
    covspec_matrix_free(sigma0);
    covspec_matrix_free(data);
}

static void test_mp(void) {
    double v = 0.0;
    CHECK(covspec_mp_limit_F(0.5, &v) == COVSPEC_OK && fabs(v - 5.0) < 1e-12);
    CHECK(covspec_mp_limit_mean(0.5, 2, 0.0, &v) == COVSPEC_OK && fabs(v - 24.0) < 1e-12);
    CHECK(covspec_mp_limit_variance(0.5, 2, 1.5, &v) == COVSPEC_OK && fabs(v - 1964.0) < 1e-9);
    CHECK(covspec_mp_limit_mean(0.0, 2, 0.0, &v) == COVSPEC_OK && v == 0.0);
    CHECK(covspec_mp_quadrature_F(0.5, 1e-10, &v) == COVSPEC_OK && fabs(v - 5.0) < 1e-7);
    CHECK(covspec_mp_limit_F(1.0, &v) == COVSPEC_ERR_INVALID);
    CHECK(covspec_mp_density(1.0, 0.25, &v) == COVSPEC_OK && v > 0.0);

    covspec_clt_moments m;
    CHECK(covspec_mp_clt_moments(0.2, 2, 0.0, 100, 20, 3, 1, &m) == COVSPEC_OK);
    CHECK(m.p == 20 && m.accepted + m.rejected == 20);
    CHECK(covspec_mp_clt_moments(0.2, 1, 0.0, 100, 20, 3, 1, &m) == COVSPEC_ERR_INVALID);
}

static void test_simulation(void) {
    covspec_scenario* s = NULL;
    CHECK(covspec_scenario_create(&s) == COVSPEC_OK);
    CHECK(covspec_scenario_has_seed(s) == 0);
    CHECK(covspec_scenario_set(s, "n", "60") == COVSPEC_OK);
    CHECK(covspec_scenario_set(s, "p", "12") == COVSPEC_OK);
    CHECK(covspec_scenario_set(s, "reps", "40") == COVSPEC_OK);
    CHECK(covspec_scenario_set(s, "seed", "5") == COVSPEC_OK);
    CHECK(covspec_scenario_has_seed(s) == 1);
    CHECK(covspec_scenario_set(s, "color", "blue") == COVSPEC_ERR_INVALID);
    CHECK(covspec_scenario_validate(s) == COVSPEC_OK);

    covspec_matrix* a = NULL;
    covspec_matrix* b = NULL;
    CHECK(covspec_scenario_sample(s, 3, &a) == COVSPEC_OK);
    CHECK(covspec_scenario_sample(s, 3, &b) == COVSPEC_OK);
    double va[60 * 12], vb[60 * 12];
    covspec_matrix_copy(a, va, 720);
    covspec_matrix_copy(b, vb, 720);
    CHECK(memcmp(va, vb, sizeof va) == 0);
    covspec_matrix_free(a);
    covspec_matrix_free(b);

    covspec_summary* sum1 = NULL;
    covspec_summary* sum2 = NULL;
    covspec_scenario* t = NULL;
    CHECK(covspec_scenario_clone(s, &t) == COVSPEC_OK);
    CHECK(covspec_scenario_set(t, "workers", "3") == COVSPEC_OK);
    CHECK(covspec_simulate(s, &sum1) == COVSPEC_OK);
    CHECK(covspec_simulate(t, &sum2) == COVSPEC_OK);
    CHECK(covspec_summary_size(sum1) == 4);
    char* csv1 = NULL;
    char* csv2 = NULL;
    CHECK(covspec_summary_to_csv(sum1, &csv1) == COVSPEC_OK);
    CHECK(covspec_summary_to_csv(sum2, &csv2) == COVSPEC_OK);
    CHECK(csv1 && csv2 && strcmp(csv1, csv2) == 0);
    covspec_tally tally;
    CHECK(covspec_summary_tally(sum1, 0, &tally) == COVSPEC_OK);
    CHECK(tally.test == COVSPEC_TEST_CWST && tally.reps == 40 && tally.rejections <= 40);
    CHECK(covspec_summary_tally(sum1, 9, &tally) == COVSPEC_ERR_INVALID);
    CHECK(strncmp(covspec_summary_csv_header(), "test,n,p,", 9) == 0);
    covspec_string_free(csv1);
    covspec_string_free(csv2);
    covspec_summary_free(sum1);
    covspec_summary_free(sum2);

    CHECK(covspec_scenario_set(t, "p", "59") == COVSPEC_OK);
    CHECK(covspec_scenario_validate(t) == COVSPEC_ERR_INVALID);
    CHECK(covspec_simulate(t, &sum1) == COVSPEC_ERR_INVALID);
    covspec_scenario_free(t);
    covspec_scenario_free(s);

    CHECK(covspec_paper_grid_size() == 16);
    int64_t n, p;
    double rho;
    CHECK(covspec_paper_grid_point(0, &n, &p, &rho) == COVSPEC_OK && n == 300 && p == 80 && rho == 0.0);
    CHECK(covspec_paper_grid_point(16, &n, &p, &rho) == COVSPEC_ERR_INVALID);
}

int main(void) {
    CHECK(strcmp(covspec_version(), "0.1.0") == 0);
    test_matrix();
    test_reports();
    test_mp();
    test_simulation();
    if (failures) {
        fprintf(stderr, "%d check(s) failed\n", failures);
        return 1;
    }
    printf("all C API checks passed\n");
    return 0;
}
