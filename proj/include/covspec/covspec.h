/*
 * Copyright 2026 The covspec Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to libcovspec: covariance-structure tests for large-dimensional
 * data, Marchenko-Pastur functionals, and the Monte Carlo size/power harness.
 *
 * Every fallible call returns a covspec_status. On failure a description is
 * available from covspec_last_error() on the same thread until the next
 * failing call. Objects returned through out-pointers are owned by the caller
 * and released with the matching *_free function; strings returned through
 * char** are released with covspec_string_free.
 */
#ifndef COVSPEC_COVSPEC_H
#define COVSPEC_COVSPEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(COVSPEC_BUILDING_LIBRARY)
#define COVSPEC_API __attribute__((visibility("default")))
#else
#define COVSPEC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum covspec_status {
    COVSPEC_OK = 0,
    COVSPEC_ERR_INVALID = 2,   /* malformed input, shape mismatch, parameter out of range */
    COVSPEC_ERR_NUMERICAL = 3, /* singular matrix, failed factorization, degenerate variance */
    COVSPEC_ERR_INTERNAL = 4
} covspec_status;

COVSPEC_API const char* covspec_last_error(void);
COVSPEC_API const char* covspec_version(void);
COVSPEC_API void covspec_string_free(char* s);

/* ------------------------------------------------------------------------ */
/* Matrices                                                                  */

typedef struct covspec_matrix covspec_matrix;

COVSPEC_API covspec_status covspec_matrix_create(size_t rows, size_t cols, const double* row_major,
                                                 covspec_matrix** out);
COVSPEC_API covspec_status covspec_matrix_read_csv(const char* path, covspec_matrix** out);
COVSPEC_API covspec_status covspec_matrix_write_csv(const covspec_matrix* m, const char* path);
COVSPEC_API size_t covspec_matrix_rows(const covspec_matrix* m);
COVSPEC_API size_t covspec_matrix_cols(const covspec_matrix* m);
/* Copies rows*cols values in row-major order; len must be at least rows*cols. */
COVSPEC_API covspec_status covspec_matrix_copy(const covspec_matrix* m, double* row_major, size_t len);
COVSPEC_API void covspec_matrix_free(covspec_matrix* m);

/* ------------------------------------------------------------------------ */
/* Hypothesis tests                                                          */

typedef enum covspec_null_kind {
    COVSPEC_NULL_GENERAL = 0,   /* Sigma = sigma0 */
    COVSPEC_NULL_IDENTITY = 1,  /* Sigma = I */
    COVSPEC_NULL_SPHERICITY = 2 /* Sigma = gamma I, gamma unknown */
} covspec_null_kind;

typedef enum covspec_test_kind {
    COVSPEC_TEST_CWST = 0, /* corrected Wald score test, N(0,1) reference */
    COVSPEC_TEST_WST = 1,  /* classical Wald score test, chi-squared reference */
    COVSPEC_TEST_LWT = 2,  /* Ledoit-Wolf identity test */
    COVSPEC_TEST_NHT = 3   /* Nagao identity test */
} covspec_test_kind;

typedef enum covspec_tail { COVSPEC_TAIL_UPPER = 0, COVSPEC_TAIL_TWO_SIDED = 1 } covspec_tail;

typedef struct covspec_test_options {
    covspec_null_kind null_kind;
    const covspec_matrix* sigma0; /* p x p, required for COVSPEC_NULL_GENERAL */
    const double* known_mean;     /* length p; NULL means estimate the mean */
    double alpha;
    covspec_tail side; /* CWST only */
    int kappa;         /* CWST: 2 real, 1 complex */
    double beta;       /* CWST fourth-cumulant parameter */
    int estimate_beta; /* CWST: nonzero replaces beta by the plug-in estimate */
} covspec_test_options;

/* Identity null, alpha 0.05, upper tail, kappa 2, beta 0. */
COVSPEC_API void covspec_test_options_init(covspec_test_options* opts);

COVSPEC_API covspec_status covspec_parse_test_kind(const char* name, covspec_test_kind* out);
COVSPEC_API covspec_status covspec_parse_null_kind(const char* name, covspec_null_kind* out);

typedef struct covspec_report covspec_report;

COVSPEC_API covspec_status covspec_run_test(const covspec_matrix* data, covspec_test_kind kind,
                                            const covspec_test_options* opts, covspec_report** out);
COVSPEC_API double covspec_report_statistic(const covspec_report* r);
COVSPEC_API double covspec_report_p_value(const covspec_report* r);
COVSPEC_API int covspec_report_reject(const covspec_report* r);
/* 0 for N(0,1); otherwise the chi-squared degrees of freedom. */
COVSPEC_API int64_t covspec_report_df(const covspec_report* r);
COVSPEC_API covspec_status covspec_report_summary(const covspec_report* r, char** out);
/* {"schema": "covspec/1", "reports": [...]} */
COVSPEC_API covspec_status covspec_reports_to_json(const covspec_report* const* reports, size_t count,
                                                   char** out);
COVSPEC_API void covspec_report_free(covspec_report* r);

/* (n/2) tr[(I - Sigma~^{-1})^2] for the null in opts. */
COVSPEC_API covspec_status covspec_wst_rescaled(const covspec_matrix* data, const covspec_test_options* opts,
                                                double* out);

/* ------------------------------------------------------------------------ */
/* Marchenko-Pastur functionals for f(x) = (1 - 1/x)^2                      */

COVSPEC_API covspec_status covspec_mp_density(double x, double q, double* out);
COVSPEC_API covspec_status covspec_mp_limit_F(double q, double* out);
/* Mean and variance admit q = 0 (both 0). */
COVSPEC_API covspec_status covspec_mp_limit_mean(double q, int kappa, double beta, double* out);
COVSPEC_API covspec_status covspec_mp_limit_variance(double q, int kappa, double beta, double* out);
COVSPEC_API covspec_status covspec_mp_quadrature_F(double q, double abs_tol, double* out);

typedef struct covspec_clt_moments {
    double mean;
    double variance;
    double stderr_mean;
    size_t accepted;
    size_t rejected;
    size_t p;
} covspec_clt_moments;

COVSPEC_API covspec_status covspec_mp_clt_moments(double q, int kappa, double beta, size_t n, size_t reps,
                                                  uint64_t seed, unsigned workers, covspec_clt_moments* out);

/* ------------------------------------------------------------------------ */
/* Monte Carlo size/power harness                                           */

typedef struct covspec_scenario covspec_scenario;
typedef struct covspec_summary covspec_summary;

typedef struct covspec_tally {
    covspec_test_kind test;
    size_t rejections;
    size_t failures;
    size_t reps;
    double rate;
    double stderr_rate;
} covspec_tally;

/* Defaults: n=300, p=80, normal, mu0=2, null, tests cwst,lwt,nht,wst,
 * alpha 0.05, 2000 reps, seed 1. */
COVSPEC_API covspec_status covspec_scenario_create(covspec_scenario** out);
COVSPEC_API covspec_status covspec_scenario_clone(const covspec_scenario* s, covspec_scenario** out);
/* Same keys as the scenario file format (n, p, population, rho, tests, ...). */
COVSPEC_API covspec_status covspec_scenario_set(covspec_scenario* s, const char* key, const char* value);
COVSPEC_API covspec_status covspec_scenario_load_file(covspec_scenario* s, const char* path);
/* Nonzero once a seed has been set explicitly or read from a file. */
COVSPEC_API int covspec_scenario_has_seed(const covspec_scenario* s);
COVSPEC_API covspec_status covspec_scenario_validate(const covspec_scenario* s);
COVSPEC_API covspec_status covspec_scenario_sample(const covspec_scenario* s, size_t replication,
                                                   covspec_matrix** out);
COVSPEC_API void covspec_scenario_free(covspec_scenario* s);

COVSPEC_API size_t covspec_paper_grid_size(void);
COVSPEC_API covspec_status covspec_paper_grid_point(size_t index, int64_t* n, int64_t* p, double* rho);

COVSPEC_API covspec_status covspec_simulate(const covspec_scenario* s, covspec_summary** out);
COVSPEC_API size_t covspec_summary_size(const covspec_summary* summary);
COVSPEC_API covspec_status covspec_summary_tally(const covspec_summary* summary, size_t index,
                                                 covspec_tally* out);
/* Columns: test,n,p,population,truth,rho,reps,rejections,rate,stderr,failures */
COVSPEC_API const char* covspec_summary_csv_header(void);
COVSPEC_API covspec_status covspec_summary_to_csv(const covspec_summary* summary, char** out);
COVSPEC_API void covspec_summary_free(covspec_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* COVSPEC_COVSPEC_H */
