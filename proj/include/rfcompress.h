/*
 * rfcompress -- data-dependent compression of random Fourier features.
 *
 * C interface to the shared library. All objects are opaque handles owned
 * by the library; every fallible call returns an rfc_status, and
 * rfc_last_error() describes the most recent failure on the calling thread.
 */
#ifndef RFCOMPRESS_H
#define RFCOMPRESS_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rfc_status {
    RFC_OK = 0,
    RFC_ERR_CONFIG = 1,     /* invalid configuration or argument combination */
    RFC_ERR_IO = 2,         /* unreadable, unwritable, or malformed files */
    RFC_ERR_INVALID = 3,    /* bad handle, null pointer, dimension mismatch */
    RFC_ERR_DEGENERATE = 4, /* compression problem has no usable direction */
    RFC_ERR_INTERNAL = 5
} rfc_status;

typedef struct rfc_dataset rfc_dataset;
typedef struct rfc_config rfc_config;
typedef struct rfc_results rfc_results;
typedef struct rfc_map rfc_map;

const char* rfc_version(void);

/* Message for the last error on this thread; empty string if none. */
const char* rfc_last_error(void);

/* ---- datasets (LIBSVM text format) ---- */

rfc_status rfc_dataset_open(const char* path, rfc_dataset** out);
rfc_status rfc_dataset_parse(const char* text, rfc_dataset** out);
void rfc_dataset_close(rfc_dataset* d);
int64_t rfc_dataset_rows(const rfc_dataset* d);
int rfc_dataset_dim(const rfc_dataset* d);
/* Widen the feature dimension (e.g. to align train/test splits). */
rfc_status rfc_dataset_set_dim(rfc_dataset* d, int dim);

/* ---- experiment configuration ---- */

rfc_status rfc_config_create(rfc_config** out);
void rfc_config_free(rfc_config* c);
/* Keys mirror the flat config-file format: train, test, kernel, gamma,
 * method, strategy, scramble, jplus, j (comma list), s, trials, seed, task,
 * svm_c, svm_tol, ridge_lambda, frobenius_m, timing, threads, dim,
 * cv_gammas, cv_cs, cv_folds, cv_subsample. */
rfc_status rfc_config_set(rfc_config* c, const char* key, const char* value);
rfc_status rfc_config_load(rfc_config* c, const char* path);

/* ---- experiments ---- */

/* Runs the configured experiment on the datasets named in the config. */
rfc_status rfc_run(const rfc_config* c, rfc_results** out);
/* Same, on already-loaded datasets (test may be NULL). */
rfc_status rfc_run_data(const rfc_config* c, const rfc_dataset* train, const rfc_dataset* test,
                        rfc_results** out);
/* Re-runs the compression at each S, reusing feature draws per trial. */
rfc_status rfc_sweep_s(const rfc_config* c, const int64_t* s_values, int count,
                       rfc_results** out);
/* Grid search over (gamma, C) by k-fold cross-validation on a subsample. */
rfc_status rfc_cv(const rfc_config* c, rfc_results** out);

int64_t rfc_results_rows(const rfc_results* r);
/* CSV rendering of the result set; owned by the handle. */
const char* rfc_results_csv(const rfc_results* r);
void rfc_results_free(rfc_results* r);

/* ---- compressed feature maps ---- */

/* Runs the compression pipeline once (trial 0, J = first j value) on the
 * training data named in the config, or on an explicit dataset. */
rfc_status rfc_compress(const rfc_config* c, rfc_map** out);
rfc_status rfc_compress_data(const rfc_config* c, const rfc_dataset* train, rfc_map** out);

rfc_status rfc_map_save(const rfc_map* m, const char* path);
rfc_status rfc_map_open(const char* path, rfc_map** out);
void rfc_map_close(rfc_map* m);
int rfc_map_features(const rfc_map* m);
int rfc_map_input_dim(const rfc_map* m);
/* Weighted compressed features of a dense point x[p]; out must hold
 * rfc_map_features(m) doubles. */
rfc_status rfc_map_featurize(const rfc_map* m, const double* x, int p, double* out, int out_len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RFCOMPRESS_H */
