/* SPDX-License-Identifier: Apache-2.0 */
#ifndef LRCTL_H
#define LRCTL_H

/*
 * C interface to the lrctl experiment engine: performance-based learning
 * rate controllers (P, PD, E/PD) and time-decay baselines driving a small
 * SGD-trained classifier through a streaming-batch scenario.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return LRCTL_OK on success; on failure they return an error
 * class and leave a human-readable message in lrctl_last_error(), which
 * stays valid until the next failing call on the same thread.
 */

#include <stddef.h>

#if defined(_WIN32)
#define LRCTL_API __declspec(dllexport)
#else
#define LRCTL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lrctl_status {
    LRCTL_OK = 0,
    LRCTL_ERROR_CONFIG = 1,   /* malformed or invalid configuration */
    LRCTL_ERROR_RUNTIME = 2,  /* experiment failure, e.g. divergence */
    LRCTL_ERROR_IO = 3,       /* file could not be read or written */
    LRCTL_ERROR_INVALID_ARGUMENT = 4
} lrctl_status;

typedef struct lrctl_config lrctl_config;
typedef struct lrctl_trace lrctl_trace;
typedef struct lrctl_report lrctl_report;

LRCTL_API const char* lrctl_version(void);
LRCTL_API const char* lrctl_last_error(void);

/* ---- configuration ---------------------------------------------------- */

/* Desk-scale defaults; equivalent to parsing an empty document. */
LRCTL_API lrctl_status lrctl_config_create(lrctl_config** out);
/* Flat key=value text; '#' comments allowed. */
LRCTL_API lrctl_status lrctl_config_parse(const char* text, lrctl_config** out);
LRCTL_API lrctl_status lrctl_config_parse_file(const char* path, lrctl_config** out);
/* Apply one key=value assignment to an existing config. */
LRCTL_API lrctl_status lrctl_config_set(lrctl_config* config, const char* key, const char* value);
/* Canonical text form; free with lrctl_string_free. Round-trips exactly. */
LRCTL_API lrctl_status lrctl_config_render(const lrctl_config* config, char** out_text);
LRCTL_API void lrctl_config_free(lrctl_config* config);
LRCTL_API void lrctl_string_free(char* text);

/* ---- experiments ------------------------------------------------------ */

/* Runs the configured experiment. Returns LRCTL_OK even when some runs
 * terminated early on divergence; inspect lrctl_trace_complete_runs. */
LRCTL_API lrctl_status lrctl_run(const lrctl_config* config, lrctl_trace** out);

typedef enum lrctl_trace_field {
    LRCTL_TRACE_RUN = 0,
    LRCTL_TRACE_BATCH = 1,
    LRCTL_TRACE_EPOCH_GLOBAL = 2,
    LRCTL_TRACE_EPOCH_IN_BATCH = 3,
    LRCTL_TRACE_LR = 4,
    LRCTL_TRACE_VAL_LOSS = 5,
    LRCTL_TRACE_VAL_ACCURACY = 6
} lrctl_trace_field;

LRCTL_API size_t lrctl_trace_record_count(const lrctl_trace* trace);
LRCTL_API lrctl_status lrctl_trace_value(const lrctl_trace* trace, size_t record,
                                         lrctl_trace_field field, double* out);
LRCTL_API int lrctl_trace_total_runs(const lrctl_trace* trace);
LRCTL_API int lrctl_trace_complete_runs(const lrctl_trace* trace);
/* Header: run,batch,epoch_global,epoch_in_batch,lr,val_loss,val_accuracy
 * Floats carry 9 significant digits; identical configs produce
 * byte-identical files. */
LRCTL_API lrctl_status lrctl_trace_write_csv(const lrctl_trace* trace, const char* path);
LRCTL_API void lrctl_trace_free(lrctl_trace* trace);

/* ---- metrics and sweeps ------------------------------------------------ */

typedef enum lrctl_metric {
    LRCTL_METRIC_FINAL_LOSS_MEAN = 0,
    LRCTL_METRIC_FINAL_LOSS_STD = 1,
    LRCTL_METRIC_FINAL_ACCURACY_MEAN = 2,   /* percent */
    LRCTL_METRIC_FINAL_ACCURACY_STD = 3,
    LRCTL_METRIC_LAST_WINDOW_STD_MEAN = 4,  /* percent */
    LRCTL_METRIC_LAST_WINDOW_STD_STD = 5,
    LRCTL_METRIC_FIRST_EPOCH_TO_95_MEAN = 6,
    LRCTL_METRIC_FIRST_EPOCH_TO_95_STD = 7
} lrctl_metric;

typedef enum lrctl_report_format {
    LRCTL_REPORT_CSV = 0,
    LRCTL_REPORT_JSON = 1
} lrctl_report_format;

/* Aggregates a trace's complete runs into a one-row report labeled "-".
 * Fails with LRCTL_ERROR_RUNTIME when no run completed. */
LRCTL_API lrctl_status lrctl_aggregate(const lrctl_trace* trace, lrctl_report** out);

/* One experiment per comma-separated value; runs stay paired across
 * values (same base seed). `param` is "initial_lr" or "schedule". */
LRCTL_API lrctl_status lrctl_sweep(const lrctl_config* config, const char* param,
                                   const char* values_csv, lrctl_report** out);

LRCTL_API size_t lrctl_report_row_count(const lrctl_report* report);
LRCTL_API lrctl_status lrctl_report_label(const lrctl_report* report, size_t row, char** out);
LRCTL_API lrctl_status lrctl_report_value(const lrctl_report* report, size_t row,
                                          lrctl_metric metric, double* out);
/* path == NULL writes to stdout. */
LRCTL_API lrctl_status lrctl_report_write(const lrctl_report* report, const char* path,
                                          lrctl_report_format format);
LRCTL_API void lrctl_report_free(lrctl_report* report);

/* ---- fixtures ---------------------------------------------------------- */

/* Writes the small IDX reference pair (two 2x2 images, labels {3, 7})
 * into `directory` as fixture-images-idx3-ubyte / fixture-labels-idx1-ubyte. */
LRCTL_API lrctl_status lrctl_write_idx_fixture(const char* directory);

#ifdef __cplusplus
}
#endif

#endif /* LRCTL_H */
