/* C interface to the imputation library. All functions are
 * thread-compatible: concurrent calls on distinct arguments are safe, and
 * the error message store is thread-local. Strings returned through
 * `char**` or by igrm_default_config() are owned by the caller and must be
 * released with igrm_free_string(); strings returned as `const char*` are
 * owned by the library or the report handle. */
#ifndef IGRM_IGRM_H
#define IGRM_IGRM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum igrm_status {
  IGRM_OK = 0,
  IGRM_ERR_INVALID_ARGUMENT = 1,
  IGRM_ERR_IO = 2,
  IGRM_ERR_PARSE = 3,
  IGRM_ERR_NUMERIC = 4,
  IGRM_ERR_INTERNAL = 5
} igrm_status;

/* Completed experiment: per-method imputation errors plus any artifacts
 * already written to the configured output directory. */
typedef struct igrm_report igrm_report;

/* The default experiment configuration as a JSON document. Edit and pass
 * to igrm_run(); unknown keys are rejected. */
char* igrm_default_config(void);

/* Runs the experiment described by `config_json` (every trial seed and
 * method, artifact emission included when the config names an output
 * directory). On success *out is a new report handle. */
igrm_status igrm_run(const char* config_json, igrm_report** out);

/* Repeats the configured experiment at each missing ratio / at each
 * reconstruction cadence, writing per-cell artifacts plus a summary CSV
 * under the configured output directory. */
igrm_status igrm_sweep_ratio(const char* config_json, const double* ratios,
                             size_t n_ratios);
igrm_status igrm_sweep_frequency(const char* config_json,
                                 const int64_t* cadences, size_t n_cadences);

/* The report as a JSON document (no timing data; timings are an artifact
 * of their own). Owned by the handle. */
const char* igrm_report_json(const igrm_report* report);

/* Scaled-space MAE times ten for one configured method, aggregated over
 * trial seeds. `std_x10` may be NULL. */
igrm_status igrm_report_mae(const igrm_report* report, const char* method,
                            double* mean_x10, double* std_x10);

void igrm_report_free(igrm_report* report);

/* Message for the calling thread's most recent failed igrm_* call. Valid
 * until that thread's next call into the library. */
const char* igrm_last_error(void);

void igrm_free_string(char* s);

const char* igrm_version(void);

#ifdef __cplusplus
}
#endif

#endif /* IGRM_IGRM_H */
