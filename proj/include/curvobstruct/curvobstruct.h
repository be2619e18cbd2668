/* SPDX-License-Identifier: Apache-2.0
 *
 * C API for the curvature-obstruction toolkit.  All functions return a
 * cvo_status; results come back through opaque handles that must be
 * released with the matching _free call.  The API is thread-compatible:
 * distinct handles may be used from distinct threads, error messages are
 * thread-local.
 */
#ifndef CURVOBSTRUCT_H
#define CURVOBSTRUCT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cvo_status {
  CVO_OK = 0,
  CVO_ERR_CONFIG = 1,   /* invalid configuration or IO failure */
  CVO_ERR_IDENTITY = 2, /* identity residual above tolerance (engine bug) */
  CVO_ERR_VERDICT = 3,  /* internally inconsistent verdict */
  CVO_ERR_INTERNAL = 4  /* unexpected failure */
} cvo_status;

typedef struct cvo_report cvo_report;

/* Message for the most recent failure on this thread; never NULL. */
const char* cvo_last_error(void);

/* JSON array describing the built-in scenario catalog.  The returned
 * buffer is owned by the library and valid until the next call on the
 * same thread. */
const char* cvo_catalog_json(void);

/* Runs one scenario from a JSON configuration object.  On success stores
 * a new report handle in *out (caller frees).  Returns CVO_OK even for
 * scenarios whose verdict is OBSTRUCTED; that is a result, not an error. */
cvo_status cvo_run_scenario(const char* config_json, cvo_report** out);

/* Runs a catalog scenario by name. */
cvo_status cvo_run_named(const char* name, cvo_report** out);

/* Serialized report; buffers are owned by the report handle. */
const char* cvo_report_json(const cvo_report* report);
const char* cvo_report_csv(const cvo_report* report);

/* CI exit-code contract: 0 healthy, 2 identity residual violation,
 * 3 verdict inconsistency. */
int cvo_report_exit_code(const cvo_report* report);

void cvo_report_free(cvo_report* report);

/* Runs the whole catalog and folds the per-scenario exit codes:
 * the first nonzero code wins, 0 if everything is healthy. */
int cvo_selftest(void);

#ifdef __cplusplus
}
#endif

#endif /* CURVOBSTRUCT_H */
