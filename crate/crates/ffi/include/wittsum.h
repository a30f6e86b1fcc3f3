#ifndef WITTSUM_H
#define WITTSUM_H

#include <stdint.h>

#define WS_OK 0

#define WS_VERDICT_FAILED 1

#define WS_INPUT_ERROR 2

#define WS_BUDGET_REFUSED 3

#define WS_NULL_POINTER 10

#define WS_INVALID_UTF8 11

#define WS_INVALID_ARGUMENT 12

#define WS_INTERNAL 13

/**
 * A validated job.
 */
typedef struct WsJob WsJob;

/**
 * The outcome of one run.
 */
typedef struct WsReport WsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates a JSON job. On success `*out` receives a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
int ws_job_parse(const char *json, struct WsJob **out);

/**
 * # Safety
 * `job` must come from [`ws_job_parse`] and not be freed twice; null is ignored.
 */
void ws_job_free(struct WsJob *job);

/**
 * Runs `command` (decompose, polytope, nondegen, sums, lfunction, verify).
 * Returns the report's exit code (0 to 3), or a status >= 10 on
 * misuse; `*out` always receives a report when the return value is below 10.
 *
 * # Safety
 * `job` must be a live handle, `command` a NUL-terminated string, `out` valid.
 */
int ws_run(const struct WsJob *job, const char *command, uint32_t threads, struct WsReport **out);

/**
 * The report as JSON; owned by the report.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
const char *ws_report_json(const struct WsReport *report);

/**
 * # Safety
 * `report` must be a live handle or null.
 */
int ws_report_exit_code(const struct WsReport *report);

/**
 * # Safety
 * `report` must come from [`ws_run`] and not be freed twice; null is ignored.
 */
void ws_report_free(struct WsReport *report);

/**
 * Message of the most recent failure on this thread (empty if none).
 */
const char *ws_last_error_message(void);

/**
 * Library version, static.
 */
const char *ws_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WITTSUM_H */
