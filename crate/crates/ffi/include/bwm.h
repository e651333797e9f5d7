#ifndef BWM_H
#define BWM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum BwmStatus {
  BWM_STATUS_OK = 0,
  BWM_STATUS_NULL_POINTER = 1,
  BWM_STATUS_INVALID_UTF8 = 2,
  BWM_STATUS_PARSE = 3,
  BWM_STATUS_INVALID_INPUT = 4,
  BWM_STATUS_ROLE_ERROR = 5,
  BWM_STATUS_INDEX_OUT_OF_RANGE = 6,
  BWM_STATUS_BUFFER_TOO_SMALL = 7,
  BWM_STATUS_PANIC = 8,
} BwmStatus;

/**
 * A validated comparison system.
 */
typedef struct BwmPcs BwmPcs;

/**
 * The analysis of a comparison system.
 */
typedef struct BwmReport BwmReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *bwm_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bwm_version(void);

/**
 * Parse a system from JSON or CSV text.
 */
enum BwmStatus bwm_pcs_parse(const char *text, struct BwmPcs **out);

/**
 * Build a system from `n` best-to-other and other-to-worst entries and
 * 0-based best and worst index lists.
 */
enum BwmStatus bwm_pcs_new(size_t n,
                           const double *best_to_other,
                           const double *other_to_worst,
                           const size_t *best,
                           size_t n_best,
                           const size_t *worst,
                           size_t n_worst,
                           struct BwmPcs **out);

void bwm_pcs_free(struct BwmPcs *pcs);

/**
 * Number of criteria, or 0 for a null handle.
 */
size_t bwm_pcs_len(const struct BwmPcs *pcs);

/**
 * Analyze a system. `legacy` adds the legacy closed forms, `verify` runs
 * the oracle cross-check.
 */
enum BwmStatus bwm_analyze(const struct BwmPcs *pcs,
                           bool legacy,
                           bool verify,
                           struct BwmReport **out);

void bwm_report_free(struct BwmReport *report);

enum BwmStatus bwm_report_epsilon_star(const struct BwmReport *report, double *out);

enum BwmStatus bwm_report_abw_star(const struct BwmReport *report, double *out);

enum BwmStatus bwm_report_ci(const struct BwmReport *report, double *out);

/**
 * Consistency ratio; NaN when it is undefined.
 */
enum BwmStatus bwm_report_cr(const struct BwmReport *report, double *out);

/**
 * Number of criteria in the report, or 0 for a null handle.
 */
size_t bwm_report_len(const struct BwmReport *report);

/**
 * Copy the best weights into `out[0..len]`; `len` must be at least the
 * criterion count.
 */
enum BwmStatus bwm_report_best_weights(const struct BwmReport *report, double *out, size_t len);

/**
 * Copy interval bounds into `lower[0..len]` and `upper[0..len]`.
 */
enum BwmStatus bwm_report_intervals(const struct BwmReport *report,
                                    double *lower,
                                    double *upper,
                                    size_t len);

/**
 * Render the report as JSON. `round < 0` keeps full precision. Release the
 * string with `bwm_string_free`.
 */
enum BwmStatus bwm_report_to_json(const struct BwmReport *report, int32_t round, char **out);

void bwm_string_free(char *s);

/**
 * Consistency index for a best-to-worst ratio of at least 1.
 */
enum BwmStatus bwm_consistency_index(double abw, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BWM_H */
