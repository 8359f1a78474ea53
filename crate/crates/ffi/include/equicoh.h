#ifndef EQUICOH_H
#define EQUICOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EquicohFormat {
  EQUICOH_FORMAT_JSON = 0,
  EQUICOH_FORMAT_CSV = 1,
} EquicohFormat;

typedef enum EquicohStatus {
  EQUICOH_STATUS_OK = 0,
  /**
   * The input violates the schema; same code as the CLI exit status.
   */
  EQUICOH_STATUS_SCHEMA = 2,
  /**
   * A mathematical check failed (Jacobi, axioms, uncertified bivector).
   */
  EQUICOH_STATUS_MATH = 3,
  EQUICOH_STATUS_NULL_ARGUMENT = 4,
  EQUICOH_STATUS_INVALID_UTF8 = 5,
  EQUICOH_STATUS_BUFFER_TOO_SMALL = 6,
  EQUICOH_STATUS_PANIC = 7,
} EquicohStatus;

/**
 * A validated Lie algebra.
 */
typedef struct EquicohAlgebra EquicohAlgebra;

/**
 * A computed result document.
 */
typedef struct EquicohReport EquicohReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *equicoh_version(void);

/**
 * Runs a task document (`{"kind", "payload", "options"?}`).
 *
 * # Safety
 * `task_json` must be a NUL-terminated string. `out` must be writable; `err` may be null.
 */
enum EquicohStatus equicoh_compute(const char *task_json, struct EquicohReport **out, char **err);

/**
 * Runs a named example. `params_json` may be null or an object with the example parameters.
 *
 * # Safety
 * String arguments must be NUL-terminated. `out` must be writable; `err` may be null.
 */
enum EquicohStatus equicoh_example(const char *name,
                                   const char *params_json,
                                   struct EquicohReport **out,
                                   char **err);

/**
 * Schema check plus the cheap mathematical gates. A report whose gates fail is still returned
 * with status `Ok`; query it with [`equicoh_report_passed`].
 *
 * # Safety
 * As for [`equicoh_compute`].
 */
enum EquicohStatus equicoh_validate(const char *task_json, struct EquicohReport **out, char **err);

/**
 * True when every check in the report passed.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
bool equicoh_report_passed(const struct EquicohReport *report);

/**
 * Copies the headline dimension table into `buf`. `len` receives the table length even when
 * the buffer is too small; a report with no headline table has length zero.
 *
 * # Safety
 * `report` must be a live handle, `len` writable, and `buf` valid for `cap` elements (or null if `cap` is 0).
 */
enum EquicohStatus equicoh_report_dims(const struct EquicohReport *report,
                                       size_t *buf,
                                       size_t cap,
                                       size_t *len);

/**
 * Renders the report; release the result with [`equicoh_string_free`].
 *
 * # Safety
 * `report` must be null or a live handle.
 */
char *equicoh_report_render(const struct EquicohReport *report, enum EquicohFormat format);

/**
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void equicoh_report_free(struct EquicohReport *report);

/**
 * Parses and validates a Lie algebra: a name (`"su2"`, `"heisenberg"`, `"abelian-3"`) in JSON
 * quotes, or `{"dim", "brackets"}`.
 *
 * # Safety
 * As for [`equicoh_compute`].
 */
enum EquicohStatus equicoh_algebra_new(const char *json, struct EquicohAlgebra **out, char **err);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t equicoh_algebra_dim(const struct EquicohAlgebra *g);

/**
 * Dimensions of the Lie algebra cohomology with trivial coefficients, written as for
 * [`equicoh_report_dims`].
 *
 * # Safety
 * `g` must be a live handle; `buf`, `cap` and `len` as for [`equicoh_report_dims`].
 */
enum EquicohStatus equicoh_algebra_cohomology(const struct EquicohAlgebra *g,
                                              size_t *buf,
                                              size_t cap,
                                              size_t *len);

/**
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void equicoh_algebra_free(struct EquicohAlgebra *g);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void equicoh_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* EQUICOH_H */
