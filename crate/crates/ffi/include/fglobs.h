#ifndef FGLOBS_H
#define FGLOBS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FglobsStatus {
  FGLOBS_STATUS_OK = 0,
  FGLOBS_STATUS_INVALID_ARGUMENT = 1,
  FGLOBS_STATUS_COMPUTATION = 2,
  FGLOBS_STATUS_NULL_POINTER = 3,
  FGLOBS_STATUS_UTF8 = 4,
  FGLOBS_STATUS_PANIC = 5,
} FglobsStatus;

// The result of running one configuration.
typedef struct FglobsReport FglobsReport;

// An E_n verdict.
typedef struct FglobsVerdict FglobsVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The pointer
// stays valid until the next library call on the same thread.
const char *fglobs_last_error(void);

// Library version; static, do not free.
const char *fglobs_version(void);

// Runs a configuration given as JSON (the `--config` schema, including
// `"command"`).
//
// # Safety
// `config_json` must be a valid NUL-terminated string and `out` a valid pointer.
enum FglobsStatus fglobs_run_json(const char *config_json, struct FglobsReport **out);

// 0 no obstruction, 2 obstruction found; -1 for a null handle.
//
// # Safety
// `report` must be NULL or a handle from [`fglobs_run_json`].
int32_t fglobs_report_exit_code(const struct FglobsReport *report);

// The report rendered as text (`json` = 0) or JSON (`json` != 0). Free with
// [`fglobs_string_free`]. Returns NULL for a null handle.
//
// # Safety
// `report` must be NULL or a handle from [`fglobs_run_json`].
char *fglobs_report_render(const struct FglobsReport *report, int32_t json);

// # Safety
// `report` must be NULL or a handle not yet freed.
void fglobs_report_free(struct FglobsReport *report);

// E_n verdict for a preset orientation in the window x ≤ `x_bound`,
// `t_min` ≤ t ≤ `t_bound`. `n` = 0 means n = ∞.
//
// # Safety
// `orientation` must be a valid NUL-terminated string and `out` a valid pointer.
enum FglobsStatus fglobs_obstruct(uint32_t prime,
                                  uint32_t n,
                                  const char *orientation,
                                  uint32_t x_bound,
                                  int32_t t_min,
                                  int32_t t_bound,
                                  struct FglobsVerdict **out);

// Writes the first failing x-degree (0 if none) and the vanishing bound.
//
// # Safety
// `verdict` must be a live handle; the out pointers must be valid or NULL.
enum FglobsStatus fglobs_verdict_summary(const struct FglobsVerdict *verdict,
                                         uint32_t *first_failure,
                                         int32_t *tbd);

// The remainder mod p at x^`x_degree`, e.g. "β^10·t^4"; NULL if out of range.
//
// # Safety
// `verdict` must be NULL or a live handle.
char *fglobs_verdict_remainder(const struct FglobsVerdict *verdict, uint32_t x_degree);

// The verdict as JSON; free with [`fglobs_string_free`].
//
// # Safety
// `verdict` must be NULL or a live handle.
char *fglobs_verdict_json(const struct FglobsVerdict *verdict);

// # Safety
// `verdict` must be NULL or a handle not yet freed.
void fglobs_verdict_free(struct FglobsVerdict *verdict);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void fglobs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FGLOBS_H */
