#ifndef BUDIM_H
#define BUDIM_H

/* Generated by cbindgen from budim-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Maximum generator-block length stored inline in [`BudimSample`].
 */
#define BUDIM_MAX_BLOCK 32

/**
 * Regime tag for dimension samples, mirroring the core enum without
 * its payload.
 */
typedef enum BudimRegime {
  /**
   * Base at or below the critical base: dimension zero.
   */
  BUDIM_REGIME_TRIVIAL_ZERO = 0,
  /**
   * Base inside an admissible interval; `block` holds the generator.
   */
  BUDIM_REGIME_INTERVAL = 1,
  /**
   * Base at or above the alphabet size: dimension `log N / log beta`.
   */
  BUDIM_REGIME_SUPER_CRITICAL = 2,
  /**
   * Location failed; only the bracket `[dim_lo, dim_hi]` is known.
   */
  BUDIM_REGIME_UNRESOLVED = 3,
} BudimRegime;

/**
 * Status code returned by every fallible call.
 */
typedef enum BudimStatus {
  /**
   * Success; out-parameters are valid.
   */
  BUDIM_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  BUDIM_STATUS_NULL_POINTER = 1,
  /**
   * An argument was out of range (alphabet size, digits, base, x, ...).
   */
  BUDIM_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The digit block fails the admissibility conditions.
   */
  BUDIM_STATUS_NOT_ADMISSIBLE = 3,
  /**
   * A digit decision fell within the tie tolerance under strict
   * tie handling.
   */
  BUDIM_STATUS_NEAR_TIE = 4,
  /**
   * The comparison or interval relation could not be decided at the
   * requested tolerance.
   */
  BUDIM_STATUS_UNDECIDED = 5,
  /**
   * An internal iteration or size budget was exhausted.
   */
  BUDIM_STATUS_BUDGET_EXCEEDED = 6,
  /**
   * A caller-supplied buffer is too small for the result.
   */
  BUDIM_STATUS_BUFFER_TOO_SMALL = 7,
  /**
   * A panic was caught at the boundary; the library state is still
   * usable but the call produced nothing.
   */
  BUDIM_STATUS_INTERNAL = 8,
} BudimStatus;

/**
 * Opaque handle over a reusable dimension evaluator (interval table
 * plus entropy cache). Create with [`budim_evaluator_new`], destroy
 * with [`budim_evaluator_free`].
 */
typedef struct BudimEvaluator BudimEvaluator;

/**
 * One evaluation of the dimension function.
 *
 * When `regime` is `BUDIM_REGIME_UNRESOLVED`, only `dim_lo`/`dim_hi`
 * bracket the value and `h` is NaN; otherwise `dim_lo == dim_hi`.
 */
typedef struct BudimSample {
  double beta;
  double dim_lo;
  double dim_hi;
  /**
   * Topological entropy of the governing subshift; NaN when unresolved.
   */
  double h;
  enum BudimRegime regime;
  /**
   * Generator block digits (valid for `block_len` entries) when
   * `regime` is `BUDIM_REGIME_INTERVAL`; zero-length otherwise.
   */
  uint32_t block[BUDIM_MAX_BLOCK];
  uintptr_t block_len;
} BudimSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, null-terminated name of a status code (never null).
 */
const char *budim_status_name(enum BudimStatus status);

/**
 * Expands `x` in base `beta` over the alphabet `{0, ..., n-1}`.
 *
 * Writes exactly `depth` digits to `digits_out`. `quasi` selects the
 * quasi-greedy map (largest digit with a nonzero remainder) instead of
 * the greedy one. Near-boundary decisions snap to the exact boundary
 * semantics.
 *
 * # Safety
 * `digits_out` must point to at least `depth` writable `uint32_t`.
 */
enum BudimStatus budim_expand(uint32_t n,
                              double beta,
                              double x,
                              bool quasi,
                              uintptr_t depth,
                              uint32_t *digits_out);

/**
 * Returns 1 if the block is admissible, 0 if not, and a negative
 * status code (negated [`BudimStatus`]) on invalid input.
 *
 * # Safety
 * `digits` must point to `len` readable `uint32_t`.
 */
int32_t budim_is_admissible(uint32_t n, const uint32_t *digits, uintptr_t len);

/**
 * Computes the certified base interval generated by an admissible
 * block: `lo`/`hi` are midpoints, `lo_radius`/`hi_radius` enclosure
 * half-widths, all certified to `tol`.
 *
 * # Safety
 * `digits` must point to `len` readable `uint32_t`; the out-pointers
 * must be valid or null (null out-pointers are skipped).
 */
enum BudimStatus budim_interval(uint32_t n,
                                const uint32_t *digits,
                                uintptr_t len,
                                double tol,
                                double *lo,
                                double *lo_radius,
                                double *hi,
                                double *hi_radius);

/**
 * Computes the topological entropy of the subshift generated by an
 * admissible block, together with the certified spectral radius.
 * `certified_zero` is set to 1 when `h = 0` was established by the
 * dual certificate (spectral enclosure contains 1 and word counts
 * grow subexponentially).
 *
 * # Safety
 * `digits` must point to `len` readable `uint32_t`; out-pointers must
 * be valid or null.
 */
enum BudimStatus budim_entropy(uint32_t n,
                               const uint32_t *digits,
                               uintptr_t len,
                               double tol,
                               double *h,
                               double *rho,
                               double *rho_radius,
                               int32_t *certified_zero);

/**
 * Computes the generalized golden mean `g_n` and the critical base
 * `beta_c(n)` (the base below which only trivial expansions are
 * unique), both certified to `tol`.
 *
 * # Safety
 * Out-pointers must be valid or null.
 */
enum BudimStatus budim_critical_bases(uint32_t n, double tol, double *g_n, double *beta_c);

/**
 * Creates a dimension evaluator for alphabet `{0, ..., n-1}` covering
 * generator blocks up to length `p_max`, with digit-scan depth `depth`
 * and certification tolerance `tol`. Writes the handle to `out`.
 *
 * # Safety
 * `out` must be a valid pointer; the returned handle must be released
 * with [`budim_evaluator_free`].
 */
enum BudimStatus budim_evaluator_new(uint32_t n,
                                     uintptr_t p_max,
                                     uintptr_t depth,
                                     double tol,
                                     struct BudimEvaluator **out);

/**
 * Evaluates the dimension function at `beta` and fills `sample`.
 *
 * # Safety
 * `evaluator` must be a live handle from [`budim_evaluator_new`];
 * `sample` must be a valid pointer.
 */
enum BudimStatus budim_evaluator_eval(const struct BudimEvaluator *evaluator,
                                      double beta,
                                      struct BudimSample *sample);

/**
 * Releases a handle created by [`budim_evaluator_new`]. Passing null
 * is a no-op.
 *
 * # Safety
 * `evaluator` must be null or a live handle; it must not be used
 * afterwards.
 */
void budim_evaluator_free(struct BudimEvaluator *evaluator);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BUDIM_H */
