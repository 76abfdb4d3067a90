#ifndef CLIFFORD_PENTAGON_H
#define CLIFFORD_PENTAGON_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum PcStatus {
  PC_STATUS_OK = 0,
  PC_STATUS_NULL_POINTER = 1,
  /**
   * Bad index, buffer too small or non-UTF-8 string.
   */
  PC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Wrong shape, empty, out-of-range entry or non-associative table.
   */
  PC_STATUS_INVALID_TABLE = 3,
  PC_STATUS_NOT_CLIFFORD = 4,
  /**
   * The θ-table breaks one of the two axioms.
   */
  PC_STATUS_NOT_A_SOLUTION = 5,
  PC_STATUS_JSON = 6,
  /**
   * Any other library error.
   */
  PC_STATUS_FAILED = 7,
  PC_STATUS_PANIC = 8,
} PcStatus;

/**
 * A validated finite semigroup.
 */
typedef struct PcSemigroup PcSemigroup;

/**
 * A validated solution.
 */
typedef struct PcSolution PcSolution;

/**
 * The result of an enumeration.
 */
typedef struct PcSolutionList PcSolutionList;

/**
 * Classification of a solution. The idempotent-invariant, idempotent-fixed
 * and neither entries are -1 when the base is not Clifford.
 */
typedef struct PcFlags {
  int8_t commutative;
  int8_t cocommutative;
  int8_t involutive;
  int8_t idempotent;
  int8_t e_invariant;
  int8_t e_fixed;
  int8_t neither;
} PcFlags;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into this library on the same thread.
 */
const char *pc_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pc_version(void);

/**
 * Builds a semigroup from a row-major `order * order` table.
 *
 * # Safety
 * `table` must point to `order * order` readable values.
 */
enum PcStatus pc_semigroup_new(size_t order, const size_t *table, struct PcSemigroup **out);

/**
 * Parses a semigroup JSON document (`{"table": [[...]], ...}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string.
 */
enum PcStatus pc_semigroup_from_json(const char *json, struct PcSemigroup **out);

/**
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum PcStatus pc_semigroup_order(const struct PcSemigroup *s, size_t *out);

/**
 * Writes 1 to `out` when the semigroup is Clifford, 0 otherwise.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum PcStatus pc_semigroup_is_clifford(const struct PcSemigroup *s, int8_t *out);

/**
 * # Safety
 * `s` must be null or a handle not yet freed.
 */
void pc_semigroup_free(struct PcSemigroup *s);

/**
 * Validates a row-major θ-table against the base semigroup.
 *
 * # Safety
 * `s` must be a live handle; `theta` must point to `order * order` values.
 */
enum PcStatus pc_solution_new(const struct PcSemigroup *s,
                              const size_t *theta,
                              size_t len,
                              struct PcSolution **out);

/**
 * Parses a solution JSON document with an inline semigroup or a
 * `fixture:<name>` reference.
 *
 * # Safety
 * `json` must be a NUL-terminated string.
 */
enum PcStatus pc_solution_from_json(const char *json, struct PcSolution **out);

/**
 * `θ_a(b)`
 *
 * # Safety
 * `sol` must be a live handle and `out` writable.
 */
enum PcStatus pc_solution_theta(const struct PcSolution *sol, size_t a, size_t b, size_t *out);

/**
 * Copies the row-major θ-table into `buf`, which must hold `order * order`
 * values.
 *
 * # Safety
 * `sol` must be a live handle; `buf` must point to `len` writable values.
 */
enum PcStatus pc_solution_copy_theta(const struct PcSolution *sol, size_t *buf, size_t len);

/**
 * # Safety
 * `sol` must be a live handle and `out` writable.
 */
enum PcStatus pc_solution_classify(const struct PcSolution *sol, struct PcFlags *out);

/**
 * Serialises the solution (with its semigroup inline). Free the result
 * with [`pc_string_free`].
 *
 * # Safety
 * `sol` must be a live handle and `out` writable.
 */
enum PcStatus pc_solution_to_json(const struct PcSolution *sol, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void pc_string_free(char *s);

/**
 * # Safety
 * `sol` must be null or a handle not yet freed.
 */
void pc_solution_free(struct PcSolution *sol);

/**
 * Every solution on `s` in lexicographic θ-table order, or one per
 * isomorphism class when `up_to_iso` is non-zero. `threads == 0` uses the
 * default pool.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum PcStatus pc_enumerate(const struct PcSemigroup *s,
                           size_t threads,
                           int32_t up_to_iso,
                           struct PcSolutionList **out);

/**
 * # Safety
 * `list` must be a live handle and `out` writable.
 */
enum PcStatus pc_solution_list_len(const struct PcSolutionList *list, size_t *out);

/**
 * Copies entry `index` into a new solution handle.
 *
 * # Safety
 * `list` must be a live handle and `out` writable.
 */
enum PcStatus pc_solution_list_get(const struct PcSolutionList *list,
                                   size_t index,
                                   struct PcSolution **out);

/**
 * # Safety
 * `list` must be null or a handle not yet freed.
 */
void pc_solution_list_free(struct PcSolutionList *list);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLIFFORD_PENTAGON_H */
