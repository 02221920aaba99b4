#ifndef LATCHECK_H
#define LATCHECK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LatcheckStatus {
  LATCHECK_STATUS_OK = 0,
  LATCHECK_STATUS_NULL_POINTER = 1,
  LATCHECK_STATUS_INVALID_UTF8 = 2,
  LATCHECK_STATUS_PARSE_ERROR = 3,
  LATCHECK_STATUS_NOT_A_LATTICE = 4,
  LATCHECK_STATUS_UNKNOWN_NAME = 5,
  LATCHECK_STATUS_OUT_OF_RANGE = 6,
  LATCHECK_STATUS_BUDGET_EXCEEDED = 7,
  LATCHECK_STATUS_SIZE_LIMIT = 8,
  LATCHECK_STATUS_INVALID_ARGUMENT = 9,
  LATCHECK_STATUS_PANIC = 10,
} LatcheckStatus;

/**
 * Opaque lattice handle.
 */
typedef struct LatcheckLattice LatcheckLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *latcheck_last_error(void);

/**
 * Library version as a static string.
 */
const char *latcheck_version(void);

/**
 * Builds a lattice from the JSON file format.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum LatcheckStatus latcheck_lattice_parse(const char *json, struct LatcheckLattice **out);

/**
 * Looks up a catalog entry such as `N5`, `grid(2,3)` or `chain(4)`.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` writable.
 */
enum LatcheckStatus latcheck_lattice_from_catalog(const char *name, struct LatcheckLattice **out);

/**
 * # Safety
 * `l` must come from this library and not be used afterwards. Null is ignored.
 */
void latcheck_lattice_free(struct LatcheckLattice *l);

/**
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum LatcheckStatus latcheck_lattice_len(const struct LatcheckLattice *l, size_t *out);

/**
 * Index of the element with the given label.
 *
 * # Safety
 * `l` must be a live handle, `label` nul-terminated and `out` writable.
 */
enum LatcheckStatus latcheck_lattice_index_of(const struct LatcheckLattice *l,
                                              const char *label,
                                              size_t *out);

/**
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum LatcheckStatus latcheck_lattice_leq(const struct LatcheckLattice *l,
                                         size_t a,
                                         size_t b,
                                         bool *out);

/**
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum LatcheckStatus latcheck_lattice_meet(const struct LatcheckLattice *l,
                                          size_t a,
                                          size_t b,
                                          size_t *out);

/**
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum LatcheckStatus latcheck_lattice_join(const struct LatcheckLattice *l,
                                          size_t a,
                                          size_t b,
                                          size_t *out);

/**
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum LatcheckStatus latcheck_is_whitman(const struct LatcheckLattice *l, bool *out);

/**
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum LatcheckStatus latcheck_is_semidistributive(const struct LatcheckLattice *l, bool *out);

/**
 * Membership in the variety generated by the pentagon.
 *
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum LatcheckStatus latcheck_is_in_n5_variety(const struct LatcheckLattice *l, bool *out);

/**
 * Fewest blocks in a partition into distributive sublattices.
 *
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum LatcheckStatus latcheck_dec(const struct LatcheckLattice *l, size_t *out);

/**
 * Law profile as JSON. Free the result with `latcheck_string_free`.
 *
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum LatcheckStatus latcheck_law_profile_json(const struct LatcheckLattice *l, char **out);

/**
 * The lattice in the JSON file format. Free the result with `latcheck_string_free`.
 *
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum LatcheckStatus latcheck_lattice_to_json(const struct LatcheckLattice *l, char **out);

/**
 * Decides `s <= t` in the free lattice.
 *
 * # Safety
 * `s` and `t` must be nul-terminated and `out` writable.
 */
enum LatcheckStatus latcheck_free_leq(const char *s, const char *t, bool *out);

/**
 * Canonical form of a free-lattice term. Free the result with `latcheck_string_free`.
 *
 * # Safety
 * `term` must be nul-terminated and `out` writable.
 */
enum LatcheckStatus latcheck_free_canonical(const char *term, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void latcheck_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LATCHECK_H */
