#ifndef SPINCOVER_H
#define SPINCOVER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Status codes returned by every fallible call.
typedef enum SpincoverStatus {
  SPINCOVER_STATUS_OK = 0,
  SPINCOVER_STATUS_NULL_POINTER = 1,
  SPINCOVER_STATUS_INVALID_ARGUMENT = 2,
  SPINCOVER_STATUS_INVALID_UTF8 = 3,
  SPINCOVER_STATUS_ENUMERATION = 4,
  SPINCOVER_STATUS_INVALID_ELEMENT = 5,
  SPINCOVER_STATUS_INVALID_WORD = 6,
  SPINCOVER_STATUS_BUFFER_TOO_SMALL = 7,
  SPINCOVER_STATUS_PANIC = 8,
} SpincoverStatus;

// Presentation variant selector.
typedef enum SpincoverVariant {
  SPINCOVER_VARIANT_STANDARD = 0,
  SPINCOVER_VARIANT_TWISTED = 1,
} SpincoverVariant;

// Opaque handle to an enumerated group. Elements are named by ids `1..=order`,
// with id 1 the identity.
typedef struct SpincoverGroup SpincoverGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Caller frees.
char *spincover_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a pointer returned by this library, not yet freed.
void spincover_string_free(char *s);

// Library version as a static nul-terminated string.
const char *spincover_version(void);

// Enumerates the group of rank `n` and stores a new handle in `*out`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum SpincoverStatus spincover_group_new(size_t n,
                                         enum SpincoverVariant variant,
                                         struct SpincoverGroup **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `g` must be null or a handle from `spincover_group_new`, not yet freed.
void spincover_group_free(struct SpincoverGroup *g);

// Rank `n` of the group.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum SpincoverStatus spincover_group_rank(const struct SpincoverGroup *g, size_t *out);

// Number of elements.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum SpincoverStatus spincover_group_order(const struct SpincoverGroup *g, size_t *out);

// Id of the element represented by a word such as `"R1 R2^-1"`.
//
// # Safety
// `g` must be a live handle, `word` a nul-terminated string and `out` writable.
enum SpincoverStatus spincover_group_element_from_word(const struct SpincoverGroup *g,
                                                       const char *word,
                                                       size_t *out);

// Id of the product `a b` (`b` acts first).
//
// # Safety
// `g` must be a live handle and `out` writable.
enum SpincoverStatus spincover_group_multiply(const struct SpincoverGroup *g,
                                              size_t a,
                                              size_t b,
                                              size_t *out);

// Id of the inverse.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum SpincoverStatus spincover_group_inverse(const struct SpincoverGroup *g, size_t a, size_t *out);

// Order of an element.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum SpincoverStatus spincover_group_element_order(const struct SpincoverGroup *g,
                                                   size_t a,
                                                   size_t *out);

// Canonical label of an element as a new string. Caller frees.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum SpincoverStatus spincover_group_label(const struct SpincoverGroup *g, size_t a, char **out);

// Signed permutation image of an element: `out[c]` is the signed 1-based
// image of axis `c + 1`. `len` must be at least the rank.
//
// # Safety
// `g` must be a live handle and `out` writable for `len` entries.
enum SpincoverStatus spincover_group_theta(const struct SpincoverGroup *g,
                                           size_t a,
                                           int32_t *out,
                                           size_t len);

// Number of acceptance criteria.
size_t spincover_criteria_count(void);

// Runs criterion `k` with default options and `seed`. Writes whether it
// passed and, if `report` is non-null, its text report. Caller frees.
//
// # Safety
// `passed` must be writable; `report` must be null or writable.
enum SpincoverStatus spincover_verify(size_t k, uint64_t seed, bool *passed, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINCOVER_H */
