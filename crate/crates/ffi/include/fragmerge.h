#ifndef FRAGMERGE_H
#define FRAGMERGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. `FM_OK` is zero; everything else is a failure.
 */
typedef enum FmStatus {
  FM_OK = 0,
  FM_NULL_POINTER = 1,
  /**
   * Not valid UTF-8 or otherwise malformed.
   */
  FM_INVALID_ARGUMENT = 2,
  FM_SYNTAX = 3,
  FM_UNIVERSE_MISMATCH = 4,
  FM_INCONSISTENT_BASE = 5,
  FM_EMPTY_PROFILE = 6,
  /**
   * The set is not closed under the fragment's function.
   */
  FM_NOT_CLOSED = 7,
  FM_UNKNOWN_FIXTURE = 8,
  /**
   * The caller's buffer is too small; the required length was written.
   */
  FM_BUFFER_TOO_SMALL = 9,
  FM_PANIC = 10,
} FmStatus;

typedef enum FmDistance {
  FM_HAMMING = 0,
  FM_DRASTIC = 1,
} FmDistance;

typedef enum FmAggregator {
  FM_SUM = 0,
  FM_GMAX = 1,
} FmAggregator;

typedef enum FmRefinement {
  FM_NO_REFINEMENT = 0,
  FM_CLOSURE = 1,
  FM_LEX = 2,
  FM_LEX_CLOSURE = 3,
} FmRefinement;

typedef enum FmFragment {
  FM_HORN = 0,
  FM_KROM = 1,
} FmFragment;

/**
 * A set of interpretations over one universe.
 */
typedef struct FmModelSet FmModelSet;

/**
 * A growing list of bases over one universe.
 */
typedef struct FmProfile FmProfile;

/**
 * Ordered atom names.
 */
typedef struct FmUniverse FmUniverse;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. Owned by the
 * library; valid until the next failing call on this thread.
 */
const char *fm_last_error_message(void);

/**
 * Builds a universe from atom names separated by whitespace or commas.
 *
 * # Safety
 * `atoms` must be a nul-terminated string; `out` must be writable.
 */
enum FmStatus fm_universe_new(const char *atoms, struct FmUniverse **out);

/**
 * # Safety
 * `u` must be null or a handle from `fm_universe_new` not yet freed.
 */
void fm_universe_free(struct FmUniverse *u);

/**
 * Number of atoms, or 0 for a null handle.
 *
 * # Safety
 * `u` must be null or a live universe handle.
 */
size_t fm_universe_len(const struct FmUniverse *u);

/**
 * Models of a formula such as `a & (b -> !c)`.
 *
 * # Safety
 * Pointers must be valid; `formula` nul-terminated.
 */
enum FmStatus fm_formula_models(const struct FmUniverse *u,
                                const char *formula,
                                struct FmModelSet **out);

/**
 * Parses a set written as `{} {a} {a,b}`.
 *
 * # Safety
 * Pointers must be valid; `text` nul-terminated.
 */
enum FmStatus fm_model_set_parse(const struct FmUniverse *u,
                                 const char *text,
                                 struct FmModelSet **out);

/**
 * Builds a set from interpretation bit patterns (bit `i` is atom `i`).
 * Duplicates are dropped.
 *
 * # Safety
 * `bits` must point to `len` values (or be null when `len` is 0).
 */
enum FmStatus fm_model_set_from_bits(const struct FmUniverse *u,
                                     const uint32_t *bits,
                                     size_t len,
                                     struct FmModelSet **out);

/**
 * # Safety
 * `m` must be null or a live model-set handle.
 */
void fm_model_set_free(struct FmModelSet *m);

/**
 * Number of members, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live model-set handle.
 */
size_t fm_model_set_len(const struct FmModelSet *m);

/**
 * Copies the members in ascending order into `buf`. Always writes the
 * member count to `written`; returns `FM_BUFFER_TOO_SMALL` if it exceeds `cap`.
 *
 * # Safety
 * `buf` must have room for `cap` values; `written` must be writable.
 */
enum FmStatus fm_model_set_bits(const struct FmModelSet *m,
                                uint32_t *buf,
                                size_t cap,
                                size_t *written);

/**
 * Renders the set as `{}, {a}, {a,b}`; an empty set renders as `(none)`.
 *
 * # Safety
 * `out` receives a string to release with `fm_string_free`.
 */
enum FmStatus fm_model_set_to_string(const struct FmModelSet *m, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void fm_string_free(char *s);

/**
 * An empty profile; add bases with `fm_profile_push`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FmStatus fm_profile_new(const struct FmUniverse *u, struct FmProfile **out);

/**
 * Appends a copy of `base`, which must be non-empty.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FmStatus fm_profile_push(struct FmProfile *p, const struct FmModelSet *base);

/**
 * # Safety
 * `p` must be null or a live profile handle.
 */
void fm_profile_free(struct FmProfile *p);

/**
 * Merges the profile under `mu`, optionally refining into `frag`.
 * `frag` is ignored when `refinement` is `FM_NO_REFINEMENT`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FmStatus fm_merge(const struct FmProfile *profile,
                       const struct FmModelSet *mu,
                       enum FmDistance distance,
                       enum FmAggregator aggregator,
                       enum FmRefinement refinement,
                       enum FmFragment frag,
                       struct FmModelSet **out);

/**
 * Least superset of `m` closed under the fragment's function.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FmStatus fm_closure(enum FmFragment frag, const struct FmModelSet *m, struct FmModelSet **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum FmStatus fm_is_closed(enum FmFragment frag, const struct FmModelSet *m, bool *out);

/**
 * Number of bases in the profile sharing a model with `m`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FmStatus fm_card_intersection(const struct FmModelSet *m,
                                   const struct FmProfile *profile,
                                   size_t *out);

/**
 * A Horn or Krom CNF whose models are exactly `m`. Fails with
 * `FM_NOT_CLOSED` if `m` is outside the fragment.
 *
 * # Safety
 * `out` receives a string to release with `fm_string_free`.
 */
enum FmStatus fm_synthesize(const struct FmModelSet *m, enum FmFragment frag, char **out);

/**
 * Recomputes a stored fixture; `passes` is set to whether every cell matched.
 *
 * # Safety
 * `id` must be nul-terminated; `passes` writable.
 */
enum FmStatus fm_reproduce(const char *id, bool *passes);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRAGMERGE_H */
