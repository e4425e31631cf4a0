#ifndef SCL_FFI_H
#define SCL_FFI_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum SclStatus {
  SCL_STATUS_OK = 0,
  SCL_STATUS_NULL_POINTER = 1,
  SCL_STATUS_INVALID_UTF8 = 2,
  /**
   * Parse errors, invalid input, failed preconditions.
   */
  SCL_STATUS_INPUT_ERROR = 3,
  SCL_STATUS_LIMIT_EXCEEDED = 4,
  /**
   * Overflow or a failed internal invariant.
   */
  SCL_STATUS_INTERNAL = 5,
  SCL_STATUS_PANIC = 6,
} SclStatus;

/**
 * An LP value with its status.
 */
typedef struct SclValue SclValue;

/**
 * A parsed word.
 */
typedef struct SclWord SclWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Owned by the
 * library and valid until the next failing call on this thread.
 */
const char *scl_last_error(void);

/**
 * Parse `text` into a new word handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SclStatus scl_word_parse(const char *text, struct SclWord **out);

/**
 * Number of blocks `n` of the word; 0 for null.
 *
 * # Safety
 * `word` must be null or a handle from [`scl_word_parse`].
 */
size_t scl_word_blocks(const struct SclWord *word);

/**
 * # Safety
 * `word` must be null or a handle from [`scl_word_parse`], not yet freed.
 */
void scl_word_free(struct SclWord *word);

/**
 * LP value at disc-vector bound `bound`; with `stabilize` the run at
 * `bound + 1` is reported.
 *
 * # Safety
 * `word` must be a live word handle and `out` a valid pointer.
 */
enum SclStatus scl_compute(const struct SclWord *word,
                           int64_t bound,
                           bool stabilize,
                           struct SclValue **out);

/**
 * The value as a newly allocated `"p/q"` string; release it with
 * [`scl_string_free`]. Null for a null handle.
 *
 * # Safety
 * `value` must be null or a live value handle.
 */
char *scl_value_string(const struct SclValue *value);

/**
 * Whether the runs at `B` and `B + 1` agreed.
 *
 * # Safety
 * `value` must be null or a live value handle.
 */
bool scl_value_is_stabilized(const struct SclValue *value);

/**
 * The bound of the reported LP run; 0 for null.
 *
 * # Safety
 * `value` must be null or a live value handle.
 */
int64_t scl_value_bound(const struct SclValue *value);

/**
 * # Safety
 * `value` must be null or a handle from [`scl_compute`], not yet freed.
 */
void scl_value_free(struct SclValue *value);

/**
 * The lower bound `max(0, (n/2)(1 − 1/p − 1/q))` as a new `"p/q"` string.
 *
 * # Safety
 * `word` must be null or a live word handle.
 */
char *scl_lower_bound(const struct SclWord *word);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void scl_string_free(char *s);

/**
 * Whether a proper nonempty subset of the zero-sum list sums to zero.
 *
 * # Safety
 * `values` must point to `len` integers and `out` must be valid.
 */
enum SclStatus scl_subset_sum_proper(const int64_t *values, size_t len, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCL_FFI_H */
