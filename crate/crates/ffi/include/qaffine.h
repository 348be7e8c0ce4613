#ifndef QAFFINE_H
#define QAFFINE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QaStatus {
  QA_STATUS_OK = 0,
  QA_STATUS_NULL_POINTER = 1,
  QA_STATUS_INVALID_UTF8 = 2,
  QA_STATUS_PARSE = 3,
  QA_STATUS_DOMAIN = 4,
  QA_STATUS_PANIC = 5,
} QaStatus;

typedef enum QaOmegaKind {
  QA_OMEGA_KIND_PSI = 0,
  QA_OMEGA_KIND_PHI = 1,
} QaOmegaKind;

typedef enum QaVermaOp {
  QA_VERMA_OP_X_PLUS = 0,
  QA_VERMA_OP_X_MINUS = 1,
  QA_VERMA_OP_A = 2,
  QA_VERMA_OP_PSI = 3,
  QA_VERMA_OP_PHI = 4,
  QA_VERMA_OP_K = 5,
} QaVermaOp;

/**
 * Opaque element of the algebra.
 */
typedef struct QaElement QaElement;

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into this library on the same thread.
 */
const char *qa_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void qa_string_free(char *s);

/**
 * # Safety
 * `e` must come from this library and not have been freed.
 */
void qa_element_free(struct QaElement *e);

/**
 * Parses and normal-orders `text`.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum QaStatus qa_element_parse(const char *text, struct QaElement **out);

/**
 * Canonical text, parseable by [`qa_element_parse`].
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum QaStatus qa_element_render(const struct QaElement *e, char **out);

/**
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum QaStatus qa_element_to_json(const struct QaElement *e, char **out);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum QaStatus qa_element_multiply(const struct QaElement *a,
                                  const struct QaElement *b,
                                  struct QaElement **out);

/**
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum QaStatus qa_omega(enum QaOmegaKind kind,
                       int64_t k,
                       const struct QaElement *e,
                       struct QaElement **out);

/**
 * The bilinear form `(a, b)` as canonical scalar text.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum QaStatus qa_pair(const struct QaElement *a, const struct QaElement *b, char **out);

/**
 * Gram matrix on the weight space `(length, delta_sum)` with modes in
 * `[lo, hi]`, as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum QaStatus qa_gram_json(size_t length, int64_t delta_sum, int64_t lo, int64_t hi, char **out);

/**
 * Sets `*equal` to whether the exponential identity holds through `order`.
 *
 * # Safety
 * `equal` must be writable.
 */
enum QaStatus qa_identity18(size_t order, bool *equal);

/**
 * Applies one operator to `payload * v` in the level-zero module with
 * highest weight `lambda_h`; `idx` is ignored for `K`.
 *
 * # Safety
 * `payload` must be a live handle; `out` must be writable.
 */
enum QaStatus qa_verma_act(enum QaVermaOp op,
                           int64_t idx,
                           int64_t lambda_h,
                           const struct QaElement *payload,
                           struct QaElement **out);

#endif  /* QAFFINE_H */
