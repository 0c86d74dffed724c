#ifndef TRUSS_FFI_H
#define TRUSS_FFI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TrussStatus {
  TRUSS_STATUS_OK = 0,
  TRUSS_STATUS_NULL_POINTER = 1,
  TRUSS_STATUS_INVALID_ARGUMENT = 2,
  TRUSS_STATUS_VALIDATION_FAILED = 3,
  TRUSS_STATUS_CARRIER_TOO_LARGE = 4,
  TRUSS_STATUS_PANIC = 5,
} TrussStatus;

/**
 * Opaque finite heap.
 */
typedef struct TrussHeap TrussHeap;

/**
 * Opaque finite truss.
 */
typedef struct TrussTruss TrussTruss;

/**
 * Opaque parameters of a truss on the integers.
 */
typedef struct TrussZParams TrussZParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy of the last error message on this thread, or null. Free with
 * [`truss_string_free`].
 */
char *truss_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void truss_string_free(char *s);

/**
 * `ℤ_{n1} × … × ℤ_{nk}`.
 *
 * # Safety
 * `orders` must point to `len` values; `out` must be writable.
 */
enum TrussStatus truss_heap_cyclic(const size_t *orders, size_t len, struct TrussHeap **out);

/**
 * Heap from a row-major `n × n` Abelian group table.
 *
 * # Safety
 * `table` must point to `n * n` values; `out` must be writable.
 */
enum TrussStatus truss_heap_from_group_table(const size_t *table, size_t n, struct TrussHeap **out);

/**
 * # Safety
 * `h` must be null or a heap handle not yet freed.
 */
void truss_heap_free(struct TrussHeap *h);

/**
 * Carrier size, or 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live heap handle.
 */
size_t truss_heap_size(const struct TrussHeap *h);

/**
 * `[x, y, z]`.
 *
 * # Safety
 * `h` must be a live heap handle; `out` must be writable.
 */
enum TrussStatus truss_heap_bracket(const struct TrussHeap *h,
                                    size_t x,
                                    size_t y,
                                    size_t z,
                                    size_t *out);

/**
 * Validates a row-major multiplication table on a copy of `heap`.
 *
 * # Safety
 * `heap` must be a live heap handle, `mul` must point to `n * n` values
 * with `n` the heap size, and `out` must be writable.
 */
enum TrussStatus truss_truss_new(const struct TrussHeap *heap,
                                 const size_t *mul,
                                 struct TrussTruss **out);

/**
 * Truss from a JSON truss document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum TrussStatus truss_truss_from_json(const char *json, struct TrussTruss **out);

/**
 * Canonical JSON document, or null for a null handle. Free with
 * [`truss_string_free`].
 *
 * # Safety
 * `t` must be null or a live truss handle.
 */
char *truss_truss_to_json(const struct TrussTruss *t);

/**
 * # Safety
 * `t` must be null or a truss handle not yet freed.
 */
void truss_truss_free(struct TrussTruss *t);

/**
 * # Safety
 * `t` must be null or a live truss handle.
 */
size_t truss_truss_size(const struct TrussTruss *t);

/**
 * `x · y`.
 *
 * # Safety
 * `t` must be a live truss handle; `out` must be writable.
 */
enum TrussStatus truss_truss_mul(const struct TrussTruss *t, size_t x, size_t y, size_t *out);

/**
 * Writes the identity (`found` = true) or reports that none exists.
 *
 * # Safety
 * `t` must be a live truss handle; `found` and `out` must be writable.
 */
enum TrussStatus truss_truss_identity(const struct TrussTruss *t, bool *found, size_t *out);

/**
 * Writes the two-sided absorber (`found` = true) or reports that none exists.
 *
 * # Safety
 * `t` must be a live truss handle; `found` and `out` must be writable.
 */
enum TrussStatus truss_truss_absorber(const struct TrussTruss *t, bool *found, size_t *out);

/**
 * Whether the members form a two-sided paragon.
 *
 * # Safety
 * `t` must be a live truss handle, `members` must point to `len` values and
 * `out` must be writable.
 */
enum TrussStatus truss_truss_is_paragon(const struct TrussTruss *t,
                                        const size_t *members,
                                        size_t len,
                                        bool *out);

/**
 * Quotient by a paragon; fails with `ValidationFailed` otherwise.
 *
 * # Safety
 * `t` must be a live truss handle, `members` must point to `len` values and
 * `out` must be writable.
 */
enum TrussStatus truss_truss_quotient(const struct TrussTruss *t,
                                      const size_t *members,
                                      size_t len,
                                      struct TrussTruss **out);

/**
 * `a·mn + b(m+n) + c` with `ac = b(b−1)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum TrussStatus truss_zparams_new(int64_t a, int64_t b, int64_t c, struct TrussZParams **out);

/**
 * `m·n = m` (`right` = false) or `m·n = n` (`right` = true).
 *
 * # Safety
 * `out` must be writable.
 */
enum TrussStatus truss_zparams_projection(bool right, struct TrussZParams **out);

/**
 * Parameters from a JSON zparams document; integers may be arbitrarily large.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum TrussStatus truss_zparams_from_json(const char *json, struct TrussZParams **out);

/**
 * # Safety
 * `p` must be null or a zparams handle not yet freed.
 */
void truss_zparams_free(struct TrussZParams *p);

/**
 * `(a,b,c)`, `left projection` or `right projection`. Free with
 * [`truss_string_free`].
 *
 * # Safety
 * `p` must be null or a live zparams handle.
 */
char *truss_zparams_to_string(const struct TrussZParams *p);

/**
 * Orbit representative under the automorphisms `n ↦ k ± n`.
 *
 * # Safety
 * `p` must be a live zparams handle; `out` must be writable.
 */
enum TrussStatus truss_zparams_canonical(const struct TrussZParams *p, struct TrussZParams **out);

/**
 * # Safety
 * `p` and `q` must be live zparams handles; `out` must be writable.
 */
enum TrussStatus truss_zparams_isomorphic(const struct TrussZParams *p,
                                          const struct TrussZParams *q,
                                          bool *out);

/**
 * Whether the structure has an identity and whether it has an absorber.
 *
 * # Safety
 * `p` must be a live zparams handle; both outputs must be writable.
 */
enum TrussStatus truss_zparams_special(const struct TrussZParams *p, bool *unital, bool *ring_type);

/**
 * Type-3 pairs `(b, c)` for `a`, written as `2·len` values into `out`.
 * `count` receives the number of pairs even when `cap` is too small.
 *
 * # Safety
 * `out` must point to `2 * cap` writable values (or be null with `cap = 0`);
 * `count` must be writable.
 */
enum TrussStatus truss_type3(uint64_t a, uint64_t *out, size_t cap, size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRUSS_FFI_H */
