#ifndef OFFSIEVE_H
#define OFFSIEVE_H

/* Generated by cbindgen from the offsieve-ffi crate. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status of every fallible call.
 */
typedef enum {
  OFFSIEVE_STATUS_OK = 0,
  /**
   * An argument was outside the operation's domain.
   */
  OFFSIEVE_STATUS_ERR_DOMAIN = 1,
  /**
   * The request would exceed a resource ceiling.
   */
  OFFSIEVE_STATUS_ERR_RESOURCE = 2,
  /**
   * A required pointer was null.
   */
  OFFSIEVE_STATUS_ERR_NULL = 3,
  /**
   * A bug: invariant violation or caught panic.
   */
  OFFSIEVE_STATUS_ERR_INTERNAL = 4,
} OffsieveStatus;

/**
 * Growable prime cache shared across calls.
 */
typedef struct OffsieveCtx OffsieveCtx;

/**
 * One offset system (`{0}`, `{0,2}`, `{0,2,6,8}`, or custom).
 */
typedef struct OffsieveSystem OffsieveSystem;

/**
 * An owned, immutable list of 64-bit values.
 */
typedef struct OffsieveU64Array OffsieveU64Array;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Crate version as a static NUL-terminated string; do not free.
 */
const char *offsieve_version(void);

/**
 * Create a prime-cache context. Free with [`offsieve_ctx_free`].
 */
OffsieveCtx *offsieve_ctx_new(void);

/**
 * Free a context created by [`offsieve_ctx_new`]. Null is a no-op.
 *
 * # Safety
 * `ctx` must be null or a pointer returned by [`offsieve_ctx_new`] that has
 * not been freed.
 */
void offsieve_ctx_free(OffsieveCtx *ctx);

/**
 * The `{0}` system.
 */
OffsieveSystem *offsieve_system_single(void);

/**
 * The `{0, 2}` system.
 */
OffsieveSystem *offsieve_system_double(void);

/**
 * The `{0, 2, 6, 8}` system.
 */
OffsieveSystem *offsieve_system_quad(void);

/**
 * Build a custom system from `len` offsets. Offsets must start at 0,
 * strictly increase, and leave at least one residue class mod every prime.
 *
 * # Safety
 * `offsets` must point to `len` readable u64 values (or `len` must be 0);
 * `out` must be a valid pointer.
 */
OffsieveStatus offsieve_system_custom(const uint64_t *offsets, size_t len, OffsieveSystem **out);

/**
 * Free a system handle. Null is a no-op.
 *
 * # Safety
 * `sys` must be null or an unfreed pointer from a system constructor.
 */
void offsieve_system_free(OffsieveSystem *sys);

/**
 * Number of offsets in the system; 0 if `sys` is null.
 *
 * # Safety
 * `sys` must be null or a valid system handle.
 */
size_t offsieve_system_offset_count(const OffsieveSystem *sys);

/**
 * Copy up to `cap` offsets into `buf`; returns the total offset count.
 *
 * # Safety
 * `sys` must be a valid system handle; `buf` must hold `cap` writable u64
 * slots (or `cap` must be 0).
 */
size_t offsieve_system_offsets(const OffsieveSystem *sys, uint64_t *buf, size_t cap);

/**
 * Exact primality test.
 */
bool offsieve_is_prime(uint64_t n);

/**
 * The m-th prime, zero-based (m = 0 gives 2).
 *
 * # Safety
 * `ctx` and `out` must be valid pointers.
 */
OffsieveStatus offsieve_nth_prime(OffsieveCtx *ctx, size_t m, uint64_t *out);

/**
 * Does `n` survive sieving by the first `depth + 1` primes?
 *
 * # Safety
 * `ctx`, `sys` and `out` must be valid pointers.
 */
OffsieveStatus offsieve_survives(OffsieveCtx *ctx,
                                 const OffsieveSystem *sys,
                                 uint64_t n,
                                 size_t depth,
                                 bool *out);

/**
 * The residue classes mod `p` removed by the system.
 *
 * # Safety
 * `sys` and `out` must be valid pointers. The array is owned by the caller.
 */
OffsieveStatus offsieve_removed_residues(const OffsieveSystem *sys,
                                         uint64_t p,
                                         OffsieveU64Array **out);

/**
 * Period length and exact survivors-per-period at `depth`, as decimal
 * strings (both owned by the caller; free with [`offsieve_string_free`]).
 *
 * # Safety
 * All pointers must be valid.
 */
OffsieveStatus offsieve_period(OffsieveCtx *ctx,
                               const OffsieveSystem *sys,
                               size_t depth,
                               char **period_out,
                               char **survivors_out);

/**
 * Free a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or an unfreed string returned by this library.
 */
void offsieve_string_free(char *s);

/**
 * Survivors of the sieve in `[lo, hi]` at `depth`.
 *
 * # Safety
 * `ctx`, `sys` and `out` must be valid pointers.
 */
OffsieveStatus offsieve_sieve_segment(OffsieveCtx *ctx,
                                      const OffsieveSystem *sys,
                                      uint64_t lo,
                                      uint64_t hi,
                                      size_t depth,
                                      OffsieveU64Array **out);

/**
 * The minimum survivor above 1 at each depth `0..=m_max`.
 *
 * Fails with `OFFSIEVE_STATUS_ERR_RESOURCE` if some depth found no survivor
 * at or below its search bound (`p_{m+1}^2 + max_offset + 2`).
 *
 * # Safety
 * `ctx`, `sys` and `out` must be valid pointers.
 */
OffsieveStatus offsieve_minimum_values(OffsieveCtx *ctx,
                                       const OffsieveSystem *sys,
                                       size_t m_max,
                                       OffsieveU64Array **out);

/**
 * Previous-minimum values (>= 5) at the jumps of the system's minimum
 * function, collected while the minimum stays at or below `limit`.
 *
 * # Safety
 * `ctx`, `sys` and `out` must be valid pointers.
 */
OffsieveStatus offsieve_jump_values(OffsieveCtx *ctx,
                                    const OffsieveSystem *sys,
                                    uint64_t limit,
                                    OffsieveU64Array **out);

/**
 * Twin formers (p and p+2 prime) in `[lo, hi]`, by direct primality scan.
 *
 * # Safety
 * `ctx` and `out` must be valid pointers.
 */
OffsieveStatus offsieve_twin_formers(OffsieveCtx *ctx,
                                     uint64_t lo,
                                     uint64_t hi,
                                     OffsieveU64Array **out);

/**
 * Prime quadruplet starts in `[lo, hi]`, by direct primality scan.
 *
 * # Safety
 * `ctx` and `out` must be valid pointers.
 */
OffsieveStatus offsieve_quadruplet_starts(OffsieveCtx *ctx,
                                          uint64_t lo,
                                          uint64_t hi,
                                          OffsieveU64Array **out);

/**
 * Birth prime (largest prime below `sqrt(z + 10)`) and death prime (`z`
 * itself) of a quadruplet start.
 *
 * # Safety
 * `birth_out` and `dead_out` must be valid pointers.
 */
OffsieveStatus offsieve_life_span(uint64_t z, uint64_t *birth_out, uint64_t *dead_out);

/**
 * Pointer to the array's values (valid until the array is freed).
 *
 * # Safety
 * `arr` must be null or a valid array handle.
 */
const uint64_t *offsieve_u64_array_data(const OffsieveU64Array *arr);

/**
 * Number of values in the array; 0 for null.
 *
 * # Safety
 * `arr` must be null or a valid array handle.
 */
size_t offsieve_u64_array_len(const OffsieveU64Array *arr);

/**
 * Free an array returned by this library. Null is a no-op.
 *
 * # Safety
 * `arr` must be null or an unfreed array returned by this library.
 */
void offsieve_u64_array_free(OffsieveU64Array *arr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OFFSIEVE_H */
