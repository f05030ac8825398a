#ifndef AUTSERIES_H
#define AUTSERIES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum AsStatus {
  AS_STATUS_OK = 0,
  // A required pointer argument was null.
  AS_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  AS_STATUS_INVALID_UTF8 = 2,
  // A polynomial, series or automaton text failed to parse.
  AS_STATUS_PARSE = 3,
  // The equation has no root with the requested prefix, or more than one.
  AS_STATUS_NO_ROOT = 4,
  // An argument violates a documented precondition.
  AS_STATUS_PRECONDITION = 5,
  // A search or precision cap was exhausted before an answer was certified.
  AS_STATUS_CAPS_EXHAUSTED = 6,
  // Any other computation failure.
  AS_STATUS_FAILED = 7,
  // A Rust panic was caught at the boundary.
  AS_STATUS_PANIC = 8,
} AsStatus;

// Position in the sparseness hierarchy S ⊂ Ŝ ⊂ QS.
typedef enum AsLevel {
  AS_LEVEL_S = 0,
  // In Ŝ but not sparse.
  AS_LEVEL_HAT_S = 1,
  // In QS but not in Ŝ.
  AS_LEVEL_QS = 2,
  // Not in QS.
  AS_LEVEL_NOT_QS = 3,
  // Some level could not be decided within the bounds.
  AS_LEVEL_INCONCLUSIVE = 4,
} AsLevel;

// Opaque automaton handle.
typedef struct AsAutomaton AsAutomaton;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread (empty after a
// success). The pointer stays valid until the next call on this thread.
const char *as_last_error(void);

// Static description of a status code.
const char *as_status_message(enum AsStatus status);

// Parses an automaton in the text codec.
//
// # Safety
// `text` must be a NUL-terminated string and `out` writable.
enum AsStatus as_automaton_from_text(const char *text, struct AsAutomaton **out);

// Solves `equation = 0` over F₂ for the unique root starting with
// `prefix` (null: the equation must have exactly one root) and returns
// its minimal automaton.
//
// # Safety
// `equation` must be a NUL-terminated string, `prefix` null or one, and
// `out` writable.
enum AsStatus as_solve(const char *equation, const char *prefix, struct AsAutomaton **out);

// Releases a handle (null is ignored).
//
// # Safety
// `a` must be null or a handle not yet freed.
void as_automaton_free(struct AsAutomaton *a);

// Number of states.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum AsStatus as_automaton_num_states(const struct AsAutomaton *a, size_t *out);

// Coefficient of `t^k`.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum AsStatus as_automaton_coeff(const struct AsAutomaton *a, uint64_t k, uint8_t *out);

// Minimal automaton of the same series, as a new handle.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum AsStatus as_automaton_minimize(const struct AsAutomaton *a, struct AsAutomaton **out);

// Whether two automata generate the same series.
//
// # Safety
// `a`, `b` must be live handles and `out` writable.
enum AsStatus as_automaton_equal_series(const struct AsAutomaton *a,
                                        const struct AsAutomaton *b,
                                        bool *out);

// Text encoding of the automaton; free with `as_string_free`.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum AsStatus as_automaton_to_text(const struct AsAutomaton *a, char **out);

// Releases a string returned by this library (null is ignored).
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void as_string_free(char *s);

// Exact compositional order: on success `*n` is the exponent with order
// `2^n`, or `UINT32_MAX` if the order exceeds `2^nmax`; `*certified` is
// false when only truncated evidence was available.
//
// # Safety
// `a` must be a live handle; `n` and `certified` writable.
enum AsStatus as_exact_order(const struct AsAutomaton *a,
                             uint32_t nmax,
                             uint32_t *n,
                             bool *certified);

// Lower breaks `b_0, …, b_{len−1}` written to `out[0..len]`.
//
// # Safety
// `a` must be a live handle and `out` valid for `len` writes.
enum AsStatus as_break_sequence(const struct AsAutomaton *a, size_t len, size_t *out);

// Hierarchy level of the series; `equation` (nullable) is its minimal
// polynomial, guessed and certified when null.
//
// # Safety
// `a` must be a live handle, `equation` null or a NUL-terminated string,
// and `out` writable.
enum AsStatus as_classify(const struct AsAutomaton *a,
                          const char *equation,
                          uint64_t mmax,
                          enum AsLevel *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AUTSERIES_H */
