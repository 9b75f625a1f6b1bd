#ifndef LATTICE_ENTROPY_H
#define LATTICE_ENTROPY_H

#include <stddef.h>
#include <stdint.h>

typedef enum TeStatus {
  TE_STATUS_OK = 0,
  TE_STATUS_NULL_POINTER = 1,
  TE_STATUS_INVALID_UTF8 = 2,
  TE_STATUS_PARSE = 3,
  TE_STATUS_INVALID_INPUT = 4,
  TE_STATUS_NON_CONVERGENCE = 5,
  TE_STATUS_UNKNOWN_NAME = 6,
  TE_STATUS_INTERNAL = 7,
} TeStatus;

// Opaque lattice handle.
typedef struct TeLattice TeLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer is
// valid until the next call into this library on the same thread.
const char *te_last_error_message(void);

// Looks up a catalog lattice by name or alias.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum TeStatus te_lattice_from_catalog(const char *name, struct TeLattice **out);

// Parses a lattice file.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum TeStatus te_lattice_from_json(const char *json, struct TeLattice **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `lattice` must come from this library and not be freed twice.
void te_lattice_free(struct TeLattice *lattice);

// Vertex, edge and face counts of the fundamental domain. Any out-pointer
// may be null.
//
// # Safety
// Non-null pointers must be valid.
enum TeStatus te_lattice_counts(const struct TeLattice *lattice,
                                uintptr_t *vertices,
                                uintptr_t *edges,
                                uintptr_t *faces);

// Bipyramid volume per vertex.
//
// # Safety
// Pointers must be valid.
enum TeStatus te_lattice_nu_bipyramid(const struct TeLattice *lattice, double *out);

// Octahedral volume per vertex, `|E| v_oct / |V|`.
//
// # Safety
// Pointers must be valid.
enum TeStatus te_lattice_nu_bar(const struct TeLattice *lattice, double *out);

// Entropy per fundamental domain by adaptive cubature. `error` may be null.
//
// # Safety
// Non-null pointers must be valid.
enum TeStatus te_lattice_entropy_logdet(const struct TeLattice *lattice,
                                        double tol,
                                        double *value,
                                        double *error);

// `log τ` of the `n × n` cover.
//
// # Safety
// Pointers must be valid.
enum TeStatus te_lattice_tau_log_fourier(const struct TeLattice *lattice, uintptr_t n, double *out);

// Serializes a lattice. Free the result with [`te_string_free`].
//
// # Safety
// Pointers must be valid.
enum TeStatus te_lattice_to_json(const struct TeLattice *lattice, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void te_string_free(char *s);

// Volume of the ideal bipyramid over an `n`-gon.
//
// # Safety
// `out` must be valid.
enum TeStatus te_bipyramid_volume(uint64_t n, double *out);

// Lobachevsky function; NaN for non-finite input.
double te_lobachevsky(double x);

// Mahler measure of a polynomial in the `c a b` line format. `error` may be
// null.
//
// # Safety
// `text` must be NUL-terminated; non-null pointers must be valid.
enum TeStatus te_mahler_measure_text(const char *text, double tol, double *value, double *error);

uintptr_t te_catalog_count(void);

// Static name of catalog entry `i`, or null when out of range.
const char *te_catalog_name(uintptr_t i);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LATTICE_ENTROPY_H */
