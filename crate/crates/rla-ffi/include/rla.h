/* C interface for the rla restricted Lie algebra workbench. */

#ifndef RLA_H
#define RLA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum RlaStatus {
  /**
   * The call succeeded.
   */
  RLA_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  RLA_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  RLA_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed input: JSON, coordinates, factor lists, unknown ids.
   */
  RLA_STATUS_PARSE_ERROR = 3,
  /**
   * The algebra violates its defining identities; the report says where.
   */
  RLA_STATUS_VALIDATION_ERROR = 4,
  /**
   * An assert-mode check failed; the report carries the witness.
   */
  RLA_STATUS_ASSERT_FAILURE = 5,
  /**
   * The requested enumeration exceeds the budget.
   */
  RLA_STATUS_RESOURCE_LIMIT = 6,
  /**
   * The maximal torus has no toral basis, so no root decomposition.
   */
  RLA_STATUS_NOT_A_TORUS = 7,
  /**
   * Family parameters out of range or missing.
   */
  RLA_STATUS_BAD_PARAMETERS = 8,
  /**
   * Unexpected internal failure; see the error message.
   */
  RLA_STATUS_INTERNAL_ERROR = 9,
} RlaStatus;

/**
 * Opaque algebra handle.
 */
typedef struct RlaAlgebra RlaAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Schema version stamped into every JSON report.
 */
uint32_t rla_schema_version(void);

/**
 * Returns a copy of the last error message on this thread, or null when the
 * last call succeeded. Free it with `rla_string_free`.
 */
char *rla_last_error(void);

/**
 * Releases a string returned by any call here.
 *
 * # Safety
 * `s` must be null or a pointer previously returned by this library.
 */
void rla_string_free(char *s);

/**
 * Parses an algebra document (the JSON interchange format) into a handle.
 * The document only has to be well formed; run `rla_validate` to check the
 * algebra identities.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum RlaStatus rla_parse(const char *json, struct RlaAlgebra **out);

/**
 * Releases an algebra handle.
 *
 * # Safety
 * `h` must be null or a pointer previously returned by this library, and
 * must not be used afterwards.
 */
void rla_free(struct RlaAlgebra *h);

/**
 * Dimension of the algebra, or -1 on a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
int32_t rla_dim(const struct RlaAlgebra *h);

/**
 * Serializes the algebra back to its canonical JSON document.
 *
 * # Safety
 * `h` must be a live handle; `out` must be a valid pointer.
 */
enum RlaStatus rla_serialize(const struct RlaAlgebra *h, char **out);

/**
 * Checks the defining identities. Writes the full report either way and
 * returns `Ok` when the algebra is valid, `ValidationError` when not.
 *
 * # Safety
 * `h` must be a live handle; `out_json` must be a valid pointer.
 */
enum RlaStatus rla_validate(const struct RlaAlgebra *h, char **out_json);

/**
 * Full structure report: flags, series, radicals, torus, roots.
 *
 * # Safety
 * `h` must be a live handle; `out_json` must be a valid pointer.
 */
enum RlaStatus rla_analyze(const struct RlaAlgebra *h, uint64_t budget, char **out_json);

/**
 * Subalgebra lattice report in restricted (default) or ordinary mode.
 *
 * # Safety
 * `h` must be a live handle; `out_json` must be a valid pointer.
 */
enum RlaStatus rla_lattice(const struct RlaAlgebra *h,
                           bool ordinary,
                           uint64_t budget,
                           char **out_json);

/**
 * DOT rendering of the lattice: one node per subalgebra, one edge per
 * covering pair.
 *
 * # Safety
 * `h` must be a live handle; `out_dot` must be a valid pointer.
 */
enum RlaStatus rla_lattice_dot(const struct RlaAlgebra *h,
                               bool ordinary,
                               uint64_t budget,
                               char **out_dot);

/**
 * Runs catalog checks against the algebra. `theorems` is a comma-separated
 * id list ("T1,T7"), or null/"all" for the whole catalog. Returns
 * `AssertFailure` when an assert-mode check fails; the report names it.
 *
 * # Safety
 * `h` must be a live handle; `theorems` null or NUL-terminated; `out_json`
 * must be a valid pointer.
 */
enum RlaStatus rla_verify(const struct RlaAlgebra *h,
                          const char *theorems,
                          uint64_t budget,
                          char **out_json);

/**
 * Runs the instance corpus. `config_json` is the corpus configuration
 * document, or null for the built-in default. Identical configurations
 * produce byte-identical reports.
 *
 * # Safety
 * `config_json` null or NUL-terminated; `out_json` must be a valid pointer.
 */
enum RlaStatus rla_corpus(const char *config_json, char **out_json);

/**
 * Builds a named family instance over GF(p^k). `n` is the family's size
 * parameter (dimension count or nilpotent-block width, whichever the family
 * takes); pass a negative value when the family has none. `factors` is an
 * optional `;`-separated list of `,`-separated skew polynomial coefficient
 * lists, low degree first (for the cyclic and solvable-model families).
 *
 * # Safety
 * `family` must be NUL-terminated; `factors` null or NUL-terminated; `out`
 * must be a valid pointer.
 */
enum RlaStatus rla_generate(const char *family,
                            uint64_t p,
                            uint32_t k,
                            int64_t n,
                            const char *factors,
                            struct RlaAlgebra **out);

/**
 * Splits an element into commuting semisimple and p-nilpotent parts inside
 * its own cyclic restricted subalgebra. `element` uses the same coordinate
 * syntax as the command line: comma-separated, `:`-joined digit arrays for
 * extension-field entries.
 *
 * # Safety
 * `h` must be a live handle; `element` NUL-terminated; `out_json` must be a
 * valid pointer.
 */
enum RlaStatus rla_jc(const struct RlaAlgebra *h, const char *element, char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RLA_H */
