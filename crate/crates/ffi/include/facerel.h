#ifndef FACEREL_H
#define FACEREL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FrStatus {
  FR_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  FR_STATUS_ERR_NULL = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  FR_STATUS_ERR_UTF8 = 2,
  /**
   * The graph text or an option could not be parsed.
   */
  FR_STATUS_ERR_PARSE = 3,
  /**
   * The computation reported a mathematical inconsistency. Report
   * strings are still produced where the call has an output.
   */
  FR_STATUS_ERR_MATH = 4,
  /**
   * Unexpected internal failure (caught panic).
   */
  FR_STATUS_ERR_INTERNAL = 5,
} FrStatus;

/**
 * Opaque handle to a parsed cubic planar map.
 */
typedef struct FrMap FrMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses graph text in the line format used by the command-line tool.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum FrStatus fr_map_parse(const char *text, struct FrMap **out);

/**
 * Loads one of the bundled graphs by name.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum FrStatus fr_map_from_corpus(const char *name, struct FrMap **out);

/**
 * Releases a map handle. Null is ignored.
 *
 * # Safety
 * `map` must come from this library and not be used afterwards.
 */
void fr_map_free(struct FrMap *map);

/**
 * # Safety
 * `map` must be a live handle; the output pointers must be valid.
 */
enum FrStatus fr_map_counts(const struct FrMap *map,
                            size_t *vertices,
                            size_t *edges,
                            size_t *faces);

/**
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum FrStatus fr_map_genus(const struct FrMap *map, size_t *out);

/**
 * JSON report with counts, pairing, radical and symplectic basis.
 *
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum FrStatus fr_inspect_json(const struct FrMap *map, char **out);

/**
 * JSON report of face operators. `charge_sign_value` is `1` or `-1`.
 *
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum FrStatus fr_operators_json(const struct FrMap *map,
                                bool all_vertices,
                                int32_t charge_sign_value,
                                char **out);

/**
 * JSON spin report.
 *
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum FrStatus fr_spin_json(const struct FrMap *map, char **out);

/**
 * JSON wave-function report using the automatic representation choice;
 * `charge_sign_value` is `1` or `-1`.
 * Returns `FR_STATUS_ERR_MATH` together with the report when the system is
 * inconsistent or a residual does not vanish.
 *
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum FrStatus fr_solve_json(const struct FrMap *map,
                            size_t max_degree,
                            int32_t charge_sign_value,
                            char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void fr_string_free(char *s);

/**
 * Message for the last failed call on this thread, or an empty string.
 * Valid until the next call into the library on the same thread.
 */
const char *fr_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *fr_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FACEREL_H */
