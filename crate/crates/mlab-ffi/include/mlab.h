#ifndef MLAB_H
#define MLAB_H

/* generated by cbindgen; do not edit by hand */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum MlabStatus {
  MlabStatus_Ok = 0,
  MlabStatus_NullArgument = 1,
  MlabStatus_ParseError = 2,
  MlabStatus_InvalidGroup = 3,
  MlabStatus_CapExceeded = 4,
  MlabStatus_ComputeError = 5,
  MlabStatus_BufferTooSmall = 6,
  MlabStatus_UnknownGroup = 7,
} MlabStatus;

/**
 * Opaque handle to a validated finite group.
 */
typedef struct MlabGroup MlabGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message for this thread into `buf` (NUL terminated,
 * truncated to `len`). Returns the full message length in bytes.
 *
 * # Safety
 * `buf` must point to `len` writable bytes, or be null (query mode).
 */
uintptr_t mlab_last_error_message(char *buf, uintptr_t len);

/**
 * Build a group from a row-major multiplication table of `order` x `order`
 * entries in `0..order`. On success writes a handle to `out`.
 *
 * # Safety
 * `table` must point to `order * order` readable u32 values; `out` must be
 * a valid pointer.
 */
enum MlabStatus mlab_group_from_table(const uint32_t *table,
                                      uintptr_t order,
                                      struct MlabGroup **out);

/**
 * Parse group-definition text and build the group named `name`, or the
 * first group in the file when `name` is null.
 *
 * # Safety
 * `text` (and `name`, if non-null) must be NUL-terminated strings; `out`
 * must be a valid pointer.
 */
enum MlabStatus mlab_group_parse(const char *text, const char *name, struct MlabGroup **out);

/**
 * Release a handle. Null is a no-op.
 *
 * # Safety
 * `g` must be a pointer previously returned by a constructor, used once.
 */
void mlab_group_free(struct MlabGroup *g);

/**
 * Order of the group; 0 for a null handle.
 *
 * # Safety
 * `g` must be a live handle or null.
 */
uintptr_t mlab_group_order(const struct MlabGroup *g);

/**
 * Invariant factors of the Schur multiplier, written into `buf`. The
 * number of factors lands in `written`; call with a null `buf` to query
 * the required size.
 *
 * # Safety
 * `g` must be a live handle; `buf` must hold `capacity` u64 slots if
 * non-null; `written` must be a valid pointer.
 */
enum MlabStatus mlab_schur_multiplier(const struct MlabGroup *g,
                                      uint64_t *buf,
                                      uintptr_t capacity,
                                      uintptr_t *written);

/**
 * Invariant factors of the Bogomolov multiplier; same contract as
 * `mlab_schur_multiplier`.
 *
 * # Safety
 * Same as `mlab_schur_multiplier`.
 */
enum MlabStatus mlab_bogomolov_multiplier(const struct MlabGroup *g,
                                          uint64_t *buf,
                                          uintptr_t capacity,
                                          uintptr_t *written);

/**
 * Library version as a status-free query; returns the engine version
 * number used in cache keys.
 */
int mlab_engine_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MLAB_H */
