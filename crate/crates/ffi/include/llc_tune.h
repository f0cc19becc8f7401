#ifndef LLC_TUNE_H
#define LLC_TUNE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LlctStatus {
  LLCT_STATUS_OK = 0,
  LLCT_STATUS_NULL_POINTER = 1,
  LLCT_STATUS_INVALID_ARGUMENT = 2,
  LLCT_STATUS_NUMERICAL = 3,
  LLCT_STATUS_PARSE = 4,
  LLCT_STATUS_BUFFER_TOO_SMALL = 5,
  LLCT_STATUS_PANIC = 6,
} LlctStatus;

typedef enum LlctAlgorithm {
  LLCT_ALGORITHM_BOA = 0,
  LLCT_ALGORITHM_GA = 1,
  LLCT_ALGORITHM_DE = 2,
} LlctAlgorithm;

// Opaque plant handle.
typedef struct LlctPlant LlctPlant;

// Opaque optimizer run result.
typedef struct LlctRunRecord LlctRunRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread. Empty after a success.
// The pointer stays valid until the next library call on this thread.
const char *llct_last_error(void);

// Built-in fourth-order benchmark plant.
//
// # Safety
// `out` must be valid for a pointer write.
enum LlctStatus llct_plant_new_default(struct LlctPlant **out);

// Parses a plant from the JSON plant-file format (one-based indices).
//
// # Safety
// `json` must be a NUL-terminated string and `out` valid for a pointer write.
enum LlctStatus llct_plant_from_json(const char *json, struct LlctPlant **out);

// # Safety
// `plant` must come from this library and not be used afterwards. Null is ignored.
void llct_plant_free(struct LlctPlant *plant);

// Number of plant states, or 0 for a null handle.
//
// # Safety
// `plant` must be null or a live handle.
size_t llct_plant_order(const struct LlctPlant *plant);

// Minimum closed-loop damping ratio for the given controller.
//
// # Safety
// `plant` must be a live handle and `out` valid for a write.
enum LlctStatus llct_objective(const struct LlctPlant *plant,
                               double kc,
                               double t1,
                               double t2,
                               double *out);

// Closed-loop eigenvalues, sorted by real then imaginary part.
// `re` and `im` each need room for order + 2 values; `out_len` receives
// that count even when the buffers are too small.
//
// # Safety
// `plant` must be a live handle; `re`/`im` valid for `capacity` writes.
enum LlctStatus llct_closed_loop_eigenvalues(const struct LlctPlant *plant,
                                             double kc,
                                             double t1,
                                             double t2,
                                             double *re,
                                             double *im,
                                             size_t capacity,
                                             size_t *out_len);

// Eigenvalues of a row-major `n` by `n` matrix. `re` and `im` need `n` slots.
//
// # Safety
// `data` must be valid for `n * n` reads; `re`/`im` for `n` writes.
enum LlctStatus llct_matrix_eigenvalues(const double *data, size_t n, double *re, double *im);

// Runs one optimizer on the lead-lag problem.
//
// `config_json` is the algorithm's JSON config object (null for defaults).
// `lower` and `upper` are 3-element bounds for (kc, t1, t2); pass null for
// both to use the default box.
//
// # Safety
// Pointers must be null or valid as described; `out` valid for a pointer write.
enum LlctStatus llct_run(const struct LlctPlant *plant,
                         enum LlctAlgorithm algorithm,
                         const char *config_json,
                         const double *lower,
                         const double *upper,
                         struct LlctRunRecord **out);

// # Safety
// `run` must come from [`llct_run`] and not be used afterwards. Null is ignored.
void llct_run_free(struct LlctRunRecord *run);

// Best objective found, or NaN for a null handle.
//
// # Safety
// `run` must be null or a live handle.
double llct_run_best_objective(const struct LlctRunRecord *run);

// Objective evaluations performed, or 0 for a null handle.
//
// # Safety
// `run` must be null or a live handle.
size_t llct_run_evaluation_count(const struct LlctRunRecord *run);

// Writes the best (kc, t1, t2) into `out[0..3]`.
//
// # Safety
// `run` must be a live handle and `out` valid for 3 writes.
enum LlctStatus llct_run_best_position(const struct LlctRunRecord *run, double *out);

// Best-so-far objective per generation, starting with the initial
// population (generations + 1 values).
//
// # Safety
// `run` must be a live handle; `out` valid for `capacity` writes.
enum LlctStatus llct_run_trace(const struct LlctRunRecord *run,
                               double *out,
                               size_t capacity,
                               size_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LLC_TUNE_H */
