#ifndef MCCC_H
#define MCCC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum McccStatus {
  MCCC_STATUS_OK = 0,
  MCCC_STATUS_NULL_POINTER = 1,
  MCCC_STATUS_INVALID_ARGUMENT = 2,
  MCCC_STATUS_LENGTH_MISMATCH = 3,
  MCCC_STATUS_UNIDENTIFIABLE = 4,
  MCCC_STATUS_KERNEL_COLLAPSE = 5,
  MCCC_STATUS_QUADRATURE_FAILURE = 6,
  MCCC_STATUS_PANIC = 99,
} McccStatus;

/**
 * Recursive MCCC filter handle.
 */
typedef struct McccRecursiveFilter McccRecursiveFilter;

/**
 * Complex RLS filter handle.
 */
typedef struct McccRlsFilter McccRlsFilter;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated description of a status code.
 */
const char *mccc_status_message(enum McccStatus status);

enum McccStatus mccc_gaussian_kernel(double u, double sigma, double *out_value);

/**
 * Complex correntropy between two sample sets of `len` samples.
 */
enum McccStatus mccc_complex_correntropy(const double *re1,
                                         const double *im1,
                                         const double *re2,
                                         const double *im2,
                                         size_t len,
                                         double sigma,
                                         double *out_value);

/**
 * Complex correntropy from its integral form, on the default grid.
 */
enum McccStatus mccc_correntropy_integral(const double *re1,
                                          const double *im1,
                                          const double *re2,
                                          const double *im2,
                                          size_t len,
                                          double sigma,
                                          double *out_value);

/**
 * MCCC cost of weight `w_re + j w_im` on the dataset `(x, d)`.
 */
enum McccStatus mccc_cost_function(const double *x_re,
                                   const double *x_im,
                                   const double *d_re,
                                   const double *d_im,
                                   size_t len,
                                   double w_re,
                                   double w_im,
                                   double sigma,
                                   double *out_value);

/**
 * Batch fixed-point MCCC weight. `out_converged` is set to false when
 * `max_iterations` is exhausted; that is not an error.
 */
enum McccStatus mccc_batch_fixed_point(const double *x_re,
                                       const double *x_im,
                                       const double *d_re,
                                       const double *d_im,
                                       size_t len,
                                       double sigma,
                                       size_t max_iterations,
                                       double tolerance,
                                       double initial_re,
                                       double initial_im,
                                       double *out_re,
                                       double *out_im,
                                       size_t *out_iterations,
                                       bool *out_converged);

enum McccStatus mccc_least_squares_weight(const double *x_re,
                                          const double *x_im,
                                          const double *d_re,
                                          const double *d_im,
                                          size_t len,
                                          double *out_re,
                                          double *out_im);

enum McccStatus mccc_wsnr_db(double true_re,
                             double true_im,
                             double estimate_re,
                             double estimate_im,
                             double cap_db,
                             double *out_value);

/**
 * Creates a recursive MCCC filter. Release it with [`mccc_recursive_free`].
 */
enum McccStatus mccc_recursive_new(double sigma,
                                   double initial_re,
                                   double initial_im,
                                   double epsilon,
                                   struct McccRecursiveFilter **out_filter);

enum McccStatus mccc_recursive_update(struct McccRecursiveFilter *filter,
                                      double x_re,
                                      double x_im,
                                      double d_re,
                                      double d_im);

enum McccStatus mccc_recursive_weight(const struct McccRecursiveFilter *filter,
                                      double *out_re,
                                      double *out_im);

/**
 * Number of samples folded in so far.
 */
enum McccStatus mccc_recursive_samples_seen(const struct McccRecursiveFilter *filter,
                                            uint64_t *out_count);

/**
 * Releases a filter from [`mccc_recursive_new`]. Null is ignored.
 */
void mccc_recursive_free(struct McccRecursiveFilter *filter);

/**
 * Creates a complex RLS filter. Release it with [`mccc_rls_free`].
 */
enum McccStatus mccc_rls_new(double initial_re,
                             double initial_im,
                             double p0,
                             double lambda,
                             struct McccRlsFilter **out_filter);

enum McccStatus mccc_rls_update(struct McccRlsFilter *filter,
                                double x_re,
                                double x_im,
                                double d_re,
                                double d_im);

enum McccStatus mccc_rls_weight(const struct McccRlsFilter *filter, double *out_re, double *out_im);

void mccc_rls_free(struct McccRlsFilter *filter);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MCCC_H */
