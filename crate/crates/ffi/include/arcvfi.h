#ifndef ARCVFI_H
#define ARCVFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes returned by every fallible function.
typedef enum ArcvfiStatus {
  ARCVFI_STATUS_OK = 0,
  ARCVFI_STATUS_NULL_POINTER = 1,
  ARCVFI_STATUS_INVALID_ARGUMENT = 2,
  ARCVFI_STATUS_DIMENSION_MISMATCH = 3,
  ARCVFI_STATUS_NON_FINITE = 4,
  ARCVFI_STATUS_DOMAIN = 5,
  ARCVFI_STATUS_IO = 6,
  ARCVFI_STATUS_FORMAT = 7,
  ARCVFI_STATUS_IMAGE_TOO_SMALL = 8,
  ARCVFI_STATUS_PANIC = 99,
} ArcvfiStatus;

// Opaque flow field handle (interleaved `(u, v)` per pixel).
typedef struct ArcvfiFlow ArcvfiFlow;

// Opaque image handle (interleaved `HxWxC` float samples).
typedef struct ArcvfiImage ArcvfiImage;

// Opaque curvature map handle (one value in `[-1, 1]` per pixel).
typedef struct ArcvfiSigma ArcvfiSigma;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL if none.
// The pointer stays valid until the next failing call on the same thread.
const char *arcvfi_last_error_message(void);

// Default curvature threshold of the arc/linear case split.
double arcvfi_default_sigma_threshold(void);

// Creates an image by copying `width * height * channels` samples.
//
// # Safety
// `data` must point to that many readable floats; `out` must be writable.
enum ArcvfiStatus arcvfi_image_new(size_t width,
                                   size_t height,
                                   size_t channels,
                                   const float *data,
                                   struct ArcvfiImage **out);

// # Safety
// `img` must be NULL or a handle from this library not yet freed.
void arcvfi_image_free(struct ArcvfiImage *img);

// Writes width, height and channel count. Any output pointer may be NULL.
//
// # Safety
// `img` must be a live handle; non-NULL outputs must be writable.
enum ArcvfiStatus arcvfi_image_dims(const struct ArcvfiImage *img,
                                    size_t *width,
                                    size_t *height,
                                    size_t *channels);

// Copies the samples into `dst`, which must hold exactly `len` floats.
//
// # Safety
// `img` must be a live handle and `dst` writable for `len` floats.
enum ArcvfiStatus arcvfi_image_copy_data(const struct ArcvfiImage *img, float *dst, size_t len);

// Reads a binary PPM (`P6`) or PGM (`P5`) file.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum ArcvfiStatus arcvfi_read_ppm(const char *path, struct ArcvfiImage **out);

// # Safety
// `path` must be a NUL-terminated string; `img` a live handle.
enum ArcvfiStatus arcvfi_write_ppm(const char *path, const struct ArcvfiImage *img);

// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum ArcvfiStatus arcvfi_read_pfm(const char *path, struct ArcvfiImage **out);

// # Safety
// `path` must be a NUL-terminated string; `img` a live handle.
enum ArcvfiStatus arcvfi_write_pfm(const char *path, const struct ArcvfiImage *img);

// Creates a flow field from `2 * width * height` interleaved `(u, v)` floats.
//
// # Safety
// `data` must point to that many readable floats; `out` must be writable.
enum ArcvfiStatus arcvfi_flow_new(size_t width,
                                  size_t height,
                                  const float *data,
                                  struct ArcvfiFlow **out);

// # Safety
// `flow` must be NULL or a handle from this library not yet freed.
void arcvfi_flow_free(struct ArcvfiFlow *flow);

// # Safety
// `flow` must be a live handle; non-NULL outputs must be writable.
enum ArcvfiStatus arcvfi_flow_dims(const struct ArcvfiFlow *flow, size_t *width, size_t *height);

// Copies the interleaved `(u, v)` samples into `dst` (`len == 2 * width * height`).
//
// # Safety
// `flow` must be a live handle and `dst` writable for `len` floats.
enum ArcvfiStatus arcvfi_flow_copy_data(const struct ArcvfiFlow *flow, float *dst, size_t len);

// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum ArcvfiStatus arcvfi_read_flo(const char *path, struct ArcvfiFlow **out);

// # Safety
// `path` must be a NUL-terminated string; `flow` a live handle.
enum ArcvfiStatus arcvfi_write_flo(const char *path, const struct ArcvfiFlow *flow);

// Creates a curvature map from `width * height` floats. With `clamp` set,
// values outside `[-1, 1]` are clamped and counted in `clamped` (may be
// NULL); otherwise they are a domain error.
//
// # Safety
// `data` must point to `width * height` readable floats; `out` must be writable.
enum ArcvfiStatus arcvfi_sigma_new(size_t width,
                                   size_t height,
                                   const float *data,
                                   bool clamp,
                                   struct ArcvfiSigma **out,
                                   size_t *clamped);

// # Safety
// `sigma` must be NULL or a handle from this library not yet freed.
void arcvfi_sigma_free(struct ArcvfiSigma *sigma);

// # Safety
// `sigma` must be a live handle and `dst` writable for `len` floats.
enum ArcvfiStatus arcvfi_sigma_copy_data(const struct ArcvfiSigma *sigma, float *dst, size_t len);

// Loads a single-channel PFM as a curvature map with clamping; the number
// of clamped values goes to `clamped` (may be NULL).
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum ArcvfiStatus arcvfi_read_sigma(const char *path, struct ArcvfiSigma **out, size_t *clamped);

// # Safety
// `path` must be a NUL-terminated string; `sigma` a live handle.
enum ArcvfiStatus arcvfi_write_sigma(const char *path, const struct ArcvfiSigma *sigma);

// Displacement of a single pixel with flow `(u, v)` and curvature `sigma`
// after time `t`, using the arc when `|sigma| > sigma_threshold` and the
// straight line otherwise.
//
// # Safety
// `dx` and `dy` must be writable.
enum ArcvfiStatus arcvfi_pixel_displacement(double u,
                                            double v,
                                            double sigma,
                                            double t,
                                            double sigma_threshold,
                                            double *dx,
                                            double *dy);

// Intermediate flow from frame 0 to time `t`.
//
// # Safety
// `flow` and `sigma` must be live handles; `out` must be writable.
enum ArcvfiStatus arcvfi_intermediate_flow(const struct ArcvfiFlow *flow,
                                           const struct ArcvfiSigma *sigma,
                                           double t,
                                           double sigma_threshold,
                                           struct ArcvfiFlow **out);

// Intermediate flow from frame 1 to time `t`, given the backward flow and
// curvature map.
//
// # Safety
// `flow10` and `sigma10` must be live handles; `out` must be writable.
enum ArcvfiStatus arcvfi_backward_intermediate_flow(const struct ArcvfiFlow *flow10,
                                                    const struct ArcvfiSigma *sigma10,
                                                    double t,
                                                    double sigma_threshold,
                                                    struct ArcvfiFlow **out);

// Forward-warps `src` by average splatting. When `mask` is non-NULL it
// receives one byte per pixel (1 valid, 0 hole) and must hold `mask_len ==
// width * height` bytes.
//
// # Safety
// `src` and `flow` must be live handles; `out` writable; `mask` NULL or
// writable for `mask_len` bytes.
enum ArcvfiStatus arcvfi_splat_average(const struct ArcvfiImage *src,
                                       const struct ArcvfiFlow *flow,
                                       struct ArcvfiImage **out,
                                       uint8_t *mask,
                                       size_t mask_len);

// Synthesizes the frame at time `t`. `force_linear` ignores the curvature
// maps and uses straight-line motion.
//
// # Safety
// All inputs must be live handles; `out` must be writable.
enum ArcvfiStatus arcvfi_interpolate(const struct ArcvfiImage *frame0,
                                     const struct ArcvfiImage *frame1,
                                     const struct ArcvfiFlow *flow01,
                                     const struct ArcvfiFlow *flow10,
                                     const struct ArcvfiSigma *sigma01,
                                     const struct ArcvfiSigma *sigma10,
                                     double t,
                                     double sigma_threshold,
                                     bool force_linear,
                                     struct ArcvfiImage **out);

// PSNR in dB (peak 1); identical images give positive infinity.
//
// # Safety
// `a`, `b` must be live handles; `out` writable.
enum ArcvfiStatus arcvfi_psnr(const struct ArcvfiImage *a,
                              const struct ArcvfiImage *b,
                              double *out);

// # Safety
// `a`, `b` must be live handles; `out` writable.
enum ArcvfiStatus arcvfi_ssim(const struct ArcvfiImage *a,
                              const struct ArcvfiImage *b,
                              double *out);

// RMS difference in 8-bit units.
//
// # Safety
// `a`, `b` must be live handles; `out` writable.
enum ArcvfiStatus arcvfi_interpolation_error(const struct ArcvfiImage *a,
                                             const struct ArcvfiImage *b,
                                             double *out);

// # Safety
// `a`, `b` must be live handles; `out` writable.
enum ArcvfiStatus arcvfi_charbonnier(const struct ArcvfiImage *a,
                                     const struct ArcvfiImage *b,
                                     double epsilon,
                                     double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARCVFI_H */
