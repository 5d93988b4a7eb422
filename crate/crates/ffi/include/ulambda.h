#ifndef ULAMBDA_H
#define ULAMBDA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum UlStatus {
  UL_STATUS_OK = 0,
  UL_STATUS_NULL_POINTER = 1,
  UL_STATUS_INVALID_UTF8 = 2,
  UL_STATUS_INVALID_JSON = 3,
  // A parameter outside the documented domain.
  UL_STATUS_INVALID_ARGUMENT = 4,
  // A numerical routine could not produce a trustworthy value.
  UL_STATUS_NUMERICAL_FAILURE = 5,
  UL_STATUS_BUFFER_TOO_SMALL = 6,
  UL_STATUS_PANIC = 7,
} UlStatus;

typedef enum UlVerdict {
  UL_VERDICT_INSIDE = 0,
  UL_VERDICT_OUTSIDE = 1,
  UL_VERDICT_INCONCLUSIVE = 2,
} UlVerdict;

// Opaque candidate `f`, stored through `q = z/f`.
typedef struct UlCandidate UlCandidate;

// Opaque analytic self-map of the closed unit disk.
typedef struct UlDisk UlDisk;

typedef struct UlComplex {
  double re;
  double im;
} UlComplex;

// Summary of a membership sweep over the default grid.
typedef struct UlMembership {
  enum UlVerdict verdict;
  double sup_estimate;
  struct UlComplex argmax;
  // `lambda - sup_estimate`.
  double margin;
  // Zeros of `z/f` inside the outermost grid circle.
  int32_t q_zero_count;
  double min_abs_q;
} UlMembership;

// Copies the last error of this thread into `buf` as a NUL-terminated
// string, truncating to `len - 1` bytes. Returns the full message length
// without the terminator; pass a null `buf` to query it.
size_t ul_last_error_message(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *ul_version(void);

// Parses a disk function from its JSON form, e.g.
// `{"kind":"moebius","a":[0.3,0.1],"psi":0.5}`.
enum UlStatus ul_disk_from_json(const char *json, struct UlDisk **out);

// `(a + e^{i psi} z) / (1 + conj(a) e^{i psi} z)` for `|a| <= 1`.
enum UlStatus ul_disk_moebius(struct UlComplex a, double psi, struct UlDisk **out);

// `e^{i theta} z^k`.
enum UlStatus ul_disk_monomial(double theta, uint32_t k, struct UlDisk **out);

// Value at `|z| <= 1`.
enum UlStatus ul_disk_eval(const struct UlDisk *disk, struct UlComplex z, struct UlComplex *out);

// `int_0^z` of the disk function, for `|z| <= 1`.
enum UlStatus ul_disk_antiderivative(const struct UlDisk *disk,
                                     struct UlComplex z,
                                     struct UlComplex *out);

// Releases a disk handle. Null is ignored.
void ul_disk_free(struct UlDisk *disk);

// `z / ((1 + e^{i theta} z)(1 + lambda e^{i theta} z))` to `order` coefficients.
enum UlStatus ul_candidate_extremal(double lambda,
                                    double theta,
                                    size_t order,
                                    struct UlCandidate **out);

// `z/f = 1 - (1 + lambda) phi + lambda phi^2`; `phi` must fix the origin.
enum UlStatus ul_candidate_from_phi(double lambda,
                                    const struct UlDisk *phi,
                                    size_t order,
                                    struct UlCandidate **out);

// `z/f = 1 - a_2 z + lambda z int_0^z omega`.
enum UlStatus ul_candidate_from_omega(struct UlComplex a2,
                                      double lambda,
                                      const struct UlDisk *omega,
                                      size_t order,
                                      struct UlCandidate **out);

// `f_r(z) = f(r z) / r` for `0 < r < 1`, as a new handle.
enum UlStatus ul_candidate_dilate(const struct UlCandidate *cand,
                                  double r,
                                  struct UlCandidate **out);

// Number of known Taylor coefficients minus one.
enum UlStatus ul_candidate_order(const struct UlCandidate *cand, size_t *out);

// Taylor coefficients `a_0 = 0, a_1 = 1, a_2, ...` of `f`.
//
// `*written` receives the number of coefficients, `order + 1`. If `len` is
// smaller, nothing is copied and `BufferTooSmall` is returned.
enum UlStatus ul_candidate_coefficients(const struct UlCandidate *cand,
                                        struct UlComplex *buf,
                                        size_t len,
                                        size_t *written);

// Sweeps `|U_f|` over the default polar grid (radii 0.1..0.9, 0.99, 0.999;
// 720 angles) and reports the verdict at tolerance 1e-6.
enum UlStatus ul_candidate_membership(const struct UlCandidate *cand, struct UlMembership *out);

// Releases a candidate handle. Null is ignored.
void ul_candidate_free(struct UlCandidate *cand);

// Conjectured sharp bound on `|a_n|`.
enum UlStatus ul_conjecture_bound(size_t n, double lambda, double *out);

// Proven Cauchy-Schwarz bound on `|a_n|`.
enum UlStatus ul_cauchy_schwarz_bound(size_t n, double lambda, double *out);

// `v(x) = int_0^1 (x + t)/(1 + x t) dt` for `0 <= x <= 1`.
enum UlStatus ul_v_of_x(double x, double *out);

// `B_a(z) = (1/z) int_0^z (a + t)/(1 + conj(a) t) dt` for `|a|, |z| <= 1`.
enum UlStatus ul_b_a(struct UlComplex a, struct UlComplex z, struct UlComplex *out);

// Root in (0, 1) of `lambda R^2 r^2 - r (R (1 + lambda) + 1 - lambda) + lambda`.
// `*has_root` is set to 0 when there is none, and `*root` is then untouched.
enum UlStatus ul_f_root(double lambda, double big_r, int32_t *has_root, double *root);

// Dilation threshold for `1/2 < lambda < 1`.
enum UlStatus ul_r_star(double lambda, double *out);

// Zero of `1 - a_2 z + lambda z int_0^z omega` in `|z| <= r` by contraction.
// `iterations` may be null.
enum UlStatus ul_fixed_point_zero(struct UlComplex a2,
                                  double lambda,
                                  const struct UlDisk *omega,
                                  double r,
                                  struct UlComplex *z0,
                                  size_t *iterations);

#endif  /* ULAMBDA_H */
