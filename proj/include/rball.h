/* C interface to the r-ball body kernel.
 *
 * Handles are opaque; every constructor has a matching _free. Functions
 * return rb_status, with rb_last_error() holding the failure text for the
 * current thread. Strings returned as char* are owned by the caller and
 * released with rb_string_free.
 */
#ifndef RBALL_H
#define RBALL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define RBALL_API __declspec(dllexport)
#else
#  define RBALL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rb_status {
    RB_OK = 0,
    RB_ERR_DOMAIN = 1,     /* precondition violated */
    RB_ERR_PARSE = 2,      /* malformed input document */
    RB_ERR_CONVERGENCE = 3,/* iterative routine missed its certified stop */
    RB_ERR_INTERNAL = 4
} rb_status;

typedef enum rb_body_kind {
    RB_BODY_EMPTY = 0,
    RB_BODY_POINT = 1,
    RB_BODY_REGION = 2
} rb_body_kind;

typedef enum rb_dual_kind {
    RB_DUAL_BALL = 0,
    RB_DUAL_POINT = 1,
    RB_DUAL_EMPTY = 2
} rb_dual_kind;

typedef struct rb_pointset rb_pointset;
typedef struct rb_body2d rb_body2d;
typedef struct rb_ndbody rb_ndbody;

RBALL_API const char* rb_last_error(void);
RBALL_API void rb_string_free(char* s);

/* ---- generator sets ---- */

/* coords: n_points * dim doubles, row major */
RBALL_API rb_status rb_pointset_create(int dim, double r, const double* coords,
                                       size_t n_points, rb_pointset** out);
RBALL_API rb_status rb_pointset_from_json(const char* text, rb_pointset** out);
RBALL_API char* rb_pointset_to_json(const rb_pointset* ps);
RBALL_API void rb_pointset_free(rb_pointset* ps);
RBALL_API int rb_pointset_dim(const rb_pointset* ps);
RBALL_API double rb_pointset_radius(const rb_pointset* ps);
RBALL_API size_t rb_pointset_size(const rb_pointset* ps);

/* ---- exact planar kernel ---- */

/* X^r: intersection of the radius-r disks about the generators */
RBALL_API rb_status rb_body2d_compute(const rb_pointset* ps, rb_body2d** out);
/* conv_r X: the r-ball convex hull */
RBALL_API rb_status rb_hull2d_compute(const rb_pointset* ps, rb_body2d** out);
/* A^r of a region */
RBALL_API rb_status rb_body2d_dual(const rb_body2d* body, rb_body2d** out);
RBALL_API void rb_body2d_free(rb_body2d* body);

RBALL_API rb_body_kind rb_body2d_kind(const rb_body2d* body);
RBALL_API double rb_body2d_radius(const rb_body2d* body);
RBALL_API int rb_body2d_full_disk(const rb_body2d* body);
RBALL_API rb_status rb_body2d_point(const rb_body2d* body, double* x, double* y);
RBALL_API size_t rb_body2d_arc_count(const rb_body2d* body);
RBALL_API rb_status rb_body2d_arc(const rb_body2d* body, size_t index, double* cx,
                                  double* cy, double* start_angle, double* end_angle);
RBALL_API size_t rb_body2d_vertex_count(const rb_body2d* body);
RBALL_API rb_status rb_body2d_vertex(const rb_body2d* body, size_t index, double* x,
                                     double* y);

/* v1 = half-perimeter, v2 = area; zero for the empty body and points */
RBALL_API rb_status rb_body2d_intrinsic_volumes(const rb_body2d* body, double* v1,
                                                double* v2);
RBALL_API rb_status rb_body2d_support(const rb_body2d* body, double ux, double uy,
                                      double* h);
RBALL_API int rb_body2d_contains(const rb_body2d* body, double x, double y);
/* +infinity against the empty body unless both are empty */
RBALL_API rb_status rb_body2d_hausdorff(const rb_body2d* a, const rb_body2d* b,
                                        double* dist);
RBALL_API rb_status rb_body2d_normalize_pose(const rb_body2d* body, rb_body2d** out);
RBALL_API rb_status rb_body2d_congruent(const rb_body2d* a, const rb_body2d* b,
                                        double tol, int* congruent);
RBALL_API char* rb_body2d_to_json(const rb_body2d* body);
RBALL_API rb_status rb_body2d_from_json(const char* text, rb_body2d** out);

RBALL_API rb_status rb_make_lens(double r, double gap, rb_body2d** out);
RBALL_API rb_status rb_lens_gap_for_area(double r, double area, double* gap);

/* ---- shared constants ---- */

RBALL_API rb_status rb_omega(int dim, double* out);
RBALL_API rb_status rb_ball_intrinsic_volume(int dim, int k, double radius, double* out);

/* ---- dimension d engine (2 <= d <= 8) ---- */

RBALL_API rb_status rb_ndbody_create(const rb_pointset* ps, rb_ndbody** out);
RBALL_API void rb_ndbody_free(rb_ndbody* body);
RBALL_API int rb_ndbody_nonempty(const rb_ndbody* body);
RBALL_API int rb_ndbody_contains(const rb_ndbody* body, const double* point, int dim);
RBALL_API rb_status rb_ndbody_support(const rb_ndbody* body, const double* dir, int dim,
                                      double tol, double* h);
/* hit-or-miss volume; identical seeds replay bit-identically */
RBALL_API rb_status rb_ndbody_volume(const rb_ndbody* body, long long samples,
                                     uint64_t seed, double* value, double* std_error);
/* V_1 from the mean width over a deterministic direction lattice */
RBALL_API rb_status rb_ndbody_v1(const rb_ndbody* body, int directions, double tol,
                                 double* value, double* std_error);
/* V_k from the Steiner polynomial fit on the given dilation grid */
RBALL_API rb_status rb_ndbody_steiner_vk(const rb_ndbody* body, int k,
                                         const double* t_grid, int grid_len,
                                         long long samples, uint64_t seed, double* value,
                                         double* std_error);
/* ball of the given volume; dual described exactly as ball/point/empty */
RBALL_API rb_status rb_matching_ball(double volume, int dim, double r, double* rho,
                                     rb_dual_kind* dual_kind, double* dual_radius);

/* ---- verification suites and the minimization search ----
 *
 * Both take a JSON configuration and return a JSON document (caller frees).
 * Suites: "bs", "product", "support", "identities", "mahler2d".
 * Config keys (defaults in parentheses): dim (2), r (1.0), k (1), trials
 * (1000), seed (0), min_generators (2), max_generators (8), law
 * ("uniform_disk"), law_scale (0.6), probes (1000), target_area (required for
 * mahler2d), mc_samples (200000), mc_directions (400).
 * Search config: dim, r, k, v, n, restarts, max_evals, seed, mc_samples,
 * mc_directions.
 */
RBALL_API char* rb_verify_run(const char* suite, const char* config_json,
                              rb_status* status);
RBALL_API char* rb_search_run(const char* config_json, rb_status* status);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RBALL_H */
