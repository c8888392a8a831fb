#ifndef WEYLKIT_H
#define WEYLKIT_H

/* C interface to the weylkit numerics. Matrices cross the boundary as
   row-major arrays of m*m wk_complex; all computation happens in extended
   precision internally and is rounded to double on the way out. */

#include <stddef.h>

#if defined(WEYLKIT_BUILDING_LIBRARY)
#define WK_API __attribute__((visibility("default")))
#else
#define WK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct wk_potential wk_potential;

typedef struct {
    double re;
    double im;
} wk_complex;

typedef enum {
    WK_OK = 0,
    WK_INVALID_ARGUMENT = 1,
    WK_NUMERICAL = 2,
    WK_SINGULAR = 3,
    WK_OVERFLOW = 4,
    WK_STIFF = 5,
    WK_RICCATI_POLE = 6,
    WK_NO_CONVERGENCE = 7,
    WK_INTERNAL = 99
} wk_status;

/* Text of the last failure on the calling thread ("" after success). */
WK_API const char* wk_last_error(void);
WK_API const char* wk_status_name(wk_status s);
WK_API const char* wk_version(void);

typedef struct {
    double rtol;
    double atol;
    long max_steps;
} wk_step_control;

WK_API void wk_step_control_default(wk_step_control* ctrl);

/* ---- potentials ---- */

WK_API wk_status wk_potential_constant(int m, const wk_complex* q0, wk_potential** out);
WK_API wk_status wk_potential_gaussian(int m, const wk_complex* amplitude, double center,
                                       double width, wk_potential** out);
/* values[i] (m*m each) on [breaks[i], breaks[i+1]); npieces = len(breaks) - 1. */
WK_API wk_status wk_potential_piecewise_constant(int m, int npieces, const double* breaks,
                                                 const wk_complex* values, wk_potential** out);
WK_API wk_status wk_potential_truncated(const wk_potential* base, double x0, double x1,
                                        wk_potential** out);
WK_API wk_status wk_potential_sum(const wk_potential* a, const wk_potential* b,
                                  wk_potential** out);
WK_API wk_status wk_potential_reflected(const wk_potential* p, double center,
                                        wk_potential** out);

typedef enum {
    WK_TERM_POLYNOMIAL = 0,  /* params: c0, c1, ... */
    WK_TERM_GAUSSIAN = 1,    /* params: center, width */
    WK_TERM_COSINE = 2,      /* params: frequency [, phase] */
    WK_TERM_SINE = 3,        /* params: frequency [, phase] */
    WK_TERM_EXPONENTIAL = 4  /* params: rate */
} wk_term_kind;

typedef struct {
    int row;
    int col;
    wk_term_kind kind;
    wk_complex coefficient;
    int nparams;
    const double* params;
} wk_expr_term;

/* Q_{row,col}(x) = sum coefficient * shape(x); both (i,j) and (j,i) must be given. */
WK_API wk_status wk_potential_matrix_expr(int m, int nterms, const wk_expr_term* terms,
                                          wk_potential** out);

WK_API void wk_potential_free(wk_potential* p);
WK_API int wk_potential_dim(const wk_potential* p);
WK_API int wk_potential_smoothness(const wk_potential* p);
/* 1 and fills lo/hi when the potential has compact support, else 0. */
WK_API int wk_potential_support(const wk_potential* p, double* lo, double* hi);
WK_API const char* wk_potential_kind(const wk_potential* p);
WK_API wk_status wk_potential_eval(const wk_potential* p, double x, int k, wk_complex* out);
WK_API wk_status wk_potential_sup_norm(const wk_potential* p, double a, double b, double* out);

/* ---- matrix helpers ---- */

WK_API wk_status wk_herglotz_sqrt(int m, const wk_complex* q0, wk_complex z, wk_complex* out);
WK_API wk_status wk_op_norm(int m, const wk_complex* a, double* out);

/* ---- M-functions ---- */

typedef struct {
    double initial_length;
    double max_length;
    double rtol;
    wk_step_control step;
    int check_limit_circle;
} wk_limit_options;

WK_API void wk_limit_options_default(wk_limit_options* opts);

typedef struct {
    double error_estimate;
    double horizon;
    int limit_circle_suspected;
    int doublings;
} wk_limit_info;

/* info may be NULL. */
WK_API wk_status wk_limit_m(const wk_potential* p, wk_complex z, double x0,
                            const wk_limit_options* opts, wk_complex* m_out,
                            wk_limit_info* info);
WK_API wk_status wk_mirror_m_minus(const wk_potential* p, wk_complex z, double x0,
                                   const wk_limit_options* opts, wk_complex* m_out);

typedef enum { WK_SIGN_POSITIVE = 0, WK_SIGN_NEGATIVE = 1, WK_SIGN_SELFADJOINT = 2 } wk_sign_class;

WK_API wk_status wk_boundary_sign_class(int m, const wk_complex* beta1, const wk_complex* beta2,
                                        wk_sign_class* out);
WK_API wk_status wk_regular_m(const wk_potential* p, wk_complex z, double c, double x0,
                              const wk_complex* beta1, const wk_complex* beta2,
                              const wk_step_control* ctrl, wk_complex* m_out);
WK_API wk_status wk_disk_membership(const wk_potential* p, const wk_complex* m_cand,
                                    wk_complex z, double c, double x0,
                                    const wk_step_control* ctrl, double* defect);
WK_API wk_status wk_riccati_flow(const wk_potential* p, wk_complex z, const wk_complex* m_init,
                                 double x_from, double x_to, const wk_step_control* ctrl,
                                 wk_complex* m_out);

/* ---- Volterra path (compact support) ---- */

typedef struct {
    double tol;
    int max_iterations;
    int max_refinements;
} wk_volterra_options;

WK_API void wk_volterra_options_default(wk_volterra_options* opts);

typedef struct {
    int iterations;
    int panels;
    double residual;
    double max_norm;
    double majorant;
} wk_volterra_info;

WK_API wk_status wk_volterra_m(const wk_potential* p, wk_complex z, double x,
                               const wk_volterra_options* opts, wk_complex* m_out,
                               wk_volterra_info* info);

/* ---- asymptotics ---- */

/* out: n blocks m_1 .. m_n, each m*m. */
WK_API wk_status wk_m_coeffs(const wk_potential* p, double x, int n, wk_complex* out);
WK_API wk_status wk_eval_series(int m, int n, const wk_complex* coeffs, wk_complex z,
                                wk_complex* out);
/* out: n+1 blocks G_0 .. G_n. */
WK_API wk_status wk_green_coeffs(const wk_potential* p, double x, int n, wk_complex* out);
WK_API wk_status wk_eval_green_series(int m, int n, const wk_complex* coeffs, wk_complex z,
                                      wk_complex* out);
WK_API wk_status wk_green_diag(int m, const wk_complex* m_minus, const wk_complex* m_plus,
                               wk_complex* out);

typedef enum { WK_METHOD_AUTO = 0, WK_METHOD_LIMIT = 1, WK_METHOD_VOLTERRA = 2 } wk_method;

typedef struct {
    wk_method method;
    wk_limit_options limit;
    wk_volterra_options volterra;
    double noise_floor;
} wk_verify_options;

WK_API void wk_verify_options_default(wk_verify_options* opts);

/* scaled and remainder are ndelta*nmod, row per delta; pass_per_delta has
   ndelta entries. method_used receives WK_METHOD_LIMIT or WK_METHOD_VOLTERRA. */
WK_API wk_status wk_verify_order(const wk_potential* p, double x0, int n, int nmod,
                                 const double* moduli, int ndelta, const double* deltas,
                                 const wk_verify_options* opts, double* scaled,
                                 double* remainder, int* pass_per_delta, int* pass,
                                 wk_method* method_used);

typedef struct {
    double delta;
    wk_limit_options limit;
    wk_step_control step;
    double slope_slack;
    double bounded_factor;
} wk_locality_options;

WK_API void wk_locality_options_default(wk_locality_options* opts);

typedef struct {
    double slope;
    double slope_bound;
    int identical;
    int slope_pass;
    int bounded;
    int pass;
} wk_locality_summary;

/* diff, normalized and im_sqrt have nmod entries. */
WK_API wk_status wk_locality(const wk_potential* p1, const wk_potential* p2, double x0,
                             double x1, int nmod, const double* moduli,
                             const wk_locality_options* opts, double* im_sqrt, double* diff,
                             double* normalized, wk_locality_summary* summary);

#ifdef __cplusplus
}
#endif

#endif
