/*
 * C interface to the L2-transform toolkit.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an l2t_status; on
 * failure l2t_last_error() holds a message for the calling thread. Strings
 * returned through char** out-parameters are released with l2t_string_free.
 *
 * Expressions travel as JSON documents:
 *   {"kind":"gexpr","terms":[{"c":"p/q","k":K,"a":"p/q"}, ...]}   c*x^(2K)*exp(a*x^2)
 *   {"kind":"sexpr","terms":[{"c":"p/q","a":"p/q","m":M}, ...]}   c*(sigma-a)^(-M), sigma = s^2
 *   {"kind":"lpoly","terms":[{"degree":D,"c":"p/q"}, ...]}         c*t^D
 */
#ifndef L2T_L2T_H
#define L2T_L2T_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(L2T_BUILDING_LIBRARY)
#    define L2T_API __declspec(dllexport)
#  else
#    define L2T_API __declspec(dllimport)
#  endif
#else
#  define L2T_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum l2t_status {
  L2T_OK = 0,
  L2T_ERR_SCHEMA = 1,
  L2T_ERR_PRECONDITION = 2,
  L2T_ERR_OVERFLOW = 3,
  L2T_ERR_DIVERGENT = 4,
  L2T_ERR_QUADRATURE = 5,
  L2T_ERR_IMPULSE = 6,
  L2T_ERR_GRID_DOMAIN = 7,
  L2T_ERR_NONPOSITIVE_SAMPLE = 8,
  L2T_ERR_INTERNAL = 9
} l2t_status;

typedef enum l2t_kind { L2T_KIND_GEXPR = 0, L2T_KIND_SEXPR = 1, L2T_KIND_LPOLY = 2 } l2t_kind;

typedef enum l2t_family { L2T_FAMILY_A = 0, L2T_FAMILY_B = 1, L2T_FAMILY_C = 2, L2T_FAMILY_D = 3 } l2t_family;

typedef enum l2t_convention { L2T_CONVENTION_DERIVED = 0, L2T_CONVENTION_PAPER = 1 } l2t_convention;

typedef struct l2t_expr l2t_expr;
typedef struct l2t_solution l2t_solution;

typedef struct l2t_quad_config {
  double rel_tol;
  double abs_tol;
  int max_refinements;
  double tail_epsilon;
} l2t_quad_config;

/* Log-spaced nx-by-nt grid over [x0, x1] x [t0, t1]. */
typedef struct l2t_grid_spec {
  double x0, x1;
  unsigned nx;
  double t0, t1;
  unsigned nt;
} l2t_grid_spec;

/* dx_u = (1/x) u_x and dx_u_t = (1/x) u_xt. */
typedef struct l2t_derivatives {
  double u;
  double u_t;
  double dx_u;
  double dx_u_t;
} l2t_derivatives;

typedef double (*l2t_real_fn)(double x, void* ctx);

L2T_API const char* l2t_status_name(l2t_status status);
L2T_API const char* l2t_last_error(void);
L2T_API void l2t_string_free(char* s);
L2T_API void l2t_quad_config_default(l2t_quad_config* cfg);

/* Expressions */
L2T_API l2t_status l2t_expr_parse(const char* json, l2t_expr** out);
L2T_API l2t_status l2t_expr_to_json(const l2t_expr* e, char** out);
L2T_API l2t_kind l2t_expr_kind(const l2t_expr* e);
L2T_API int l2t_expr_equal(const l2t_expr* a, const l2t_expr* b);
L2T_API void l2t_expr_free(l2t_expr* e);

L2T_API l2t_status l2t_add(const l2t_expr* a, const l2t_expr* b, l2t_expr** out);
L2T_API l2t_status l2t_scale(const l2t_expr* e, const char* rational, l2t_expr** out);
/* Pointwise product for gexpr/lpoly, partial-fraction product for sexpr. */
L2T_API l2t_status l2t_multiply(const l2t_expr* a, const l2t_expr* b, l2t_expr** out);
/* gexpr at x, sexpr at sigma, lpoly at t. */
L2T_API l2t_status l2t_evaluate(const l2t_expr* e, double at, double* out);
L2T_API l2t_status l2t_delta_x(const l2t_expr* g, l2t_expr** out);
L2T_API l2t_status l2t_limit_at_zero(const l2t_expr* g, char** rational_out);

/* Transform domain */
L2T_API l2t_status l2t_transform(const l2t_expr* g, l2t_expr** out);
L2T_API l2t_status l2t_invert(const l2t_expr* s, l2t_expr** out);
L2T_API l2t_status l2t_delta_s(const l2t_expr* s, l2t_expr** out);
L2T_API l2t_status l2t_mul_sigma(const l2t_expr* s, l2t_expr** out);
/* Partial fractions of prod (sigma - poles[i])^(-multiplicities[i]); poles are rational strings. */
L2T_API l2t_status l2t_partial_fractions(const char* const* poles, const unsigned* multiplicities, size_t count,
                                         l2t_expr** out);

/* Convolution */
L2T_API l2t_status l2t_convolve(const l2t_expr* f, const l2t_expr* g, l2t_expr** out);
L2T_API l2t_status l2t_convolve_numeric(const l2t_expr* f, const l2t_expr* g, double t, const l2t_quad_config* cfg,
                                        double* out);
L2T_API l2t_status l2t_star_power(const l2t_expr* f, unsigned n, l2t_expr** out);

/* Numerical transform; cfg may be NULL for defaults. */
L2T_API l2t_status l2t_quadrature(const l2t_expr* g, double s, const l2t_quad_config* cfg, double* out);
/* Same with sigma = s^2 given directly; sigma only has to exceed the largest rate. */
L2T_API l2t_status l2t_quadrature_sigma(const l2t_expr* g, double sigma, const l2t_quad_config* cfg, double* out);

/* PDE families. ratio is an lpoly (M for B/D, H for C) and is ignored for family A (may be NULL). */
L2T_API l2t_status l2t_solve(l2t_family family, const l2t_expr* ratio, unsigned n, l2t_convention convention,
                             l2t_solution** out);
L2T_API l2t_status l2t_solution_eval(const l2t_solution* u, double x, double t, l2t_derivatives* out);
L2T_API l2t_status l2t_solution_to_json(const l2t_solution* u, char** out);
L2T_API void l2t_solution_free(l2t_solution* u);
/* grid may be NULL for the default 10x10 grid over [0.1, 2] x [0.5, 2]. */
L2T_API l2t_status l2t_residual(const l2t_solution* u, const l2t_grid_spec* grid, char** report_json);
L2T_API l2t_status l2t_truncation_bound(const l2t_solution* u, double x_max, double t_lo, double t_hi, double* out);
L2T_API l2t_status l2t_check_transform_ode(l2t_family family, const l2t_expr* ratio, unsigned n,
                                           l2t_convention convention, char** report_json);

/* Growth order */
L2T_API l2t_status l2t_classify(const l2t_expr* g, char** report_json);
L2T_API l2t_status l2t_estimate_rate(l2t_real_fn f, void* ctx, const double* xs, size_t count, char** report_json);
L2T_API l2t_status l2t_check_bound(l2t_real_fn f, void* f_ctx, l2t_real_fn g, void* g_ctx, const double* xs,
                                   size_t count, int* holds);

#ifdef __cplusplus
}
#endif

#endif /* L2T_L2T_H */
