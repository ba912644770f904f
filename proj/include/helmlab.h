#ifndef HELMLAB_H
#define HELMLAB_H

#include <stddef.h>

#if defined(_WIN32)
#define HL_API __declspec(dllexport)
#else
#define HL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hl_status {
  HL_OK = 0,
  HL_INVALID_ARGUMENT = 1,
  HL_DOMAIN_ERROR = 2,
  HL_INVARIANT_VIOLATION = 3,
  HL_UNSUPPORTED = 4,
  HL_SINGULAR = 5,
  HL_NOT_CONVERGED = 6,
  HL_IO_ERROR = 7,
  HL_PARSE_ERROR = 8,
  HL_INTERNAL_ERROR = 9
} hl_status;

typedef enum hl_boundary { HL_PURE_IMPEDANCE = 0, HL_DIRICHLET_IMPEDANCE = 1, HL_IMPEDANCE_DIRICHLET = 2 } hl_boundary;

typedef enum hl_method { HL_METHOD_FEM = 0, HL_METHOD_ORACLE = 1 } hl_method;

typedef enum hl_number_style { HL_STYLE_PLAIN = 0, HL_STYLE_PAPER = 1 } hl_number_style;

typedef enum hl_cell_status { HL_CELL_OK = 0, HL_CELL_FAILED = 1, HL_CELL_NOT_ATTEMPTED = 2 } hl_cell_status;

typedef struct hl_problem hl_problem;
typedef struct hl_fem_solution hl_fem_solution;
typedef struct hl_oracle hl_oracle;
typedef struct hl_table hl_table;

/* Message of the last failed call on this thread; empty after success. */
HL_API const char* hl_last_error(void);
HL_API const char* hl_status_name(hl_status status);
HL_API const char* hl_version(void);

/* Strings returned through char** are heap allocated; release with hl_string_free. */
HL_API void hl_string_free(char* text);

/* Problems */
HL_API hl_status hl_problem_load(const char* path, hl_problem** out);
HL_API hl_status hl_problem_parse(const char* text, hl_problem** out);
/* The layered family with 2m+1 layers; epsilon moves x_{m+1}. */
HL_API hl_status hl_problem_family(int m, double r, double epsilon, double g_left_re, double g_left_im,
                                   double g_right_re, double g_right_im, hl_problem** out);
HL_API void hl_problem_free(hl_problem* problem);
HL_API hl_status hl_problem_omega(const hl_problem* problem, double* omega);
HL_API hl_status hl_problem_num_segments(const hl_problem* problem, size_t* count);
HL_API hl_status hl_problem_boundary(const hl_problem* problem, hl_boundary* bc);

/* Stability */
typedef struct hl_stability {
  double q_exact;
  double q_bound;           /* +inf when it overflows */
  double q_bound_log;
  double product_bound;
  double product_bound_log;
  double c_one;             /* constant multiplying Q ||f|| */
  double c_two;             /* constant multiplying sqrt(Q) ||g|| */
  double var_a;
  double var_c2;
  double f_norm;
  double g_norm;
  double apriori_rhs;       /* bound for ||u||_{H,a,c} with Q = q_exact */
} hl_stability;

HL_API hl_status hl_stability_report(const hl_problem* problem, hl_stability* out);
/* Key-value text of the full report, including jump factors and breakpoints. */
HL_API hl_status hl_stability_text(const hl_problem* problem, char** text);
/* 1 when the multiplier checks pass, 0 otherwise. */
HL_API hl_status hl_verify_multiplier(const hl_problem* problem, int* pass);

/* Galerkin theory constants */
typedef struct hl_theory_inputs {
  double a_min, a_max, c_min, c_max;
  double omega, omega0, h;
  double kappa_a, kappa_c;
  double c_reg, c_int, c_trace, c_stab;
  int constants_certified;
} hl_theory_inputs;

typedef struct hl_theory_report {
  double c_ac;
  double beta_max;
  double c0;
  double c0_prime;
  double k;
  double sigma_star_bound;
  int resolution_ok;
  double quasi_opt_h;
  double quasi_opt_l2;
  int constants_certified;
} hl_theory_report;

HL_API void hl_theory_defaults(hl_theory_inputs* in);
HL_API hl_status hl_theory_bounds(const hl_theory_inputs* in, hl_theory_report* out);
HL_API hl_status hl_theory_text(const hl_theory_inputs* in, char** text);

/* Finite elements */
typedef struct hl_norms {
  double du;     /* ||u'|| */
  double wu;     /* ||(omega/c) u|| */
  double energy; /* ||u||_{H,a,c} */
} hl_norms;

HL_API hl_status hl_fem_solve(const hl_problem* problem, size_t elements_per_segment, int estimate_condition,
                              hl_fem_solution** out);
HL_API void hl_fem_free(hl_fem_solution* solution);
HL_API size_t hl_fem_num_nodes(const hl_fem_solution* solution);
/* Each buffer must hold hl_fem_num_nodes values; any pointer may be NULL. */
HL_API hl_status hl_fem_values(const hl_fem_solution* solution, double* x, double* re, double* im);
HL_API hl_status hl_fem_norms(const hl_fem_solution* solution, hl_norms* out);
HL_API double hl_fem_residual(const hl_fem_solution* solution);
/* NaN unless the estimate was requested. */
HL_API double hl_fem_condition(const hl_fem_solution* solution);
/* Text lines "x Re(u) Im(u)" at the mesh nodes. */
HL_API hl_status hl_fem_dump(const hl_fem_solution* solution, char** text);

/* Refinement to convergence */
#define HL_MAX_LEVELS 16

typedef struct hl_refinement {
  int levels;
  double values[HL_MAX_LEVELS];
  double residuals[HL_MAX_LEVELS];
  int converged;
  int failed;
  int figures;
  double finest;
  double reported_value;
  double condition;
} hl_refinement;

/* cache_path may be NULL. Only family problems are cached. */
HL_API hl_status hl_refine(const hl_problem* problem, size_t base, int levels, int sigfigs,
                           const char* cache_path, hl_refinement* out);

/* Transfer-matrix oracle for piecewise-constant problems without source */
HL_API hl_status hl_oracle_solve(const hl_problem* problem, int extended, hl_oracle** out);
HL_API void hl_oracle_free(hl_oracle* oracle);
HL_API hl_status hl_oracle_norms(const hl_oracle* oracle, hl_norms* out);
HL_API hl_status hl_oracle_eval(const hl_oracle* oracle, double x, double* re, double* im);
HL_API double hl_oracle_residual(const hl_oracle* oracle);
HL_API double hl_oracle_condition(const hl_oracle* oracle);
HL_API int hl_oracle_ill_conditioned(const hl_oracle* oracle);
/* Text lines "x Re(u) Im(u)" at `points` equispaced points (points >= 2). */
HL_API hl_status hl_oracle_dump(const hl_oracle* oracle, size_t points, char** text);

/* Tables */
typedef struct hl_table_options {
  hl_method method;
  int jobs;               /* 0: HELMLAB_JOBS or the hardware concurrency */
  int extended;           /* attempt the blank Table 3 cells with the 50-digit oracle */
  size_t base;            /* elements per layer at level 0 */
  int levels;
  int sigfigs;
  const char* cache_path; /* NULL: no cache */
} hl_table_options;

typedef struct hl_cell {
  int m;
  double r;
  double epsilon;
  double g_left_re, g_left_im, g_right_re, g_right_im;
  double value;
  int asterisk;
  int figures;
  double condition;
  hl_cell_status status;
  int beyond_paper;
} hl_cell;

HL_API void hl_table_defaults(hl_table_options* options);
HL_API hl_status hl_table1(const double* r_values, size_t num_r, const int* m_values, size_t num_m,
                           const hl_table_options* options, hl_table** out);
HL_API hl_status hl_table2(const int* m_values, size_t num_m, const hl_table_options* options, hl_table** out);
HL_API hl_status hl_table3(const int* m_values, size_t num_m, const double* eps_values, size_t num_eps,
                           const hl_table_options* options, hl_table** out);
HL_API void hl_table_free(hl_table* table);
HL_API size_t hl_table_size(const hl_table* table);
HL_API hl_status hl_table_cell(const hl_table* table, size_t index, hl_cell* out);
HL_API hl_status hl_table_csv(const hl_table* table, hl_number_style style, char** csv);
/* Least-squares slope of (m, ln value) over cells [first, first + count). */
HL_API hl_status hl_table_slope(const hl_table* table, size_t first, size_t count, int converged_only,
                                double* slope);

HL_API hl_status hl_slope_fit(const double* m_values, const double* values, size_t count, double* slope);

HL_API hl_status hl_bound_comparison(const double* r_values, size_t num_r, const int* m_values, size_t num_m,
                                     const hl_table_options* options, int* all_hold, char** csv);

/* FEM against the oracle over base * 2^i elements per segment. */
HL_API hl_status hl_quasiopt(const hl_problem* problem, size_t base, int levels, char** csv);
/* Same ladder; rates are least-squares slopes over the last rate_levels levels. */
HL_API hl_status hl_convergence(const hl_problem* problem, size_t base, int levels, int rate_levels,
                                double* energy_rate, double* nodal_rate, char** csv);

#ifdef __cplusplus
}
#endif

#endif
