/* C API of the resonance shared library.
 *
 * All objects are opaque handles created/destroyed through this interface.
 * Functions return res_status; on failure res_last_error() carries a
 * human-readable message (thread-local). Strings returned through char**
 * are owned by the caller and released with res_string_free().
 */
#ifndef RESONANCE_CAPI_H
#define RESONANCE_CAPI_H

#include <stddef.h>

#if defined(_WIN32)
#define RES_API __declspec(dllexport)
#else
#define RES_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum res_status {
  RES_OK = 0,
  RES_ERR_INVALID_ARGUMENT = 1,
  RES_ERR_PRECONDITION = 2,
  RES_ERR_NUMERIC = 3,
  RES_ERR_IO = 4,
  RES_ERR_INTERNAL = 5
} res_status;

typedef struct res_eigensystem res_eigensystem;
typedef struct res_decomposition res_decomposition;
typedef struct res_grid res_grid;
typedef struct res_nonlinearity res_nonlinearity;

RES_API const char* res_version(void);
RES_API const char* res_last_error(void);
RES_API void res_string_free(char* s);

/* --- eigensystems ------------------------------------------------------ */

RES_API res_status res_eigensystem_create(const char* domain_spec, int n_modes,
                                          res_eigensystem** out);
/* n_modes derived from the first n_groups distinct eigenvalues */
RES_API res_status res_eigensystem_create_groups(const char* domain_spec, int n_groups,
                                                 res_eigensystem** out);
RES_API void res_eigensystem_free(res_eigensystem* sys);
RES_API res_status res_eigensystem_mode_count(const res_eigensystem* sys, int* out);
RES_API res_status res_eigensystem_distinct_count(const res_eigensystem* sys, int* out);
RES_API res_status res_eigensystem_eigenvalue(const res_eigensystem* sys, int k, double* out);
RES_API res_status res_eigensystem_to_json(const res_eigensystem* sys, char** json_out);

/* --- decomposition ------------------------------------------------------ */

RES_API res_status res_decomposition_create(const res_eigensystem* sys, int k,
                                            res_decomposition** out);
RES_API void res_decomposition_free(res_decomposition* d);
RES_API res_status res_decomposition_to_json(const res_decomposition* d, char** json_out);

/* --- quadrature grid ---------------------------------------------------- */

RES_API res_status res_grid_create(const res_eigensystem* sys, int node_hint, res_grid** out);
RES_API void res_grid_free(res_grid* g);

/* --- nonlinearities ----------------------------------------------------- */

RES_API res_status res_nonlinearity_create(const res_eigensystem* sys, const char* spec,
                                           res_nonlinearity** out);
RES_API void res_nonlinearity_free(res_nonlinearity* f);
/* {spec, nu, bounded, declared_m?, has_limits, has_f_inf} */
RES_API res_status res_nonlinearity_info_json(const res_nonlinearity* f, char** json_out);
RES_API res_status res_verify_bound_json(const res_nonlinearity* f, const res_grid* grid,
                                         double s_min, double s_max, int samples,
                                         char** json_out);

/* --- resonance conditions ------------------------------------------------ */

/* artifact containing the LL1 and LL2 reports */
RES_API res_status res_check_landesman_lazer_json(const res_nonlinearity* f,
                                                  const res_decomposition* d, const res_grid* grid,
                                                  int sphere_samples, unsigned long long seed,
                                                  char** json_out);
RES_API res_status res_check_strong_resonance_json(const res_nonlinearity* f, const res_grid* grid,
                                                   double s_probe, int samples, char** json_out);

typedef struct res_geometric_params {
  double b1_radius;
  double b2_radius;
  double r_min;
  double r_max; /* schedule r_min, 2 r_min, ... <= r_max */
  int samples_per_r;
  unsigned long long seed;
  double alpha;
} res_geometric_params;

RES_API void res_geometric_params_default(res_geometric_params* p);
/* which: 1 for G1, 2 for G2 */
RES_API res_status res_check_geometric_json(const res_nonlinearity* f, const res_decomposition* d,
                                            const res_grid* grid, int which,
                                            const res_geometric_params* params, char** json_out);

/* --- semiflows ----------------------------------------------------------- */

typedef struct res_flow_params {
  double lambda;
  double c;         /* wave damping */
  double dt;
  double t_end;
  int scheme;       /* 0 expEuler, 1 ETDRK2 */
  double guard_radius;
  int record_stride;
  double alpha;     /* diagnostic fractional norm */
  int kernel_k;     /* distinct index for the kernel diagnostic; 0 disables */
} res_flow_params;

RES_API void res_flow_params_default(res_flow_params* p);
/* model: 0 heat, 1 wave. u0 (and v0 for the wave) are arrays of length N.
 * csv_path may be NULL; summary JSON is always produced. */
RES_API res_status res_simulate_json(const res_nonlinearity* f, const res_grid* grid, int model,
                                     const res_flow_params* params, const double* u0,
                                     const double* v0, const char* csv_path, char** json_out);

/* --- orbit machinery ------------------------------------------------------ */

RES_API res_status res_drift_demo_json(const res_eigensystem* sys, int k, int model, double t_end,
                                       double dt, double c, int force_group, char** json_out);

/* condition_chain_json: array of condition reports (or an artifact holding
 * one under report/reports); nu is the declared linearization of f. */
RES_API res_status res_orbit_verdict_json(const res_eigensystem* sys, int k, double nu, int model,
                                          const char* condition_chain_json, char** json_out);

/* scenario_json keys: domain, n, q, f, k, model, c, dt, T, alpha, b1_radius,
 * b2_radius, r_min, r_max, ll_samples, g_samples_per_r, sr_s_probe,
 * sr_samples, seed, newton_tol, newton_max_iter, epsilon, shoot_tol,
 * guard_radius. Unknown keys are rejected. */
RES_API res_status res_orbit_search_json(const char* scenario_json, const char* csv_dir,
                                         char** json_out);

/* 0 holds/pass/orbit-exists, 1 fails, 2 inconclusive/no-conclusion, 3 malformed */
RES_API int res_report_exit_code(const char* report_json);

#ifdef __cplusplus
}
#endif

#endif /* RESONANCE_CAPI_H */
