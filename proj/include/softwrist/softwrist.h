/* Copyright 2026 The softwrist Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the softwrist model, controller and simulation harness.
 *
 * Conventions:
 *  - Every fallible call returns sw_status. Negative values are errors; the
 *    message is available from sw_last_error() on the same thread until the
 *    next failing call.
 *  - SW_WARNING means the outputs are valid but something deserves attention
 *    (an energy-factor fit evaluated outside its range).
 *  - Objects are opaque handles created by the create, parse, load and simulate calls and
 *    released by the matching *_destroy; destroy accepts NULL.
 *  - Strings are returned through (buf, cap, needed): the full length
 *    (without the terminator) is stored in *needed, and at most cap - 1 bytes
 *    plus a terminator are written to buf. buf may be NULL when cap is 0.
 *  - Angles are radians; lengths metres; forces newtons.
 */

#ifndef SOFTWRIST_SOFTWRIST_H_
#define SOFTWRIST_SOFTWRIST_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SW_API __declspec(dllexport)
#else
#define SW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sw_status {
  SW_OK = 0,
  SW_WARNING = 1,
  SW_ERR_INVALID_ARGUMENT = -1,
  SW_ERR_DOMAIN = -2,
  SW_ERR_UNPHYSICAL = -3,
  SW_ERR_NON_FINITE = -4,
  SW_ERR_CONFIG = -5,
  SW_ERR_IO = -6,
  SW_ERR_INTERNAL = -7
} sw_status;

SW_API const char* sw_version(void);
SW_API const char* sw_status_string(sw_status status);
/* Message of the last failing call on this thread ("" if none). */
SW_API const char* sw_last_error(void);

/* ---- configuration ---------------------------------------------------- */

typedef struct sw_config sw_config;

SW_API sw_status sw_config_create_default(sw_config** out);
SW_API sw_status sw_config_parse(const char* json_text, sw_config** out);
SW_API sw_status sw_config_load(const char* path, sw_config** out);
SW_API void sw_config_destroy(sw_config* config);
SW_API sw_status sw_config_dump(const sw_config* config, char* buf, size_t cap,
                                size_t* needed);
/* Empty string when the configuration does not set an output directory. */
SW_API sw_status sw_config_output_dir(const sw_config* config, char* buf, size_t cap,
                                      size_t* needed);
SW_API sw_status sw_config_seed(const sw_config* config, uint64_t* seed);
/* Non-fatal plant warnings (e.g. disc layout differing from the fits). */
SW_API size_t sw_config_warning_count(const sw_config* config);
SW_API sw_status sw_config_warning(const sw_config* config, size_t index, char* buf,
                                   size_t cap, size_t* needed);

/* ---- model ------------------------------------------------------------ */

typedef struct sw_state {
  double alpha;
  double gamma;
  double alpha_dot;
  double gamma_dot;
} sw_state;

/* 4x4 homogeneous transform of the distal disc, row-major. */
SW_API sw_status sw_end_transform(const sw_config* config, const sw_state* state,
                                  double out[16]);
SW_API sw_status sw_backbone_point(const sw_config* config, const sw_state* state,
                                   double s, double out[3]);
SW_API sw_status sw_tendon_lengths(const sw_config* config, const sw_state* state,
                                   double out[3]);
SW_API sw_status sw_tendon_velocities(const sw_config* config, const sw_state* state,
                                      double out[3]);

typedef struct sw_factors {
  double k1_exact;
  double k1_fit;
  double k2_fit;
  double k6_fit;
  double k7_fit;
} sw_factors;

/* SW_WARNING when |alpha| > pi/2, outside the range the fits were made on. */
SW_API sw_status sw_energy_factors(double alpha, sw_factors* out);

typedef struct sw_planar {
  double inertia;
  double coriolis;
  double stiffness;
  double actuation;
} sw_planar;

SW_API sw_status sw_planar_coefficients(const sw_config* config, double alpha,
                                        sw_planar* out);
/* Planar alpha_ddot for tendon force and external torque. */
SW_API sw_status sw_forward_dynamics(const sw_config* config, const sw_state* state,
                                     double force, double tau_ext, double* alpha_ddot);
/* Tendon force that realises alpha_ddot = y at the given state. */
SW_API sw_status sw_feedback_linearize(const sw_config* config, double y, double alpha,
                                       double alpha_dot, double* force);

/* ---- quadratic programming -------------------------------------------- */

enum { SW_QP_SOLVED = 0, SW_QP_MAX_ITERATIONS = 1, SW_QP_INFEASIBLE = 2 };

/* min 1/2 z'Hz + f'z  s.t.  A z <= b.  H is n x n, A is m x n, both
 * row-major. lambda_out may be NULL. */
SW_API sw_status sw_qp_solve(int n, int m, const double* hessian, const double* linear,
                             const double* a_in, const double* b_in, double* z_out,
                             double* lambda_out, int* qp_status, int* iterations);

typedef struct sw_selftest_summary {
  int count;
  int failures;
  int first_failure_index; /* -1 if none */
  uint64_t first_failure_seed;
  double worst_rel_error;
} sw_selftest_summary;

/* Random problems against the enumeration oracle; csv_path may be NULL. */
SW_API sw_status sw_qp_selftest(uint64_t seed, int count, const char* csv_path,
                                sw_selftest_summary* out);

/* ---- simulation ------------------------------------------------------- */

typedef struct sw_run sw_run;

typedef struct sw_sample {
  double t;
  double alpha_ref;
  double alpha;
  double alpha_dot_ref;
  double alpha_dot;
  double y;
  double force;
  double eps;
  int qp_iters;
} sw_sample;

typedef struct sw_metrics {
  double rmse;
  double settling_time; /* from the step time */
  int settled;
  double steady_state_error;
  double peak_error;
  int has_disturbance;
  int recovered;
  double recovery_time; /* absolute; valid when recovered */
} sw_metrics;

SW_API size_t sw_scenario_count(void);
SW_API const char* sw_scenario_name(size_t index);

/* Runs the named preset (NULL: the configuration's scenario) with the
 * configuration's overrides. A run that diverges still returns SW_OK with
 * sw_run_diverged() set. */
SW_API sw_status sw_simulate(const sw_config* config, const char* scenario, sw_run** out);
SW_API void sw_run_destroy(sw_run* run);
SW_API size_t sw_run_size(const sw_run* run);
SW_API sw_status sw_run_sample(const sw_run* run, size_t index, sw_sample* out);
SW_API int sw_run_diverged(const sw_run* run);
SW_API int sw_run_solver_fallbacks(const sw_run* run);
SW_API sw_status sw_run_diagnostic(const sw_run* run, char* buf, size_t cap, size_t* needed);
SW_API sw_status sw_run_target(const sw_run* run, double* target);
/* band_fraction <= 0 selects the default 2 % band. */
SW_API sw_status sw_run_metrics(const sw_run* run, double band_fraction, sw_metrics* out);
SW_API sw_status sw_run_write_trajectory(const sw_run* run, const char* path);
SW_API sw_status sw_run_write_metrics(const sw_run* run, const char* path);

/* ---- reports ---------------------------------------------------------- */

/* Writes factors.csv-style output; max_k1_err may be NULL. */
SW_API sw_status sw_write_factors(double alpha_min, double alpha_max, int samples,
                                  const char* path, double* max_k1_err);

typedef struct sw_reproduce_row {
  char scenario[32];
  int completed;
  int settled;
  double settling_time;
  double steady_state_error;
  double max_alpha;
  double rmse;
  int has_disturbance;
  int recovered;
  double recovery_time;
  int slow_recovery;
  int pass;
} sw_reproduce_row;

/* Runs the reproduction suite into out_dir. *count receives the number of
 * rows; at most cap are copied to rows (which may be NULL when cap is 0). */
SW_API sw_status sw_reproduce(const sw_config* config, const char* out_dir,
                              sw_reproduce_row* rows, size_t cap, size_t* count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SOFTWRIST_SOFTWRIST_H_ */
