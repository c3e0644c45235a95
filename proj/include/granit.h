/* granit.h - C interface to the GRANIT AC-mode spectroscopy simulator.
 *
 * All handles are opaque; every function returns a granit_status code.
 * Quantities cross this boundary in SI units unless the name says
 * otherwise.  The library is thread-safe for concurrent calls on
 * distinct handles; a single handle must not be mutated concurrently.
 */

#ifndef GRANIT_H
#define GRANIT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum granit_status {
    GRANIT_OK = 0,
    GRANIT_ERROR_RUNTIME = 1, /* runtime / physics / I/O failure */
    GRANIT_ERROR_USAGE = 2    /* bad arguments or configuration */
} granit_status;

typedef struct granit_config granit_config;

/* ---- configuration ---------------------------------------------------- */

/* New configuration with benchmark defaults. Never fails; returns NULL
 * only on allocation failure. Free with granit_config_destroy. */
granit_config* granit_config_create(void);
void granit_config_destroy(granit_config* cfg);

/* Merge "key = value" lines from a file (see README for the schema). */
granit_status granit_config_load(granit_config* cfg, const char* path);

/* Apply a single KEY=VALUE override. */
granit_status granit_config_set(granit_config* cfg, const char* assignment);

/* Validate the whole configuration; fail fast before any computation. */
granit_status granit_config_validate(const granit_config* cfg);

/* Message for the last error on this handle ("" if none). The pointer
 * stays valid until the next call on the same handle. */
const char* granit_config_error(const granit_config* cfg);

/* Message for the last error raised on the calling thread ("" if none),
 * covering the handle-free helpers as well. */
const char* granit_last_error(void);

/* ---- bouncer spectrum ------------------------------------------------- */

/* First n magnitudes of the negative Airy zeros, n in [1, 100]. */
granit_status granit_airy_zeros(int n, double* out);

/* z0 (m) and f0 (Hz) recomputed from the configured constants. */
granit_status granit_bouncer_scales(const granit_config* cfg, double* z0_m,
                                    double* f0_hz);

/* f_nm in Hz (negative for n < m); n != m, indices from 1. */
granit_status granit_transition_frequency(const granit_config* cfg, int n,
                                          int m, double* out_hz);

/* Matrix element <n|z|m> in meters. */
granit_status granit_z_matrix_element(const granit_config* cfg, int n, int m,
                                      double* out_m);

/* Pi-pulse gradient for the n->m transition over excitation_time_s. T/m. */
granit_status granit_required_gradient(const granit_config* cfg, int n, int m,
                                       double excitation_time_s,
                                       double* out_T_per_m);

/* Rabi angular frequency for gradient amplitude beta (T/m). rad/s. */
granit_status granit_rabi_frequency(const granit_config* cfg, int n, int m,
                                    double beta_T_per_m, double* out_rad_s);

/* Populations of the first n_out states after the preparation step for a
 * single incoming pre-step state (index from 1). */
granit_status granit_step_populations(const granit_config* cfg,
                                      int incoming_state, double* out,
                                      int n_out);

/* ---- magnetostatics --------------------------------------------------- */

/* Closed-form field of an infinitely long square wire centered at the
 * origin (current along +y). Fails on points inside the conductor. */
granit_status granit_square_wire_field(double x_m, double z_m, double current_A,
                                       double side_m, double* Bx_T,
                                       double* Bz_T);
granit_status granit_square_wire_gradient(double x_m, double z_m,
                                          double current_A, double side_m,
                                          double* dBxdz_T_per_m,
                                          double* dBzdz_T_per_m);

typedef struct granit_field_sample {
    double x_m;
    double Bx_T;
    double Bz_T;
    double dBxdz_T_per_m;
    double dBzdz_T_per_m;
    double grad_absB_T_per_m; /* NaN where |B| = 0 */
    int grad_defined;
} granit_field_sample;

/* Superposed wire-array field plus external field at (x, z). */
granit_status granit_array_field(const granit_config* cfg, double x_m,
                                 double z_m, granit_field_sample* out);

/* Effective AC excitation parameters of the configured array. */
granit_status granit_extract_excitation(const granit_config* cfg,
                                        double* beta_hat_T_per_m, double* B1_T);

/* ---- study drivers ---------------------------------------------------- */

/* Each driver validates the configuration, runs the study, writes its
 * output files under out_dir (CSV or JSON per run.output_format) and, if
 * report/report_cap are nonzero, copies a printable summary (truncated
 * if necessary, always NUL terminated). Pass NULL as out_dir to skip
 * file output. */
granit_status granit_run_eigen(const granit_config* cfg, const char* out_dir,
                               char* report, size_t report_cap);
granit_status granit_run_fieldmap(const granit_config* cfg, const char* out_dir,
                                  char* report, size_t report_cap);
granit_status granit_run_adiabaticity(const granit_config* cfg,
                                      const char* out_dir, char* report,
                                      size_t report_cap);
granit_status granit_run_resonance(const granit_config* cfg,
                                   const char* out_dir, char* report,
                                   size_t report_cap);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GRANIT_H */
