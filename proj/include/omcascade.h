/*
 * omcascade - steady states and entanglement of cascaded optomechanical
 * networks.
 *
 * C interface to the simulator core. All objects are opaque handles created
 * and destroyed through this API; every fallible call returns an omc_status
 * and leaves a human-readable message retrievable (per thread) through
 * omc_last_error_message().
 *
 * Conventions: quadratures q = (a + a+)/sqrt(2), p = -i(a - a+)/sqrt(2),
 * vacuum variance 1/2, covariance ordering (q0, p0, q1, p1, ...) over the
 * registered modes, natural logarithm in the logarithmic negativity. All
 * rates are dimensionless (units of the reference cavity linewidth).
 */
#ifndef OMCASCADE_H
#define OMCASCADE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum omc_status {
  OMC_OK = 0,
  OMC_ERR_NULL_ARGUMENT = 1,
  OMC_ERR_INVALID_PARAMETER = 2,
  OMC_ERR_INVALID_COMPOSITION = 3,
  OMC_ERR_UNSTABLE_DYNAMICS = 4,
  OMC_ERR_NUMERICAL_FAILURE = 5,
  OMC_ERR_SINGULAR_LIMIT = 6,
  OMC_ERR_CONFIG = 7,
  OMC_ERR_IO = 8,
  OMC_ERR_UNKNOWN = 9
} omc_status;

/* Opaque handles. */
typedef struct omc_spec omc_spec;                 /* compiled network spec  */
typedef struct omc_state omc_state;               /* steady-state covariance */
typedef struct omc_sweep_result omc_sweep_result; /* sweep result table     */

const char* omc_version(void);
const char* omc_status_name(omc_status status);
/* Message of the most recent failure on the calling thread. */
const char* omc_last_error_message(void);

/* ---- model builders ---------------------------------------------------- */

typedef struct omc_model1_params {
  double g1, g2, kappa, Gamma1, Gamma2, gamma, nbar;
  int feedback; /* nonzero: cascaded link a1 -> a2 */
} omc_model1_params;

typedef struct omc_model2_params {
  double g1, g2, Gamma1, Gamma2, gamma1, nbar;
  int feedback;
} omc_model2_params;

typedef struct omc_chain_params {
  int n_ports;
  omc_model1_params port;
  double chi;
} omc_chain_params;

omc_status omc_model1_build(const omc_model1_params* params, omc_spec** out);
omc_status omc_model2_build(const omc_model2_params* params, omc_spec** out);
omc_status omc_chain_build(const omc_chain_params* params, omc_spec** out);
void omc_spec_free(omc_spec* spec);

int omc_spec_mode_count(const omc_spec* spec);
/* Copies the label of mode `index` into buf (NUL terminated). */
omc_status omc_spec_mode_label(const omc_spec* spec, int index, char* buf,
                               size_t buf_len);

/* Drift S and diffusion D of dV/dt = S V + V S^T + D, row-major, dimension
 * 2*modes, written into caller buffers of dim*dim doubles each (either may
 * be NULL to skip). */
omc_status omc_spec_drift_diffusion(const omc_spec* spec, double* drift,
                                    double* diffusion, int* dim);

/* ---- steady state and observables -------------------------------------- */

omc_status omc_steady_state(const omc_spec* spec, omc_state** out);
void omc_state_free(omc_state* state);

int omc_state_dim(const omc_state* state);
/* Row-major copy of the covariance matrix into a dim*dim caller buffer. */
omc_status omc_state_covariance(const omc_state* state, double* out);

omc_status omc_log_negativity(const omc_state* state, const char* mode_i,
                              const char* mode_j, double* out);
/* <a_i a_j> moment of the state. */
omc_status omc_mode_correlator(const omc_state* state, const char* mode_i,
                               const char* mode_j, double* out_re,
                               double* out_im);

/* ---- closed-form adiabatic correlators ---------------------------------- */

typedef struct omc_adiabatic_params {
  double g1, g2, kappa, Gamma, gamma;
} omc_adiabatic_params;

/* <b1 b2> for the two-cavity network after eliminating the cavity modes. */
omc_status omc_adiabatic_b1b2(const omc_adiabatic_params* params,
                              int with_feedback, double* out_re,
                              double* out_im);
/* <a2 b> for the mechanics-mediated network (exactly 0 without feedback). */
omc_status omc_adiabatic_model2_a2b(const omc_adiabatic_params* params,
                                    int with_feedback, double* out_re,
                                    double* out_im);

/* ---- parameter sweeps ---------------------------------------------------
 * Sweeps are described by a JSON document:
 *   { "model": "model1"|"model2"|"chain",
 *     "params": { ... },               model parameters (defaults applied)
 *     "n_ports": N,                    chain only
 *     "feedback": "both"|"on"|"off",
 *     "sweep": [ {"name": "kappa", "grid": [..]},
 *                {"name": "chi", "follow": "kappa"} ],
 *     "outputs": [ {"type": "log_negativity", "modes": ["b1","b2"]},
 *                  {"type": "correlator_abs", "modes": ["b1","b2"]},
 *                  {"type": "adiabatic_b1b2_abs", "modes": ["b1","b2"]} ] }
 * Worker count comes from OM_NET_WORKERS (default: logical cores); results
 * are independent of it.
 */

omc_status omc_sweep_validate_json(const char* config_json);
omc_status omc_sweep_run_json(const char* config_json, omc_sweep_result** out);
void omc_sweep_result_free(omc_sweep_result* result);

size_t omc_sweep_result_rows(const omc_sweep_result* result);

/* CSV table (12 significant digits) plus sidecar metadata at
 * path + ".meta.json". With reproducible nonzero no timestamp is recorded
 * and repeated runs emit byte-identical files. */
omc_status omc_sweep_write_csv(const omc_sweep_result* result,
                               const char* path, int reproducible);

/* Config JSON for a named figure preset (fig2a, fig2b, fig3, fig4, fig6,
 * fig8). Free the returned string with omc_string_free. */
omc_status omc_preset_config_json(const char* name, char** out_json);
void omc_string_free(char* str);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OMCASCADE_H */
