/* piezolab — C API of the piezoelectric beam simulation and spectral
 * analysis laboratory.
 *
 * All entry points return a plab_status; on failure plab_last_error()
 * carries a message for the calling thread. Objects returned through
 * out-parameters are owned by the caller and released with the matching
 * _destroy function. Handles are not synchronized: use one handle per
 * thread, or synchronize externally.
 */
#ifndef PIEZOLAB_H
#define PIEZOLAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plab_status {
  PLAB_OK = 0,
  PLAB_ERR_INVALID_ARGUMENT = 1,
  PLAB_ERR_NUMERICAL = 2,
  PLAB_ERR_INTERNAL = 3
} plab_status;

const char* plab_version(void);

/* Message of the most recent failing call on this thread ("" if none). */
const char* plab_last_error(void);

typedef struct plab_beam_params {
  double rho;
  double mu;
  double alpha1;
  double beta;
  double gamma;
  double xi1;
  double xi2;
  double m1;
  double m2;
  double length;
} plab_beam_params;

void plab_default_params(plab_beam_params* params);
double plab_effective_stiffness(const plab_beam_params* params);
double plab_dissipation_rate(const plab_beam_params* params, double u,
                             double eta);

/* Returns PLAB_OK when the parameters satisfy every invariant; otherwise
 * writes a semicolon-separated list of all violations into buf. */
plab_status plab_validate_params(const plab_beam_params* params, char* buf,
                                 size_t buflen);

/* ---- semi-discrete system ------------------------------------------- */

typedef struct plab_system plab_system;

plab_status plab_system_create(const plab_beam_params* params, int n_elements,
                               plab_system** out);
void plab_system_destroy(plab_system* system);
int plab_system_state_dim(const plab_system* system);  /* 4 * n_elements */
double plab_default_dt(const plab_system* system);
double plab_frequency_cutoff(const plab_system* system);

/* Max relative defect of Re<Ax,x>_W = -xi1|u|^2 - xi2|eta|^2 over
 * n_vectors random unit-energy states. */
plab_status plab_dissipativity_residual(plab_system* system, int n_vectors,
                                        unsigned seed, double* out);

/* ---- time-domain simulation ------------------------------------------ */

typedef struct plab_trajectory plab_trajectory;

typedef struct plab_sample {
  long step;
  double t;
  double e_total, e_kin_v, e_kin_p, e_elastic, e_magnetic, e_tip_v, e_tip_p;
  double u, eta, vx_tip, px_tip;
  double cumulative_dissipation;
} plab_sample;

/* preset: "static_displacement", "gaussian_velocity" or "mode_mix".
 * dt <= 0 selects the default step. conservative != 0 forces the damping
 * gains to zero. */
plab_status plab_simulate(plab_system* system, const char* preset, double dt,
                          double t_end, int record_every, int conservative,
                          plab_trajectory** out);

/* Same, from explicit nodal samples (each array has n_elements + 1 entries;
 * the clamped end requires v_disp[0] = p_disp[0] = 0). */
plab_status plab_simulate_nodal(plab_system* system, const double* v_disp,
                                const double* v_vel, const double* p_disp,
                                const double* p_vel, double dt, double t_end,
                                int record_every, int conservative,
                                plab_trajectory** out);

void plab_trajectory_destroy(plab_trajectory* trajectory);
long plab_trajectory_size(const plab_trajectory* trajectory);
plab_status plab_trajectory_sample(const plab_trajectory* trajectory,
                                   long index, plab_sample* out);
/* Max over steps of |E+ - E + dt(xi1 u_m^2 + xi2 eta_m^2)| / E(0). */
double plab_trajectory_balance_residual(const plab_trajectory* trajectory);

/* ---- spectrum --------------------------------------------------------- */

typedef struct plab_fit {
  double slope;
  double intercept;
  double band_lo;
  double band_hi;
  double residual;
  int n_points;
} plab_fit;

typedef struct plab_spectrum plab_spectrum;

plab_status plab_compute_spectrum(plab_system* system, plab_spectrum** out);
void plab_spectrum_destroy(plab_spectrum* spectrum);
long plab_spectrum_size(const plab_spectrum* spectrum);
plab_status plab_spectrum_eigenvalue(const plab_spectrum* spectrum, long index,
                                     double* re, double* im);
double plab_spectrum_abscissa(const plab_spectrum* spectrum);
double plab_spectrum_cutoff(const plab_spectrum* spectrum);
/* log(-Re) vs log(Im) fit over the eigenvalues with Im in [w_lo, w_hi]. */
plab_status plab_branch_fit(const plab_spectrum* spectrum, double w_lo,
                            double w_hi, plab_fit* out);

/* ---- resolvent sweep --------------------------------------------------- */

typedef struct plab_sweep plab_sweep;

plab_status plab_resolvent_sweep(plab_system* system, double lambda_min,
                                 double lambda_max, int points,
                                 plab_sweep** out);
void plab_sweep_destroy(plab_sweep* sweep);
long plab_sweep_size(const plab_sweep* sweep);
plab_status plab_sweep_point(const plab_sweep* sweep, long index,
                             double* lambda, double* norm, int* is_peak);
plab_status plab_sweep_growth_fit(const plab_sweep* sweep, plab_fit* out);

/* ---- stability diagnostics -------------------------------------------- */

/* Spectral abscissa over the dispersion-resolved band for each element
 * count; out_abscissas must hold `count` doubles. */
plab_status plab_abscissa_trend(const plab_beam_params* params, const int* ns,
                                int count, double* out_abscissas);

typedef struct plab_decay_report {
  double t0, t1;
  double exponent;
  double sup_t_energy;
  double min_t_energy;
  double guard_limit;
} plab_decay_report;

/* spectral_abscissa == 0 disables the exponential-tail guard. */
plab_status plab_decay_fit(const plab_trajectory* trajectory, double t0,
                           double t1, double spectral_abscissa,
                           plab_decay_report* out);

typedef struct plab_multiplier_report {
  double lhs, bound, m_constant, q_slope, q_intercept;
  int satisfied;
} plab_multiplier_report;

/* Requires a trajectory recorded with record_every == 1. */
plab_status plab_multiplier_check(const plab_trajectory* trajectory,
                                  double q_slope, double q_intercept,
                                  plab_multiplier_report* out);

typedef struct plab_resolvent_identity_report {
  double i_v, i_p, n2, r1, r2;
  double residual;
  double u_norm, f_norm;
  double xi_lhs, xi_rhs;
  double lemma_constant;
} plab_resolvent_identity_report;

/* Solves (i lambda - A) U = F for the smooth forcing drawn from `seed` and
 * evaluates the multiplier identity functionals. */
plab_status plab_resolvent_identity(plab_system* system, double lambda,
                                    unsigned seed,
                                    plab_resolvent_identity_report* out);

typedef struct plab_static_report {
  double residual;
  double bound_ratio;
} plab_static_report;

plab_status plab_static_solve(plab_system* system, unsigned seed,
                              plab_static_report* out);

/* Characteristic roots of one decoupled field (field 0: V, field 1: P);
 * meaningful as a spectrum oracle when gamma = 0. Fills `count` roots with
 * positive imaginary part, sorted by frequency. */
plab_status plab_characteristic_roots(const plab_beam_params* params,
                                      int field, int count, double* out_re,
                                      double* out_im);

#ifdef __cplusplus
}
#endif

#endif /* PIEZOLAB_H */
