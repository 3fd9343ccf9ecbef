#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "piezolab/generator.hpp"
#include "piezolab/timestepper.hpp"

namespace piezolab {

/// Space-time multiplier estimate over a recorded trajectory: tests
///   |int_0^T (q(L) I(L,t) - q(0) I(0,t)) dt - int_0^T q' E1(t) dt|
///     <= M (E1(T) + E1(0)),
/// for an affine multiplier q(x), with I the field energy density,
/// E1 twice the field energy, and M = 2 ||q||_inf max{rho,
/// (1+2 gamma^2)/alpha1, mu, 2/beta}. Time integrals use the trapezoid
/// rule; `satisfied` allows for the documented quadrature slack.
struct MultiplierReport {
  double lhs = 0.0;
  double bound = 0.0;
  double m_constant = 0.0;
  double q_slope = 0.0;
  double q_intercept = 0.0;
  bool satisfied = false;
};

/// Requires a trajectory recorded on every step (record_every == 1).
MultiplierReport multiplier_check(const Trajectory& trajectory,
                                  const BeamParameters& params,
                                  double q_slope, double q_intercept = 0.0);

/// Nodal samples of a forcing term (F1, F2 drive the V field, F3, F4 the
/// P field, F5, F6 the tip bodies). F1, F3 must vanish at the clamped end.
struct Forcing {
  Eigen::VectorXd f1, f2, f3, f4;  // size n_nodes
  double f5 = 0.0;
  double f6 = 0.0;
};

/// Smooth deterministic forcing profiles drawn from `seed`, sampled on the
/// mesh; the same seed on finer meshes samples the same functions, which
/// is what the refinement studies need.
Forcing smooth_forcing(unsigned seed, const Mesh& mesh);

/// The discrete state-space representation of a forcing: position block
/// sampled nodally, velocity block M^{-1}(load vector).
Eigen::VectorXd forcing_to_state(const Forcing& forcing,
                                 const SemiDiscreteSystem& system);

/// Boundary/interior balance of the resolvent solve (i lambda - A) U = F
/// with multiplier q(x) = x: reports the tip functionals I_V, I_P, the
/// interior norm functional N^2, the forcing cross terms R1, R2, and the
/// defect |I_V + I_P - N^2 + R1 + R2|, which vanishes under refinement.
struct ResolventIdentityReport {
  double i_v = 0.0;
  double i_p = 0.0;
  double n2 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double residual = 0.0;
  double u_norm = 0.0;       // ||U|| in the energy norm
  double f_norm = 0.0;       // ||F|| in the energy norm
  double xi_lhs = 0.0;       // xi1|u|^2 + xi2|eta|^2
  double xi_rhs = 0.0;       // ||U|| ||F||
  double lemma_constant = 0.0;  // N^2 / (I_V + I_P + ||F||^2)
};

ResolventIdentityReport resolvent_identity_check(const GeneratorMatrix& gen,
                                                 double lambda,
                                                 const Forcing& forcing);

/// Solution of the static problem A U = F together with the relative
/// residual (energy norm) and the stability ratio ||U|| / ||F||.
struct StaticSolveReport {
  Eigen::VectorXd q, v;
  double residual = 0.0;
  double bound_ratio = 0.0;
};

StaticSolveReport static_solve(const SemiDiscreteSystem& system,
                               const Forcing& forcing);

/// Roots of the boundary characteristic equation of one decoupled field
/// (requires gamma = 0 for the oracle to describe the coupled system):
///   sqrt(r a) cosh z + (xi + m (c/L) z) sinh z = 0,  lambda = (c/L) z,
/// with (r, a, xi, m) the density/stiffness/gain/tip-mass of the field and
/// c = sqrt(a/r). Returns the `count` roots with positive imaginary part
/// sorted by frequency (their conjugates complete the spectrum).
std::vector<std::complex<double>> characteristic_roots(
    const BeamParameters& params, int field, int count);

/// Power-law fit of the energy decay over a time window, guarded against
/// the late-time exponential tail of the finite-dimensional model: when an
/// abscissa is supplied, the window must end before 1/(2|abscissa|).
struct DecayFit {
  double t0 = 0.0;
  double t1 = 0.0;
  double exponent = 0.0;     // slope of log E vs log t
  double sup_t_energy = 0.0; // max over window of t E(t) / E(0)
  double min_t_energy = 0.0; // min over window of t E(t) / E(0)
  double guard_limit = 0.0;  // 1/(2|abscissa|), +inf if no abscissa given
};

DecayFit decay_fit(const Trajectory& trajectory, double t0, double t1,
                   std::optional<double> spectral_abscissa = std::nullopt);

}  // namespace piezolab
