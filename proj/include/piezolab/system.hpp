#pragma once

#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "piezolab/mesh.hpp"
#include "piezolab/params.hpp"
#include "piezolab/state.hpp"

namespace piezolab {

/// Semi-discrete model: block mass/damping/stiffness matrices over the
/// unknown nodes 1..n of both fields (node 0 is eliminated by the clamping).
/// Unknown layout: q = (V_1..V_n, P_1..P_n), v = (V_t at nodes, P_t at nodes).
/// The tip masses are folded into the last diagonal entry of each mass
/// block, so the tip velocities are the tip nodal velocity entries.
struct SemiDiscreteSystem {
  Mesh mesh;
  BeamParameters params;
  Eigen::MatrixXd mass;          ///< (2n)x(2n), SPD, includes tip masses
  Eigen::VectorXd damping_diag;  ///< (2n), xi1 / xi2 at the tip entries
  Eigen::MatrixXd stiffness;     ///< (2n)x(2n), SPD on the clamped space
  Eigen::MatrixXd scalar_mass;       ///< n x n reduced P1 mass block
  Eigen::MatrixXd scalar_stiffness;  ///< n x n reduced P1 stiffness block

  int n() const { return mesh.n_elements; }
  int dim() const { return 2 * mesh.n_elements; }     // per q and per v
  int state_dim() const { return 4 * mesh.n_elements; }
  int v_tip_index() const { return mesh.n_elements - 1; }
  int p_tip_index() const { return 2 * mesh.n_elements - 1; }

  Eigen::MatrixXd damping_matrix() const {
    return Eigen::MatrixXd(damping_diag.asDiagonal());
  }
};

SemiDiscreteSystem assemble(const Mesh& mesh, const BeamParameters& params);

/// One-sided tip and clamp-end traces of a discrete state. The derivative
/// traces are the exact derivatives of the boundary elements of the
/// piecewise-linear fields.
struct BoundaryTraces {
  double vx_tip = 0.0;    // V_x(L)
  double px_tip = 0.0;    // P_x(L)
  double u = 0.0;         // V_t(L)
  double eta = 0.0;       // P_t(L)
  double vx_clamp = 0.0;  // V_x(0)
  double px_clamp = 0.0;  // P_x(0)
};

BoundaryTraces boundary_traces(const Eigen::VectorXd& q,
                               const Eigen::VectorXd& v,
                               const SemiDiscreteSystem& system);

/// Energy of a reduced state (q, v); equals
/// (1/2)(q^T K q + v^T M v) split into its named components.
EnergyBreakdown state_energy(const Eigen::VectorXd& q,
                             const Eigen::VectorXd& v,
                             const SemiDiscreteSystem& system);

enum class InitialPreset {
  static_displacement,  ///< V = x/L, P = 0, zero velocities
  gaussian_velocity,    ///< V_t = exp(-50 (x - L/2)^2), rest zero
  mode_mix,             ///< all conservative modes, energy weights 1/w_k^2
};

InitialPreset preset_from_name(std::string_view name);
const char* preset_name(InitialPreset preset);

/// Initial data as a reduced (q, v) pair.
std::pair<Eigen::VectorXd, Eigen::VectorXd> project_initial_data(
    InitialPreset preset, const SemiDiscreteSystem& system);

/// Projects explicit nodal samples; rejects data violating the clamping
/// V(0) = P(0) = 0.
std::pair<Eigen::VectorXd, Eigen::VectorXd> project_initial_data(
    const SampledState& data, const SemiDiscreteSystem& system);

}  // namespace piezolab
