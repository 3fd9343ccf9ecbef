#pragma once

#include <complex>

#include <Eigen/Dense>

#include "piezolab/mesh.hpp"
#include "piezolab/params.hpp"

namespace piezolab {

/// A state sampled on the mesh nodes (node 0 through node n). The clamped
/// end requires v[0] = p[0] = 0; the tip velocities tip_u, tip_eta carry
/// the tip-body state and coincide with v_t[n], p_t[n] for states in the
/// generator's domain.
template <typename Scalar>
struct NodalState {
  Eigen::VectorX<Scalar> v;      ///< V displacement samples
  Eigen::VectorX<Scalar> v_t;    ///< V velocity samples
  Eigen::VectorX<Scalar> p;      ///< P displacement samples
  Eigen::VectorX<Scalar> p_t;    ///< P velocity samples
  Scalar tip_u{};                ///< tip velocity of the V plate
  Scalar tip_eta{};              ///< tip velocity of the P plate

  /// Builds a state from the four fields, identifying the tip velocities
  /// with the last velocity samples.
  static NodalState from_fields(Eigen::VectorX<Scalar> v,
                                Eigen::VectorX<Scalar> v_t,
                                Eigen::VectorX<Scalar> p,
                                Eigen::VectorX<Scalar> p_t) {
    NodalState s{std::move(v), std::move(v_t), std::move(p), std::move(p_t)};
    s.tip_u = s.v_t(s.v_t.size() - 1);
    s.tip_eta = s.p_t(s.p_t.size() - 1);
    return s;
  }

  static NodalState zero(int n_nodes) {
    return NodalState{Eigen::VectorX<Scalar>::Zero(n_nodes),
                      Eigen::VectorX<Scalar>::Zero(n_nodes),
                      Eigen::VectorX<Scalar>::Zero(n_nodes),
                      Eigen::VectorX<Scalar>::Zero(n_nodes),
                      Scalar{}, Scalar{}};
  }
};

using SampledState = NodalState<double>;
using ComplexSampledState = NodalState<std::complex<double>>;

/// Energy of a sampled state,
///   (1/2)\int rho|v_t|^2 + alpha1|v_x|^2 + mu|p_t|^2 + beta|gamma v_x - p_x|^2
///   + (m1/2)|tip_u|^2 + (m2/2)|tip_eta|^2,
/// with the integrals evaluated by the piecewise-linear element quadrature
/// (exact for nodal interpolants). Throws on mesh/state size mismatch.
EnergyBreakdown energy(const SampledState& state, const Mesh& mesh,
                       const BeamParameters& params);
EnergyBreakdown energy(const ComplexSampledState& state, const Mesh& mesh,
                       const BeamParameters& params);

}  // namespace piezolab
