#include "piezolab/state.hpp"

#include <stdexcept>

namespace piezolab {

namespace {

// Re(f^H Q f) for real symmetric Q; splits complex vectors so only
// real-scalar matrix products are formed.
double real_quad(const Eigen::MatrixXd& q, const Eigen::VectorXd& f) {
  return f.dot(q * f);
}
double real_quad(const Eigen::MatrixXd& q, const Eigen::VectorXcd& f) {
  const Eigen::VectorXd fr = f.real();
  const Eigen::VectorXd fi = f.imag();
  return fr.dot(q * fr) + fi.dot(q * fi);
}

template <typename Scalar>
EnergyBreakdown energy_impl(const NodalState<Scalar>& state, const Mesh& mesh,
                            const BeamParameters& params) {
  const int n_nodes = mesh.n_nodes();
  if (state.v.size() != n_nodes || state.v_t.size() != n_nodes ||
      state.p.size() != n_nodes || state.p_t.size() != n_nodes) {
    throw std::invalid_argument("energy: state/mesh dimension mismatch");
  }
  const Eigen::MatrixXd mass = p1_mass_full(mesh);
  const Eigen::MatrixXd stiff = p1_stiffness_full(mesh);

  const double kv = 0.5 * params.rho * real_quad(mass, state.v_t);
  const double kp = 0.5 * params.mu * real_quad(mass, state.p_t);
  const double el = 0.5 * params.alpha1 * real_quad(stiff, state.v);
  const Eigen::VectorX<Scalar> mix = params.gamma * state.v - state.p;
  const double mc = 0.5 * params.beta * real_quad(stiff, mix);
  const double tv = 0.5 * params.m1 * std::norm(std::complex<double>(state.tip_u));
  const double tp = 0.5 * params.m2 * std::norm(std::complex<double>(state.tip_eta));
  return EnergyBreakdown::sum_up(kv, kp, el, mc, tv, tp);
}

}  // namespace

EnergyBreakdown energy(const SampledState& state, const Mesh& mesh,
                       const BeamParameters& params) {
  return energy_impl(state, mesh, params);
}

EnergyBreakdown energy(const ComplexSampledState& state, const Mesh& mesh,
                       const BeamParameters& params) {
  return energy_impl(state, mesh, params);
}

}  // namespace piezolab
