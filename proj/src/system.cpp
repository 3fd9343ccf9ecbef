#include "piezolab/system.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace piezolab {

SemiDiscreteSystem assemble(const Mesh& mesh, const BeamParameters& params) {
  require_valid(params);
  const int n = mesh.n_elements;
  if (n < 2) throw std::invalid_argument("assemble: mesh has fewer than 2 elements");

  SemiDiscreteSystem sys;
  sys.mesh = mesh;
  sys.params = params;
  sys.scalar_mass = p1_mass_full(mesh).bottomRightCorner(n, n);
  sys.scalar_stiffness = p1_stiffness_full(mesh).bottomRightCorner(n, n);

  const double alpha = params.effective_stiffness();
  const double gb = params.gamma * params.beta;

  sys.mass = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  sys.mass.topLeftCorner(n, n) = params.rho * sys.scalar_mass;
  sys.mass.bottomRightCorner(n, n) = params.mu * sys.scalar_mass;
  sys.mass(n - 1, n - 1) += params.m1;
  sys.mass(2 * n - 1, 2 * n - 1) += params.m2;

  sys.stiffness = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  sys.stiffness.topLeftCorner(n, n) = alpha * sys.scalar_stiffness;
  sys.stiffness.topRightCorner(n, n) = -gb * sys.scalar_stiffness;
  sys.stiffness.bottomLeftCorner(n, n) = -gb * sys.scalar_stiffness;
  sys.stiffness.bottomRightCorner(n, n) = params.beta * sys.scalar_stiffness;

  sys.damping_diag = Eigen::VectorXd::Zero(2 * n);
  sys.damping_diag(n - 1) = params.xi1;
  sys.damping_diag(2 * n - 1) = params.xi2;
  return sys;
}

BoundaryTraces boundary_traces(const Eigen::VectorXd& q,
                               const Eigen::VectorXd& v,
                               const SemiDiscreteSystem& system) {
  const int n = system.n();
  if (q.size() != 2 * n || v.size() != 2 * n)
    throw std::invalid_argument("boundary_traces: state dimension mismatch");
  const double h = system.mesh.h;
  BoundaryTraces t;
  t.vx_tip = (q(n - 1) - q(n - 2)) / h;
  t.px_tip = (q(2 * n - 1) - q(2 * n - 2)) / h;
  t.u = v(n - 1);
  t.eta = v(2 * n - 1);
  t.vx_clamp = q(0) / h;  // node 0 value is 0 by clamping
  t.px_clamp = q(n) / h;
  return t;
}

EnergyBreakdown state_energy(const Eigen::VectorXd& q,
                             const Eigen::VectorXd& v,
                             const SemiDiscreteSystem& system) {
  const int n = system.n();
  if (q.size() != 2 * n || v.size() != 2 * n)
    throw std::invalid_argument("state_energy: state dimension mismatch");
  const BeamParameters& p = system.params;
  const auto vq = q.head(n);
  const auto pq = q.tail(n);
  const auto vv = v.head(n);
  const auto pv = v.tail(n);

  const double u = v(n - 1);
  const double eta = v(2 * n - 1);
  const double kv = 0.5 * p.rho * vv.dot(system.scalar_mass * vv);
  const double kp = 0.5 * p.mu * pv.dot(system.scalar_mass * pv);
  const double el = 0.5 * p.alpha1 * vq.dot(system.scalar_stiffness * vq);
  const Eigen::VectorXd mix = p.gamma * vq - pq;
  const double mc = 0.5 * p.beta * mix.dot(system.scalar_stiffness * mix);
  const double tv = 0.5 * p.m1 * u * u;
  const double tp = 0.5 * p.m2 * eta * eta;
  return EnergyBreakdown::sum_up(kv, kp, el, mc, tv, tp);
}

InitialPreset preset_from_name(std::string_view name) {
  if (name == "static_displacement") return InitialPreset::static_displacement;
  if (name == "gaussian_velocity") return InitialPreset::gaussian_velocity;
  if (name == "mode_mix") return InitialPreset::mode_mix;
  throw std::invalid_argument("unknown initial-condition preset: " +
                              std::string(name));
}

const char* preset_name(InitialPreset preset) {
  switch (preset) {
    case InitialPreset::static_displacement: return "static_displacement";
    case InitialPreset::gaussian_velocity: return "gaussian_velocity";
    case InitialPreset::mode_mix: return "mode_mix";
  }
  return "?";
}

namespace {

std::pair<Eigen::VectorXd, Eigen::VectorXd> mode_mix_data(
    const SemiDiscreteSystem& sys) {
  // Conservative modes of (K, M), M-orthonormal. Mode k enters with energy
  // weight c_k = (w_1/w_k)^2 so the data stays in the generator's domain
  // uniformly in the mesh; phases follow the golden angle.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      sys.stiffness, sys.mass);
  if (es.info() != Eigen::Success)
    throw NumericalError("mode_mix: generalized eigensolver failed");
  const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd& modes = es.eigenvectors();
  const int dim = sys.dim();
  Eigen::VectorXd q = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  const double w1 = w(0);
  for (int k = 0; k < dim; ++k) {
    if (!(w(k) > 0.0)) continue;
    const double ck = (w1 / w(k)) * (w1 / w(k));
    const double theta = golden * (k + 1);
    q += ck * std::cos(theta) * (std::sqrt(2.0) / w(k)) * modes.col(k);
    v += ck * std::sin(theta) * std::sqrt(2.0) * modes.col(k);
  }
  return {q, v};
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> project_initial_data(
    InitialPreset preset, const SemiDiscreteSystem& system) {
  const int n = system.n();
  const Eigen::VectorXd& x = system.mesh.nodes;
  Eigen::VectorXd q = Eigen::VectorXd::Zero(2 * n);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * n);
  switch (preset) {
    case InitialPreset::static_displacement:
      q.head(n) = x.tail(n) / system.mesh.length;
      return {q, v};
    case InitialPreset::gaussian_velocity: {
      const double c = system.mesh.length / 2.0;
      v.head(n) = (-50.0 * (x.tail(n).array() - c).square()).exp();
      return {q, v};
    }
    case InitialPreset::mode_mix:
      return mode_mix_data(system);
  }
  throw std::invalid_argument("unknown preset");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> project_initial_data(
    const SampledState& data, const SemiDiscreteSystem& system) {
  const int n = system.n();
  if (data.v.size() != n + 1 || data.p.size() != n + 1 ||
      data.v_t.size() != n + 1 || data.p_t.size() != n + 1)
    throw std::invalid_argument("project_initial_data: sample size mismatch");
  if (data.v(0) != 0.0 || data.p(0) != 0.0)
    throw std::invalid_argument(
        "project_initial_data: clamped end requires V(0) = P(0) = 0");
  Eigen::VectorXd q(2 * n), v(2 * n);
  q.head(n) = data.v.tail(n);
  q.tail(n) = data.p.tail(n);
  v.head(n) = data.v_t.tail(n);
  v.tail(n) = data.p_t.tail(n);
  return {q, v};
}

}  // namespace piezolab
