#include "piezolab/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace piezolab {

MidpointStepper::MidpointStepper(Eigen::MatrixXd mass,
                                 Eigen::VectorXd damping_diag,
                                 Eigen::MatrixXd stiffness, double dt,
                                 int v_tip, int p_tip)
    : mass_(std::move(mass)),
      damping_diag_(std::move(damping_diag)),
      stiffness_(std::move(stiffness)),
      dt_(dt) {
  if (dt == 0.0 || !std::isfinite(dt))
    throw std::invalid_argument("step: dt must be nonzero");
  const Eigen::Index m = mass_.rows();
  if (stiffness_.rows() != m || damping_diag_.size() != m)
    throw std::invalid_argument("step: inconsistent system dimensions");
  v_tip_ = v_tip >= 0 ? v_tip : std::max<int>(static_cast<int>(m) / 2 - 1, 0);
  p_tip_ = p_tip >= 0 ? p_tip : static_cast<int>(m) - 1;
  if (v_tip_ >= m || p_tip_ >= m)
    throw std::invalid_argument("step: tip index out of range");
  Eigen::MatrixXd plus = mass_ + (dt * dt / 4.0) * stiffness_;
  plus.diagonal() += (dt / 2.0) * damping_diag_;
  minus_half_ = mass_ - (dt * dt / 4.0) * stiffness_;
  minus_half_.diagonal() -= (dt / 2.0) * damping_diag_;
  plus_half_llt_.compute(plus);
  if (plus_half_llt_.info() != Eigen::Success)
    throw NumericalError("step: implicit midpoint matrix is not SPD");
}

MidpointStepper::MidpointStepper(const SemiDiscreteSystem& system, double dt,
                                 bool conservative)
    : MidpointStepper(system.mass,
                      conservative
                          ? Eigen::VectorXd::Zero(system.dim()).eval()
                          : system.damping_diag,
                      system.stiffness, dt) {}

MidpointStepper::StepResult MidpointStepper::step(Eigen::VectorXd& q,
                                                  Eigen::VectorXd& v) const {
  const Eigen::Index m = mass_.rows();
  if (q.size() != m || v.size() != m)
    throw std::invalid_argument("step: state dimension mismatch");
  const Eigen::VectorXd rhs = minus_half_ * v - dt_ * (stiffness_ * q);
  const Eigen::VectorXd v_next = plus_half_llt_.solve(rhs);
  StepResult result;
  result.u_mid = 0.5 * (v(v_tip_) + v_next(v_tip_));
  result.eta_mid = 0.5 * (v(p_tip_) + v_next(p_tip_));
  result.dissipated =
      dt_ * damping_diag_(v_tip_) * result.u_mid * result.u_mid;
  if (p_tip_ != v_tip_)
    result.dissipated +=
        dt_ * damping_diag_(p_tip_) * result.eta_mid * result.eta_mid;
  q += (dt_ / 2.0) * (v + v_next);
  v = v_next;
  return result;
}

double MidpointStepper::energy(const Eigen::VectorXd& q,
                               const Eigen::VectorXd& v) const {
  return 0.5 * (q.dot(stiffness_ * q) + v.dot(mass_ * v));
}

double default_time_step(const SemiDiscreteSystem& system) {
  return system.mesh.h / (2.0 * system.params.max_wave_speed());
}

namespace {

Trajectory run_impl(const SemiDiscreteSystem& system, Eigen::VectorXd q,
                    Eigen::VectorXd v, double dt, double t_end,
                    int record_every, bool conservative) {
  if (!(dt > 0.0)) throw std::invalid_argument("run: dt must be > 0");
  if (!(t_end > 0.0)) throw std::invalid_argument("run: t_end must be > 0");
  if (record_every < 1)
    throw std::invalid_argument("run: record_every must be >= 1");

  const MidpointStepper stepper(system, dt, conservative);
  const long n_steps = static_cast<long>(std::ceil(t_end / dt - 1e-12));

  Trajectory traj;
  traj.dt = dt;
  traj.record_every = record_every;
  const auto record = [&](long step, double cumulative) {
    traj.times.push_back(step * dt);
    traj.states_q.push_back(q);
    traj.states_v.push_back(v);
    traj.energies.push_back(state_energy(q, v, system));
    traj.traces.push_back(boundary_traces(q, v, system));
    traj.cumulative_dissipation.push_back(cumulative);
    traj.steps.push_back(step);
  };

  double energy_prev = stepper.energy(q, v);
  const double energy_scale = energy_prev > 0.0 ? energy_prev : 1.0;
  double cumulative = 0.0;
  record(0, cumulative);
  for (long s = 1; s <= n_steps; ++s) {
    const auto result = stepper.step(q, v);
    const double energy_now = stepper.energy(q, v);
    const double residual =
        std::abs(energy_now - energy_prev + result.dissipated) / energy_scale;
    traj.max_energy_balance_residual =
        std::max(traj.max_energy_balance_residual, residual);
    cumulative += result.dissipated;
    energy_prev = energy_now;
    if (s % record_every == 0 || s == n_steps) record(s, cumulative);
  }
  return traj;
}

}  // namespace

Trajectory run(const SemiDiscreteSystem& system, Eigen::VectorXd q0,
               Eigen::VectorXd v0, double dt, double t_end, int record_every) {
  return run_impl(system, std::move(q0), std::move(v0), dt, t_end,
                  record_every, false);
}

Trajectory run_conservative(const SemiDiscreteSystem& system,
                            Eigen::VectorXd q0, Eigen::VectorXd v0, double dt,
                            double t_end, int record_every) {
  return run_impl(system, std::move(q0), std::move(v0), dt, t_end,
                  record_every, true);
}

}  // namespace piezolab
