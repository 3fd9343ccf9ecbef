#include "piezolab/verification.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "piezolab/linalg.hpp"

namespace piezolab {

namespace {

double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
  double acc = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i)
    acc += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
  return acc;
}

}  // namespace

MultiplierReport multiplier_check(const Trajectory& trajectory,
                                  const BeamParameters& params,
                                  double q_slope, double q_intercept) {
  if (trajectory.size() < 2)
    throw std::invalid_argument("multiplier_check: trajectory too short");
  if (trajectory.record_every != 1)
    throw std::invalid_argument(
        "multiplier_check: trajectory too coarse, record_every must be 1");

  const double length = params.length;
  const double q_at_0 = q_intercept;
  const double q_at_l = q_slope * length + q_intercept;
  const double q_inf = std::max(std::abs(q_at_0), std::abs(q_at_l));

  std::vector<double> i_tip, i_clamp, e1;
  i_tip.reserve(trajectory.size());
  i_clamp.reserve(trajectory.size());
  e1.reserve(trajectory.size());
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const BoundaryTraces& tr = trajectory.traces[k];
    const double mix_tip = params.gamma * tr.vx_tip - tr.px_tip;
    const double mix_clamp = params.gamma * tr.vx_clamp - tr.px_clamp;
    i_tip.push_back(params.rho * tr.u * tr.u +
                    params.alpha1 * tr.vx_tip * tr.vx_tip +
                    params.mu * tr.eta * tr.eta +
                    params.beta * mix_tip * mix_tip);
    // clamped end: velocities vanish
    i_clamp.push_back(params.alpha1 * tr.vx_clamp * tr.vx_clamp +
                      params.beta * mix_clamp * mix_clamp);
    const EnergyBreakdown& e = trajectory.energies[k];
    e1.push_back(2.0 * (e.kinetic_v + e.kinetic_p + e.elastic +
                        e.magnetic_coupling));
  }

  std::vector<double> boundary(trajectory.size());
  for (std::size_t k = 0; k < trajectory.size(); ++k)
    boundary[k] = q_at_l * i_tip[k] - q_at_0 * i_clamp[k];

  MultiplierReport report;
  report.q_slope = q_slope;
  report.q_intercept = q_intercept;
  std::vector<double> scaled_e1(e1);
  for (double& x : scaled_e1) x *= q_slope;
  report.lhs = std::abs(trapezoid(trajectory.times, boundary) -
                        trapezoid(trajectory.times, scaled_e1));
  report.m_constant =
      2.0 * q_inf *
      std::max({params.rho, (1.0 + 2.0 * params.gamma * params.gamma) / params.alpha1,
                params.mu, 2.0 / params.beta});
  report.bound = report.m_constant * (e1.back() + e1.front());
  // trapezoid-quadrature slack
  report.satisfied = report.lhs <= report.bound + 1e-9 * (1.0 + report.bound);
  return report;
}

Forcing smooth_forcing(unsigned seed, const Mesh& mesh) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(1.0, 5.0);
  double a[6], w[4];
  for (double& x : a) x = amp(rng);
  for (double& x : w) x = freq(rng);

  const Eigen::VectorXd& x = mesh.nodes;
  Forcing f;
  f.f1 = a[0] * (w[0] * x.array()).sin();
  f.f2 = a[1] * (w[1] * x.array()).cos() + 0.3 * a[2];
  f.f3 = a[2] * (w[2] * x.array()).sin();
  f.f4 = a[3] * (w[3] * x.array()).cos() + 0.2 * a[4];
  f.f5 = a[4];
  f.f6 = a[5];
  return f;
}

namespace {

// load vector b with b_i = int rho F2 phi_i (V block) / int mu F4 phi_i
// (P block) plus the tip point loads m1 F5, m2 F6
Eigen::VectorXd forcing_load(const Forcing& forcing,
                             const SemiDiscreteSystem& system) {
  const int n = system.n();
  const int n_nodes = n + 1;
  if (forcing.f1.size() != n_nodes || forcing.f2.size() != n_nodes ||
      forcing.f3.size() != n_nodes || forcing.f4.size() != n_nodes)
    throw std::invalid_argument("forcing: sample size mismatch");
  if (forcing.f1(0) != 0.0 || forcing.f3(0) != 0.0)
    throw std::invalid_argument(
        "forcing: F1, F3 must vanish at the clamped end");
  const Eigen::MatrixXd mass_full = p1_mass_full(system.mesh);
  Eigen::VectorXd load(2 * n);
  load.head(n) = system.params.rho * (mass_full * forcing.f2).tail(n);
  load.tail(n) = system.params.mu * (mass_full * forcing.f4).tail(n);
  load(n - 1) += system.params.m1 * forcing.f5;
  load(2 * n - 1) += system.params.m2 * forcing.f6;
  return load;
}

}  // namespace

Eigen::VectorXd forcing_to_state(const Forcing& forcing,
                                 const SemiDiscreteSystem& system) {
  const int n = system.n();
  const Eigen::VectorXd load = forcing_load(forcing, system);
  Eigen::VectorXd state(4 * n);
  state.head(n) = forcing.f1.tail(n);
  state.segment(n, n) = forcing.f3.tail(n);
  const Eigen::LLT<Eigen::MatrixXd> mass_llt(system.mass);
  state.tail(2 * n) = mass_llt.solve(load);
  return state;
}

namespace {

// exact integral of x * g(x) over one element for nodal-linear g
double element_moment(double x0, double x1, double g0, double g1) {
  const double h = x1 - x0;
  const double xm = 0.5 * (x0 + x1);
  const double gm = 0.5 * (g0 + g1);
  return h / 6.0 * (x0 * g0 + 4.0 * xm * gm + x1 * g1);
}

std::complex<double> element_moment(double x0, double x1,
                                    std::complex<double> g0,
                                    std::complex<double> g1) {
  return {element_moment(x0, x1, g0.real(), g1.real()),
          element_moment(x0, x1, g0.imag(), g1.imag())};
}

}  // namespace

ResolventIdentityReport resolvent_identity_check(const GeneratorMatrix& gen,
                                                 double lambda,
                                                 const Forcing& forcing) {
  const SemiDiscreteSystem& sys = gen.system;
  const int n = sys.n();
  const Eigen::VectorXd f_state = forcing_to_state(forcing, sys);
  const Eigen::VectorXcd f = f_state.cast<std::complex<double>>();

  Eigen::MatrixXcd shifted = (-gen.a).cast<std::complex<double>>();
  shifted.diagonal().array() += std::complex<double>(0.0, lambda);
  Eigen::VectorXcd u_state;
  try {
    u_state = linalg::solve_refined(shifted, f);
  } catch (const NumericalError&) {
    std::ostringstream msg;
    msg << "resolvent_identity_check: shift i*" << lambda << " is singular";
    throw NumericalError(msg.str());
  }

  const auto v_field = u_state.head(n);
  const auto p_field = u_state.segment(n, n);
  const auto phi = u_state.segment(2 * n, n);
  const auto theta = u_state.tail(n);

  const BeamParameters& prm = sys.params;
  const double h = sys.mesh.h;
  const double length = sys.mesh.length;
  const std::complex<double> u_tip = phi(n - 1);
  const std::complex<double> eta_tip = theta(n - 1);
  const std::complex<double> vx_tip = (v_field(n - 1) - v_field(n - 2)) / h;
  const std::complex<double> px_tip = (p_field(n - 1) - p_field(n - 2)) / h;

  ResolventIdentityReport rep;
  rep.i_v = prm.rho * length * std::norm(u_tip) +
            prm.alpha1 * length * std::norm(vx_tip);
  rep.i_p = prm.mu * length * std::norm(eta_tip) +
            prm.beta * length * std::norm(prm.gamma * vx_tip - px_tip);

  auto real_quad = [](const Eigen::MatrixXd& qmat, const Eigen::VectorXcd& g) {
    const Eigen::VectorXd gr = g.real();
    const Eigen::VectorXd gi = g.imag();
    return gr.dot(qmat * gr) + gi.dot(qmat * gi);
  };
  const Eigen::VectorXcd mix = prm.gamma * v_field - p_field;
  rep.n2 = prm.rho * real_quad(sys.scalar_mass, phi) +
           prm.mu * real_quad(sys.scalar_mass, theta) +
           prm.alpha1 * real_quad(sys.scalar_stiffness, v_field) +
           prm.beta * real_quad(sys.scalar_stiffness, mix);

  // Cross terms with q(x) = x, exact per-element quadrature of products of
  // the piecewise-linear interpolants.
  const Eigen::VectorXd& x = sys.mesh.nodes;
  auto full = [n](const auto& reduced) {
    Eigen::VectorXcd v(n + 1);
    v(0) = 0.0;
    v.tail(n) = reduced;
    return v;
  };
  const Eigen::VectorXcd v_full = full(v_field);
  const Eigen::VectorXcd p_full = full(p_field);
  const Eigen::VectorXcd phi_full = full(phi);
  const Eigen::VectorXcd theta_full = full(theta);

  double r1 = 0.0, r2 = 0.0;
  for (int e = 0; e < n; ++e) {
    const double x0 = x(e), x1 = x(e + 1);
    const std::complex<double> px_e = (p_full(e + 1) - p_full(e)) / h;
    const std::complex<double> vx_e = (v_full(e + 1) - v_full(e)) / h;
    const double f3x = (forcing.f3(e + 1) - forcing.f3(e)) / h;
    const double f1x = (forcing.f1(e + 1) - forcing.f1(e)) / h;
    const double m_f4 = element_moment(x0, x1, forcing.f4(e), forcing.f4(e + 1));
    const double m_f2 = element_moment(x0, x1, forcing.f2(e), forcing.f2(e + 1));
    const std::complex<double> m_theta =
        element_moment(x0, x1, theta_full(e), theta_full(e + 1));
    const std::complex<double> m_phi =
        element_moment(x0, x1, phi_full(e), phi_full(e + 1));
    r1 += 2.0 * prm.mu * std::real(m_f4 * std::conj(px_e) + f3x * m_theta);
    r2 += 2.0 * prm.rho * std::real(m_f2 * std::conj(vx_e) + f1x * m_phi);
  }
  rep.r1 = r1;
  rep.r2 = r2;
  rep.residual = std::abs(rep.i_v + rep.i_p - rep.n2 + rep.r1 + rep.r2);
  rep.u_norm = energy_norm(sys, u_state);
  rep.f_norm = energy_norm(sys, f);
  rep.xi_lhs = prm.xi1 * std::norm(u_tip) + prm.xi2 * std::norm(eta_tip);
  rep.xi_rhs = rep.u_norm * rep.f_norm;
  const double denom = rep.i_v + rep.i_p + rep.f_norm * rep.f_norm;
  rep.lemma_constant = denom > 0.0 ? rep.n2 / denom : 0.0;
  return rep;
}

StaticSolveReport static_solve(const SemiDiscreteSystem& system,
                               const Forcing& forcing) {
  const int n = system.n();
  const Eigen::VectorXd f_state = forcing_to_state(forcing, system);
  const Eigen::VectorXd f_q = f_state.head(2 * n);

  StaticSolveReport rep;
  rep.v = f_q;
  const Eigen::VectorXd damp_v = system.damping_diag.cwiseProduct(rep.v);
  const Eigen::VectorXd load = forcing_load(forcing, system);
  const Eigen::VectorXd rhs = -(load + damp_v);
  Eigen::LLT<Eigen::MatrixXd> stiff_llt(system.stiffness);
  if (stiff_llt.info() != Eigen::Success)
    throw NumericalError("static_solve: stiffness matrix not SPD");
  rep.q = stiff_llt.solve(rhs);
  rep.q += stiff_llt.solve(rhs - system.stiffness * rep.q);

  // residual of A U = F in the energy norm
  const Eigen::VectorXd defect = system.stiffness * rep.q + damp_v + load;
  Eigen::LLT<Eigen::MatrixXd> mass_llt(system.mass);
  Eigen::VectorXd res_state = Eigen::VectorXd::Zero(4 * n);
  res_state.tail(2 * n) = -mass_llt.solve(defect);
  Eigen::VectorXd u_state(4 * n);
  u_state.head(2 * n) = rep.q;
  u_state.tail(2 * n) = rep.v;
  const double f_norm = energy_norm(system, f_state);
  rep.residual = f_norm > 0.0 ? energy_norm(system, res_state) / f_norm : 0.0;
  rep.bound_ratio = f_norm > 0.0 ? energy_norm(system, u_state) / f_norm : 0.0;
  return rep;
}

namespace {

struct FieldConstants {
  double density, stiffness, gain, tip_mass, length;
  double speed() const { return std::sqrt(stiffness / density); }
  double impedance() const { return std::sqrt(density * stiffness); }
};

FieldConstants field_constants(const BeamParameters& p, int field) {
  if (field == 0) return {p.rho, p.alpha1, p.xi1, p.m1, p.length};
  if (field == 1) return {p.mu, p.beta, p.xi2, p.m2, p.length};
  throw std::invalid_argument("characteristic_roots: field must be 0 or 1");
}

}  // namespace

std::vector<std::complex<double>> characteristic_roots(
    const BeamParameters& params, int field, int count) {
  if (count < 1)
    throw std::invalid_argument("characteristic_roots: count must be >= 1");
  require_valid(params);
  const FieldConstants fc = field_constants(params, field);
  const double c_over_l = fc.speed() / fc.length;
  const double imp = fc.impedance();
  using cplx = std::complex<double>;

  std::vector<cplx> roots;
  if (fc.tip_mass == 0.0 && fc.gain == 0.0) {
    for (int k = 1; k <= count; ++k)
      roots.emplace_back(0.0, (k - 0.5) * M_PI * c_over_l);
    return roots;
  }
  if (fc.tip_mass == 0.0) {
    // tanh z = -imp/gain, solvable in closed form
    const double w = -imp / fc.gain;
    if (std::abs(std::abs(w) - 1.0) < 1e-13)
      throw NumericalError(
          "characteristic_roots: matched boundary gain, empty point spectrum");
    const cplx z0 = 0.5 * std::log((1.0 + cplx(w)) / (1.0 - cplx(w)));
    for (int k = 0; static_cast<int>(roots.size()) < count; ++k) {
      const cplx z = z0 + cplx(0.0, k * M_PI);
      if (z.imag() > 1e-12) roots.push_back(c_over_l * z);
    }
    return roots;
  }

  const double mc = fc.tip_mass * c_over_l;
  auto g = [&](cplx z) { return imp * std::cosh(z) + (fc.gain + mc * z) * std::sinh(z); };
  auto gp = [&](cplx z) {
    return (imp + mc) * std::sinh(z) + (fc.gain + mc * z) * std::cosh(z);
  };

  std::vector<cplx> seeds;
  seeds.emplace_back(0.0, 0.6);  // possible low root below pi
  for (int k = 1; k <= count + 3; ++k) {
    const cplx zk(0.0, k * M_PI);
    seeds.push_back(zk - imp / (fc.gain + mc * zk));
    seeds.emplace_back(0.0, (k - 0.5) * M_PI);
  }

  int failures = 0;
  for (cplx z : seeds) {
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const cplx dz = g(z) / gp(z);
      z -= dz;
      if (std::abs(dz) <= 1e-14 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged || !(std::abs(g(z)) < 1e-8 * (1.0 + std::abs(z)))) {
      ++failures;
      continue;
    }
    const cplx lam = c_over_l * z;
    if (lam.imag() <= 1e-9) continue;
    bool duplicate = false;
    for (const cplx& r : roots)
      if (std::abs(lam - r) <= 1e-9 * (1.0 + std::abs(r))) duplicate = true;
    if (!duplicate) roots.push_back(lam);
  }
  std::sort(roots.begin(), roots.end(),
            [](const cplx& a, const cplx& b) { return a.imag() < b.imag(); });
  if (static_cast<int>(roots.size()) < count) {
    std::ostringstream msg;
    msg << "characteristic_roots: Newton converged to only " << roots.size()
        << " distinct roots of " << count << " requested (" << failures
        << " seed failures)";
    throw NumericalError(msg.str());
  }
  roots.resize(count);
  return roots;
}

DecayFit decay_fit(const Trajectory& trajectory, double t0, double t1,
                   std::optional<double> spectral_abscissa) {
  if (!(0.0 < t0 && t0 < t1))
    throw std::invalid_argument("decay_fit: need 0 < t0 < t1");
  DecayFit fit;
  fit.t0 = t0;
  fit.t1 = t1;
  fit.guard_limit = std::numeric_limits<double>::infinity();
  if (spectral_abscissa && std::abs(*spectral_abscissa) > 0.0) {
    fit.guard_limit = 1.0 / (2.0 * std::abs(*spectral_abscissa));
    if (t1 > fit.guard_limit) {
      std::ostringstream msg;
      msg << "decay_fit: window end " << t1
          << " exceeds the exponential-tail guard 1/(2|abscissa|) = "
          << fit.guard_limit;
      throw std::invalid_argument(msg.str());
    }
  }
  if (trajectory.size() < 2 || trajectory.energies.empty())
    throw std::invalid_argument("decay_fit: empty trajectory");
  const double e0 = trajectory.energies.front().total;
  if (!(e0 > 0.0))
    throw std::invalid_argument("decay_fit: zero initial energy");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  fit.sup_t_energy = 0.0;
  fit.min_t_energy = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const double t = trajectory.times[k];
    const double e = trajectory.energies[k].total;
    if (t < t0 || t > t1 || !(e > 0.0)) continue;
    const double lx = std::log(t), ly = std::log(e);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
    const double te = t * e / e0;
    fit.sup_t_energy = std::max(fit.sup_t_energy, te);
    fit.min_t_energy = std::min(fit.min_t_energy, te);
  }
  if (count < 5)
    throw std::invalid_argument("decay_fit: fewer than 5 samples in window");
  fit.exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return fit;
}

}  // namespace piezolab
