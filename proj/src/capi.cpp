#include "piezolab.h"

#include <algorithm>
#include <cstring>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "piezolab/linalg.hpp"
#include "piezolab/spectral.hpp"
#include "piezolab/timestepper.hpp"
#include "piezolab/verification.hpp"

namespace {

thread_local std::string g_last_error;

template <typename F>
plab_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return PLAB_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return PLAB_ERR_INVALID_ARGUMENT;
  } catch (const piezolab::NumericalError& e) {
    g_last_error = e.what();
    return PLAB_ERR_NUMERICAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PLAB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PLAB_ERR_INTERNAL;
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

piezolab::BeamParameters to_cpp(const plab_beam_params& p) {
  piezolab::BeamParameters out;
  out.rho = p.rho;
  out.mu = p.mu;
  out.alpha1 = p.alpha1;
  out.beta = p.beta;
  out.gamma = p.gamma;
  out.xi1 = p.xi1;
  out.xi2 = p.xi2;
  out.m1 = p.m1;
  out.m2 = p.m2;
  out.length = p.length;
  return out;
}

}  // namespace

struct plab_system {
  piezolab::SemiDiscreteSystem system;
  std::optional<piezolab::GeneratorMatrix> gen;

  const piezolab::GeneratorMatrix& generator() {
    if (!gen) gen = piezolab::generator(system);
    return *gen;
  }
};

struct plab_trajectory {
  piezolab::Trajectory trajectory;
  piezolab::BeamParameters params;
};

struct plab_spectrum {
  piezolab::SpectrumReport report;
};

struct plab_sweep {
  piezolab::ResolventSweep sweep;
};

namespace {

void simulate_common(plab_system* system,
                     std::pair<Eigen::VectorXd, Eigen::VectorXd> init,
                     double dt, double t_end, int record_every,
                     int conservative, plab_trajectory** out) {
  if (dt <= 0.0) dt = piezolab::default_time_step(system->system);
  piezolab::Trajectory traj =
      conservative
          ? piezolab::run_conservative(system->system, std::move(init.first),
                                       std::move(init.second), dt, t_end,
                                       record_every)
          : piezolab::run(system->system, std::move(init.first),
                          std::move(init.second), dt, t_end, record_every);
  *out = new plab_trajectory{std::move(traj), system->system.params};
}

plab_fit to_c(const piezolab::Fit& fit) {
  return plab_fit{fit.slope,   fit.intercept, fit.band_lo,
                  fit.band_hi, fit.residual,  fit.n_points};
}

}  // namespace

extern "C" {

const char* plab_version(void) { return "0.1.0"; }

const char* plab_last_error(void) { return g_last_error.c_str(); }

void plab_default_params(plab_beam_params* params) {
  if (!params) return;
  *params = plab_beam_params{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
}

double plab_effective_stiffness(const plab_beam_params* params) {
  return params ? to_cpp(*params).effective_stiffness() : 0.0;
}

double plab_dissipation_rate(const plab_beam_params* params, double u,
                             double eta) {
  return params ? piezolab::dissipation_rate(u, eta, to_cpp(*params)) : 0.0;
}

plab_status plab_validate_params(const plab_beam_params* params, char* buf,
                                 size_t buflen) {
  if (buf && buflen > 0) buf[0] = '\0';
  return guarded([&] {
    require(params != nullptr, "params must not be null");
    const piezolab::ValidationReport report =
        piezolab::validate(to_cpp(*params));
    if (report.ok()) return;
    std::string joined;
    for (const auto& e : report.errors) {
      if (!joined.empty()) joined += "; ";
      joined += e;
    }
    if (buf && buflen > 0) {
      std::strncpy(buf, joined.c_str(), buflen - 1);
      buf[buflen - 1] = '\0';
    }
    throw std::invalid_argument(joined);
  });
}

plab_status plab_system_create(const plab_beam_params* params, int n_elements,
                               plab_system** out) {
  return guarded([&] {
    require(params && out, "null argument");
    const piezolab::BeamParameters p = to_cpp(*params);
    *out = new plab_system{
        piezolab::assemble(piezolab::build_mesh(n_elements, p.length), p), {}};
  });
}

void plab_system_destroy(plab_system* system) { delete system; }

int plab_system_state_dim(const plab_system* system) {
  return system ? system->system.state_dim() : 0;
}

double plab_default_dt(const plab_system* system) {
  return system ? piezolab::default_time_step(system->system) : 0.0;
}

double plab_frequency_cutoff(const plab_system* system) {
  return system ? piezolab::frequency_cutoff(system->system) : 0.0;
}

plab_status plab_dissipativity_residual(plab_system* system, int n_vectors,
                                        unsigned seed, double* out) {
  return guarded([&] {
    require(system && out, "null argument");
    require(n_vectors >= 1, "n_vectors must be >= 1");
    const piezolab::GeneratorMatrix& gen = system->generator();
    const piezolab::BeamParameters& p = gen.system.params;
    const int dim = gen.dim();
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < n_vectors; ++k) {
      Eigen::VectorXcd x(dim);
      for (int i = 0; i < dim; ++i) x(i) = {normal(rng), normal(rng)};
      x /= piezolab::energy_norm(gen.system, x);
      const double lhs = piezolab::dissipativity_form(gen, x);
      const double rhs = -p.xi1 * std::norm(x(gen.u_index())) -
                         p.xi2 * std::norm(x(gen.eta_index()));
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    *out = worst;
  });
}

plab_status plab_simulate(plab_system* system, const char* preset, double dt,
                          double t_end, int record_every, int conservative,
                          plab_trajectory** out) {
  return guarded([&] {
    require(system && preset && out, "null argument");
    auto init = piezolab::project_initial_data(
        piezolab::preset_from_name(preset), system->system);
    simulate_common(system, std::move(init), dt, t_end, record_every,
                    conservative, out);
  });
}

plab_status plab_simulate_nodal(plab_system* system, const double* v_disp,
                                const double* v_vel, const double* p_disp,
                                const double* p_vel, double dt, double t_end,
                                int record_every, int conservative,
                                plab_trajectory** out) {
  return guarded([&] {
    require(system && v_disp && v_vel && p_disp && p_vel && out,
            "null argument");
    const int n_nodes = system->system.n() + 1;
    piezolab::SampledState data;
    data.v = Eigen::Map<const Eigen::VectorXd>(v_disp, n_nodes);
    data.v_t = Eigen::Map<const Eigen::VectorXd>(v_vel, n_nodes);
    data.p = Eigen::Map<const Eigen::VectorXd>(p_disp, n_nodes);
    data.p_t = Eigen::Map<const Eigen::VectorXd>(p_vel, n_nodes);
    data.tip_u = data.v_t(n_nodes - 1);
    data.tip_eta = data.p_t(n_nodes - 1);
    auto init = piezolab::project_initial_data(data, system->system);
    simulate_common(system, std::move(init), dt, t_end, record_every,
                    conservative, out);
  });
}

void plab_trajectory_destroy(plab_trajectory* trajectory) { delete trajectory; }

long plab_trajectory_size(const plab_trajectory* trajectory) {
  return trajectory ? static_cast<long>(trajectory->trajectory.size()) : 0;
}

plab_status plab_trajectory_sample(const plab_trajectory* trajectory,
                                   long index, plab_sample* out) {
  return guarded([&] {
    require(trajectory && out, "null argument");
    const piezolab::Trajectory& t = trajectory->trajectory;
    require(index >= 0 && index < static_cast<long>(t.size()),
            "sample index out of range");
    const std::size_t k = static_cast<std::size_t>(index);
    const piezolab::EnergyBreakdown& e = t.energies[k];
    const piezolab::BoundaryTraces& tr = t.traces[k];
    *out = plab_sample{t.steps[k],        t.times[k], e.total,
                       e.kinetic_v,       e.kinetic_p, e.elastic,
                       e.magnetic_coupling, e.tip_v,   e.tip_p,
                       tr.u,              tr.eta,      tr.vx_tip,
                       tr.px_tip,         t.cumulative_dissipation[k]};
  });
}

double plab_trajectory_balance_residual(const plab_trajectory* trajectory) {
  return trajectory ? trajectory->trajectory.max_energy_balance_residual : 0.0;
}

plab_status plab_compute_spectrum(plab_system* system, plab_spectrum** out) {
  return guarded([&] {
    require(system && out, "null argument");
    *out = new plab_spectrum{piezolab::spectrum(system->generator())};
  });
}

void plab_spectrum_destroy(plab_spectrum* spectrum) { delete spectrum; }

long plab_spectrum_size(const plab_spectrum* spectrum) {
  return spectrum ? static_cast<long>(spectrum->report.eigenvalues.size()) : 0;
}

plab_status plab_spectrum_eigenvalue(const plab_spectrum* spectrum, long index,
                                     double* re, double* im) {
  return guarded([&] {
    require(spectrum && re && im, "null argument");
    require(index >= 0 && index < spectrum->report.eigenvalues.size(),
            "eigenvalue index out of range");
    *re = spectrum->report.eigenvalues(index).real();
    *im = spectrum->report.eigenvalues(index).imag();
  });
}

double plab_spectrum_abscissa(const plab_spectrum* spectrum) {
  return spectrum ? spectrum->report.spectral_abscissa : 0.0;
}

double plab_spectrum_cutoff(const plab_spectrum* spectrum) {
  return spectrum ? spectrum->report.frequency_cutoff : 0.0;
}

plab_status plab_branch_fit(const plab_spectrum* spectrum, double w_lo,
                            double w_hi, plab_fit* out) {
  return guarded([&] {
    require(spectrum && out, "null argument");
    *out = to_c(piezolab::branch_asymptote(spectrum->report, w_lo, w_hi));
  });
}

plab_status plab_resolvent_sweep(plab_system* system, double lambda_min,
                                 double lambda_max, int points,
                                 plab_sweep** out) {
  return guarded([&] {
    require(system && out, "null argument");
    *out = new plab_sweep{piezolab::resolvent_sweep(
        system->generator(),
        piezolab::uniform_grid(lambda_min, lambda_max, points))};
  });
}

void plab_sweep_destroy(plab_sweep* sweep) { delete sweep; }

long plab_sweep_size(const plab_sweep* sweep) {
  return sweep ? static_cast<long>(sweep->sweep.lambdas.size()) : 0;
}

plab_status plab_sweep_point(const plab_sweep* sweep, long index,
                             double* lambda, double* norm, int* is_peak) {
  return guarded([&] {
    require(sweep && lambda && norm && is_peak, "null argument");
    const piezolab::ResolventSweep& s = sweep->sweep;
    require(index >= 0 && index < static_cast<long>(s.lambdas.size()),
            "sweep index out of range");
    *lambda = s.lambdas[index];
    *norm = s.norms[index];
    *is_peak = std::find(s.peak_indices.begin(), s.peak_indices.end(),
                         static_cast<int>(index)) != s.peak_indices.end();
  });
}

plab_status plab_sweep_growth_fit(const plab_sweep* sweep, plab_fit* out) {
  return guarded([&] {
    require(sweep && out, "null argument");
    *out = to_c(sweep->sweep.growth_fit);
  });
}

plab_status plab_abscissa_trend(const plab_beam_params* params, const int* ns,
                                int count, double* out_abscissas) {
  return guarded([&] {
    require(params && ns && out_abscissas, "null argument");
    require(count >= 1, "count must be >= 1");
    const auto trend = piezolab::abscissa_trend(
        to_cpp(*params), std::vector<int>(ns, ns + count));
    for (int i = 0; i < count; ++i) out_abscissas[i] = trend[i].second;
  });
}

plab_status plab_decay_fit(const plab_trajectory* trajectory, double t0,
                           double t1, double spectral_abscissa,
                           plab_decay_report* out) {
  return guarded([&] {
    require(trajectory && out, "null argument");
    std::optional<double> guard;
    if (spectral_abscissa != 0.0) guard = spectral_abscissa;
    const piezolab::DecayFit fit =
        piezolab::decay_fit(trajectory->trajectory, t0, t1, guard);
    *out = plab_decay_report{fit.t0,           fit.t1,           fit.exponent,
                          fit.sup_t_energy, fit.min_t_energy, fit.guard_limit};
  });
}

plab_status plab_multiplier_check(const plab_trajectory* trajectory,
                                  double q_slope, double q_intercept,
                                  plab_multiplier_report* out) {
  return guarded([&] {
    require(trajectory && out, "null argument");
    const piezolab::MultiplierReport rep = piezolab::multiplier_check(
        trajectory->trajectory, trajectory->params, q_slope, q_intercept);
    *out = plab_multiplier_report{rep.lhs,     rep.bound,       rep.m_constant,
                                  rep.q_slope, rep.q_intercept, rep.satisfied};
  });
}

plab_status plab_resolvent_identity(plab_system* system, double lambda,
                                    unsigned seed,
                                    plab_resolvent_identity_report* out) {
  return guarded([&] {
    require(system && out, "null argument");
    const piezolab::Forcing forcing =
        piezolab::smooth_forcing(seed, system->system.mesh);
    const piezolab::ResolventIdentityReport rep =
        piezolab::resolvent_identity_check(system->generator(), lambda,
                                           forcing);
    *out = plab_resolvent_identity_report{
        rep.i_v,    rep.i_p,    rep.n2,     rep.r1,     rep.r2, rep.residual,
        rep.u_norm, rep.f_norm, rep.xi_lhs, rep.xi_rhs, rep.lemma_constant};
  });
}

plab_status plab_static_solve(plab_system* system, unsigned seed,
                              plab_static_report* out) {
  return guarded([&] {
    require(system && out, "null argument");
    const piezolab::Forcing forcing =
        piezolab::smooth_forcing(seed, system->system.mesh);
    const piezolab::StaticSolveReport rep =
        piezolab::static_solve(system->system, forcing);
    *out = plab_static_report{rep.residual, rep.bound_ratio};
  });
}

plab_status plab_characteristic_roots(const plab_beam_params* params,
                                      int field, int count, double* out_re,
                                      double* out_im) {
  return guarded([&] {
    require(params && out_re && out_im, "null argument");
    const auto roots =
        piezolab::characteristic_roots(to_cpp(*params), field, count);
    for (int i = 0; i < count; ++i) {
      out_re[i] = roots[i].real();
      out_im[i] = roots[i].imag();
    }
  });
}

}  // extern "C"
