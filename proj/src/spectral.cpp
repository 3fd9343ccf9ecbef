#include "piezolab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "piezolab/linalg.hpp"

namespace piezolab {

double frequency_cutoff(const SemiDiscreteSystem& system) {
  return 0.5 * (M_PI / system.mesh.h) * system.params.min_wave_speed();
}

SpectrumReport spectrum(const GeneratorMatrix& gen) {
  SpectrumReport report;
  Eigen::VectorXcd ev = linalg::eig(energy_similarity(gen));
  std::sort(ev.begin(), ev.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              const double ia = std::abs(a.imag()), ib = std::abs(b.imag());
              if (ia != ib) return ia < ib;
              if (a.imag() != b.imag()) return a.imag() > b.imag();
              return a.real() < b.real();
            });
  report.eigenvalues = std::move(ev);
  report.spectral_abscissa = report.eigenvalues.real().maxCoeff();
  report.frequency_cutoff = frequency_cutoff(gen.system);
  return report;
}

namespace {

Fit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys,
               double band_lo, double band_hi) {
  const int n = static_cast<int>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  Fit fit;
  fit.n_points = n;
  fit.band_lo = band_lo;
  fit.band_hi = band_hi;
  const double det = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy * sxx - sx * sxy) / det;
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    const double r = std::log(ys[i]) - fit.slope * std::log(xs[i]) - fit.intercept;
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

int sweep_thread_count(std::size_t points) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* env = std::getenv("PIEZO_LAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) threads = std::min(threads, cap);
  }
  return std::min<std::size_t>(threads, points) > 0
             ? static_cast<int>(std::min<std::size_t>(threads, points))
             : 1;
}

}  // namespace

Fit branch_asymptote(const SpectrumReport& report, double w_lo, double w_hi) {
  if (!(0 < w_lo && w_lo < w_hi))
    throw std::invalid_argument("branch_asymptote: invalid band");
  std::vector<double> freqs, decays;
  for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
    const std::complex<double> z = report.eigenvalues(i);
    if (z.imag() < w_lo || z.imag() > w_hi) continue;
    if (!(z.real() < 0.0)) continue;
    freqs.push_back(z.imag());
    decays.push_back(-z.real());
  }
  if (freqs.size() < 5) {
    std::ostringstream msg;
    msg << "branch_asymptote: only " << freqs.size()
        << " eigenvalues in band [" << w_lo << ", " << w_hi
        << "], need at least 5";
    throw std::invalid_argument(msg.str());
  }
  return loglog_fit(freqs, decays, w_lo, w_hi);
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (!(0 < lo && lo < hi) || points < 2)
    throw std::invalid_argument("uniform_grid: need 0 < lo < hi, points >= 2");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  return grid;
}

ResolventSweep resolvent_sweep(const GeneratorMatrix& gen,
                               const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("resolvent_sweep: empty grid");
  for (double g : grid)
    if (!(g >= 0.0))
      throw std::invalid_argument("resolvent_sweep: grid must be non-negative");

  const Eigen::MatrixXd a_w = energy_similarity(gen);
  const Eigen::MatrixXd hess = linalg::hessenberg(a_w);
  const Eigen::VectorXcd ev = linalg::eig(a_w);

  ResolventSweep sweep;
  sweep.frequency_cutoff = frequency_cutoff(gen.system);
  const double lo = *std::min_element(grid.begin(), grid.end());
  const double hi = *std::max_element(grid.begin(), grid.end());

  // Evaluation points: requested grid plus the branch eigenfrequencies in
  // range. The resolvent peaks are far narrower than any reasonable grid
  // spacing; sampling at the eigenfrequencies resolves their height.
  std::vector<double> points(grid);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double freq = ev(i).imag();
    if (ev(i).real() < 0.0 && freq >= lo && freq <= hi) points.push_back(freq);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end(),
                           [](double a, double b) {
                             return std::abs(a - b) <=
                                    1e-12 * std::max(std::abs(a), std::abs(b));
                           }),
               points.end());

  sweep.lambdas = points;
  sweep.norms.assign(points.size(), 0.0);
  std::vector<double> sigma(points.size(), 0.0);

  const int n_threads = sweep_thread_count(points.size());
  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      sigma[i] = linalg::shifted_hessenberg_sigma_min(hess, points[i]);
  };
  if (n_threads == 1) {
    worker(0, points.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (points.size() + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(points.size(), begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < points.size(); ++i) {
    if (sigma[i] == 0.0) {
      std::ostringstream msg;
      msg << "resolvent_sweep: shift i*" << points[i]
          << " is singular (eigenvalue on the imaginary axis)";
      throw NumericalError(msg.str());
    }
    sweep.norms[i] = 1.0 / sigma[i];
  }

  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    if (sweep.norms[i] >= sweep.norms[i - 1] &&
        sweep.norms[i] >= sweep.norms[i + 1])
      sweep.peak_indices.push_back(static_cast<int>(i));
  }

  std::vector<double> px, py;
  const double band_hi = std::min(hi, sweep.frequency_cutoff);
  for (int idx : sweep.peak_indices) {
    if (points[idx] > band_hi || points[idx] <= 0.0) continue;
    px.push_back(points[idx]);
    py.push_back(sweep.norms[idx]);
  }
  if (px.size() < 3)
    throw NumericalError(
        "resolvent_sweep: fewer than 3 envelope peaks in band; widen the grid");
  sweep.growth_fit = loglog_fit(px, py, lo, band_hi);
  return sweep;
}

std::vector<std::pair<int, double>> abscissa_trend(const BeamParameters& params,
                                                   const std::vector<int>& ns) {
  if (ns.empty()) throw std::invalid_argument("abscissa_trend: empty n list");
  std::vector<std::pair<int, double>> trend;
  trend.reserve(ns.size());
  for (int n : ns) {
    const SemiDiscreteSystem sys = assemble(build_mesh(n, params.length), params);
    const GeneratorMatrix gen = generator(sys);
    const Eigen::VectorXcd ev = linalg::eig(energy_similarity(gen));
    const double cutoff = frequency_cutoff(sys);
    double abscissa = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::abs(ev(i).imag()) <= cutoff)
        abscissa = std::max(abscissa, ev(i).real());
    }
    trend.emplace_back(n, abscissa);
  }
  return trend;
}

}  // namespace piezolab
