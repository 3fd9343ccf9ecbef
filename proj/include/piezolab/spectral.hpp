#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "piezolab/generator.hpp"

namespace piezolab {

/// Least-squares power-law fit in log-log coordinates.
struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  double residual = 0.0;  // RMS of log-space fit residuals
  int n_points = 0;
};

/// Frequencies above 0.5 * (pi/h) * c_min are dominated by grid dispersion
/// and the discrete spectrum no longer tracks the continuous one; every
/// fit and trend in this module is restricted to this band.
double frequency_cutoff(const SemiDiscreteSystem& system);

struct SpectrumReport {
  Eigen::VectorXcd eigenvalues;   ///< sorted by |Im|, conjugation-closed
  double spectral_abscissa = 0.0; ///< max real part over all eigenvalues
  double frequency_cutoff = 0.0;
  std::optional<Fit> branch_fit;  ///< filled by branch_asymptote
};

/// Eigenvalues of the generator in the energy geometry.
SpectrumReport spectrum(const GeneratorMatrix& gen);

/// Fits log(-Re lambda) against log(Im lambda) over the eigenvalues with
/// Im in [w_lo, w_hi]. Requires at least 5 eigenvalues with Re < 0 in the
/// band. With tip masses the expected slope is -2.
Fit branch_asymptote(const SpectrumReport& report, double w_lo, double w_hi);

struct ResolventSweep {
  /// Points where the norm was evaluated: the requested grid plus one
  /// point per resolved branch eigenfrequency in range, so the envelope
  /// samples the actual resolvent peaks instead of grid-quantized values.
  std::vector<double> lambdas;
  std::vector<double> norms;     ///< ||(i lambda - A)^{-1}|| in the energy norm
  std::vector<int> peak_indices; ///< interior local maxima of `norms`
  Fit growth_fit;                ///< log-norm vs log-lambda over the peaks
  double frequency_cutoff = 0.0;
};

std::vector<double> uniform_grid(double lo, double hi, int points);

/// Resolvent norms 1/sigma_min(i lambda - A) along the imaginary axis,
/// computed in the energy geometry. Grid points are evaluated
/// independently (PIEZO_LAB_THREADS caps the parallelism) and assembled in
/// grid order. An exactly singular shift raises NumericalError naming the
/// offending lambda.
ResolventSweep resolvent_sweep(const GeneratorMatrix& gen,
                               const std::vector<double>& grid);

/// Spectral abscissa over the dispersion-resolved band, for each element
/// count in `ns`. With tip masses present the sequence climbs toward 0
/// (no uniform decay rate); without them it settles at a negative constant.
std::vector<std::pair<int, double>> abscissa_trend(const BeamParameters& params,
                                                   const std::vector<int>& ns);

}  // namespace piezolab
