#pragma once

#include <complex>

#include <Eigen/Dense>

#include "piezolab/system.hpp"

namespace piezolab {

/// First-order generator acting on the stacked state x = (q, v),
///   a = [[0, I], [-M^{-1}K, -M^{-1}D]],
/// together with the factored energy weight W = blockdiag(K, M). The
/// energy inner product is <x, y>_W = y^* W x and satisfies the discrete
/// dissipation identity Re<a x, x>_W = -xi1|u|^2 - xi2|eta|^2 with u, eta
/// the tip velocity entries of x.
struct GeneratorMatrix {
  SemiDiscreteSystem system;
  Eigen::MatrixXd a;         ///< (4n)x(4n)
  Eigen::MatrixXd w_factor;  ///< upper-triangular F with F^T F = W

  int dim() const { return a.rows(); }
  int u_index() const { return system.dim() + system.v_tip_index(); }
  int eta_index() const { return system.dim() + system.p_tip_index(); }
};

GeneratorMatrix generator(const SemiDiscreteSystem& system);

/// W x for the energy weight W = blockdiag(K, M).
Eigen::VectorXd apply_energy_weight(const SemiDiscreteSystem& system,
                                    const Eigen::VectorXd& x);
Eigen::VectorXcd apply_energy_weight(const SemiDiscreteSystem& system,
                                     const Eigen::VectorXcd& x);

/// sqrt(x^* W x).
double energy_norm(const SemiDiscreteSystem& system, const Eigen::VectorXcd& x);
double energy_norm(const SemiDiscreteSystem& system, const Eigen::VectorXd& x);

/// Re<a x, x>_W, evaluated directly from the stored matrices.
double dissipativity_form(const GeneratorMatrix& gen, const Eigen::VectorXcd& x);

/// Similarity transform F a F^{-1} of the generator into the coordinates
/// where the energy norm is Euclidean; spectra and resolvent norms of the
/// generator in the energy geometry are the plain matrix quantities of
/// this transform.
Eigen::MatrixXd energy_similarity(const GeneratorMatrix& gen);

}  // namespace piezolab
