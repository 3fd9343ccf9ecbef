#include "piezolab/generator.hpp"

namespace piezolab {

GeneratorMatrix generator(const SemiDiscreteSystem& system) {
  const int m = system.dim();
  GeneratorMatrix gen;
  gen.system = system;

  Eigen::LLT<Eigen::MatrixXd> mass_llt(system.mass);
  if (mass_llt.info() != Eigen::Success)
    throw NumericalError("generator: mass matrix is not positive definite");

  gen.a = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  gen.a.topRightCorner(m, m).setIdentity();
  gen.a.bottomLeftCorner(m, m) = -mass_llt.solve(system.stiffness);
  gen.a.bottomRightCorner(m, m) = -mass_llt.solve(system.damping_matrix());

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  w.topLeftCorner(m, m) = system.stiffness;
  w.bottomRightCorner(m, m) = system.mass;
  Eigen::LLT<Eigen::MatrixXd> w_llt(w);
  if (w_llt.info() != Eigen::Success)
    throw NumericalError("generator: energy weight is not positive definite");
  gen.w_factor = Eigen::MatrixXd(w_llt.matrixU());
  return gen;
}

namespace {

template <typename Vector>
Vector apply_weight(const SemiDiscreteSystem& system, const Vector& x) {
  const int m = system.dim();
  if (x.size() != 2 * m)
    throw std::invalid_argument("apply_energy_weight: dimension mismatch");
  Vector y(2 * m);
  y.head(m) = system.stiffness * x.head(m);
  y.tail(m) = system.mass * x.tail(m);
  return y;
}

}  // namespace

Eigen::VectorXd apply_energy_weight(const SemiDiscreteSystem& system,
                                    const Eigen::VectorXd& x) {
  return apply_weight(system, x);
}

Eigen::VectorXcd apply_energy_weight(const SemiDiscreteSystem& system,
                                     const Eigen::VectorXcd& x) {
  const int m = system.dim();
  if (x.size() != 2 * m)
    throw std::invalid_argument("apply_energy_weight: dimension mismatch");
  Eigen::VectorXcd y(2 * m);
  y.real() = apply_weight(system, Eigen::VectorXd(x.real()));
  y.imag() = apply_weight(system, Eigen::VectorXd(x.imag()));
  return y;
}

double energy_norm(const SemiDiscreteSystem& system, const Eigen::VectorXcd& x) {
  return std::sqrt(std::real(x.dot(apply_energy_weight(system, x))));
}

double energy_norm(const SemiDiscreteSystem& system, const Eigen::VectorXd& x) {
  return std::sqrt(x.dot(apply_energy_weight(system, x)));
}

double dissipativity_form(const GeneratorMatrix& gen, const Eigen::VectorXcd& x) {
  if (x.size() != gen.dim())
    throw std::invalid_argument("dissipativity_form: dimension mismatch");
  const Eigen::VectorXcd ax =
      (gen.a * x.real()).cast<std::complex<double>>() +
      std::complex<double>(0, 1) * (gen.a * x.imag()).cast<std::complex<double>>();
  return std::real(x.dot(apply_energy_weight(gen.system, ax)));
}

Eigen::MatrixXd energy_similarity(const GeneratorMatrix& gen) {
  // F a F^{-1} with F = w_factor (upper triangular, F^T F = W).
  // X = a F^{-1} solves X F = a, i.e. F^T X^T = a^T.
  Eigen::MatrixXd xt = gen.w_factor.transpose()
                           .triangularView<Eigen::Lower>()
                           .solve(gen.a.transpose());
  return gen.w_factor * xt.transpose();
}

}  // namespace piezolab
