#include "piezolab/mesh.hpp"

#include <stdexcept>

namespace piezolab {

Mesh build_mesh(int n_elements, double length) {
  if (n_elements < 2)
    throw std::invalid_argument("build_mesh: n_elements must be >= 2");
  if (!(length > 0.0))
    throw std::invalid_argument("build_mesh: length must be > 0");
  Mesh mesh;
  mesh.n_elements = n_elements;
  mesh.length = length;
  mesh.h = length / n_elements;
  mesh.nodes = Eigen::VectorXd::LinSpaced(n_elements + 1, 0.0, length);
  return mesh;
}

Eigen::MatrixXd p1_mass_full(const Mesh& mesh) {
  const int n = mesh.n_elements;
  const double h = mesh.h;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int e = 0; e < n; ++e) {
    m(e, e) += h / 3.0;
    m(e, e + 1) += h / 6.0;
    m(e + 1, e) += h / 6.0;
    m(e + 1, e + 1) += h / 3.0;
  }
  return m;
}

Eigen::MatrixXd p1_stiffness_full(const Mesh& mesh) {
  const int n = mesh.n_elements;
  const double h = mesh.h;
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int e = 0; e < n; ++e) {
    k(e, e) += 1.0 / h;
    k(e, e + 1) -= 1.0 / h;
    k(e + 1, e) -= 1.0 / h;
    k(e + 1, e + 1) += 1.0 / h;
  }
  return k;
}

}  // namespace piezolab
