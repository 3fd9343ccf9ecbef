#pragma once

#include <Eigen/Dense>

namespace piezolab {

/// Uniform mesh on [0, L]. Node 0 is the clamped end, node n the tip.
struct Mesh {
  int n_elements = 0;
  double length = 0.0;
  double h = 0.0;                // length / n_elements
  Eigen::VectorXd nodes;         // n_elements + 1 uniformly spaced points

  int n_nodes() const { return n_elements + 1; }
};

/// Builds a uniform mesh. Requires n_elements >= 2 and length > 0.
Mesh build_mesh(int n_elements, double length);

/// Full (n+1)x(n+1) piecewise-linear element matrices on all nodes,
/// element mass (h/6)[[2,1],[1,2]], element stiffness (1/h)[[1,-1],[-1,1]].
Eigen::MatrixXd p1_mass_full(const Mesh& mesh);
Eigen::MatrixXd p1_stiffness_full(const Mesh& mesh);

}  // namespace piezolab
