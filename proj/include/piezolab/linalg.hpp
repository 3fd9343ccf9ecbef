#pragma once

#include <complex>

#include <Eigen/Dense>

namespace piezolab::linalg {

using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// Dense solve with partial pivoting. Throws NumericalError carrying the
/// pivot magnitude when the matrix is singular to working precision.
Vector solve(const Matrix& a, const Vector& b);
ComplexVector solve(const ComplexMatrix& a, const ComplexVector& b);

/// solve() followed by one step of iterative refinement.
Vector solve_refined(const Matrix& a, const Vector& b);
ComplexVector solve_refined(const ComplexMatrix& a, const ComplexVector& b);

/// All eigenvalues, unordered. Throws NumericalError on QR non-convergence.
ComplexVector eig(const Matrix& a);
ComplexVector eig(const ComplexMatrix& a);

/// Smallest singular value (0 for an exactly singular matrix).
double smallest_singular_value(const Matrix& a);
double smallest_singular_value(const ComplexMatrix& a);

/// ||factor * x||_2 = sqrt(x^* W x) for W = factor^* factor.
double weighted_norm(const ComplexVector& x, const Matrix& factor);
double weighted_norm(const Vector& x, const Matrix& factor);

/// Upper-Hessenberg form of a (orthogonally similar; the orthogonal factor
/// is discarded since singular values and eigenvalues are not affected).
Matrix hessenberg(const Matrix& a);

/// sigma_min(i*lambda*I - hess) for an upper-Hessenberg matrix, via a
/// Givens QR factorization (O(m^2) per shift) and a Lanczos iteration on
/// the inverse Gram matrix of the triangular factor. Exact singularity
/// returns 0.
double shifted_hessenberg_sigma_min(const Matrix& hess, double lambda);

}  // namespace piezolab::linalg
