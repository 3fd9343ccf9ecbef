#include "piezolab/linalg.hpp"

#include <complex>
#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "piezolab/params.hpp"

namespace piezolab::linalg {

namespace {

template <typename MatrixT, typename VectorT>
VectorT lu_solve(const MatrixT& a, const VectorT& b, bool refine) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("solve: matrix must be square");
  if (a.rows() != b.size())
    throw std::invalid_argument("solve: dimension mismatch");
  Eigen::PartialPivLU<MatrixT> lu(a);
  const auto diag = lu.matrixLU().diagonal();
  double min_pivot = std::numeric_limits<double>::infinity();
  double max_pivot = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double mag = std::abs(diag(i));
    min_pivot = std::min(min_pivot, mag);
    max_pivot = std::max(max_pivot, mag);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  if (min_pivot <= eps * static_cast<double>(a.rows()) * max_pivot) {
    std::ostringstream msg;
    msg << "solve: matrix singular to working precision (pivot magnitude "
        << min_pivot << ")";
    throw NumericalError(msg.str());
  }
  VectorT x = lu.solve(b);
  if (refine) x += lu.solve(VectorT(b - a * x));
  return x;
}

}  // namespace

Vector solve(const Matrix& a, const Vector& b) { return lu_solve(a, b, false); }

ComplexVector solve(const ComplexMatrix& a, const ComplexVector& b) {
  return lu_solve(a, b, false);
}

Vector solve_refined(const Matrix& a, const Vector& b) {
  return lu_solve(a, b, true);
}

ComplexVector solve_refined(const ComplexMatrix& a, const ComplexVector& b) {
  return lu_solve(a, b, true);
}

ComplexVector eig(const Matrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("eig: matrix must be square");
  const lapack_int m = static_cast<lapack_int>(a.rows());
  Matrix work = a;
  std::vector<double> wr(m), wi(m);
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', m, work.data(), m, wr.data(),
                    wi.data(), nullptr, m, nullptr, m);
  if (info < 0) throw std::invalid_argument("eig: bad argument to dgeev");
  if (info > 0) {
    std::ostringstream msg;
    msg << "eig: QR iteration failed to converge; " << (m - info)
        << " of " << m << " eigenvalues converged";
    throw NumericalError(msg.str());
  }
  ComplexVector ev(m);
  for (lapack_int i = 0; i < m; ++i) ev(i) = {wr[i], wi[i]};
  return ev;
}

ComplexVector eig(const ComplexMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("eig: matrix must be square");
  const lapack_int m = static_cast<lapack_int>(a.rows());
  ComplexMatrix work = a;
  ComplexVector ev(m);
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', m,
      reinterpret_cast<lapack_complex_double*>(work.data()), m,
      reinterpret_cast<lapack_complex_double*>(ev.data()), nullptr, m, nullptr,
      m);
  if (info < 0) throw std::invalid_argument("eig: bad argument to zgeev");
  if (info > 0) {
    std::ostringstream msg;
    msg << "eig: QR iteration failed to converge; " << (m - info)
        << " of " << m << " eigenvalues converged";
    throw NumericalError(msg.str());
  }
  return ev;
}

double smallest_singular_value(const Matrix& a) {
  Eigen::BDCSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1);
}

double smallest_singular_value(const ComplexMatrix& a) {
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1);
}

double weighted_norm(const ComplexVector& x, const Matrix& factor) {
  if (factor.cols() != x.size())
    throw std::invalid_argument("weighted_norm: dimension mismatch");
  const ComplexVector fx = (factor * x.real()).cast<std::complex<double>>() +
                           std::complex<double>(0, 1) *
                               (factor * x.imag()).cast<std::complex<double>>();
  return fx.norm();
}

double weighted_norm(const Vector& x, const Matrix& factor) {
  if (factor.cols() != x.size())
    throw std::invalid_argument("weighted_norm: dimension mismatch");
  return (factor * x).norm();
}

Matrix hessenberg(const Matrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("hessenberg: matrix must be square");
  const lapack_int m = static_cast<lapack_int>(a.rows());
  Matrix h = a;
  if (m < 3) return h;
  std::vector<double> tau(m - 1);
  const lapack_int info =
      LAPACKE_dgehrd(LAPACK_COL_MAJOR, m, 1, m, h.data(), m, tau.data());
  if (info != 0) throw NumericalError("hessenberg: dgehrd failed");
  // reflectors are stored below the subdiagonal; drop them
  for (lapack_int j = 0; j + 2 < m; ++j)
    h.col(j).tail(m - j - 2).setZero();
  return h;
}

namespace {

// Largest eigenvalue of (R^* R)^{-1} by Lanczos with full
// reorthogonalization; 1/sqrt of it is sigma_min(R).
double lanczos_inverse_gram_top(const ComplexMatrix& r) {
  const Eigen::Index m = r.rows();
  const int max_iterations = 250;
  const double tol = 1e-12;
  std::mt19937 rng(42);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(m);
  for (Eigen::Index i = 0; i < m; ++i) v(i) = {normal(rng), normal(rng)};
  v /= v.norm();

  std::vector<ComplexVector> basis{v};
  std::vector<double> alphas, betas;
  double theta_old = -1.0;
  double theta = 0.0;
  const auto rt = r.triangularView<Eigen::Upper>();
  for (int k = 0; k < max_iterations; ++k) {
    ComplexVector w = rt.solve(rt.adjoint().solve(basis.back()));
    const double alpha = std::real(basis.back().dot(w));
    alphas.push_back(alpha);
    w -= alpha * basis.back();
    if (k > 0) w -= std::complex<double>(betas.back()) * basis[k - 1];
    for (const auto& u : basis) w -= u.dot(w) * u;

    Eigen::VectorXd diag =
        Eigen::Map<const Eigen::VectorXd>(alphas.data(), alphas.size());
    Eigen::VectorXd sub = betas.empty()
                              ? Eigen::VectorXd()
                              : Eigen::Map<const Eigen::VectorXd>(
                                    betas.data(), betas.size());
    Eigen::SelfAdjointEigenSolver<Matrix> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    theta = es.eigenvalues().maxCoeff();
    if (theta_old > 0.0 && std::abs(theta - theta_old) < tol * theta) break;
    theta_old = theta;

    const double beta = w.norm();
    if (beta < 1e-300 || static_cast<Eigen::Index>(basis.size()) >= m) break;
    betas.push_back(beta);
    basis.push_back(w / beta);
  }
  return theta;
}

}  // namespace

double shifted_hessenberg_sigma_min(const Matrix& hess, double lambda) {
  const Eigen::Index m = hess.rows();
  if (m != hess.cols())
    throw std::invalid_argument("shifted_hessenberg_sigma_min: square input required");
  ComplexMatrix s = (-hess).cast<std::complex<double>>();
  s.diagonal().array() += std::complex<double>(0.0, lambda);
  // Givens QR: rotate rows (k, k+1) to eliminate the subdiagonal.
  for (Eigen::Index k = 0; k + 1 < m; ++k) {
    const std::complex<double> a = s(k, k);
    const std::complex<double> b = s(k + 1, k);
    const double norm = std::hypot(std::abs(a), std::abs(b));
    if (norm == 0.0) continue;
    const std::complex<double> c = a / norm;
    const std::complex<double> sn = b / norm;
    const Eigen::Index len = m - k;
    const Eigen::RowVectorXcd row_a = s.row(k).tail(len);
    const Eigen::RowVectorXcd row_b = s.row(k + 1).tail(len);
    s.row(k).tail(len) = std::conj(c) * row_a + std::conj(sn) * row_b;
    s.row(k + 1).tail(len) = -sn * row_a + c * row_b;
    s(k + 1, k) = 0.0;
  }
  double min_diag = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m; ++i)
    min_diag = std::min(min_diag, std::abs(s(i, i)));
  if (min_diag == 0.0) return 0.0;
  const double theta = lanczos_inverse_gram_top(s);
  return 1.0 / std::sqrt(theta);
}

}  // namespace piezolab::linalg
