#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>

#include "splitrange/types.hpp"

namespace splitrange {

// Metric projections as expression-friendly free functions: they accept any
// dense Eigen expression and are templated on the scalar through it.

/// Projection onto the closed ball B(center, radius).
template <typename DerivedX, typename DerivedC>
typename DerivedX::PlainObject project_ball(const Eigen::MatrixBase<DerivedX>& x,
                                            const Eigen::MatrixBase<DerivedC>& center,
                                            typename DerivedX::Scalar radius) {
  using Scalar = typename DerivedX::Scalar;
  typename DerivedX::PlainObject diff = x - center;
  Scalar n = diff.norm();
  if (n <= radius) return x.derived();
  return center + (radius / n) * diff;
}

/// Projection onto span(basis), where basis has orthonormal columns.
/// An empty basis (0 columns) is the trivial subspace {0}.
template <typename DerivedX, typename DerivedB>
typename DerivedX::PlainObject project_span(const Eigen::MatrixBase<DerivedX>& x,
                                            const Eigen::MatrixBase<DerivedB>& basis) {
  if (basis.cols() == 0) return DerivedX::PlainObject::Zero(x.size());
  return basis * (basis.transpose() * x);
}

/// Projection onto the affine subspace base + span(basis).
template <typename DerivedX, typename DerivedP, typename DerivedB>
typename DerivedX::PlainObject project_affine(const Eigen::MatrixBase<DerivedX>& x,
                                              const Eigen::MatrixBase<DerivedP>& base,
                                              const Eigen::MatrixBase<DerivedB>& basis) {
  return base + project_span((x - base).eval(), basis);
}

/// Projection onto {y : dist(y, base + span(basis)) <= radius}, the cylinder
/// around an affine subspace. radius == 0 reduces to project_affine, an empty
/// basis to project_ball.
template <typename DerivedX, typename DerivedP, typename DerivedB>
typename DerivedX::PlainObject project_cylinder(const Eigen::MatrixBase<DerivedX>& x,
                                                const Eigen::MatrixBase<DerivedP>& base,
                                                const Eigen::MatrixBase<DerivedB>& basis,
                                                typename DerivedX::Scalar radius) {
  using Scalar = typename DerivedX::Scalar;
  typename DerivedX::PlainObject along = project_span((x - base).eval(), basis);
  typename DerivedX::PlainObject across = x - base - along;
  Scalar n = across.norm();
  if (n <= radius) return x.derived();
  return base + along + (radius / n) * across;
}

/// Orthonormal basis of the column span of M: columns whose singular value
/// exceeds rel_tol * (largest singular value). Returns a d x rank matrix
/// (possibly 0 columns).
inline Matrix orthonormal_columns(const Matrix& M, double rel_tol = 1e-12) {
  if (M.cols() == 0 || M.norm() == 0.0) return Matrix(M.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU);
  double smax = svd.singularValues()(0);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > rel_tol * smax) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// Orthonormal basis of the orthogonal complement of span(basis), where
/// basis has orthonormal columns.
inline Matrix orthonormal_complement(int dim, const Matrix& basis) {
  if (basis.cols() == 0) return Matrix::Identity(dim, dim);
  if (basis.cols() >= dim) return Matrix(dim, 0);
  // Full QR of the basis; trailing columns of Q span the complement.
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix Q = qr.householderQ();
  return Q.rightCols(dim - basis.cols());
}

/// Orthonormal basis of span(A) ∩ span(B) (both with orthonormal columns):
/// the kernel of the stacked complement projectors, extracted by SVD.
inline Matrix span_intersection(const Matrix& A, const Matrix& B, double tol = 1e-10) {
  const int d = static_cast<int>(A.rows());
  if (A.rows() != B.rows()) throw std::invalid_argument("span_intersection: dimension mismatch");
  Matrix stacked(2 * d, d);
  stacked.topRows(d) = Matrix::Identity(d, d) - A * A.transpose();
  stacked.bottomRows(d) = Matrix::Identity(d, d) - B * B.transpose();
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  int null_dim = 0;
  for (int i = 0; i < d; ++i)
    if (svd.singularValues()(i) <= tol) ++null_dim;
  return svd.matrixV().rightCols(null_dim);
}

/// Projection onto the intersection of two convex sets given their
/// projectors, by Dykstra's alternating scheme. Converges to the exact
/// projection of x whenever the intersection is nonempty.
inline Vector dykstra_project(const std::function<Vector(const Vector&)>& project_first,
                              const std::function<Vector(const Vector&)>& project_second,
                              const Vector& x, int max_iter = 2000, double tol = 1e-12) {
  Vector z = x;
  Vector p = Vector::Zero(x.size());
  Vector q = Vector::Zero(x.size());
  for (int k = 0; k < max_iter; ++k) {
    Vector y = project_first(z + p);
    p = z + p - y;
    Vector z_next = project_second(y + q);
    q = y + q - z_next;
    if ((z_next - z).norm() < tol && (y - z_next).norm() < tol) return z_next;
    z = z_next;
  }
  return z;
}

}  // namespace splitrange
