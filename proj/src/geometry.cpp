#include "splitrange/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "splitrange/project.hpp"

namespace splitrange {

Matrix support_directions(int dim, int n_random, std::uint64_t seed) {
  if (dim <= 0) throw std::invalid_argument("support_directions: dim must be positive");
  if (n_random < 0) throw std::invalid_argument("support_directions: negative direction count");
  Rng rng(seed);
  Matrix dirs(dim, n_random + 2 * dim);
  for (int j = 0; j < n_random; ++j) dirs.col(j) = rng.unit_vector(dim);
  for (int a = 0; a < dim; ++a) {
    dirs.col(n_random + 2 * a) = Vector::Unit(dim, a);
    dirs.col(n_random + 2 * a + 1) = -Vector::Unit(dim, a);
  }
  return dirs;
}

namespace {

Vector support_values(const PointCloud& cloud, const Matrix& dirs, const Box& window) {
  Matrix clamped(cloud.pts.rows(), cloud.pts.cols());
  for (int j = 0; j < cloud.pts.cols(); ++j) clamped.col(j) = window.clamp(cloud.pts.col(j));
  // values(k) = max_j <clamped_j, dir_k>
  return (dirs.transpose() * clamped).rowwise().maxCoeff();
}

}  // namespace

SupportProfile support_profile(const PointCloud& cloud, int n_random_directions, const Box& window,
                               std::uint64_t seed) {
  if (cloud.size() == 0) throw std::invalid_argument("support_profile: empty cloud");
  if (cloud.dim() != window.dim()) throw std::invalid_argument("support_profile: dim mismatch");
  SupportProfile profile;
  profile.directions = support_directions(cloud.dim(), n_random_directions, seed);
  profile.values = support_values(cloud, profile.directions, window);
  profile.window = window;
  return profile;
}

double hausdorff_estimate(const PointCloud& C, const PointCloud& D, int n_random_directions,
                          const Box& window, std::uint64_t seed) {
  if (C.dim() != D.dim()) throw std::invalid_argument("hausdorff_estimate: dim mismatch");
  const Matrix dirs = support_directions(C.dim(), n_random_directions, seed);
  const Vector hc = support_values(C, dirs, window);
  const Vector hd = support_values(D, dirs, window);
  return (hc - hd).cwiseAbs().maxCoeff();
}

NearEqualityReport near_equal(const PointCloud& C, const PointCloud& D, double tol,
                              int n_random_directions, const Box& window) {
  if (C.dim() != D.dim()) throw std::invalid_argument("near_equal: dim mismatch");
  const Box win = window.dim() == 0 ? Box::cube(C.dim(), 10.0) : window;
  if (win.dim() != C.dim()) throw std::invalid_argument("near_equal: window dim mismatch");
  NearEqualityReport report;
  report.tolerance_used = tol;
  report.window = win;

  const Matrix dirs = support_directions(C.dim(), n_random_directions, /*seed=*/0);
  const Vector hc = support_values(C, dirs, win);
  const Vector hd = support_values(D, dirs, win);
  Eigen::Index worst = 0;
  report.max_support_gap = (hc - hd).cwiseAbs().maxCoeff(&worst);
  report.worst_direction = dirs.col(worst);

  report.affine_dims = {affine_hull(C).dim, affine_hull(D).dim};
  report.verdict = report.max_support_gap <= tol && report.affine_dims.first == report.affine_dims.second;
  return report;
}

AffineHull affine_hull(const PointCloud& cloud, double rel_tol) {
  if (cloud.size() == 0) throw std::invalid_argument("affine_hull: empty cloud");
  AffineHull hull;
  hull.base = cloud.pts.rowwise().mean();
  Matrix centered = cloud.pts.colwise() - hull.base;
  Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) {  // singleton cloud
    hull.basis = Matrix(cloud.dim(), 0);
    hull.dim = 0;
    return hull;
  }
  int rank = 0;
  while (rank < sv.size() && sv(rank) > rel_tol * sv(0)) ++rank;
  hull.basis = svd.matrixU().leftCols(rank);
  hull.dim = rank;
  return hull;
}

SetDescriptor recession_polar(const SetDescriptor& set) {
  if (set.kind != SetKind::kExact || !set.exact)
    throw std::invalid_argument("recession_polar: needs an exact closed-form set");
  const Cylinder& cyl = *set.exact;
  // Recession cone of base + span(basis) + radius*ball is span(basis);
  // its polar cone is the orthogonal complement as a subspace.
  return exact_set(Cylinder::subspace(orthonormal_complement(cyl.dim(), cyl.basis)));
}

}  // namespace splitrange
