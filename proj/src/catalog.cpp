#include "splitrange/catalog.hpp"

#include <cmath>
#include <stdexcept>

#include "splitrange/builtin_functions.hpp"
#include "splitrange/operators.hpp"
#include "splitrange/project.hpp"

namespace splitrange {

namespace {

Matrix rotation90() {
  Matrix r(2, 2);
  r << 0, -1, 1, 0;
  return r;
}

Vector e(int dim, int axis) { return Vector::Unit(dim, axis); }

OperatorPair make_rotation_pair() {
  return OperatorPair(linear_operator(rotation90()), linear_operator(-rotation90()));
}

OperatorPair make_rotation_line() {
  Matrix span(1, 2);
  span << 1, 0;
  return OperatorPair(linear_operator(rotation90()), affine_normal_cone(Vector::Zero(2), span));
}

OperatorPair make_two_balls(double center_gap) {
  return OperatorPair(ball_normal_cone(Vector::Zero(2), 1.0),
                      ball_normal_cone(center_gap * e(2, 0), 1.0));
}

OperatorPair make_ball_identity() {
  return OperatorPair(ball_normal_cone(Vector::Zero(2), 1.0),
                      linear_operator(Matrix::Identity(2, 2)));
}

OperatorPair make_ball_linear() {
  Matrix m(2, 2);
  m << 1, 1, -1, 1;
  return OperatorPair(ball_normal_cone(Vector::Zero(2), 1.0), linear_operator(m));
}

OperatorPair make_ball_affine_line() {
  Matrix span(1, 2);
  span << 1, 0;
  return OperatorPair(ball_normal_cone(Vector::Zero(2), 1.0),
                      affine_normal_cone(0.5 * e(2, 1), span));
}

OperatorPair make_subspaces_r6() {
  Rng rng(20240607);
  Matrix u(6, 2), v(6, 3);
  for (int j = 0; j < u.cols(); ++j) u.col(j) = rng.gaussian_vector(6);
  for (int j = 0; j < v.cols(); ++j) v.col(j) = rng.gaussian_vector(6);
  const Matrix ub = orthonormal_columns(u);
  const Matrix vb = orthonormal_columns(v);
  return OperatorPair(affine_normal_cone(Vector::Zero(6), ub.transpose()),
                      affine_normal_cone(Vector::Zero(6), vb.transpose()));
}

OperatorPair make_angle_pair(double theta) {
  // S = span(e1, e2) in R^4, u = e1 in S, v = e3 in S-perp;
  // A is the normal cone of S + sin(theta) v, B adds the constant
  // cos(theta) u to the normal cone of S.
  const int dim = 4;
  Matrix span(2, dim);
  span.setZero();
  span(0, 0) = 1;
  span(1, 1) = 1;
  const Vector a = std::sin(theta) * e(dim, 2);
  const Vector b = std::cos(theta) * e(dim, 0);
  OperatorDescriptor A = affine_normal_cone(a, span);
  OperatorDescriptor B = shift_outer(affine_normal_cone(Vector::Zero(dim), span), -b);
  return OperatorPair(std::move(A), std::move(B));
}

OperatorPair make_shifted_norms() {
  const BuiltinFunction norm = builtin_function("euclidean-norm");
  OperatorDescriptor A = subdifferential_operator(norm, 2, Box::cube(2, 16.0));
  OperatorDescriptor B = shift_outer(A, 3.0 * e(2, 0));
  return OperatorPair(std::move(A), std::move(B));
}

OperatorPair make_transport_skew() {
  Matrix a = Matrix::Zero(4, 4);
  a.topLeftCorner(2, 2) = rotation90();
  return OperatorPair(linear_operator(a), linear_operator(Matrix::Zero(4, 4)));
}

OperatorPair make_combo_pair() {
  OperatorDescriptor A = inverse(ball_normal_cone(Vector::Zero(2), 1.0));
  OperatorDescriptor B = vee(shift_inner(ball_normal_cone(e(2, 0), 1.0), 0.5 * e(2, 0)));
  return OperatorPair(std::move(A), std::move(B));
}

OperatorPair make_fne_pair() {
  const Box window = Box::cube(2, 10.0);
  auto half_id = [](const Vector& x) -> Vector { return 0.5 * x; };
  auto averaged_projection = [](const Vector& x) -> Vector {
    return 0.5 * (x + project_ball(x, Vector::Zero(2), 1.0));
  };
  OperatorDescriptor A = firmly_nonexpansive_wrapper(half_id, 2, window);
  OperatorDescriptor B = firmly_nonexpansive_wrapper(averaged_projection, 2, window);
  // x/2 is the resolvent of Id = grad ||.||^2/2 and (x + P_ball x)/2 the
  // resolvent of grad dist(., ball)^2/2; subdifferentials of convex
  // functions are 3*.
  A.flags.is_3star = true;
  B.flags.is_3star = true;
  return OperatorPair(std::move(A), std::move(B));
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> entries;
  entries.push_back({"rotation_pair", "quarter-turn rotation and its inverse; Id - T vanishes",
                     false, 1.0, make_rotation_pair});
  entries.push_back({"rotation_line", "quarter-turn rotation with the normal cone of the x-axis",
                     false, 1.0, make_rotation_line});
  entries.push_back({"disjoint_balls", "normal cones of unit balls centered at 0 and (3,0)", true,
                     1.0, [] { return make_two_balls(3.0); }});
  entries.push_back({"overlapping_balls", "normal cones of unit balls centered at 0 and (1,0)",
                     true, 2.0, [] { return make_two_balls(1.0); }});
  entries.push_back(
      {"ball_identity", "normal cone of the unit ball with the identity map", true, 2.0,
       make_ball_identity});
  entries.push_back({"ball_linear",
                     "normal cone of the unit ball with an invertible monotone linear map", true,
                     5.0, make_ball_linear});
  entries.push_back({"ball_affine_line",
                     "normal cone of the unit ball with the normal cone of the line x2 = 1/2",
                     true, 2.0, make_ball_affine_line});
  entries.push_back({"subspaces_r6", "normal cones of seeded random subspaces of R^6, dims 2 and 3",
                     true, 1.0, make_subspaces_r6});
  entries.push_back({"angle_pi4", "normal cones of parallel affine planes in R^4, offset at pi/4",
                     true, 1.0, [] { return make_angle_pair(std::acos(-1.0) / 4); }});
  entries.push_back({"shifted_norms",
                     "subdifferential of the euclidean norm and its shift by (3,0)", true, 1.0,
                     make_shifted_norms});
  entries.push_back({"transport_skew", "4x4 skew block rotation with the zero map", false, 1.0,
                     make_transport_skew});
  entries.push_back({"combo_pair", "inverse and vee-shift combinator images of ball normal cones",
                     true, 1.0, make_combo_pair});
  entries.push_back({"fne_pair",
                     "operators induced by the firmly nonexpansive maps x/2 and (x + P_ball x)/2",
                     true, 1.0, make_fne_pair});
  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& pair_catalog() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const CatalogEntry& entry : pair_catalog())
    if (entry.name == name) return entry;
  throw std::invalid_argument("unknown catalog pair '" + name + "'");
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const CatalogEntry& entry : pair_catalog()) names.push_back(entry.name);
  return names;
}

}  // namespace splitrange
