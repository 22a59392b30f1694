#include "splitrange/operators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <memory>
#include <utility>

namespace splitrange {

namespace {

using nlohmann::json;

json vector_json(const Vector& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

void check_dim(const OperatorDescriptor& op, const Vector& x, const char* where) {
  if (x.size() != op.dim)
    throw std::invalid_argument(std::string(where) + ": expected dimension " +
                                std::to_string(op.dim) + ", got " + std::to_string(x.size()));
}

/// Sampled descriptor for the image of `map` over window draws. This is the
/// Minty parametrization in sampling form: dom A = J(X), ran A = (Id - J)(X).
SetDescriptor image_set(int dim, std::function<Vector(const Vector&)> map, const Box& ref_window) {
  auto sampler = [map, dim](int count, const Box& window, std::uint64_t seed) {
    Rng rng(seed);
    Matrix pts(dim, count);
    Matrix inputs(dim, count);
    for (int j = 0; j < count; ++j) {
      Vector x = rng.in_box(window);
      inputs.col(j) = x;
      pts.col(j) = map(x);
    }
    PointCloud cloud(std::move(pts));
    cloud.witnesses.push_back(std::move(inputs));
    return cloud;
  };
  return sampled_set(dim, sampler, ref_window);
}

}  // namespace

Vector resolvent(const OperatorDescriptor& op, const Vector& x) {
  check_dim(op, x, "resolvent");
  return op.resolvent_map(x);
}

Vector reflected_resolvent(const OperatorDescriptor& op, const Vector& x) {
  check_dim(op, x, "reflected_resolvent");
  return 2.0 * op.resolvent_map(x) - x;
}

OperatorDescriptor inverse(const OperatorDescriptor& op) {
  OperatorDescriptor out;
  out.dim = op.dim;
  auto J = op.resolvent_map;
  out.resolvent_map = [J](const Vector& x) { return Vector(x - J(x)); };
  out.domain = op.range;
  out.range = op.domain;
  out.flags = op.flags;  // 3*, linearity and subdifferential status are inversion-invariant
  out.provenance = json{{"kind", "inverse"}, {"inner", op.provenance}};
  return out;
}

OperatorDescriptor vee(const OperatorDescriptor& op) {
  OperatorDescriptor out;
  out.dim = op.dim;
  auto J = op.resolvent_map;
  out.resolvent_map = [J](const Vector& x) { return Vector(-J(-x)); };
  out.domain = negated(op.domain);
  out.range = negated(op.range);
  out.flags = op.flags;
  out.provenance = json{{"kind", "vee"}, {"inner", op.provenance}};
  return out;
}

OperatorDescriptor shift_inner(const OperatorDescriptor& op, const Vector& w) {
  if (w.size() != op.dim) throw std::invalid_argument("shift_inner: shift dimension mismatch");
  OperatorDescriptor out;
  out.dim = op.dim;
  auto J = op.resolvent_map;
  Vector shift = w;
  out.resolvent_map = [J, shift](const Vector& x) { return Vector(shift + J(x - shift)); };
  out.domain = translated(op.domain, w);
  out.range = op.range;
  out.flags = op.flags;
  out.flags.is_linear = false;  // an affine graph shift
  out.provenance = json{{"kind", "shift-inner"}, {"inner", op.provenance}, {"shift", vector_json(w)}};
  return out;
}

OperatorDescriptor shift_outer(const OperatorDescriptor& op, const Vector& w) {
  if (w.size() != op.dim) throw std::invalid_argument("shift_outer: shift dimension mismatch");
  OperatorDescriptor out;
  out.dim = op.dim;
  auto J = op.resolvent_map;
  Vector shift = w;
  out.resolvent_map = [J, shift](const Vector& x) { return J(x + shift); };
  out.domain = op.domain;
  out.range = translated(op.range, -w);
  out.flags = op.flags;
  out.flags.is_linear = false;
  out.provenance = json{{"kind", "shift-outer"}, {"inner", op.provenance}, {"shift", vector_json(w)}};
  return out;
}

OperatorDescriptor ball_normal_cone(const Vector& center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("ball_normal_cone: radius must be positive");
  OperatorDescriptor op;
  op.dim = static_cast<int>(center.size());
  Vector c = center;
  double r = radius;
  op.resolvent_map = [c, r](const Vector& x) { return project_ball(x, c, r); };
  op.domain = exact_set(Cylinder::ball(center, radius));
  // A bounded domain makes the normal cone's range the whole space.
  op.range = whole_space_set(op.dim);
  op.flags.is_3star = true;
  op.flags.is_subdifferential = true;
  op.provenance = json{{"kind", "ball"}, {"center", vector_json(center)}, {"radius", radius}};
  return op;
}

OperatorDescriptor affine_normal_cone(const Vector& base, const Matrix& span_rows) {
  if (span_rows.rows() > 0 && span_rows.cols() != base.size())
    throw std::invalid_argument("affine_normal_cone: span rows must match base dimension");
  OperatorDescriptor op;
  op.dim = static_cast<int>(base.size());
  Cylinder aff = Cylinder::affine(base, span_rows);
  op.resolvent_map = [aff](const Vector& x) { return aff.project(x); };
  op.domain = exact_set(aff);
  // ran N_V for an affine subspace V is the orthogonal complement of V's
  // direction space.
  op.range = exact_set(Cylinder::subspace(orthonormal_complement(op.dim, aff.basis)));
  op.flags.is_3star = true;
  op.flags.is_subdifferential = true;
  json rows = json::array();
  for (int i = 0; i < span_rows.rows(); ++i) rows.push_back(vector_json(span_rows.row(i).transpose()));
  op.provenance = json{{"kind", "affine-subspace"}, {"base", vector_json(base)}, {"basis", rows}};
  return op;
}

bool linear_is_3star(const Matrix& M, double tol) {
  // A monotone matrix is rectangular iff the linear part reachable from
  // either side, ran M + ran M^T, is contained in ran of the symmetric part:
  // outside of it the defining infimum is a linear form unbounded below.
  Matrix sym = 0.5 * (M + M.transpose());
  Matrix sym_basis = orthonormal_columns(sym, 1e-12);
  Matrix reach(M.rows(), 2 * M.cols());
  reach << M, M.transpose();
  Matrix residual = reach - sym_basis * (sym_basis.transpose() * reach);
  double scale = std::max(1.0, M.norm());
  return residual.norm() <= tol * scale;
}

OperatorDescriptor linear_operator(const Matrix& M, double psd_tol) {
  if (M.rows() != M.cols()) throw std::invalid_argument("linear_operator: matrix must be square");
  const int d = static_cast<int>(M.rows());
  Matrix sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.eigenvalues().minCoeff() < -psd_tol * std::max(1.0, M.norm()))
    throw std::invalid_argument("linear_operator: non-monotone matrix (symmetric part not PSD)");

  OperatorDescriptor op;
  op.dim = d;
  auto lu = std::make_shared<Eigen::PartialPivLU<Matrix>>(Matrix::Identity(d, d) + M);
  op.resolvent_map = [lu](const Vector& x) { return Vector(lu->solve(x)); };
  op.domain = whole_space_set(d);
  op.range = exact_set(Cylinder::subspace(orthonormal_columns(M)));
  op.flags.is_linear = true;
  op.flags.is_3star = linear_is_3star(M);
  op.flags.is_subdifferential = (M - M.transpose()).norm() <= 1e-12 * std::max(1.0, M.norm());
  json rows = json::array();
  for (int i = 0; i < d; ++i) rows.push_back(vector_json(M.row(i).transpose()));
  op.provenance = json{{"kind", "linear"}, {"matrix", rows}};
  return op;
}

OperatorDescriptor subdifferential_operator(const BuiltinFunction& f, int dim,
                                            const Box& prox_window, int prox_depth) {
  if (f.dim != 0 && f.dim != dim)
    throw std::invalid_argument("subdifferential_operator: function '" + f.name +
                                "' expects dimension " + std::to_string(f.dim));
  OperatorDescriptor op;
  op.dim = dim;
  BuiltinFunction fn = f;
  Box window = prox_window;
  int depth = prox_depth;
  // For the grid solver the minimization window must contain the minimizer
  // for *every* query (resolvents are total). With p a finite point of f,
  // the minimizer of f + ||.-x||^2/2 lies in the ball around x of radius
  // ||p - x|| + sqrt(2 f(p)), so widen the requested window to cover that
  // ball with margin before solving.
  Vector anchor = f.finite_point ? f.finite_point(dim) : Vector(Vector::Zero(dim));
  double anchor_value = std::max(0.0, f.value(anchor));
  op.resolvent_map = [fn, window, depth, anchor, anchor_value](const Vector& x) {
    if (fn.closed_form_prox) return fn.closed_form_prox(x);
    double reach = (x - anchor).norm() + std::sqrt(2.0 * anchor_value) + 0.5;
    Box effective = window;
    for (int i = 0; i < effective.dim(); ++i) {
      effective.lo[i] = std::min(effective.lo[i], x[i] - reach);
      effective.hi[i] = std::max(effective.hi[i], x[i] + reach);
    }
    return numeric_prox(fn, x, effective, depth);
  };

  auto dom_exact = f.subdiff_domain ? f.subdiff_domain(dim) : std::nullopt;
  auto ran_exact = f.subdiff_range ? f.subdiff_range(dim) : std::nullopt;
  auto J = op.resolvent_map;
  if (dom_exact)
    op.domain = exact_set(*dom_exact);
  else
    op.domain = image_set(dim, J, prox_window);
  if (ran_exact)
    op.range = exact_set(*ran_exact);
  else
    op.range = image_set(dim, [J](const Vector& x) { return Vector(x - J(x)); }, prox_window);

  op.flags.is_3star = true;  // subdifferentials are rectangular
  op.flags.is_subdifferential = true;
  op.provenance = json{{"kind", "prox"}, {"function", f.name}, {"dim", dim}};
  return op;
}

OperatorDescriptor firmly_nonexpansive_wrapper(std::function<Vector(const Vector&)> T, int dim,
                                               const Box& sample_window) {
  OperatorDescriptor op;
  op.dim = dim;
  op.resolvent_map = std::move(T);
  auto J = op.resolvent_map;
  op.domain = image_set(dim, J, sample_window);
  op.range = image_set(dim, [J](const Vector& x) { return Vector(x - J(x)); }, sample_window);
  op.provenance = json{{"kind", "fne"}};
  return op;
}

double max_firm_nonexpansiveness_violation(const std::function<Vector(const Vector&)>& J, int dim,
                                           const Box& window, int pairs, std::uint64_t seed) {
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < pairs; ++k) {
    Vector x = rng.in_box(window);
    Vector y = rng.in_box(window);
    Vector jx = J(x), jy = J(y);
    double lhs = (jx - jy).squaredNorm() + ((x - jx) - (y - jy)).squaredNorm();
    double rhs = (x - y).squaredNorm();
    worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

}  // namespace splitrange
