#include "splitrange/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <stdexcept>

#include <Eigen/Sparse>

#include "splitrange/builtin_functions.hpp"
#include "splitrange/catalog.hpp"
#include "splitrange/geometry.hpp"
#include "splitrange/io.hpp"
#include "splitrange/operators.hpp"
#include "splitrange/project.hpp"
#include "splitrange/ranges.hpp"
#include "splitrange/splitting.hpp"

namespace splitrange {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---- report plumbing ---------------------------------------------------

void check_abs(ExperimentReport& r, const std::string& desc, double expected, double observed,
               double tol) {
  r.checks.push_back({desc, expected, observed, tol, std::abs(expected - observed) <= tol});
}

void check_le(ExperimentReport& r, const std::string& desc, double observed, double bound) {
  r.checks.push_back({desc, bound, observed, bound, observed <= bound});
}

void check_ge(ExperimentReport& r, const std::string& desc, double observed, double bound) {
  r.checks.push_back({desc, bound, observed, 0.0, observed >= bound});
}

void check_flag(ExperimentReport& r, const std::string& desc, bool expected, bool observed) {
  r.checks.push_back(
      {desc, expected ? 1.0 : 0.0, observed ? 1.0 : 0.0, 0.0, expected == observed});
}

std::string artifact_file(const RunContext& ctx, ExperimentReport& r, const std::string& file) {
  namespace fs = std::filesystem;
  fs::create_directories(ctx.output_dir);
  std::string safe = file;
  for (char& c : safe)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_' && c != '-') c = '-';
  std::string path = (fs::path(ctx.output_dir) / (r.name + "_" + safe)).string();
  r.artifacts.push_back(path);
  return path;
}

void export_cloud(const RunContext& ctx, ExperimentReport& r, const std::string& file,
                  const PointCloud& cloud) {
  if (ctx.output_dir.empty()) return;
  write_cloud_csv(artifact_file(ctx, r, file), cloud);
}

// ---- parameter plumbing ------------------------------------------------

double param_or(const ParamMap& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const ParamMap& params, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw std::invalid_argument("experiment parameter '" + key + "' is not recognized");
  }
}

std::uint64_t sub_seed(const RunContext& ctx, std::uint64_t offset) {
  return ctx.seed * 1000003ULL + offset;
}

// ---- shared helpers ----------------------------------------------------

double max_column_norm(const Matrix& pts) {
  double m = 0.0;
  for (int j = 0; j < pts.cols(); ++j) m = std::max(m, pts.col(j).norm());
  return m;
}

// Intersection of two exact sets when at least one is the whole space.
Cylinder trivial_intersection(const Cylinder& a, const Cylinder& b) {
  if (a.is_whole_space()) return b;
  if (b.is_whole_space()) return a;
  throw std::runtime_error("trivial_intersection: neither side is the whole space");
}

PointCloud cylinder_cloud(const Cylinder& cyl, int count, const Box& window, std::uint64_t seed) {
  return exact_set(cyl).sampler(count, window, seed);
}

// Near-equality of a sampled cloud against an exact set, reported as two
// checks (support gap and verdict) plus an optional support-gap CSV export.
void check_near_equality(ExperimentReport& r, const RunContext& ctx, const std::string& label,
                         const PointCloud& sampled, const Cylinder& exact, const Box& window,
                         double tol, int n_directions, std::uint64_t seed) {
  const PointCloud reference = cylinder_cloud(exact, 4096, window, seed);
  const NearEqualityReport near = near_equal(sampled, reference, tol, n_directions, window);
  check_le(r, label + ": max support gap", near.max_support_gap, tol);
  check_flag(r, label + ": near-equality verdict", true, near.verdict);
  if (!ctx.output_dir.empty()) {
    const SupportProfile ps = support_profile(sampled, n_directions, window, 0);
    const SupportProfile pr = support_profile(reference, n_directions, window, 0);
    write_support_gap_csv(artifact_file(ctx, r, label + "_support.csv"), ps.directions, ps.values,
                          pr.values);
  }
}

OperatorPair angle_pair(double theta) {
  const int dim = 4;
  Matrix span(2, dim);
  span.setZero();
  span(0, 0) = 1;
  span(1, 1) = 1;
  const Vector a = std::sin(theta) * Vector::Unit(dim, 2);
  const Vector b = std::cos(theta) * Vector::Unit(dim, 0);
  OperatorDescriptor A = affine_normal_cone(a, span);
  OperatorDescriptor B = shift_outer(affine_normal_cone(Vector::Zero(dim), span), -b);
  return OperatorPair(std::move(A), std::move(B));
}

// ---- experiments -------------------------------------------------------

ExperimentReport run_rotation_counterexample(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"samples"});
  const int samples = static_cast<int>(param_or(params, "samples", 1000));
  ExperimentReport r;
  r.name = "rotation_counterexample";
  r.parameters = {{"samples", samples}};

  const OperatorPair pair = catalog_entry("rotation_pair").make();
  const Box window = Box::cube(2, 10.0);
  const PointCloud inputs = uniform_inputs(2, samples, window, sub_seed(ctx, 1));
  const PointCloud disp = sample_displacement_range(pair, inputs);
  check_le(r, "max displacement norm over random inputs", max_column_norm(disp.pts), 1e-12);

  PointCloud origin;
  origin.pts = Matrix::Zero(2, 1);
  const PointCloud plane = cylinder_cloud(Cylinder::whole_space(2), 2048, window, sub_seed(ctx, 2));
  const NearEqualityReport near = near_equal(origin, plane, 0.05, 128, window);
  check_flag(r, "near_equal(origin, whole plane) verdict", false, near.verdict);
  r.notes.push_back("the displacement range collapses to {0} although both domains are all of R^2");
  export_cloud(ctx, r, "displacements.csv", disp);
  return r;
}

ExperimentReport run_rotation_line(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"samples"});
  const int samples = static_cast<int>(param_or(params, "samples", 1000));
  ExperimentReport r;
  r.name = "rotation_line";
  r.parameters = {{"samples", samples}};

  const OperatorPair pair = catalog_entry("rotation_line").make();
  const Box window = Box::cube(2, 10.0);
  const PointCloud inputs = uniform_inputs(2, samples, window, sub_seed(ctx, 1));
  const PointCloud disp = sample_displacement_range(pair, inputs);

  // Distance to span{(1,-1)} is the component along the unit normal (1,1)/sqrt(2).
  Vector normal(2);
  normal << 1, 1;
  normal.normalize();
  double max_off = 0.0;
  for (int j = 0; j < disp.size(); ++j)
    max_off = std::max(max_off, std::abs(normal.dot(disp.pts.col(j))));
  check_le(r, "max distance of displacements to span{(1,-1)}", max_off, 1e-9);

  const AffineHull hull = affine_hull(disp);
  check_abs(r, "affine hull dimension of displacement cloud", 1.0, hull.dim, 0.0);
  if (hull.dim == 1)
    check_le(r, "hull basis alignment with the normal of (1,-1)",
             std::abs(normal.dot(hull.basis.col(0))), 1e-9);
  export_cloud(ctx, r, "displacements.csv", disp);
  return r;
}

ExperimentReport run_two_balls(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"gap", "radius_a", "radius_b", "samples", "max_iter"});
  const double gap = param_or(params, "gap", 3.0);
  const double ra = param_or(params, "radius_a", 1.0);
  const double rb = param_or(params, "radius_b", 1.0);
  const int samples = static_cast<int>(param_or(params, "samples", 4096));
  const int max_iter = static_cast<int>(param_or(params, "max_iter", 10000));
  ExperimentReport r;
  r.name = "two_balls";
  r.parameters = {{"gap", gap}, {"radius_a", ra}, {"radius_b", rb},
                  {"samples", samples}, {"max_iter", max_iter}};

  const Vector u = Vector::Zero(2);
  const Vector v = gap * Vector::Unit(2, 0);
  const OperatorPair pair(ball_normal_cone(u, ra), ball_normal_cone(v, rb));

  // Displacement vector against the projection oracle P_{B(u-v, ra+rb)}(0).
  const Vector oracle = project_ball(Vector::Zero(2), Vector(u - v), ra + rb);
  const DisplacementEstimate est = estimate_displacement_vector(pair, Vector::Zero(2), max_iter);
  check_le(r, "|displacement estimate - projection oracle|", (est.v - oracle).norm(), 1e-6);
  check_le(r, "tail/Cesaro estimator agreement gap", est.agreement_gap, 1e-3);

  // The two exceptional boundary points (1 +- (ra+rb)/gap)(u-v) are attained;
  // the rest of the boundary of B(u-v, ra+rb) is not.
  const Vector diff = u - v;
  const double scale = (ra + rb) / diff.norm();
  const std::vector<std::pair<Vector, SolveStatus>> cases = {
      {Vector((1 - scale) * diff), SolveStatus::kSolved},
      {Vector((1 + scale) * diff), SolveStatus::kSolved},
      {Vector(diff + (ra + rb) * Vector::Unit(2, 1)), SolveStatus::kUnsolved},
  };
  for (const auto& [w, expected] : cases) {
    const PerturbedVerdict verdict = solve_perturbed(pair, w, Vector::Zero(2), 1e-6, 100000);
    check_flag(r,
               "perturbed problem at (" + std::to_string(w(0)) + ", " + std::to_string(w(1)) +
                   ") is " + to_string(expected),
               true, verdict.status == expected);
  }

  // Sampled displacements fill B(u-v, ra+rb) up to support tolerance.
  const Box window = Box::cube(2, 10.0);
  const PointCloud inputs = uniform_inputs(2, samples, window, sub_seed(ctx, 1));
  const PointCloud disp = sample_displacement_range(pair, inputs);
  check_near_equality(r, ctx, "displacement range vs ball(u-v, ra+rb)", disp,
                      Cylinder::ball(Vector(u - v), ra + rb), window, 0.05, 128, sub_seed(ctx, 2));

  r.notes.push_back(
      "oracle: P over the ball of radius ra+rb centered at u-v, i.e. "
      "max{1 - (ra+rb)/|u-v|, 0} (u-v); nonzero exactly when the balls are disjoint");
  if (!ctx.output_dir.empty()) {
    const DRTrace trace = dr_iterate(pair, Vector::Zero(2), 100, 0.0, 1);
    write_trace_csv(artifact_file(ctx, r, "trace.csv"), trace);
    export_cloud(ctx, r, "displacements.csv", disp);
  }
  return r;
}

ExperimentReport run_angle_v(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"theta", "max_iter"});
  const int max_iter = static_cast<int>(param_or(params, "max_iter", 500));
  std::vector<double> thetas;
  if (params.count("theta")) thetas.push_back(params.at("theta"));
  else thetas = {0.0, kPi / 6, kPi / 4, kPi / 3};
  ExperimentReport r;
  r.name = "angle_v";
  r.parameters = {{"max_iter", max_iter}};
  r.parameters["thetas"] = thetas;

  for (double theta : thetas) {
    const OperatorPair ab = angle_pair(theta);
    const OperatorPair ba(ab.B, ab.A);
    const Vector vab = estimate_displacement_vector(ab, Vector::Zero(4), max_iter).v;
    const Vector vba = estimate_displacement_vector(ba, Vector::Zero(4), max_iter).v;
    const std::string tag = "theta=" + std::to_string(theta);
    check_abs(r, tag + ": normalized inner product vs cos(2 theta)", std::cos(2 * theta),
              vab.dot(vba) / (vab.norm() * vba.norm()), 1e-5);
    check_le(r, tag + ": | |v_AB| - |v_BA| |", std::abs(vab.norm() - vba.norm()), 1e-6);
  }
  (void)ctx;
  return r;
}

ExperimentReport run_two_subspaces(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"pairs", "samples"});
  const int n_pairs = static_cast<int>(param_or(params, "pairs", 5));
  const int samples = static_cast<int>(param_or(params, "samples", 500));
  ExperimentReport r;
  r.name = "two_subspaces";
  r.parameters = {{"pairs", n_pairs}, {"samples", samples}};

  for (int k = 0; k < n_pairs; ++k) {
    Rng rng(sub_seed(ctx, 7000 + 97 * static_cast<std::uint64_t>(k)));
    Matrix u(6, 2), v(6, 3);
    for (int j = 0; j < u.cols(); ++j) u.col(j) = rng.gaussian_vector(6);
    for (int j = 0; j < v.cols(); ++j) v.col(j) = rng.gaussian_vector(6);
    const Matrix ub = orthonormal_columns(u);
    const Matrix vb = orthonormal_columns(v);
    const OperatorPair pair(affine_normal_cone(Vector::Zero(6), ub.transpose()),
                            affine_normal_cone(Vector::Zero(6), vb.transpose()));

    // (U+V) intersected with (U-perp + V-perp).
    Matrix uv(6, ub.cols() + vb.cols());
    uv << ub, vb;
    const Matrix ubp = orthonormal_complement(6, ub);
    const Matrix vbp = orthonormal_complement(6, vb);
    Matrix uvp(6, ubp.cols() + vbp.cols());
    uvp << ubp, vbp;
    const Matrix target = span_intersection(orthonormal_columns(uv), orthonormal_columns(uvp));

    const PointCloud inputs = uniform_inputs(6, samples, Box::cube(6, 10.0), sub_seed(ctx, 100 + k));
    const PointCloud disp = sample_displacement_range(pair, inputs);
    double max_dist = 0.0;
    for (int j = 0; j < disp.size(); ++j) {
      const Vector w = disp.pts.col(j);
      max_dist = std::max(max_dist, (w - project_span(w, target)).norm());
    }
    const std::string tag = "pair " + std::to_string(k);
    check_le(r, tag + ": max displacement distance to (U+V) n (U-perp+V-perp)", max_dist, 1e-10);
    check_abs(r, tag + ": displacement rank vs intersection dimension",
              static_cast<double>(target.cols()), affine_hull(disp, 1e-8).dim, 0.0);
  }
  return r;
}

ExperimentReport run_self_duality(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"samples"});
  const int samples = static_cast<int>(param_or(params, "samples", 1000));
  ExperimentReport r;
  r.name = "self_duality";
  r.parameters = {{"samples", samples}};

  for (const CatalogEntry& entry : pair_catalog()) {
    const OperatorPair pair = entry.make();
    const OperatorPair dual = attouch_thera_dual(pair);
    const OperatorPair with_inverse_b(pair.A, inverse(pair.B));
    Rng rng(sub_seed(ctx, 11));
    const Box window = Box::cube(pair.dim(), 10.0);
    double max_dual = 0.0, max_split = 0.0;
    for (int i = 0; i < samples; ++i) {
      const Vector x = rng.in_box(window);
      max_dual = std::max(max_dual, (dr_map(pair, x) - dr_map(dual, x)).norm());
      // Splitting of the identity: T_(A,B) + T_(A,B^{-1}) = Id.
      max_split =
          std::max(max_split, (dr_map(pair, x) + dr_map(with_inverse_b, x) - x).norm());
    }
    check_le(r, entry.name + ": max |T_(A,B) x - T_(A^-1,B^-v) x|", max_dual, 1e-10);
    check_le(r, entry.name + ": max |T_(A,B) x + T_(A,B^-1) x - x|", max_split, 1e-10);
  }
  return r;
}

ExperimentReport run_main_theorem(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"samples"});
  const int samples = static_cast<int>(param_or(params, "samples", 10000));
  ExperimentReport r;
  r.name = "main_theorem";
  r.parameters = {{"samples", samples}};

  // Per pair: comparison window half-width and input half-width. Inputs come
  // from a larger box than the comparison window because the displacement map
  // reaches the boundary of D n R only from far-out inputs (the approach is
  // second order in the input radius).
  const std::vector<std::tuple<std::string, double, double>> cases = {
      {"overlapping_balls", 5.0, 10.0}, {"ball_affine_line", 3.0, 15.0}, {"ball_linear", 5.0, 25.0}};
  for (const auto& [name, half_width, input_half_width] : cases) {
    const OperatorPair pair = catalog_entry(name).make();
    const PairSets sets = build_pair_sets(pair);
    if (!sets.D.exact || !sets.R.exact)
      throw std::runtime_error("main_theorem: expected exact D and R for " + name);
    const Cylinder target = trivial_intersection(*sets.D.exact, *sets.R.exact);
    const Box window = Box::cube(2, half_width);
    const PointCloud inputs =
        uniform_inputs(2, samples, Box::cube(2, input_half_width), sub_seed(ctx, 21));
    const PointCloud disp = sample_displacement_range(pair, inputs);
    check_near_equality(r, ctx, name + ": ran(Id-T) vs D n R", disp, target, window, 0.05, 256,
                        sub_seed(ctx, 22));
  }

  // Full-domain instance: B surjective with full domain forces ran(Id-T) ~ R.
  // Here (Id-T) is exactly x/2, so the range is the whole plane.
  const OperatorPair full = catalog_entry("ball_identity").make();
  Rng rng(sub_seed(ctx, 23));
  double max_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vector x = rng.in_box(Box::cube(2, 10.0));
    max_err = std::max(max_err, (x - dr_map(full, x) - 0.5 * x).norm());
  }
  check_le(r, "ball_identity: max |(Id-T)x - x/2|", max_err, 1e-12);
  return r;
}

ExperimentReport run_range_of_T(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"samples"});
  const int samples = static_cast<int>(param_or(params, "samples", 10000));
  ExperimentReport r;
  r.name = "range_of_T";
  r.parameters = {{"samples", samples}};
  const Box window = Box::cube(2, 5.0);

  // Input half-width per pair: the vertical strip of ball_affine_line needs
  // far inputs for T to reach the strip's window corners.
  const std::vector<std::pair<std::string, double>> cases = {
      {"overlapping_balls", 10.0}, {"ball_affine_line", 25.0}, {"ball_linear", 15.0}};
  for (const auto& [name, input_half_width] : cases) {
    const OperatorPair pair = catalog_entry(name).make();
    const PairSets sets = build_pair_sets(pair);
    if (!sets.D_dual.exact || !sets.R_dual.exact)
      throw std::runtime_error("range_of_T: expected exact dual sets for " + name);
    const Cylinder target = trivial_intersection(*sets.D_dual.exact, *sets.R_dual.exact);
    const PointCloud inputs =
        uniform_inputs(2, samples, Box::cube(2, input_half_width), sub_seed(ctx, 31));
    const PointCloud ran_t = sample_T_range(pair, inputs);
    check_near_equality(r, ctx, name + ": ran T vs (dom A - ran B) n (ran A + dom B)", ran_t,
                        target, window, 0.05, 256, sub_seed(ctx, 32));
  }
  return r;
}

ExperimentReport run_linear_transport(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"samples"});
  const int samples = static_cast<int>(param_or(params, "samples", 200));
  ExperimentReport r;
  r.name = "linear_transport";
  r.parameters = {{"samples", samples}};

  Matrix m(2, 2);
  m << 1, 1, -1, 1;

  // Linear B: ran(A+B) = (Id+B) ran(Id-T).
  {
    const OperatorPair pair = catalog_entry("ball_linear").make();
    const PointCloud inputs = uniform_inputs(2, samples, Box::cube(2, 10.0), sub_seed(ctx, 41));
    const PointCloud disp = sample_displacement_range(pair, inputs);
    int failures = 0;
    for (int j = 0; j < disp.size(); ++j) {
      const Vector y = disp.pts.col(j) + m * disp.pts.col(j);
      if (sum_range_membership(pair, y, Vector::Zero(2), 1e-6, 100000).status !=
          SolveStatus::kSolved)
        ++failures;
    }
    check_abs(r, "linear B: (Id+B)w in ran(A+B) failures", 0.0, failures, 0.0);
  }

  // Linear A with Id-A invertible: ran(A+B) = (Id-A) ran(Id-T).
  {
    const OperatorPair pair(linear_operator(m), ball_normal_cone(Vector::Zero(2), 1.0));
    const PointCloud inputs = uniform_inputs(2, samples, Box::cube(2, 10.0), sub_seed(ctx, 42));
    const PointCloud disp = sample_displacement_range(pair, inputs);
    int failures = 0;
    for (int j = 0; j < disp.size(); ++j) {
      const Vector y = disp.pts.col(j) - m * disp.pts.col(j);
      if (sum_range_membership(pair, y, Vector::Zero(2), 1e-6, 100000).status !=
          SolveStatus::kSolved)
        ++failures;
    }
    check_abs(r, "linear A: (Id-A)w in ran(A+B) failures", 0.0, failures, 0.0);
  }

  // Skew A and linear B: ran(Id-T) = J_{lambda A* + (1-lambda) B}(ran(A+B)).
  {
    const OperatorPair pair = catalog_entry("transport_skew").make();
    Matrix a = Matrix::Zero(4, 4);
    a(0, 1) = -1;
    a(1, 0) = 1;
    const Matrix b = Matrix::Zero(4, 4);
    const PointCloud inputs = uniform_inputs(4, samples, Box::cube(4, 10.0), sub_seed(ctx, 43));
    const PointCloud disp = sample_displacement_range(pair, inputs);
    for (double lambda : {0.0, 0.5, 1.0}) {
      const Matrix blend = lambda * a.transpose() + (1 - lambda) * b;
      int failures = 0;
      for (int j = 0; j < disp.size(); ++j) {
        const Vector y = disp.pts.col(j) + blend * disp.pts.col(j);
        if (sum_range_membership(pair, y, Vector::Zero(4), 1e-6, 100000).status !=
            SolveStatus::kSolved)
          ++failures;
      }
      check_abs(r, "skew A, lambda=" + std::to_string(lambda) + ": round-trip failures", 0.0,
                failures, 0.0);
    }
  }
  return r;
}

ExperimentReport run_l2_truncation(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"N", "p"});
  const double p = param_or(params, "p", 2.0);
  std::vector<int> sizes;
  if (params.count("N")) sizes.push_back(static_cast<int>(params.at("N")));
  else sizes = {10, 100, 1000};
  ExperimentReport r;
  r.name = "l2_truncation";
  r.parameters = {{"p", p}};
  r.parameters["N"] = sizes;

  for (int n_pairs : sizes) {
    const int dim = 2 * n_pairs;
    Vector alpha(n_pairs);
    for (int n = 0; n < n_pairs; ++n) alpha(n) = 1.0 / (n + 1);

    // w in U-perp: w_{2n} = alpha_n^p, w_{2n+1} = alpha_n^{p-1}.
    Vector w(dim);
    for (int n = 0; n < n_pairs; ++n) {
      w(2 * n) = std::pow(alpha(n), p);
      w(2 * n + 1) = std::pow(alpha(n), p - 1);
    }

    // u in U with P_E u = P_E w, as a sparse 2N x 2N solve:
    // membership rows  u_{2n+1} + alpha_n u_{2n} = 0,
    // projection rows  u_{2n+1} = w_{2n+1}.
    Eigen::SparseMatrix<double> system(dim, dim);
    std::vector<Eigen::Triplet<double>> triplets;
    Vector rhs(dim);
    for (int n = 0; n < n_pairs; ++n) {
      triplets.emplace_back(2 * n, 2 * n, alpha(n));
      triplets.emplace_back(2 * n, 2 * n + 1, 1.0);
      rhs(2 * n) = 0.0;
      triplets.emplace_back(2 * n + 1, 2 * n + 1, 1.0);
      rhs(2 * n + 1) = w(2 * n + 1);
    }
    system.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> solver(system);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("l2_truncation: sparse factorization failed");
    const Vector u = solver.solve(rhs);

    Vector u_closed(dim);
    for (int n = 0; n < n_pairs; ++n) {
      u_closed(2 * n) = -std::pow(alpha(n), p - 2);
      u_closed(2 * n + 1) = std::pow(alpha(n), p - 1);
    }
    double norm_sq_closed = 0.0;
    for (int n = 0; n < n_pairs; ++n)
      norm_sq_closed += std::pow(alpha(n), 2 * p - 4) + std::pow(alpha(n), 2 * p - 2);

    const std::string tag = "N=" + std::to_string(n_pairs);
    check_le(r, tag + ": max |least-squares preimage - closed form|",
             (u - u_closed).cwiseAbs().maxCoeff(), 1e-8);
    check_abs(r, tag + ": preimage norm^2 vs closed-form series", norm_sq_closed, u.squaredNorm(),
              1e-8 * std::max(1.0, norm_sq_closed));
    check_ge(r, tag + ": preimage norm^2 grows at least linearly", u.squaredNorm(),
             0.9 * n_pairs);

    // Sanity: w is orthogonal to U (against the unnormalized spanning
    // vectors e_{2n} - alpha_n e_{2n+1}).
    double max_inner = 0.0;
    for (int n = 0; n < n_pairs; ++n)
      max_inner = std::max(max_inner, std::abs(w(2 * n) - alpha(n) * w(2 * n + 1)));
    check_le(r, tag + ": max |<w, U spanning vector>|", max_inner, 1e-12);
  }
  r.notes.push_back(
      "each finite truncation admits the preimage exactly; the norm blow-up (rate ~ N for p = 2) "
      "is what breaks surjectivity onto the projected set in the infinite-dimensional limit");
  (void)ctx;
  return r;
}

ExperimentReport run_brezis_haraux_gap(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"samples"});
  const int samples = static_cast<int>(param_or(params, "samples", 1000));
  ExperimentReport r;
  r.name = "brezis_haraux_gap";
  r.parameters = {{"samples", samples}};

  // A = subdifferential of the conjugate of f(x) = max{1 - sqrt(x1), |x2|}.
  // Closed forms: ran A = {x1 > 0} u {(0, x2): |x2| >= 1},
  // ran(A+A) = {x1 > 0} u {(0, x2): |x2| >= 2}, ran A + ran A = {x1 >= 0}.
  const auto in_ran_a = [](const Vector& y, double tol) {
    return y(0) > 0.0 || (std::abs(y(0)) <= tol && std::abs(y(1)) >= 1.0 - tol);
  };
  const auto in_ran_sum_op = [](const Vector& y, double tol) {
    return y(0) > 0.0 || (std::abs(y(0)) <= tol && std::abs(y(1)) >= 2.0 - tol);
  };
  const auto in_sum_of_ranges = [](const Vector& y, double tol) { return y(0) >= -tol; };

  Vector witness(2), interior(2);
  witness << 0.0, 1.5;
  interior << 1.0, 0.0;
  check_flag(r, "(0, 3/2) in ran A + ran A", true, in_sum_of_ranges(witness, 0.0));
  check_flag(r, "(0, 3/2) in ran(A+A)", false, in_ran_sum_op(witness, 0.0));
  check_flag(r, "(0, 3/2) in ran A", true, in_ran_a(witness, 0.0));
  check_flag(r, "(1, 0) in ran(A+A)", true, in_ran_sum_op(interior, 0.0));
  check_flag(r, "(1, 0) in ran A + ran A", true, in_sum_of_ranges(interior, 0.0));

  // ran(2A) = 2 ran A, so its predicate is the half-scaled ran-A predicate.
  int grid_mismatches = 0;
  for (double x1 = -2.0; x1 <= 2.0; x1 += 0.1)
    for (double x2 = -3.0; x2 <= 3.0; x2 += 0.1) {
      Vector y(2);
      y << x1, x2;
      if (in_ran_sum_op(y, 0.0) != in_ran_a(Vector(0.5 * y), 0.0)) ++grid_mismatches;
    }
  check_abs(r, "grid agreement of ran(A+A) with scaled ran A predicate", 0.0, grid_mismatches,
            0.0);

  // ran A = ran of the prox of f: sample prox images over the window; all
  // must satisfy the ran-A predicate within the grid-prox accuracy.
  const BuiltinFunction f = builtin_function("sqrt-abs-max");
  const OperatorDescriptor prox_op = subdifferential_operator(f, 2, Box::cube(2, 16.0), 12);
  Rng rng(sub_seed(ctx, 51));
  PointCloud prox_cloud;
  prox_cloud.pts = Matrix(2, samples);
  int predicate_failures = 0;
  for (int i = 0; i < samples; ++i) {
    const Vector x = rng.in_box(Box::cube(2, 10.0));
    const Vector y = prox_op.resolvent_map(x);
    prox_cloud.pts.col(i) = y;
    if (!in_ran_a(y, 1e-3)) ++predicate_failures;
  }
  check_abs(r, "prox-sampled points violating the ran-A predicate (tol 1e-3)", 0.0,
            predicate_failures, 0.0);
  r.notes.push_back(
      "the sum of ranges closes the missing slab {x1 = 0, |x2| < 2}: the strict inclusion is "
      "decided by the exact predicates, sampling only corroborates the generic part");
  export_cloud(ctx, r, "prox_samples.csv", prox_cloud);
  return r;
}

ExperimentReport run_norm_symmetry(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"max_iter"});
  const int max_iter = static_cast<int>(param_or(params, "max_iter", 10000));
  ExperimentReport r;
  r.name = "norm_symmetry";
  r.parameters = {{"max_iter", max_iter}};

  // Two disjoint balls: R is a subspace (the whole plane), so the
  // displacement vectors of the two orders are opposite.
  {
    const OperatorPair ab = catalog_entry("disjoint_balls").make();
    const OperatorPair ba(ab.B, ab.A);
    const Vector vab = estimate_displacement_vector(ab, Vector::Zero(2), max_iter).v;
    const Vector vba = estimate_displacement_vector(ba, Vector::Zero(2), max_iter).v;
    check_le(r, "disjoint_balls: | |v_AB| - |v_BA| |", std::abs(vab.norm() - vba.norm()), 1e-6);
    check_le(r, "disjoint_balls: |v_AB + v_BA| (opposite-sign case)", (vab + vba).norm(), 1e-6);
  }

  // Shifted norms: D is the whole plane, so the two orders agree.
  {
    const OperatorPair ab = catalog_entry("shifted_norms").make();
    const OperatorPair ba(ab.B, ab.A);
    const Vector vab = estimate_displacement_vector(ab, Vector::Zero(2), max_iter).v;
    const Vector vba = estimate_displacement_vector(ba, Vector::Zero(2), max_iter).v;
    check_le(r, "shifted_norms: | |v_AB| - |v_BA| |", std::abs(vab.norm() - vba.norm()), 1e-3);
    check_le(r, "shifted_norms: |v_AB - v_BA| (equal-sign case)", (vab - vba).norm(), 1e-3);
    check_le(r, "shifted_norms: |v_AB - (-1, 0)|", (vab - Vector(-Vector::Unit(2, 0))).norm(),
             1e-3);
  }
  (void)ctx;
  return r;
}

ExperimentReport run_subdifferential_ranges(const ParamMap& params, const RunContext& ctx) {
  reject_unknown(params, {"samples"});
  const int samples = static_cast<int>(param_or(params, "samples", 1000));
  ExperimentReport r;
  r.name = "subdifferential_ranges";
  r.parameters = {{"samples", samples}};

  // f = indicator of the unit ball, g = half the squared norm: the pair of
  // subdifferentials is (normal cone of the ball, identity).
  const OperatorPair pair = catalog_entry("ball_identity").make();
  Rng rng(sub_seed(ctx, 61));
  double max_err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vector x = rng.in_box(Box::cube(2, 10.0));
    max_err = std::max(max_err, (x - dr_map(pair, x) - 0.5 * x).norm());
  }
  check_le(r, "max |(Id-T)x - x/2|", max_err, 1e-12);

  // (dom f - dom g) n (dom f* + dom g*) = (ball - R^2) n (R^2 + R^2) = R^2.
  const PairSets sets = build_pair_sets(pair);
  check_flag(r, "dom A - dom B is the whole plane", true,
             sets.D.exact && sets.D.exact->is_whole_space());
  check_flag(r, "ran A + ran B is the whole plane", true,
             sets.R.exact && sets.R.exact->is_whole_space());

  const PointCloud inputs = uniform_inputs(2, 512, Box::cube(2, 10.0), sub_seed(ctx, 62));
  const PointCloud disp = sample_displacement_range(pair, inputs);
  check_abs(r, "displacement cloud affine dimension", 2.0, affine_hull(disp).dim, 0.0);
  return r;
}

using Runner = ExperimentReport (*)(const ParamMap&, const RunContext&);

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> entries = {
      {"rotation_counterexample", run_rotation_counterexample},
      {"rotation_line", run_rotation_line},
      {"two_balls", run_two_balls},
      {"angle_v", run_angle_v},
      {"two_subspaces", run_two_subspaces},
      {"self_duality", run_self_duality},
      {"main_theorem", run_main_theorem},
      {"range_of_T", run_range_of_T},
      {"linear_transport", run_linear_transport},
      {"l2_truncation", run_l2_truncation},
      {"brezis_haraux_gap", run_brezis_haraux_gap},
      {"norm_symmetry", run_norm_symmetry},
      {"subdifferential_ranges", run_subdifferential_ranges},
  };
  return entries;
}

}  // namespace

bool ExperimentReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["parameters"] = parameters;
  j["pass"] = pass();
  j["runtime_ms"] = runtime_ms;
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : checks)
    j["checks"].push_back({{"description", c.description},
                           {"expected", c.expected},
                           {"observed", c.observed},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  j["artifacts"] = artifacts;
  j["notes"] = notes;
  return j;
}

ExperimentReport run_experiment(const std::string& name, const ParamMap& params,
                                const RunContext& ctx) {
  for (const auto& [key, runner] : registry()) {
    if (key != name) continue;
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report = runner(params, ctx);
    report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
  }
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> names;
  for (const auto& [key, runner] : registry()) names.push_back(key);
  return names;
}

}  // namespace splitrange
