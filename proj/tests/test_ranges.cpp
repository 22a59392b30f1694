#include <doctest.h>

#include "splitrange/catalog.hpp"
#include "splitrange/operators.hpp"
#include "splitrange/project.hpp"
#include "splitrange/ranges.hpp"

using namespace splitrange;

namespace {
Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST_CASE("build_pair_sets propagates closed forms for two balls") {
  const OperatorPair pair = catalog_entry("disjoint_balls").make();
  const PairSets sets = build_pair_sets(pair);

  // D = dom A - dom B = ball(0,1) - ball((3,0),1) = ball((-3,0), 2)
  REQUIRE(sets.D.exact.has_value());
  CHECK(sets.D.exact->base.isApprox(vec2(-3.0, 0.0)));
  CHECK(sets.D.exact->radius == doctest::Approx(2.0));
  CHECK(sets.D.exact->span_rank() == 0);

  // both normal cones have full range, so R and both dual sets are everything
  REQUIRE(sets.R.exact.has_value());
  CHECK(sets.R.exact->is_whole_space());
  CHECK(sets.D_dual.exact->is_whole_space());
  CHECK(sets.R_dual.exact->is_whole_space());

  CHECK(sets.D.membership(vec2(-1.0, 0.0), 0.0));
  CHECK(!sets.D.membership(vec2(0.5, 0.0), 0.1));
}

TEST_CASE("uniform_inputs is deterministic and respects the window") {
  const Box window = Box::cube(3, 4.0);
  const PointCloud a = uniform_inputs(3, 100, window, 42);
  const PointCloud b = uniform_inputs(3, 100, window, 42);
  const PointCloud c = uniform_inputs(3, 100, window, 43);
  CHECK(a.size() == 100);
  CHECK((a.pts - b.pts).norm() == 0.0);
  CHECK((a.pts - c.pts).norm() > 0.0);
  for (int j = 0; j < a.size(); ++j) CHECK(window.contains(a.pts.col(j)));
}

TEST_CASE("sampled ranges carry input witnesses and exact values") {
  // with B the identity map, (Id - T) x = x/2 regardless of A
  const OperatorPair pair = catalog_entry("ball_identity").make();
  const PointCloud inputs = uniform_inputs(2, 200, Box::cube(2, 10.0), 1);

  const PointCloud disp = sample_displacement_range(pair, inputs);
  REQUIRE(disp.size() == 200);
  REQUIRE(disp.witnesses.size() == 1);
  CHECK((disp.pts - 0.5 * inputs.pts).norm() <= 1e-12);
  CHECK((disp.witnesses[0] - inputs.pts).norm() == 0.0);

  const PointCloud ran_t = sample_T_range(pair, inputs);
  CHECK((ran_t.pts - 0.5 * inputs.pts).norm() <= 1e-12);  // T x = x/2 here too
}

TEST_CASE("displacement estimate: two disjoint balls") {
  const OperatorPair pair = catalog_entry("disjoint_balls").make();
  const DisplacementEstimate est = estimate_displacement_vector(pair, Vector::Zero(2));
  // gap between the balls: v = P_{ball((-3,0),2)}(0) = (-1, 0)
  CHECK((est.v - vec2(-1.0, 0.0)).norm() <= 1e-6);
  CHECK(est.agreement_gap <= 1e-3);
  CHECK(est.method == "tail-displacement");
  CHECK((est.v_tail - est.v).norm() == 0.0);
}

TEST_CASE("displacement estimate is the projection of 0 onto cl D n cl R") {
  // rectangular pair with exact closed-form D and R: the minimal displacement
  // equals the Dykstra projection of the origin onto their intersection.
  const OperatorPair pair = catalog_entry("disjoint_balls").make();
  const PairSets sets = build_pair_sets(pair);
  const Cylinder D = *sets.D.exact;
  const Cylinder R = *sets.R.exact;
  const Vector v_geom = dykstra_project([&D](const Vector& x) { return D.project(x); },
                                        [&R](const Vector& x) { return R.project(x); },
                                        Vector::Zero(2));
  const DisplacementEstimate est = estimate_displacement_vector(pair, Vector::Zero(2));
  CHECK((est.v - v_geom).norm() <= 1e-6);
}

TEST_CASE("displacement estimate vanishes when T has fixed points") {
  // rotation against its negative: T = Id, every displacement is 0
  const OperatorPair pair = catalog_entry("rotation_pair").make();
  const DisplacementEstimate est = estimate_displacement_vector(pair, vec2(2.0, -7.0), 200);
  CHECK(est.v.norm() <= 1e-12);
}

TEST_CASE("solve_perturbed classifies the three regimes") {
  const OperatorPair pair = catalog_entry("disjoint_balls").make();

  const PerturbedVerdict inside = solve_perturbed(pair, vec2(-1.0, 0.0), Vector::Zero(2));
  CHECK(inside.status == SolveStatus::kSolved);
  REQUIRE(inside.witness.has_value());
  CHECK(inside.residual <= 1e-6);

  const PerturbedVerdict far = solve_perturbed(pair, vec2(-5.0, 0.0), Vector::Zero(2));
  CHECK(far.status == SolveStatus::kSolved);

  const PerturbedVerdict off = solve_perturbed(pair, vec2(-3.0, 2.0), Vector::Zero(2));
  CHECK(off.status == SolveStatus::kUnsolved);
  CHECK(off.limiting_displacement_norm > 1e-6);
  CHECK(!off.witness.has_value());

  // the drift of this instance is already a plateau at a 100-step budget
  const PerturbedVerdict rushed = solve_perturbed(pair, vec2(-3.0, 2.0), Vector::Zero(2), 1e-6, 100);
  CHECK(rushed.status == SolveStatus::kUnsolved);
}

TEST_CASE("a budget too short for slow linear convergence stays inconclusive") {
  // two lines through (3,0) meeting at 20 degrees: the iteration contracts at
  // rate cos(20deg) ~ 0.94, so 100 steps leave a residual ~1e-2 that is still
  // falling fast -- no plateau, no solution yet, and the solver must not
  // claim either
  const double a = 20.0 * M_PI / 180.0;
  Matrix row_a(1, 2), row_b(1, 2);
  row_a << 1.0, 0.0;
  row_b << std::cos(a), std::sin(a);
  const OperatorPair pair(affine_normal_cone(Vector::Zero(2), row_a),
                          affine_normal_cone(vec2(3.0, 0.0), row_b));

  const PerturbedVerdict rushed = solve_perturbed(pair, Vector::Zero(2), vec2(5.0, 5.0), 1e-6, 100);
  CHECK(rushed.status == SolveStatus::kInconclusive);
  CHECK(!rushed.witness.has_value());

  // with a budget that lets the contraction finish, the same instance solves
  // at the intersection point
  const PerturbedVerdict solved =
      solve_perturbed(pair, Vector::Zero(2), vec2(5.0, 5.0), 1e-6, 1000);
  CHECK(solved.status == SolveStatus::kSolved);
  REQUIRE(solved.witness.has_value());
  CHECK((*solved.witness - vec2(3.0, 0.0)).norm() <= 1e-5);
}

TEST_CASE("sum_range_membership matches the ball geometry") {
  // ran(A + B) for the two normal cones contains exactly the vectors that two
  // touching normal directions can produce; (0,0) is attainable (both cones
  // contain 0), a huge vector is too (full ranges), and the solver confirms
  // attainability through a witness.
  const OperatorPair pair = catalog_entry("overlapping_balls").make();
  const PerturbedVerdict zero = sum_range_membership(pair, Vector::Zero(2), Vector::Zero(2));
  CHECK(zero.status == SolveStatus::kSolved);
  const PerturbedVerdict big = sum_range_membership(pair, vec2(7.0, 3.0), Vector::Zero(2));
  CHECK(big.status == SolveStatus::kSolved);
}

TEST_CASE("inclusion solvers validate their inputs") {
  const OperatorPair pair = catalog_entry("disjoint_balls").make();
  CHECK_THROWS_AS(solve_perturbed(pair, Vector::Zero(3), Vector::Zero(2)), std::invalid_argument);
  CHECK_THROWS_AS(solve_perturbed(pair, Vector::Zero(2), Vector::Zero(2), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_perturbed(pair, Vector::Zero(2), Vector::Zero(2), 1e-6, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_displacement_vector(pair, Vector::Zero(2), 50), std::invalid_argument);
}

TEST_CASE("to_string names the solve statuses") {
  CHECK(to_string(SolveStatus::kSolved) == "SOLVED");
  CHECK(to_string(SolveStatus::kUnsolved) == "UNSOLVED");
  CHECK(to_string(SolveStatus::kInconclusive) == "INCONCLUSIVE");
}
