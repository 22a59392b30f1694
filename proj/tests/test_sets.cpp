#include <doctest.h>

#include "splitrange/sets.hpp"

using namespace splitrange;

namespace {
Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST_CASE("Cylinder factories and distances") {
  const Cylinder ball = Cylinder::ball(vec2(1.0, 0.0), 2.0);
  CHECK(ball.span_rank() == 0);
  CHECK(ball.distance(vec2(1.0, 1.0)) == 0.0);
  CHECK(ball.distance(vec2(5.0, 0.0)) == doctest::Approx(2.0));
  CHECK(ball.project(vec2(5.0, 0.0)).isApprox(vec2(3.0, 0.0)));

  const Cylinder point = Cylinder::singleton(vec2(2.0, 3.0));
  CHECK(point.distance(vec2(2.0, 3.0)) == 0.0);
  CHECK(point.distance(vec2(2.0, 5.0)) == doctest::Approx(2.0));

  Matrix row(1, 2);
  row << 3.0, 0.0;  // non-orthonormal spanning row
  const Cylinder line = Cylinder::affine(vec2(0.0, 1.0), row);
  CHECK(line.span_rank() == 1);
  CHECK(line.distance(vec2(7.0, 1.0)) == 0.0);
  CHECK(line.distance(vec2(7.0, 4.0)) == doctest::Approx(3.0));

  const Cylinder all = Cylinder::whole_space(2);
  CHECK(all.is_whole_space());
  CHECK(all.distance(vec2(1e6, -1e6)) == 0.0);
  CHECK(!ball.is_whole_space());

  CHECK_THROWS_AS(Cylinder::ball(vec2(0, 0), -1.0), std::invalid_argument);
}

TEST_CASE("Cylinder negated and translated") {
  const Cylinder ball = Cylinder::ball(vec2(1.0, 2.0), 0.5);
  CHECK(ball.negated().base.isApprox(vec2(-1.0, -2.0)));
  CHECK(ball.negated().radius == 0.5);
  CHECK(ball.translated(vec2(1.0, 1.0)).base.isApprox(vec2(2.0, 3.0)));
}

TEST_CASE("Cylinder Minkowski sum and difference") {
  const Cylinder a = Cylinder::ball(vec2(0.0, 0.0), 1.0);
  const Cylinder b = Cylinder::ball(vec2(3.0, 0.0), 1.0);
  const Cylinder diff = Cylinder::difference(a, b);  // ball(-3, 0; 2)
  CHECK(diff.base.isApprox(vec2(-3.0, 0.0)));
  CHECK(diff.radius == doctest::Approx(2.0));
  CHECK(diff.span_rank() == 0);

  Matrix row(1, 2);
  row << 1.0, 0.0;
  const Cylinder line = Cylinder::affine(vec2(0.0, 0.0), row);
  const Cylinder tube = Cylinder::sum(a, line);  // strip |y| <= 1
  CHECK(tube.span_rank() == 1);
  CHECK(tube.radius == doctest::Approx(1.0));
  CHECK(tube.distance(vec2(100.0, 0.5)) == 0.0);
  CHECK(tube.distance(vec2(0.0, 3.0)) == doctest::Approx(2.0));

  // line + orthogonal line = plane
  Matrix col_row(1, 2);
  col_row << 0.0, 1.0;
  const Cylinder other = Cylinder::affine(vec2(0.0, 0.0), col_row);
  CHECK(Cylinder::sum(line, other).is_whole_space());

  CHECK_THROWS_AS(Cylinder::sum(a, Cylinder::ball(Vector::Zero(3), 1.0)), std::invalid_argument);
}

TEST_CASE("exact_set descriptor: membership, sampler, affine basis") {
  const Cylinder ball = Cylinder::ball(vec2(1.0, 0.0), 2.0);
  const SetDescriptor s = exact_set(ball);
  CHECK(s.kind == SetKind::kExact);
  CHECK(s.dim == 2);
  CHECK(s.membership(vec2(1.0, 1.0), 0.0));
  CHECK(!s.membership(vec2(5.0, 0.0), 1.0));
  CHECK(s.membership(vec2(3.5, 0.0), 0.6));  // within tolerance of the boundary
  REQUIRE(s.exact.has_value());
  CHECK(s.exact->radius == 2.0);

  const PointCloud cloud = s.sampler(200, Box::cube(2, 10.0), 3);
  CHECK(cloud.size() == 200);
  for (int j = 0; j < cloud.size(); ++j) CHECK(ball.distance(cloud.pts.col(j)) < 1e-9);
}

TEST_CASE("sampled_set measures membership against its reference cloud") {
  auto sampler = [](int count, const Box& window, std::uint64_t seed) {
    Rng rng(seed);
    Matrix pts(2, count);
    for (int j = 0; j < count; ++j) {
      const Vector x = rng.in_box(window);
      pts.col(j) = project_ball(x, Vector(Vector::Zero(2)), 1.0);
    }
    return PointCloud(std::move(pts));
  };
  const SetDescriptor s = sampled_set(2, sampler, Box::cube(2, 5.0));
  CHECK(s.kind == SetKind::kSampled);
  CHECK(!s.exact.has_value());
  CHECK(s.membership(vec2(0.5, 0.0), 0.05));
  CHECK(!s.membership(vec2(3.0, 0.0), 0.05));
}

TEST_CASE("negated and translated descriptors transform membership") {
  const SetDescriptor ball = exact_set(Cylinder::ball(vec2(2.0, 0.0), 1.0));
  const SetDescriptor neg = negated(ball);
  CHECK(neg.membership(vec2(-2.0, 0.0), 0.0));
  CHECK(!neg.membership(vec2(2.0, 0.0), 0.5));
  REQUIRE(neg.exact.has_value());
  CHECK(neg.exact->base.isApprox(vec2(-2.0, 0.0)));

  const SetDescriptor moved = translated(ball, vec2(0.0, 3.0));
  CHECK(moved.membership(vec2(2.0, 3.0), 0.0));
  REQUIRE(moved.exact.has_value());
  CHECK(moved.exact->base.isApprox(vec2(2.0, 3.0)));

  const SetDescriptor all = whole_space_set(2);
  CHECK(all.membership(vec2(1e8, -1e8), 0.0));
  REQUIRE(all.exact.has_value());
  CHECK(all.exact->is_whole_space());
}
