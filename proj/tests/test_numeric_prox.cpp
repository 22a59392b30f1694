#include <doctest.h>

#include "splitrange/numeric_prox.hpp"

#include "oracles.hpp"

using namespace splitrange;

namespace {
Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}
Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST_CASE("grid prox matches the soft threshold for |x|") {
  const BuiltinFunction& f = builtin_function("abs");
  const Box window = Box::cube(1, 8.0);
  for (double x : {3.0, 0.5, -0.2, -4.0}) {
    const double expected = std::abs(x) <= 1.0 ? 0.0 : x - (x > 0 ? 1.0 : -1.0);
    CHECK(numeric_prox(f, vec1(x), window, 14)[0] == doctest::Approx(expected).epsilon(1e-5));
  }
}

TEST_CASE("grid prox matches the closed form for ||x||^2/2") {
  const BuiltinFunction& f = builtin_function("half-sq-norm");
  // closed-form path (prox dispatches to it)
  CHECK(prox(f, vec2(2.0, 2.0), Box::cube(2, 8.0)).isApprox(vec2(1.0, 1.0)));
  // forced grid path agrees to grid accuracy
  const Vector g = numeric_prox(f, vec2(2.0, 2.0), Box::cube(2, 8.0), 12);
  CHECK((g - vec2(1.0, 1.0)).norm() < 1e-4);
}

TEST_CASE("grid prox on the two-branch max function vs dense oracle") {
  const BuiltinFunction& f = builtin_function("sqrt-abs-max");
  const Box window = Box::cube(2, 8.0);

  // frozen oracle values (dense grid-scan argmin, computed independently):
  //  - at (0.3, 0.8) both branches are active at the minimizer
  //  - at (-2.0, 0.5) the sqrt branch dominates, so y2 = x2 exactly
  //  - at (4.0, 0.0) the function is 0 at x, so prox = x
  const Vector p1 = numeric_prox(f, vec2(0.3, 0.8), window, 13);
  CHECK((p1 - vec2(0.584675586686, 0.235359177989)).norm() < 1e-4);
  const Vector p2 = numeric_prox(f, vec2(-2.0, 0.5), window, 13);
  CHECK((p2 - vec2(0.058971129147, 0.5)).norm() < 1e-4);
  const Vector p3 = numeric_prox(f, vec2(4.0, 0.0), window, 13);
  CHECK((p3 - vec2(4.0, 0.0)).norm() < 1e-4);

  // live oracle cross-check at a fresh point
  const Vector q = vec2(1.7, -2.3);
  const Vector lib = numeric_prox(f, q, window, 13);
  const Vector ref = oracles::dense_prox(f, q, window);
  CHECK((lib - ref).norm() < 1e-4);
}

TEST_CASE("grid prox throws when the window cannot hold the minimizer") {
  const BuiltinFunction& f = builtin_function("abs");
  // true prox of |.| at 100 is 99, far outside [-2, 2]
  CHECK_THROWS_AS(numeric_prox(f, vec1(100.0), Box::cube(1, 2.0), 10), std::runtime_error);
}
