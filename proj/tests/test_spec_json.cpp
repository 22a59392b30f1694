#include <doctest.h>

#include <string>

#include "splitrange/spec_json.hpp"

using namespace splitrange;
using nlohmann::json;

namespace {
Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// the thrown message must point at the offending field
template <typename Fn>
void check_throws_naming(Fn&& fn, const std::string& field) {
  try {
    fn();
    FAIL("expected std::invalid_argument naming '" << field << "'");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find(field) != std::string::npos);
  }
}
}  // namespace

TEST_CASE("ball spec builds the projection resolvent") {
  const json spec = {{"kind", "ball"}, {"center", {1.0, 0.0}}, {"radius", 2.0}};
  const OperatorDescriptor op = operator_from_spec(spec);
  CHECK(op.dim == 2);
  CHECK(resolvent(op, vec2(6.0, 0.0)).isApprox(vec2(3.0, 0.0)));
}

TEST_CASE("affine-subspace, linear and prox specs match direct construction") {
  const json affine = {{"kind", "affine-subspace"},
                       {"base", {0.0, 1.0}},
                       {"basis", {{1.0, 0.0}}}};
  CHECK(resolvent(operator_from_spec(affine), vec2(3.0, 4.0)).isApprox(vec2(3.0, 1.0)));

  const json lin = {{"kind", "linear"}, {"matrix", {{0.0, -1.0}, {1.0, 0.0}}}};
  CHECK(resolvent(operator_from_spec(lin), vec2(1.0, 1.0)).isApprox(vec2(1.0, 0.0)));

  const json prox_spec = {{"kind", "prox"}, {"function", "euclidean-norm"}, {"dim", 2}};
  CHECK(resolvent(operator_from_spec(prox_spec), vec2(3.0, 4.0)).isApprox(vec2(2.4, 3.2)));
}

TEST_CASE("combinator specs nest") {
  const json inner = {{"kind", "ball"}, {"center", {3.0, 0.0}}, {"radius", 1.0}};
  const json vee_spec = {{"kind", "vee"}, {"inner", inner}};
  CHECK(resolvent(operator_from_spec(vee_spec), vec2(-5.0, 0.0)).isApprox(vec2(-4.0, 0.0)));

  const json inv_spec = {{"kind", "inverse"}, {"inner", inner}};
  CHECK(resolvent(operator_from_spec(inv_spec), vec2(5.0, 0.0)).isApprox(vec2(1.0, 0.0)));

  const json shifted = {{"kind", "shift-inner"},
                        {"inner", {{"kind", "ball"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}},
                        {"shift", {2.0, 0.0}}};
  CHECK(resolvent(operator_from_spec(shifted), vec2(7.0, 0.0)).isApprox(vec2(3.0, 0.0)));
}

TEST_CASE("fne specs: identity needs dim, matrices wrap directly") {
  const json ident = {{"kind", "fne"}, {"map", "identity"}, {"dim", 2}};
  CHECK(resolvent(operator_from_spec(ident), vec2(3.0, -1.0)).isApprox(vec2(3.0, -1.0)));

  const json half = {{"kind", "fne"}, {"map", {{0.5, 0.0}, {0.0, 0.5}}}};
  CHECK(resolvent(operator_from_spec(half), vec2(4.0, 2.0)).isApprox(vec2(2.0, 1.0)));
}

TEST_CASE("malformed specs throw naming the field") {
  check_throws_naming([] { operator_from_spec(json{{"kind", "ball"}, {"center", {0.0, 0.0}}}); },
                      "radius");
  check_throws_naming(
      [] {
        operator_from_spec(json{{"kind", "ball"}, {"center", {0.0, 0.0}}, {"radius", -1.0}});
      },
      "radius");
  check_throws_naming([] { operator_from_spec(json{{"kind", "ball"}, {"radius", 1.0}}); },
                      "center");
  check_throws_naming([] { operator_from_spec(json{{"center", {0.0, 0.0}}, {"radius", 1.0}}); },
                      "kind");
  check_throws_naming([] { operator_from_spec(json{{"kind", "widget"}}); }, "kind");
  // ragged matrix rows
  check_throws_naming(
      [] { operator_from_spec(json{{"kind", "linear"}, {"matrix", {{1.0, 0.0}, {0.0}}}}); },
      "matrix");
  // dimension-generic prox function without a dim
  check_throws_naming(
      [] { operator_from_spec(json{{"kind", "prox"}, {"function", "euclidean-norm"}}); }, "dim");
  // fne identity without a dim
  check_throws_naming([] { operator_from_spec(json{{"kind", "fne"}, {"map", "identity"}}); },
                      "dim");
  check_throws_naming([] { operator_from_spec(json{{"kind", "inverse"}}); }, "inner");
}

TEST_CASE("pair specs and files") {
  const json pair_spec = {
      {"A", {{"kind", "ball"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}},
      {"B", {{"kind", "ball"}, {"center", {3.0, 0.0}}, {"radius", 1.0}}}};
  const OperatorPair pair = pair_from_spec(pair_spec);
  CHECK(pair.dim() == 2);

  check_throws_naming(
      [] { pair_from_spec(json{{"A", {{"kind", "ball"}, {"center", {0.0}}, {"radius", 1.0}}}}); },
      "B");

  // mismatched dimensions are rejected by the pair constructor
  const json mismatched = {
      {"A", {{"kind", "ball"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}},
      {"B", {{"kind", "ball"}, {"center", {0.0, 0.0, 0.0}}, {"radius", 1.0}}}};
  CHECK_THROWS_AS(pair_from_spec(mismatched), std::invalid_argument);

  CHECK_THROWS_AS(load_pair_file("/nonexistent/path/pair.json"), std::runtime_error);
}

TEST_CASE("parse_vector_string") {
  const Vector v = parse_vector_string("1.5,-2,0.25");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.5);
  CHECK(v[1] == -2.0);
  CHECK(v[2] == 0.25);
  CHECK(parse_vector_string("-3,2").isApprox(vec2(-3.0, 2.0)));
  CHECK_THROWS_AS(parse_vector_string(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_vector_string("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_vector_string("1;2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_vector_string("1,2x"), std::invalid_argument);
}
