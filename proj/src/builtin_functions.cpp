#include "splitrange/builtin_functions.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace splitrange {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::map<std::string, BuiltinFunction> make_catalog() {
  std::map<std::string, BuiltinFunction> cat;

  {
    BuiltinFunction f;
    f.name = "half-sq-norm";
    f.dim = 0;
    f.value = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
    f.closed_form_prox = [](const Vector& x) { return Vector(0.5 * x); };
    f.subdiff_domain = [](int d) { return std::optional<Cylinder>(Cylinder::whole_space(d)); };
    f.subdiff_range = [](int d) { return std::optional<Cylinder>(Cylinder::whole_space(d)); };
    f.finite_point = [](int d) { return Vector(Vector::Zero(d)); };
    cat[f.name] = f;
  }

  {
    BuiltinFunction f;
    f.name = "euclidean-norm";
    f.dim = 0;
    f.value = [](const Vector& x) { return x.norm(); };
    // Block soft threshold: shrink the norm by 1, clamping at the origin.
    f.closed_form_prox = [](const Vector& x) {
      double n = x.norm();
      if (n <= 1.0) return Vector(Vector::Zero(x.size()));
      return Vector(((n - 1.0) / n) * x);
    };
    f.subdiff_domain = [](int d) { return std::optional<Cylinder>(Cylinder::whole_space(d)); };
    // ran ∂||.|| is the closed unit ball.
    f.subdiff_range = [](int d) {
      return std::optional<Cylinder>(Cylinder::ball(Vector::Zero(d), 1.0));
    };
    f.finite_point = [](int d) { return Vector(Vector::Zero(d)); };
    cat[f.name] = f;
  }

  {
    BuiltinFunction f;
    f.name = "abs";
    f.dim = 1;
    f.value = [](const Vector& x) { return std::abs(x[0]); };
    f.closed_form_prox = [](const Vector& x) {
      Vector y(1);
      y[0] = x[0] > 1.0 ? x[0] - 1.0 : (x[0] < -1.0 ? x[0] + 1.0 : 0.0);
      return y;
    };
    f.subdiff_domain = [](int d) { return std::optional<Cylinder>(Cylinder::whole_space(d)); };
    f.subdiff_range = [](int d) {
      return std::optional<Cylinder>(Cylinder::ball(Vector::Zero(d), 1.0));
    };
    f.finite_point = [](int d) { return Vector(Vector::Zero(d)); };
    cat[f.name] = f;
  }

  {
    // f(x1, x2) = max{1 - sqrt(x1), |x2|} on {x1 >= 0}, +inf elsewhere.
    // No closed-form prox in the catalog; handled by the grid solver.
    BuiltinFunction f;
    f.name = "sqrt-abs-max";
    f.dim = 2;
    f.value = [](const Vector& x) {
      if (x[0] < 0.0) return kInf;
      return std::max(1.0 - std::sqrt(x[0]), std::abs(x[1]));
    };
    f.subdiff_domain = [](int) { return std::optional<Cylinder>(); };
    f.subdiff_range = [](int) { return std::optional<Cylinder>(); };
    // f(1, 0) = 0.
    f.finite_point = [](int) {
      Vector p(2);
      p << 1.0, 0.0;
      return p;
    };
    cat[f.name] = f;
  }

  return cat;
}

const std::map<std::string, BuiltinFunction>& catalog() {
  static const std::map<std::string, BuiltinFunction> cat = make_catalog();
  return cat;
}

}  // namespace

const BuiltinFunction& builtin_function(const std::string& name) {
  auto it = catalog().find(name);
  if (it == catalog().end())
    throw std::invalid_argument("builtin_function: unknown function '" + name + "'");
  return it->second;
}

std::vector<std::string> builtin_function_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : catalog()) names.push_back(k);
  return names;
}

}  // namespace splitrange
