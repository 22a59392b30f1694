#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "splitrange/sets.hpp"
#include "splitrange/types.hpp"

namespace splitrange {

/// A convex function from the builtin catalog, used to realize
/// subdifferential operators through their proximal maps.
///
/// `closed_form_prox` is set when the prox is known analytically; otherwise
/// the grid solver in numeric_prox.hpp applies. `subdiff_domain` /
/// `subdiff_range` carry the exact dom/ran of the subdifferential when those
/// are closed-form (they are what the operator descriptor advertises).
struct BuiltinFunction {
  std::string name;
  int dim = 0;  // 0 = any dimension
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> closed_form_prox;
  std::function<std::optional<Cylinder>(int)> subdiff_domain;  // by ambient dim
  std::function<std::optional<Cylinder>(int)> subdiff_range;
  // A point where f is finite and small; lets callers bound how far a
  // proximal minimizer can sit from the query point.
  std::function<Vector(int)> finite_point;
};

/// Look up a catalog function by name. Known names:
///   "half-sq-norm"    f(x) = ||x||^2 / 2          (any dim)
///   "euclidean-norm"  f(x) = ||x||                (any dim)
///   "abs"             f(x) = |x|                  (dim 1)
///   "sqrt-abs-max"    f(x1,x2) = max{1 - sqrt(x1), |x2|}, +inf for x1 < 0
/// Throws std::invalid_argument for unknown names.
const BuiltinFunction& builtin_function(const std::string& name);

std::vector<std::string> builtin_function_names();

}  // namespace splitrange
