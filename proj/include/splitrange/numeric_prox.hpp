#pragma once

#include "splitrange/builtin_functions.hpp"
#include "splitrange/types.hpp"

namespace splitrange {

/// Proximal point of f at x: the minimizer of f(y) + ||y - x||^2 / 2 over the
/// window, located by recursive 3-points-per-axis grid refinement followed by
/// a compass-search polish over the full stencil direction set. Intended for
/// low dimensions (<= 3); the cost per level is 3^dim evaluations.
///
/// `depth` controls the grid phase (final cell about diameter * 3^(-depth));
/// the polish then drives the objective value to near machine precision for
/// convex f, including kinked objectives whose valley curves between grid
/// points. Position accuracy is about sqrt(machine eps) (~1e-6 relative)
/// where the objective is kinked and far better where it is smooth. Throws
/// std::runtime_error if the minimizer ends up pinned to the window boundary
/// (window too small) or if f is +inf on the entire window.
Vector numeric_prox(const BuiltinFunction& f, const Vector& x, const Box& window, int depth = 10);

/// Prox of a catalog function: the closed form when the function has one,
/// the grid solver otherwise.
Vector prox(const BuiltinFunction& f, const Vector& x, const Box& window, int depth = 10);

}  // namespace splitrange
