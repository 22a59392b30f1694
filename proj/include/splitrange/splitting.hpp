#pragma once

#include <functional>
#include <vector>

#include "splitrange/operators.hpp"

namespace splitrange {

/// An ordered pair of monotone operators on the same space. Order matters:
/// the splitting map of (A, B) and of (B, A) differ.
struct OperatorPair {
  OperatorDescriptor A;
  OperatorDescriptor B;

  OperatorPair(OperatorDescriptor a, OperatorDescriptor b) : A(std::move(a)), B(std::move(b)) {
    if (A.dim != B.dim) throw std::invalid_argument("OperatorPair: operators have different dimensions");
  }

  int dim() const { return A.dim; }
};

/// The Douglas-Rachford splitting operator of the pair,
///   T x = x - J_A x + J_B(2 J_A x - x),
/// which agrees with the averaged form (Id + R_B R_A) / 2. T is firmly
/// nonexpansive; its fixed points project (via J_A) onto the zeros of A + B.
Vector dr_map(const OperatorPair& pair, const Vector& x);

/// The dual pair (A^{-1}, B^{-v}). Its splitting operator coincides with the
/// primal one (self-duality), which the test suites verify pointwise.
OperatorPair attouch_thera_dual(const OperatorPair& pair);

/// Splitting map assembled directly from two firmly nonexpansive maps
/// (resolvents in disguise): x -> T2(2 T1 x - x) + x - T1 x.
std::function<Vector(const Vector&)> dr_from_firmly_nonexpansive(
    std::function<Vector(const Vector&)> T1, std::function<Vector(const Vector&)> T2);

/// History of a splitting iteration x_{n+1} = T x_n.
///
/// `displacement_norms` holds ||x_n - x_{n+1}|| for every iteration taken.
/// The vector histories (`governing` = x_n, `shadow` = J_A x_n,
/// `displacement` = x_n - x_{n+1}) are recorded every `stride` iterations
/// (stride 1 = full history).
struct DRTrace {
  std::vector<Vector> governing;
  std::vector<Vector> shadow;
  std::vector<Vector> displacement;
  std::vector<double> displacement_norms;
  int iterations = 0;
  int stride = 1;
  Vector final_x;            // the last iterate produced, x_N
  Vector final_shadow;       // J_A of the last point the map was evaluated at
  Vector final_displacement; // last (x_n - x_{n+1})
};

/// Iterate the splitting operator from x0 for at most max_iter steps.
/// Stops early once the displacement norm is below stop_tol AND changed by
/// less than stop_tol since the previous iteration (both together: small and
/// settled). Pass stop_tol = 0 to always run max_iter steps. Throws
/// std::runtime_error if an iterate stops being finite.
DRTrace dr_iterate(const OperatorPair& pair, const Vector& x0, int max_iter, double stop_tol,
                   int stride = 1);

}  // namespace splitrange
