#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "splitrange/builtin_functions.hpp"
#include "splitrange/numeric_prox.hpp"
#include "splitrange/sets.hpp"
#include "splitrange/types.hpp"

namespace splitrange {

struct OperatorFlags {
  bool is_3star = false;          // rectangular / Brezis-Haraux class
  bool is_linear = false;
  bool is_subdifferential = false;
};

/// A maximally monotone operator, represented by its resolvent
/// J = (Id + A)^{-1}. The resolvent of a maximally monotone operator is a
/// total, single-valued, firmly nonexpansive map, so a plain function is a
/// faithful representation -- multivalued graphs never appear. Everything
/// the library derives (inverse, reflections, duals, shifts) is a resolvent
/// identity applied to this map.
///
/// `domain` and `range` describe dom A and ran A. They are exact when the
/// operator is built from closed-form pieces and sampled otherwise; the
/// sampled versions are generated through the parametrization
///   dom A = J(X),   ran A = (Id - J)(X),
/// i.e. by pushing window samples through the resolvent.
struct OperatorDescriptor {
  int dim = 0;
  std::function<Vector(const Vector&)> resolvent_map;
  SetDescriptor domain;
  SetDescriptor range;
  OperatorFlags flags;
  nlohmann::json provenance;  // construction expression, for reports
};

/// J_A x. Validates dimensions.
Vector resolvent(const OperatorDescriptor& op, const Vector& x);

/// R_A x = 2 J_A x - x.
Vector reflected_resolvent(const OperatorDescriptor& op, const Vector& x);

/// A^{-1}, via J_{A^{-1}} = Id - J_A. Domain and range swap.
OperatorDescriptor inverse(const OperatorDescriptor& op);

/// A^v = (-Id) o A o (-Id), via J_{A^v} x = -J_A(-x). Domain and range negate.
OperatorDescriptor vee(const OperatorDescriptor& op);

/// x -> A(x - w), via J x = w + J_A(x - w). Domain translates by +w.
OperatorDescriptor shift_inner(const OperatorDescriptor& op, const Vector& w);

/// x -> A x - w, via J x = J_A(x + w). Range translates by -w.
OperatorDescriptor shift_outer(const OperatorDescriptor& op, const Vector& w);

// ---- Builders ----

/// Normal cone of the closed ball B(center, radius); resolvent = projection.
OperatorDescriptor ball_normal_cone(const Vector& center, double radius);

/// Normal cone of the affine subspace base + row-span(span_rows);
/// resolvent = affine projection. A 0-row matrix gives the singleton {base}.
OperatorDescriptor affine_normal_cone(const Vector& base, const Matrix& span_rows);

/// Linear operator x -> M x. Requires the symmetric part of M to be positive
/// semidefinite (monotonicity); throws std::invalid_argument otherwise.
/// The resolvent solves (Id + M) y = x by a cached LU factorization.
OperatorDescriptor linear_operator(const Matrix& M, double psd_tol = 1e-9);

/// Subdifferential of a catalog function, realized through its prox.
/// dom/ran descriptors are exact when the catalog knows them, else sampled.
OperatorDescriptor subdifferential_operator(const BuiltinFunction& f, int dim,
                                            const Box& prox_window, int prox_depth = 12);

/// The operator A = T^{-1} - Id whose resolvent is the given firmly
/// nonexpansive map T. Firm nonexpansiveness is not verified here (the
/// property suites report violations); dom/ran are sampled from T.
OperatorDescriptor firmly_nonexpansive_wrapper(std::function<Vector(const Vector&)> T, int dim,
                                               const Box& sample_window);

// ---- Diagnostics used by tests and property suites ----

/// Largest violation of the firm nonexpansiveness inequality
///   ||Jx-Jy||^2 + ||(Id-J)x-(Id-J)y||^2 <= ||x-y||^2
/// over `pairs` random pairs in the window. Nonpositive means it held.
double max_firm_nonexpansiveness_violation(const std::function<Vector(const Vector&)>& J, int dim,
                                           const Box& window, int pairs, std::uint64_t seed);

/// Whether the matrix of a linear monotone operator is rectangular (3*
/// monotone): ran M + ran M^T must lie inside ran of the symmetric part.
bool linear_is_3star(const Matrix& M, double tol = 1e-9);

}  // namespace splitrange
