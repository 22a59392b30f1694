#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "splitrange/project.hpp"
#include "splitrange/types.hpp"

namespace splitrange {

/// Exact closed-form set: all points within `radius` of the affine subspace
/// base + span(basis). One type covers every closed form the library
/// propagates exactly:
///   - basis empty, radius r      -> ball
///   - radius 0                   -> affine subspace (point, line, plane, ...)
///   - basis square               -> the whole space
/// The family is closed under negation, translation and Minkowski sums,
/// which is what makes exact propagation through set arithmetic possible.
struct Cylinder {
  Vector base;
  Matrix basis;  // orthonormal columns; may have 0 columns
  double radius = 0.0;

  int dim() const { return static_cast<int>(base.size()); }
  int span_rank() const { return static_cast<int>(basis.cols()); }
  bool is_whole_space() const { return span_rank() == dim(); }

  double distance(const Vector& x) const {
    Vector rel = x - base;
    double across = (rel - project_span(rel, basis)).norm();
    return across > radius ? across - radius : 0.0;
  }

  Vector project(const Vector& x) const { return project_cylinder(x, base, basis, radius); }

  Cylinder negated() const { return Cylinder{-base, basis, radius}; }

  Cylinder translated(const Vector& t) const { return Cylinder{base + t, basis, radius}; }

  /// Minkowski sum: (a.base + span_a + r_a B) + (b.base + span_b + r_b B).
  static Cylinder sum(const Cylinder& a, const Cylinder& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("Cylinder::sum: dimension mismatch");
    Matrix joint(a.dim(), a.span_rank() + b.span_rank());
    joint << a.basis, b.basis;
    return Cylinder{a.base + b.base, orthonormal_columns(joint), a.radius + b.radius};
  }

  /// Minkowski difference a + (-b).
  static Cylinder difference(const Cylinder& a, const Cylinder& b) { return sum(a, b.negated()); }

  static Cylinder ball(const Vector& center, double radius) {
    if (radius < 0) throw std::invalid_argument("Cylinder::ball: negative radius");
    return Cylinder{center, Matrix(center.size(), 0), radius};
  }

  static Cylinder singleton(const Vector& p) { return ball(p, 0.0); }

  /// Affine subspace through `base` spanned by the rows of `span_rows`
  /// (not necessarily orthonormal; orthonormalized here).
  static Cylinder affine(const Vector& base, const Matrix& span_rows) {
    if (span_rows.cols() != base.size())
      throw std::invalid_argument("Cylinder::affine: span rows must match base dimension");
    return Cylinder{base, orthonormal_columns(span_rows.transpose()), 0.0};
  }

  static Cylinder subspace(const Matrix& orthonormal_basis) {
    return Cylinder{Vector::Zero(orthonormal_basis.rows()), orthonormal_basis, 0.0};
  }

  static Cylinder whole_space(int dim) {
    return Cylinder{Vector::Zero(dim), Matrix::Identity(dim, dim), 0.0};
  }
};

enum class SetKind { kExact, kSampled };

/// A set known either in closed form (kind == kExact, `exact` holds the
/// cylinder) or only through a sampler (kind == kSampled).
///
/// Membership semantics differ by kind: exact sets test true distance;
/// sampled sets test distance to a fixed reference cloud, so the usable
/// tolerance is limited by that cloud's resolution.
struct SetDescriptor {
  int dim = 0;
  SetKind kind = SetKind::kSampled;
  std::function<bool(const Vector&, double)> membership;           // (point, tol)
  std::function<PointCloud(int, const Box&, std::uint64_t)> sampler;  // (count, window, seed)
  std::optional<Cylinder> exact;
  std::optional<Matrix> affine_basis;  // orthonormal basis of the affine hull, when known
};

/// Descriptor for a closed-form set. The sampler mixes interior-uniform and
/// boundary points so that support functions of the sample track the set's
/// support functions closely.
SetDescriptor exact_set(const Cylinder& c);

/// Descriptor known only through `sampler`. Membership is measured against a
/// reference cloud of `ref_count` points drawn once in `ref_window`.
SetDescriptor sampled_set(int dim, std::function<PointCloud(int, const Box&, std::uint64_t)> sampler,
                          const Box& ref_window, int ref_count = 4096, std::uint64_t ref_seed = 0);

/// Image of the set under x -> -x.
SetDescriptor negated(const SetDescriptor& s);

/// Image of the set under x -> x + t.
SetDescriptor translated(const SetDescriptor& s, const Vector& t);

SetDescriptor whole_space_set(int dim);

}  // namespace splitrange
