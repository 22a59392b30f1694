#pragma once

#include <utility>

#include "splitrange/sets.hpp"
#include "splitrange/types.hpp"

namespace splitrange {

/// Empirical support function of a cloud over a fixed direction set.
struct SupportProfile {
  Matrix directions;  // unit vectors, one per column
  Vector values;      // max_{p in cloud} <p, direction>
  Box window;
};

/// Direction set used by all support comparisons: n_random seeded unit
/// vectors plus the 2*dim signed axis directions.
Matrix support_directions(int dim, int n_random, std::uint64_t seed);

/// Support values of the cloud over the direction set. Points are clamped
/// into the window first, so unbounded sets are compared on equal footing
/// within the region of interest.
SupportProfile support_profile(const PointCloud& cloud, int n_random_directions, const Box& window,
                               std::uint64_t seed = 0);

/// Directional Hausdorff estimate: the largest |h_C(d) - h_D(d)| over a
/// shared direction set, after clamping both clouds into the window. For
/// convex bodies this converges (in the direction count) to the Hausdorff
/// distance; in general it is a pseudometric — it can vanish for different
/// nonconvex sets, which is exactly the resolution this library needs.
double hausdorff_estimate(const PointCloud& C, const PointCloud& D, int n_random_directions,
                          const Box& window, std::uint64_t seed = 0);

struct NearEqualityReport {
  bool verdict = false;
  double max_support_gap = 0.0;
  Vector worst_direction;
  std::pair<int, int> affine_dims{0, 0};
  double tolerance_used = 0.0;
  Box window;
};

/// Decide whether two sampled sets are "nearly equal", i.e. have the same
/// closure up to tolerance.
///
/// Near equality of sets is closure equality: two sets count as equal when
/// cl C = cl D. For the nearly convex sets this library produces (ranges and
/// domains of monotone operators, their sums and differences), closures are
/// convex, so closure equality is decided by support functions: the verdict
/// is true iff the worst direction-wise support gap stays within tol AND the
/// affine hull dimensions agree. Callers feeding genuinely nonconvex clouds
/// are outside that contract; the support test then compares convex hulls.
/// A default-constructed (empty) window means [-10, 10]^dim.
NearEqualityReport near_equal(const PointCloud& C, const PointCloud& D, double tol = 0.05,
                              int n_random_directions = 128, const Box& window = Box{});

struct AffineHull {
  Vector base;   // centroid of the cloud
  Matrix basis;  // orthonormal directions, one per column
  int dim = 0;
};

/// Affine hull of a cloud by SVD of the centered points: dimensions with a
/// singular value above rel_tol * (largest singular value) count.
AffineHull affine_hull(const PointCloud& cloud, double rel_tol = 1e-6);

/// Polar cone of the recession cone of an exact closed-form set. For the
/// cylinder family the recession cone is the spanning subspace, so the polar
/// is its orthogonal complement (the whole space for bounded sets).
/// Throws std::invalid_argument for sampled descriptors.
SetDescriptor recession_polar(const SetDescriptor& set);

}  // namespace splitrange
