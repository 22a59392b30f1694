#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace splitrange {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Axis-aligned box. Used as the sampling window whenever an unbounded set
/// has to be probed with finitely many points.
struct Box {
  Vector lo;
  Vector hi;

  int dim() const { return static_cast<int>(lo.size()); }

  /// [-half_width, half_width]^dim
  static Box cube(int dim, double half_width) {
    if (dim <= 0) throw std::invalid_argument("Box::cube: dim must be positive");
    if (!(half_width > 0)) throw std::invalid_argument("Box::cube: half_width must be positive");
    Box b;
    b.lo = Vector::Constant(dim, -half_width);
    b.hi = Vector::Constant(dim, half_width);
    return b;
  }

  bool contains(const Vector& x, double tol = 0.0) const {
    return (x.array() >= lo.array() - tol).all() && (x.array() <= hi.array() + tol).all();
  }

  /// Componentwise clamp, i.e. the metric projection onto the box.
  Vector clamp(const Vector& x) const {
    return x.array().max(lo.array()).min(hi.array()).matrix();
  }

  Vector center() const { return 0.5 * (lo + hi); }

  double diameter() const { return (hi - lo).norm(); }

  /// Box with the same center, scaled edge lengths.
  Box scaled(double factor) const {
    Box b;
    Vector c = center();
    b.lo = c + factor * (lo - c);
    b.hi = c + factor * (hi - c);
    return b;
  }
};

/// Deterministic random source. All randomness in the library flows through
/// this class; the raw 64-bit stream comes from SplitMix64, and doubles use
/// the top 53 bits, so sequences are reproducible across platforms and
/// standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  Vector in_box(const Box& box) {
    Vector x(box.dim());
    for (int i = 0; i < box.dim(); ++i) x[i] = uniform(box.lo[i], box.hi[i]);
    return x;
  }

  /// Standard normal via Box-Muller (built on uniform() for determinism).
  double gaussian() {
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  Vector gaussian_vector(int dim) {
    Vector x(dim);
    for (int i = 0; i < dim; ++i) x[i] = gaussian();
    return x;
  }

  /// Uniform direction on the unit sphere.
  Vector unit_vector(int dim) {
    Vector g = gaussian_vector(dim);
    double n = g.norm();
    while (n < 1e-12) {
      g = gaussian_vector(dim);
      n = g.norm();
    }
    return g / n;
  }

 private:
  std::uint64_t state_;
};

/// A finite batch of points, one per column. `witnesses` optionally records
/// how each point was constructed (e.g. the two Minkowski summands, or the
/// input that was pushed through a map); each witness matrix is aligned
/// column-for-column with `pts`.
struct PointCloud {
  Matrix pts;
  std::vector<Matrix> witnesses;

  PointCloud() = default;
  explicit PointCloud(Matrix p) : pts(std::move(p)) {}

  int dim() const { return static_cast<int>(pts.rows()); }
  int size() const { return static_cast<int>(pts.cols()); }

  bool all_finite() const { return pts.allFinite(); }
};

}  // namespace splitrange
