#include "splitrange/sets.hpp"

#include <memory>
#include <utility>

namespace splitrange {

namespace {

// Sample a cylinder inside (roughly) the window: uniform coefficients along
// the spanning directions, and a mixture of interior-uniform and boundary
// points across them. Boundary points keep the sampled support function
// tight; without them the empirical support of e.g. a ball underestimates
// the true one by an order-statistics gap.
PointCloud sample_cylinder(const Cylinder& c, int count, const Box& window, std::uint64_t seed) {
  Rng rng(seed);
  const int d = c.dim();
  const int k = c.span_rank();
  const int perp = d - k;
  double extent = 0.0;
  for (int i = 0; i < window.dim(); ++i)
    extent = std::max(extent, std::max(std::abs(window.lo[i]), std::abs(window.hi[i])));
  extent *= std::sqrt(static_cast<double>(d));

  Matrix pts(d, count);
  for (int j = 0; j < count; ++j) {
    Vector x = c.base;
    for (int i = 0; i < k; ++i) x += rng.uniform(-extent, extent) * c.basis.col(i);
    if (perp > 0 && c.radius > 0) {
      // Direction in the orthogonal complement, scaled either to the surface
      // (half the draws) or uniformly into the ball.
      Vector g = rng.gaussian_vector(d);
      Vector across = g - project_span(g, c.basis);
      double n = across.norm();
      if (n > 1e-14) {
        double scale = c.radius;
        if (rng.uniform() < 0.5)
          scale *= std::pow(rng.uniform(), 1.0 / static_cast<double>(perp));
        x += (scale / n) * across;
      }
    }
    pts.col(j) = x;
  }
  return PointCloud(std::move(pts));
}

}  // namespace

SetDescriptor exact_set(const Cylinder& c) {
  SetDescriptor s;
  s.dim = c.dim();
  s.kind = SetKind::kExact;
  s.exact = c;
  s.membership = [c](const Vector& x, double tol) { return c.distance(x) <= tol; };
  s.sampler = [c](int count, const Box& window, std::uint64_t seed) {
    return sample_cylinder(c, count, window, seed);
  };
  if (c.radius == 0.0)
    s.affine_basis = c.basis;
  else
    s.affine_basis = Matrix::Identity(c.dim(), c.dim());
  return s;
}

SetDescriptor sampled_set(int dim, std::function<PointCloud(int, const Box&, std::uint64_t)> sampler,
                          const Box& ref_window, int ref_count, std::uint64_t ref_seed) {
  SetDescriptor s;
  s.dim = dim;
  s.kind = SetKind::kSampled;
  s.sampler = sampler;
  auto ref = std::make_shared<PointCloud>(sampler(ref_count, ref_window, ref_seed));
  s.membership = [ref](const Vector& x, double tol) {
    if (ref->size() == 0) return false;
    double best = (ref->pts.colwise() - x).colwise().norm().minCoeff();
    return best <= tol;
  };
  return s;
}

SetDescriptor negated(const SetDescriptor& s) {
  SetDescriptor out = s;
  if (s.exact) {
    return exact_set(s.exact->negated());
  }
  auto inner_membership = s.membership;
  auto inner_sampler = s.sampler;
  out.membership = [inner_membership](const Vector& x, double tol) {
    return inner_membership(-x, tol);
  };
  out.sampler = [inner_sampler](int count, const Box& window, std::uint64_t seed) {
    Box flipped{-window.hi, -window.lo};
    PointCloud cloud = inner_sampler(count, flipped, seed);
    cloud.pts = -cloud.pts;
    return cloud;
  };
  return out;
}

SetDescriptor translated(const SetDescriptor& s, const Vector& t) {
  if (t.size() != s.dim) throw std::invalid_argument("translated: dimension mismatch");
  if (s.exact) return exact_set(s.exact->translated(t));
  SetDescriptor out = s;
  auto inner_membership = s.membership;
  auto inner_sampler = s.sampler;
  out.membership = [inner_membership, t](const Vector& x, double tol) {
    return inner_membership(x - t, tol);
  };
  out.sampler = [inner_sampler, t](int count, const Box& window, std::uint64_t seed) {
    Box shifted{window.lo - t, window.hi - t};
    PointCloud cloud = inner_sampler(count, shifted, seed);
    cloud.pts.colwise() += t;
    return cloud;
  };
  return out;
}

SetDescriptor whole_space_set(int dim) { return exact_set(Cylinder::whole_space(dim)); }

}  // namespace splitrange
