#include "splitrange/numeric_prox.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace splitrange {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double objective(const BuiltinFunction& f, const Vector& y, const Vector& x) {
  double v = f.value(y);
  if (!std::isfinite(v)) return kInf;
  return v + 0.5 * (y - x).squaredNorm();
}

// Unit directions of the +-1 stencil (a positive spanning set).
std::vector<Vector> polish_directions_coarse(int d) {
  std::vector<Vector> dirs;
  const int grid_points = static_cast<int>(std::pow(3.0, d));
  Vector u(d);
  for (int g = 0; g < grid_points; ++g) {
    int code = g;
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      int offset = code % 3 - 1;
      code /= 3;
      u[i] = offset;
      if (offset != 0) zero = false;
    }
    if (zero) continue;
    dirs.push_back(u.normalized());
  }
  return dirs;
}

// Moderately dense deterministic unit-direction set used to seed the angular
// refinement. Empty for d = 1, where the coarse set already covers every
// direction.
std::vector<Vector> polish_directions_fine(int d) {
  std::vector<Vector> dirs;
  if (d == 2) {
    const int n = 64;
    for (int k = 0; k < n; ++k) {
      const double a = 2.0 * M_PI * k / n;
      Vector u(2);
      u << std::cos(a), std::sin(a);
      dirs.push_back(u);
    }
  } else if (d == 3) {
    // Fibonacci sphere: near-uniform covering of S^2.
    const int n = 512;
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / n;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * k;
      Vector u(3);
      u << r * std::cos(a), r * std::sin(a), z;
      dirs.push_back(u);
    }
  }
  return dirs;
}

// Orthonormal basis of the tangent space of the unit sphere at u.
std::vector<Vector> tangent_basis(const Vector& u) {
  const int d = static_cast<int>(u.size());
  std::vector<Vector> basis;
  int skip;
  u.cwiseAbs().maxCoeff(&skip);  // axis most parallel to u contributes nothing
  for (int i = 0; i < d; ++i) {
    if (i == skip) continue;
    Vector t = Vector::Unit(d, i) - u[i] * u;
    for (const Vector& b : basis) t -= t.dot(b) * b;
    basis.push_back(t.normalized());
  }
  return basis;
}

}  // namespace

Vector numeric_prox(const BuiltinFunction& f, const Vector& x, const Box& window, int depth) {
  const int d = static_cast<int>(x.size());
  if (window.dim() != d) throw std::invalid_argument("numeric_prox: window/point dimension mismatch");
  if (f.dim != 0 && f.dim != d) throw std::invalid_argument("numeric_prox: function expects dim " + std::to_string(f.dim));
  if (d > 3) throw std::invalid_argument("numeric_prox: grid refinement supports dim <= 3");
  if (depth < 1) throw std::invalid_argument("numeric_prox: depth must be >= 1");

  // Phase 1: locate the basin. Each level evaluates a 3^d grid spanning the
  // current cell, recenters on the best point and shrinks the cell by 2/3.
  // On smooth objectives this tracks the minimizer; on kinked objectives
  // whose valley curves between stencil points the recentering can lag, so
  // the grid phase is only trusted to land in the right basin and phase 2
  // polishes from there.
  const double shrink = 2.0 / 3.0;
  const int levels = static_cast<int>(std::ceil(static_cast<double>(depth) * std::log(3.0) / std::log(1.0 / shrink))) + 1;

  Vector c = window.center();
  Vector h = 0.5 * (window.hi - window.lo);  // per-axis half widths

  Vector best_point = c;
  double best_value = kInf;

  const int grid_points = static_cast<int>(std::pow(3.0, d));
  Vector y(d);
  for (int level = 0; level < levels; ++level) {
    Vector level_best = c;
    double level_value = kInf;
    for (int g = 0; g < grid_points; ++g) {
      int code = g;
      for (int i = 0; i < d; ++i) {
        int offset = code % 3 - 1;  // -1, 0, +1
        code /= 3;
        y[i] = c[i] + (2.0 / 3.0) * h[i] * offset;
      }
      double v = objective(f, y, x);
      if (v < level_value) {
        level_value = v;
        level_best = y;
      }
    }
    if (level == 0 && !std::isfinite(level_value))
      throw std::runtime_error("numeric_prox: objective is +inf on the whole window");
    if (level_value < best_value) {
      best_value = level_value;
      best_point = level_best;
    }
    c = window.clamp(level_best);
    h *= shrink;
  }

  // Phase 2: pattern-search polish. The step starts at the first-level grid
  // spacing so any capture the shrinking phase lost on a curved valley is
  // recovered. The coarse tier is the +-1 stencil. When every coarse
  // direction ascends, the fine tier seeds from a dense unit-direction scan
  // and then pattern-searches the direction on the unit sphere itself, which
  // resolves the arbitrarily narrow descent cones of kinked valleys. Only
  // when both tiers stall does the step halve, so a stalled step certifies
  // near-optimality of the convex, 1-strongly-convex objective at that scale.
  const std::vector<Vector> coarse = polish_directions_coarse(d);
  const std::vector<Vector> fine = polish_directions_fine(d);
  const Vector h0 = 0.5 * (window.hi - window.lo);
  double step = (2.0 / 3.0) * h0.maxCoeff();
  const double step_floor = 1e-11 * std::max(1.0, h0.maxCoeff());
  long evals_left = 10'000'000;  // termination guard; never binding in practice
  const auto probe = [&](const Vector& u) {
    --evals_left;
    return objective(f, window.clamp(best_point + step * u), x);
  };
  const auto scan = [&](const std::vector<Vector>& dirs) {
    for (const Vector& u : dirs) {
      const double v = probe(u);
      if (v < best_value) {
        best_value = v;
        best_point = window.clamp(best_point + step * u);
        return true;
      }
    }
    return false;
  };
  // Pattern search over the unit sphere: tilt the direction along tangent
  // offsets of shrinking magnitude, chasing the (possibly very narrow)
  // angular dip a kinked valley cuts into the sphere of radius `step`.
  // Returns as soon as a descent direction is found. A dip findable at this
  // step only exists while the remaining error exceeds step/2, and its
  // angular width scales with that error, so the ladder may stop at an
  // angular resolution proportional to the relative step -- any slimmer dip
  // is caught one halving later, and smooth stalls stay cheap.
  const auto tilt_refine = [&](Vector u) {
    const double tilt_floor = std::max(1e-12, 0.05 * step / h0.maxCoeff());
    double vu = probe(u);
    for (double tilt = 0.5; tilt > tilt_floor && vu >= best_value && evals_left > 0; tilt *= 0.5) {
      for (bool moved = true; moved && vu >= best_value;) {
        moved = false;
        for (const Vector& t : tangent_basis(u)) {
          for (double s : {tilt, -tilt}) {
            const Vector w = (u + s * t).normalized();
            const double v = probe(w);
            if (v < vu) {
              vu = v;
              u = w;
              moved = true;
            }
          }
        }
      }
    }
    return std::make_pair(vu, u);
  };
  Vector valley_dir;  // last direction that worked; valleys turn slowly
  const auto refine_scan = [&]() {
    if (fine.empty()) return false;
    const auto accept = [&](const std::pair<double, Vector>& r) {
      if (r.first >= best_value) return false;
      best_value = r.first;
      best_point = window.clamp(best_point + step * r.second);
      valley_dir = r.second;
      return true;
    };
    if (valley_dir.size() == d && accept(tilt_refine(valley_dir))) return true;
    // Seed the ladder from the best spoke and its antipode (a valley cuts
    // two near-antipodal dips; only one of them descends).
    std::size_t seed = 0;
    double seed_value = kInf;
    for (std::size_t k = 0; k < fine.size(); ++k) {
      const double v = probe(fine[k]);
      if (v < best_value) {
        best_value = v;
        best_point = window.clamp(best_point + step * fine[k]);
        valley_dir = fine[k];
        return true;
      }
      if (v < seed_value) {
        seed_value = v;
        seed = k;
      }
    }
    if (accept(tilt_refine(fine[seed]))) return true;
    if (accept(tilt_refine(-fine[seed]))) return true;
    return false;
  };
  while (step > step_floor && evals_left > 0) {
    if (scan(coarse)) continue;
    if (refine_scan()) continue;
    step *= 0.5;
  }

  // If the refined point hugs the original window boundary the true
  // minimizer may lie outside: refuse rather than silently truncate.
  for (int i = 0; i < d; ++i) {
    double cell = h[i] / shrink;  // final cell half width on this axis
    if (best_point[i] - window.lo[i] <= cell || window.hi[i] - best_point[i] <= cell)
      throw std::runtime_error(
          "numeric_prox: window exhausted (minimizer pinned to the window boundary); "
          "enlarge the window");
  }
  return best_point;
}

Vector prox(const BuiltinFunction& f, const Vector& x, const Box& window, int depth) {
  if (f.closed_form_prox) return f.closed_form_prox(x);
  return numeric_prox(f, x, window, depth);
}

}  // namespace splitrange
