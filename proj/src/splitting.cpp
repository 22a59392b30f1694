#include "splitrange/splitting.hpp"

#include <cmath>
#include <stdexcept>

namespace splitrange {

Vector dr_map(const OperatorPair& pair, const Vector& x) {
  if (x.size() != pair.dim()) throw std::invalid_argument("dr_map: dimension mismatch");
  Vector y = pair.A.resolvent_map(x);
  Vector z = pair.B.resolvent_map(2.0 * y - x);
  return x - y + z;
}

OperatorPair attouch_thera_dual(const OperatorPair& pair) {
  return OperatorPair(inverse(pair.A), vee(inverse(pair.B)));
}

std::function<Vector(const Vector&)> dr_from_firmly_nonexpansive(
    std::function<Vector(const Vector&)> T1, std::function<Vector(const Vector&)> T2) {
  return [T1, T2](const Vector& x) {
    Vector y = T1(x);
    return Vector(T2(2.0 * y - x) + x - y);
  };
}

DRTrace dr_iterate(const OperatorPair& pair, const Vector& x0, int max_iter, double stop_tol,
                   int stride) {
  if (x0.size() != pair.dim()) throw std::invalid_argument("dr_iterate: x0 dimension mismatch");
  if (max_iter < 1) throw std::invalid_argument("dr_iterate: max_iter must be >= 1");
  if (stride < 1) throw std::invalid_argument("dr_iterate: stride must be >= 1");

  DRTrace trace;
  trace.stride = stride;
  trace.displacement_norms.reserve(static_cast<std::size_t>(max_iter));

  Vector x = x0;
  double prev_norm = -1.0;
  for (int n = 0; n < max_iter; ++n) {
    Vector y = pair.A.resolvent_map(x);
    Vector z = pair.B.resolvent_map(2.0 * y - x);
    Vector x_next = x - y + z;
    if (!x_next.allFinite()) throw std::runtime_error("dr_iterate: iterate is not finite");
    Vector d = x - x_next;
    double dn = d.norm();

    if (n % stride == 0) {
      trace.governing.push_back(x);
      trace.shadow.push_back(y);
      trace.displacement.push_back(d);
    }
    trace.displacement_norms.push_back(dn);
    trace.final_shadow = y;
    trace.final_displacement = d;
    x = x_next;
    trace.iterations = n + 1;

    if (stop_tol > 0.0 && prev_norm >= 0.0 && dn < stop_tol &&
        std::abs(dn - prev_norm) < stop_tol)
      break;
    prev_norm = dn;
  }
  trace.final_x = x;
  return trace;
}

}  // namespace splitrange
