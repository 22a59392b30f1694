#pragma once

#include <optional>
#include <string>

#include "splitrange/splitting.hpp"

namespace splitrange {

/// The four set combinations whose closures govern the splitting operator's
/// ranges:
///   D      = dom A - dom B        R      = ran A + ran B
///   D_dual = dom A - ran B        R_dual = ran A + dom B
/// ran(Id - T) fills D ∩ R (up to closure) and ran T fills D_dual ∩ R_dual.
struct PairSets {
  SetDescriptor D;
  SetDescriptor R;
  SetDescriptor D_dual;
  SetDescriptor R_dual;
};

/// Build the four combinations. Exact descriptors are propagated whenever
/// both factors are closed-form; otherwise the result is a sampled
/// descriptor whose sampler combines factor samples pairwise (capped at
/// pair_cap points, then deduplicated on a grid of pitch dedup_pitch) and
/// keeps both summands as witnesses for every point.
PairSets build_pair_sets(const OperatorPair& pair, double dedup_pitch = 0.005,
                         int pair_cap = 100000);

/// Push every input through Id - T; witnesses record the inputs.
PointCloud sample_displacement_range(const OperatorPair& pair, const PointCloud& inputs);

/// Push every input through T; witnesses record the inputs.
PointCloud sample_T_range(const OperatorPair& pair, const PointCloud& inputs);

/// Convenience: inputs drawn uniformly from the window.
PointCloud uniform_inputs(int dim, int count, const Box& window, std::uint64_t seed);

enum class SolveStatus { kSolved, kUnsolved, kInconclusive };

std::string to_string(SolveStatus s);

/// Outcome of an inclusion solve.
///  - kSolved:       residual fell below tol; `witness` solves the inclusion.
///  - kUnsolved:     the displacement norm settled on a plateau above tol
///                   (the iteration certifiably drifts, nothing to find).
///  - kInconclusive: still moving when the budget ran out; no claim either
///                   way. Tight boundary instances land here by design
///                   rather than being misreported.
struct PerturbedVerdict {
  SolveStatus status = SolveStatus::kInconclusive;
  std::optional<Vector> witness;
  double residual = 0.0;
  double limiting_displacement_norm = 0.0;
};

/// Decide whether w is attainable as a perturbation: does some x solve
///   w ∈ A x + B(x - w)?
/// Runs the splitting iteration on the shifted pair (A - w, B(. - w)), whose
/// zeros are exactly the solutions. tol > 0, max_iter >= 100.
PerturbedVerdict solve_perturbed(const OperatorPair& pair, const Vector& w, const Vector& x0,
                                 double tol = 1e-6, int max_iter = 100000);

/// Decide whether y ∈ ran(A + B): does some x solve 0 ∈ A x + B x - y?
PerturbedVerdict sum_range_membership(const OperatorPair& pair, const Vector& y, const Vector& x0,
                                      double tol = 1e-6, int max_iter = 100000);

/// Estimate of the minimal-displacement vector of the splitting operator
/// (the projection of 0 onto cl ran(Id - T)).
/// `v` is the tail estimate; the Cesàro estimate and the gap between the two
/// are reported alongside so disagreement is never hidden.
struct DisplacementEstimate {
  Vector v;
  std::string method = "tail-displacement";
  int iterations = 0;
  double agreement_gap = 0.0;
  Vector v_tail;
  Vector v_cesaro;
};

/// Run max_iter splitting steps from x0 and estimate the minimal
/// displacement vector two ways: the final displacement x_n - x_{n+1}
/// (tail), and the averaged drift (x_0 - x_n)/n (Cesàro; equals -x_n/n for
/// x0 = 0). Both converge to the same vector; the tail estimate is sharper
/// on every problem class this library ships, so it is the headline value.
/// Requires max_iter >= 100.
DisplacementEstimate estimate_displacement_vector(const OperatorPair& pair, const Vector& x0,
                                                  int max_iter = 10000);

}  // namespace splitrange
