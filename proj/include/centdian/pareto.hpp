#ifndef CENTDIAN_PARETO_HPP
#define CENTDIAN_PARETO_HPP

#include <vector>

#include "centdian/instance.hpp"
#include "centdian/mip.hpp"
#include "centdian/solver.hpp"

namespace centdian {

struct MaxCentdianResult {
  double vstar = 0.0;      // stage-one minimax value
  DesignSolution solution;  // stage-two blend optimum under the caps
};

// Two-stage minimax blend: stage one minimizes the scalar bounding both
// weighted criteria, stage two re-minimizes the blend with the criteria
// capped at that value.  lambda strictly inside (0,1).  A stage-two failure
// to reach the caps is an internal error, not an input error.
MaxCentdianResult max_centdian(const Instance& inst, double lambda,
                               const BnbParams& params = {});

// Minimize the center, then the mean among center optima (the center value
// is held by a cap with 1e-9 slack on the second solve).
DesignSolution lexicographic_centdian(const Instance& inst, const BnbParams& params = {});

// One maximal lambda-run of the frontier sweep: every sampled lambda inside
// [lambda_lo, lambda_hi] produced this (Fc, Fm) value pair.  vstar is the
// stage-one value at lambda_lo.
struct ParetoPoint {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  DesignSolution solution;
  double Fc = 0.0;
  double Fm = 0.0;
  double vstar = 0.0;
};

// Bisection sweep of the minimax pipeline over (0,1): endpoints are clipped
// to [tol, 1-tol], an interval is settled once both ends agree on (Fc, Fm)
// exactly, and split until its width drops below tol otherwise.  Adjacent
// samples with the same value pair are merged into one ParetoPoint; the
// sub-tol gap between two neighbouring points brackets their breakpoint.
std::vector<ParetoPoint> parametrize_po2(const Instance& inst, double lambda_tolerance,
                                         const BnbParams& params = {});

}  // namespace centdian

#endif  // CENTDIAN_PARETO_HPP
