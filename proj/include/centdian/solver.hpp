#ifndef CENTDIAN_SOLVER_HPP
#define CENTDIAN_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "centdian/formulations.hpp"
#include "centdian/mip.hpp"

namespace centdian {

// A solved design together with its evaluation and per-pair routing: the
// shortest network path when it beats the private utility, otherwise the
// private mode.
struct DesignSolution {
  Subgraph design;
  Evaluation eval;
  std::vector<PathResult> routing;         // per pair; empty path in private mode
  std::vector<std::uint8_t> private_mode;  // per pair
  double lambda = 0.5;
  double objective = 0.0;  // exact formulation objective at this design
};

DesignSolution assemble_solution(const Instance& inst, const Subgraph& s, double lambda,
                                 double objective);

// Completion callbacks for a built formulation.  At nodes whose design
// variables are integral the remaining variables have a closed form: unit
// flows along shortest paths (or the private arc), the center/scalar
// variables from the evaluation, and for the reformulation a feasible dual
// assignment
//   nu_i    = min(d_S(i, w.t), u^w - d_N(w.s, i)),
//   sigma_e = 0 on built edges, else the smallest value covering both arc
//             rows; every product variable collapses to 0.
// The hook returns the exact objective, so such nodes never branch on flows.
// The referenced instance and model must outlive the callbacks.
MipCallbacks completion(const Instance& inst, const BuiltModel& bm);

struct SolveOutcome {
  MipResult mip;
  DesignSolution solution;  // valid when mip.has_incumbent
};

// Branch and bound over the formulation with the completion hook installed.
SolveOutcome solve_model(const Instance& inst, const BuiltModel& bm,
                         const BnbParams& params = {});

}  // namespace centdian

#endif  // CENTDIAN_SOLVER_HPP
