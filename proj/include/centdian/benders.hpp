#ifndef CENTDIAN_BENDERS_HPP
#define CENTDIAN_BENDERS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "centdian/formulations.hpp"
#include "centdian/instance.hpp"
#include "centdian/mip.hpp"
#include "centdian/solver.hpp"

namespace centdian {

// Pairs that no budget-feasible design can serve within their utility are
// folded to the private mode up front; the master only carries the rest.
struct ReducedInstance {
  const Instance* inst = nullptr;
  std::vector<std::uint8_t> active;       // per pair
  std::vector<std::vector<int>> witness;  // per surviving pair: edges of a
                                          // cheapest serving path
  double folded_len_demand = 0.0;         // sum of g^w u^w over folded pairs
  double gamma_lb = 0.0;                  // center floor from folded pairs
  int surviving = 0;
};

// Exact elimination test: a pair survives iff some path in its subnetwork
// has length <= u^w and build cost (nodes + edges) within the budget,
// decided by label-setting on (cost, length) with dominance.
ReducedInstance preprocess(const Instance& inst);

// A point in the master variable space.  `zeta` is indexed by pair; entries
// of folded pairs hold the fixed private-mode length u^w.
struct MasterPoint {
  std::vector<double> y;
  std::vector<double> x;
  double gamma = 0.0;
  std::vector<double> zeta;
};

// The affinely independent feasible master points (two all-zero designs at
// different center levels, one per node, one per edge, one per surviving
// pair routed over its witness path at twice the utility).
std::vector<MasterPoint> interior_points(const ReducedInstance& red);

// Arithmetic mean of those points; verifies strict slack on every master
// inequality and full affine rank, throwing on either failure.
MasterPoint interior_point(const ReducedInstance& red);

// One feasibility cut:  sum_e sigma_e x_e + upsilon zeta^w >= rhs.
struct BendersCut {
  int pair = -1;
  int node = -1;              // search node that triggered it (-1 standalone)
  std::vector<int> edges;     // edges carrying a positive coefficient
  std::vector<double> sigma;  // parallel to `edges`
  double upsilon = 0.0;
  double rhs = 0.0;           // source potential of the subproblem duals
  double violation = 0.0;     // by the exterior point at creation
};

// Cut generation for one pair: walk from the exterior point toward the
// interior point until the pair is servable, and read the separating
// hyperplane off the step LP's duals.  Returns nothing when the exterior
// point already serves the pair.
std::optional<BendersCut> separate(const Instance& inst, int pair, const MasterPoint& exterior,
                                   const MasterPoint& interior);

struct BendersResult {
  MipResult mip;
  DesignSolution solution;  // meaningful when mip.has_incumbent
  ReducedInstance reduced;
  std::vector<BendersCut> ledger;  // emitted cuts in order
};

// Branch-and-cut over the decomposition master: preprocess, build the
// master, separate at the fractional root and at every integer candidate,
// finish design-integral nodes by direct evaluation.  lambda in [0,1].
BendersResult solve_benders(const Instance& inst, const BuildOptions& opt,
                            const BnbParams& params = {});

}  // namespace centdian

#endif  // CENTDIAN_BENDERS_HPP
