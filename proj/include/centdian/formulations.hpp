#ifndef CENTDIAN_FORMULATIONS_HPP
#define CENTDIAN_FORMULATIONS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "centdian/instance.hpp"
#include "centdian/model.hpp"
#include "centdian/network.hpp"

namespace centdian {

// Extra row bounding the demand-weighted mean length:
//   (1/G) sum_w g^w (length expression of w)  <=  (1 + delta) * fm_star
// where fm_star is the optimal mean of the pure-median problem.
struct EfficiencySpec {
  double delta = 0.0;
  double fm_star = 0.0;
};

struct BuildOptions {
  double lambda = 0.5;
  std::optional<EfficiencySpec> efficiency;
  // upper bound placed on the center variable (second lexicographic stage)
  std::optional<double> center_cap;
  // drop integrality on the routing variables (valid for the blend model
  // with lambda in [0,1] only; the design optimum is unchanged)
  bool relax_flows = false;
};

// Variable ids of one demand pair inside a model; -1 marks "not present".
struct PairVars {
  std::vector<int> f;      // by position in sub.arcs
  int fr = -1;             // private-mode arc
  std::vector<int> nu;     // by position in sub.nodes; -1 at w.t (pinned to 0)
  std::vector<int> sigma;  // by position in sub.edges
  std::vector<int> xi;     // by position in sub.edges
};

enum class ModelKind { kCd, kBcd, kMcd1, kMcd2, kMaster };

// Where every model variable lives, plus the per-pair folding bookkeeping.
struct FormulationMap {
  ModelKind kind = ModelKind::kCd;
  double lambda = 0.5;               // scalarization weight the model was built with
  std::vector<int> y;                // per node
  std::vector<int> x;                // per edge
  int gamma = -1;                    // center variable
  int mu = -1;                       // scalarization variable (first Pareto stage)
  std::vector<int> zeta;             // per pair, decomposition master only
  std::vector<PairSubnetwork> sub;   // per pair
  std::vector<PairVars> pv;          // per pair
  std::vector<std::uint8_t> active;  // pair represented by variables
  std::vector<double> sigma_bound;   // per pair: u^w - d_N(w)
  double folded_len_demand = 0.0;    // sum of g^w u^w over folded pairs
  double gamma_lb = 0.0;             // forced center floor from folded pairs
};

struct BuiltModel {
  Model model;
  FormulationMap map;
};

// Tight uniform bound on the dual edge variables of each pair:
//   Sigma^w = u^w - d_N(w)   (shortest length in the full network).
// Throws when some pair has d_N(w) > u^w; such pairs never use the designed
// network and must be folded away before dual bounds are consulted.
std::vector<double> sigma_bounds(const Instance& inst);

// Blend model (budget, coupling, per-pair unit flows with a private-mode
// arc, capacity, center tracking).  Valid for lambda in [0,1].
BuiltModel build_cd(const Instance& inst, const BuildOptions& opt);

// Single-level reformulation with per-pair dual feasibility, strong-duality
// rows, and McCormick products; routing is pinned to shortest paths, so any
// lambda >= 0 is valid (including the generalized-center regime).
BuiltModel build_bcd(const Instance& inst, const BuildOptions& opt);

// Two-stage minimax blend: stage one minimizes the scalar mu bounding both
// weighted criteria; stage two re-minimizes the blend under caps at vstar.
BuiltModel build_mcd1(const Instance& inst, double lambda);
BuiltModel build_mcd2(const Instance& inst, double lambda, double vstar);

// Decomposition master over the design plus one incumbent length variable
// per active pair; routing is delegated to on-the-fly cuts.  Pairs outside
// `active` are folded to their private mode (fixed objective contribution
// plus a center floor).  Valid for lambda in [0,1].
BuiltModel build_master(const Instance& inst, const std::vector<std::uint8_t>& active,
                        const BuildOptions& opt);

// Slack added to the stage-two caps so optima tied at vstar survive roundoff.
constexpr double kStageCapSlack = 1e-9;

// Reads the built design out of a solution vector (0.5 rounding).
Subgraph design_from(const Instance& inst, const FormulationMap& map,
                     const std::vector<double>& xvals);

// Recomputes the closed-form variable/row count formulas for the model kind
// and checks them, then runs the structural audit.  Throws on mismatch.
void audit_formulation(const Instance& inst, const BuiltModel& bm);

}  // namespace centdian

#endif  // CENTDIAN_FORMULATIONS_HPP
