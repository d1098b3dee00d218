#ifndef CENTDIAN_MIP_HPP
#define CENTDIAN_MIP_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "centdian/evaluation.hpp"
#include "centdian/instance.hpp"
#include "centdian/model.hpp"

namespace centdian {

// Branch-and-bound controls.  Node selection is best-bound (ties broken
// first-in-first-out); branching picks the most fractional integer variable
// of the lowest branch class with any fractional variable, ties by lowest
// variable id.  Everything is deterministic for a fixed model + params.
struct BnbParams {
  double int_tol = 1e-6;         // integrality tolerance
  double rel_gap = 1e-6;         // relative optimality gap
  double abs_gap = 1e-9;         // absolute gap floor
  double time_limit = 1e18;      // wall-clock seconds
  std::int64_t node_limit = -1;  // negative: unlimited
  int root_cut_rounds = 20;      // separation rounds on the fractional root
  int node_cut_rounds = 50;      // separation rounds per integer candidate
  std::string backend = "revised";
  bool log = false;              // one line per node on stderr
};

// One cut returned by a separation callback: lo <= sum v[k] x[c[k]] <= hi.
struct CutRow {
  std::string name;
  double lo = -kInf;
  double hi = kInf;
  std::vector<int> cols;
  std::vector<double> vals;
};

// Read-only snapshot of a node relaxation optimum handed to callbacks.
struct NodeView {
  const std::vector<double>& x;
  double obj = 0.0;              // relaxation objective, offset included
  std::int64_t node = 0;
  bool integral = false;         // every integer variable is integral
  bool design_integral = false;  // every class-0 integer variable is integral
};

struct MipCallbacks {
  // Lazy separation.  Invoked on every integer-feasible candidate and, while
  // root rounds remain, on the fractional root optimum.  Returned cuts are
  // appended to the relaxation (globally, for all nodes) and the node is
  // re-solved.  An empty list accepts the point.
  std::function<std::vector<CutRow>(const NodeView&)> separate;

  // Completion hook, called when the design variables are integral.  May
  // fill a complete feasible assignment together with its exact objective
  // and return true; the engine then treats it as an incumbent candidate.
  std::function<bool(const NodeView&, std::vector<double>&, double&)> finish;
};

enum class MipStatus { kOptimal, kFeasible, kInfeasible, kNodeLimit, kTimeLimit };

const char* to_string(MipStatus s);

struct MipResult {
  MipStatus status = MipStatus::kInfeasible;
  bool has_incumbent = false;
  std::vector<double> x;     // incumbent assignment (empty when none)
  double obj = kInf;         // incumbent objective
  double bound = -kInf;      // proven lower bound
  std::int64_t nodes = 0;    // processed nodes
  long lp_iterations = 0;    // simplex iterations over all node solves
  int cuts = 0;              // cuts appended over the run
  double seconds = 0.0;
  std::vector<double> bound_trace;  // global bound at each processed node
  double gap() const;        // (obj - bound) / max(1, |obj|)
};

// Best-bound branch and bound over the model's relaxation.  The incumbent is
// re-checked against every row, bound, and cut (residual <= 1e-7) before it
// is accepted.  Unbounded relaxations and backend failures throw.
MipResult solve_mip(const Model& model, const BnbParams& params = {},
                    const MipCallbacks& cb = {});

// ---------------------------------------------------------------------------
// Exhaustive oracle for desk-size instances.

enum class BruteObjective {
  kMedian,       // Fm
  kCenter,       // Fc
  kCentdian,     // lambda Fc + (1 - lambda) Fm, any lambda >= 0
  kMaxCentdian,  // lexicographic: min max(lambda Fc, (1-lambda) Fm), then H
  kGenCenterPO,  // Fc - Fm over the pairwise non-dominated feasible designs
};

struct BruteResult {
  double value = kInf;           // optimal objective (final stage)
  double stage1 = kInf;          // minimax value when objective is kMaxCentdian
  std::vector<Subgraph> optima;  // all optimal designs, ascending edge masks
  std::vector<Evaluation> evals; // evaluations matching optima
};

// Enumerates every edge subset (induced nodes = covered endpoints), keeps the
// budget-feasible ones, and optimizes the requested objective exactly.  When
// delta is given, designs are restricted to Fm <= (1 + delta) * Fm_best where
// Fm_best is the unrestricted feasible median optimum.  Guard: |E| <= 18.
BruteResult brute_force(const Instance& inst, BruteObjective objective,
                        double lambda = 0.5,
                        std::optional<double> delta = std::nullopt);

}  // namespace centdian

#endif  // CENTDIAN_MIP_HPP
