#ifndef CENTDIAN_TESTS_ORACLE_HPP
#define CENTDIAN_TESTS_ORACLE_HPP

#include <utility>
#include <vector>

#include "centdian/evaluation.hpp"
#include "centdian/instance.hpp"
#include "centdian/network.hpp"

namespace centdian::testing {

// Test-side enumeration of budget-feasible designs, independent of the
// library oracle (direct definition translation).  Usable up to ~20 edges.
inline std::vector<std::pair<Subgraph, Evaluation>> enumerate_feasible(const Instance& inst) {
  std::vector<std::pair<Subgraph, Evaluation>> out;
  int E = inst.net.num_edges();
  for (unsigned mask = 0; mask < (1u << E); ++mask) {
    std::vector<int> ids;
    for (int e = 0; e < E; ++e)
      if (mask >> e & 1u) ids.push_back(e);
    Subgraph s = subgraph_from_edges(inst.net, ids);
    if (subgraph_cost(inst.net, s) > inst.budget() + kBudgetTol) continue;
    out.emplace_back(s, evaluate(inst, s));
  }
  return out;
}

// Best blend value over the enumeration.
inline double best_blend(const Instance& inst, double lambda) {
  double best = kInf;
  for (const auto& [s, ev] : enumerate_feasible(inst)) best = std::min(best, ev.H(lambda));
  return best;
}

}  // namespace centdian::testing

#endif  // CENTDIAN_TESTS_ORACLE_HPP
