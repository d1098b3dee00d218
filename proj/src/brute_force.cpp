#include <algorithm>
#include <cstdint>
#include <string>

#include "centdian/mip.hpp"

namespace centdian {

namespace {

constexpr double kTieSlack = 1e-9;  // matches the stage-two cap slack

double score(const Evaluation& ev, BruteObjective objective, double lambda) {
  switch (objective) {
    case BruteObjective::kMedian: return ev.Fm;
    case BruteObjective::kCenter: return ev.Fc;
    case BruteObjective::kCentdian: return ev.H(lambda);
    case BruteObjective::kMaxCentdian: return ev.H(lambda);  // stage-two score
    case BruteObjective::kGenCenterPO: return ev.gen_center();
  }
  return kInf;
}

}  // namespace

BruteResult brute_force(const Instance& inst, BruteObjective objective, double lambda,
                        std::optional<double> delta) {
  const int E = inst.net.num_edges();
  if (E > 18)
    throw ValidationError("brute_force: " + std::to_string(E) +
                          " edges exceed the 2^18 enumeration guard");
  if (lambda < 0.0) throw ValidationError("brute_force: lambda must be >= 0");
  if (delta && *delta < 0.0) throw ValidationError("brute_force: delta must be >= 0");

  std::vector<Subgraph> designs;
  std::vector<Evaluation> evals;
  double fm_best = kInf;
  std::vector<int> edge_ids;
  for (std::uint32_t mask = 0; mask < (1u << E); ++mask) {
    edge_ids.clear();
    for (int e = 0; e < E; ++e)
      if (mask >> e & 1u) edge_ids.push_back(e);
    Subgraph s = subgraph_from_edges(inst.net, edge_ids);
    if (!budget_feasible(inst, subgraph_cost(inst.net, s))) continue;
    Evaluation ev = evaluate(inst, s);
    fm_best = std::min(fm_best, ev.Fm);
    designs.push_back(std::move(s));
    evals.push_back(std::move(ev));
  }

  // Optional efficiency restriction against the unrestricted median optimum.
  std::vector<int> live;
  for (int k = 0; k < static_cast<int>(designs.size()); ++k)
    if (!delta || evals[k].Fm <= (1.0 + *delta) * fm_best + kTieSlack) live.push_back(k);

  if (objective == BruteObjective::kGenCenterPO) {
    std::vector<Evaluation> pool;
    pool.reserve(live.size());
    for (int k : live) pool.push_back(evals[k]);
    std::vector<int> keep = pareto_filter(pool);
    std::vector<int> filtered;
    filtered.reserve(keep.size());
    for (int k : keep) filtered.push_back(live[k]);
    live.swap(filtered);
  }

  BruteResult out;
  if (objective == BruteObjective::kMaxCentdian) {
    out.stage1 = kInf;
    for (int k : live) out.stage1 = std::min(out.stage1, evals[k].Hbar(lambda));
    std::vector<int> capped;
    for (int k : live)
      if (evals[k].Hbar(lambda) <= out.stage1 + kTieSlack) capped.push_back(k);
    live.swap(capped);
  }

  for (int k : live) out.value = std::min(out.value, score(evals[k], objective, lambda));
  for (int k : live)
    if (score(evals[k], objective, lambda) <= out.value + kTieSlack) {
      out.optima.push_back(designs[k]);
      out.evals.push_back(evals[k]);
    }
  return out;
}

}  // namespace centdian
