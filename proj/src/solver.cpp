#include "centdian/solver.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace centdian {

namespace {

// Margin under which a path that exactly exhausts the utility may be routed
// on the private arc instead (the two modes cost the same there).
constexpr double kModeTieTol = 1e-9;

struct CompletionState {
  const Instance& inst;
  const BuiltModel& bm;
  // d_N(w.s, .) per pair, in the full network (reformulation duals only).
  std::vector<std::vector<double>> dist_ws;
  // Decomposition master only: the exact completion must respect the center
  // cap and the efficiency row, or the node cannot be finished.
  double gamma_ub = kInf;
  double eff_hi = kInf;

  explicit CompletionState(const Instance& in, const BuiltModel& b) : inst(in), bm(b) {
    if (bm.map.kind == ModelKind::kMaster) {
      gamma_ub = bm.model.vars[bm.map.gamma].ub;
      for (const ModelRow& r : bm.model.rows)
        if (r.name == "eff") eff_hi = r.hi;
      return;
    }
    if (bm.map.kind != ModelKind::kBcd) return;
    Subgraph full = full_subgraph(inst.net);
    dist_ws.resize(inst.pairs.size());
    for (size_t w = 0; w < inst.pairs.size(); ++w)
      if (bm.map.active[w]) dist_ws[w] = shortest_distances(inst.net, full, inst.pairs[w].s);
  }
};

// Unit flow along the pair's shortest path in S; falls back to the private
// arc when the path ties the utility but an arc fell outside the subnetwork.
void fill_flows(const CompletionState& st, int w, const Subgraph& s, std::vector<double>& xf) {
  const Network& net = st.inst.net;
  const ODPair& pair = st.inst.pairs[w];
  const PairVars& pv = st.bm.map.pv[w];
  const PairSubnetwork& sub = st.bm.map.sub[w];

  PathResult pr;
  if (s.node_on[pair.s] && s.node_on[pair.t]) pr = shortest_path(net, s, pair.s, pair.t);
  bool net_mode = pr.reachable && pr.length <= pair.u;
  std::vector<int> arcs;
  if (net_mode) {
    for (size_t k = 0; k + 1 < pr.nodes.size(); ++k) {
      int a = net.arc_of(pr.edges[k], pr.nodes[k]);
      if (sub.arc_local[a] < 0) {
        if (pr.length >= pair.u - kModeTieTol) {
          net_mode = false;  // same cost on the private arc
          break;
        }
        throw std::logic_error("completion: shortest-path arc missing from pair subnetwork");
      }
      arcs.push_back(a);
    }
  }
  if (net_mode)
    for (int a : arcs) xf[pv.f[sub.arc_local[a]]] = 1.0;
  else
    xf[pv.fr] = 1.0;
}

// Feasible duals at an integral design (see solver.hpp).
void fill_duals(const CompletionState& st, int w, const Subgraph& s, std::vector<double>& xf) {
  const Network& net = st.inst.net;
  const ODPair& pair = st.inst.pairs[w];
  const PairVars& pv = st.bm.map.pv[w];
  const PairSubnetwork& sub = st.bm.map.sub[w];
  const std::vector<double>& dn = st.dist_ws[w];

  std::vector<double> ds;
  if (s.node_on[pair.t])
    ds = shortest_distances(net, s, pair.t);
  else
    ds.assign(net.num_nodes(), kInf);
  ds[pair.t] = 0.0;  // the destination potential is substituted out as 0

  std::vector<double> nu(net.num_nodes(), 0.0);
  for (int i : sub.nodes) nu[i] = std::min(ds[i], pair.u - dn[i]);
  for (size_t li = 0; li < sub.nodes.size(); ++li)
    if (pv.nu[li] >= 0) xf[pv.nu[li]] = nu[sub.nodes[li]];

  const double cap = st.bm.map.sigma_bound[w];
  for (size_t le = 0; le < sub.edges.size(); ++le) {
    int e = sub.edges[le];
    double sig = 0.0;
    if (!s.edge_on[e]) {
      for (int a : {2 * e, 2 * e + 1})
        if (sub.arc_local[a] >= 0)
          sig = std::max(sig, nu[net.arc_tail(a)] - nu[net.arc_head(a)] - net.edges[e].length);
      sig = std::min(std::max(sig, 0.0), cap);
    }
    xf[pv.sigma[le]] = sig;
    xf[pv.xi[le]] = 0.0;
  }
}

}  // namespace

MipCallbacks completion(const Instance& inst, const BuiltModel& bm) {
  auto st = std::make_shared<CompletionState>(inst, bm);
  MipCallbacks cb;
  cb.finish = [st](const NodeView& view, std::vector<double>& xf, double& objf) {
    const FormulationMap& map = st->bm.map;
    Subgraph s = design_from(st->inst, map, view.x);
    Evaluation ev = evaluate(st->inst, s);

    if (map.kind == ModelKind::kMaster) {
      if (ev.Fc > st->gamma_ub + 1e-9) return false;
      double mean = 0.0;
      for (size_t w = 0; w < st->inst.pairs.size(); ++w)
        if (map.active[w]) mean += st->inst.pairs[w].g / st->inst.total_demand() * ev.len[w];
      if (mean > st->eff_hi + 1e-9) return false;
    }

    xf.assign(st->bm.model.num_vars(), 0.0);
    for (int i = 0; i < st->inst.net.num_nodes(); ++i) xf[map.y[i]] = s.node_on[i] ? 1.0 : 0.0;
    for (int e = 0; e < st->inst.net.num_edges(); ++e) xf[map.x[e]] = s.edge_on[e] ? 1.0 : 0.0;
    if (map.gamma >= 0) xf[map.gamma] = ev.Fc;
    if (map.mu >= 0) xf[map.mu] = ev.Hbar(map.lambda);

    for (size_t w = 0; w < st->inst.pairs.size(); ++w) {
      if (!map.active[w]) continue;
      if (map.kind == ModelKind::kMaster) {
        xf[map.zeta[w]] = ev.len[w];
        continue;
      }
      fill_flows(*st, static_cast<int>(w), s, xf);
      if (map.kind == ModelKind::kBcd) fill_duals(*st, static_cast<int>(w), s, xf);
    }

    objf = map.kind == ModelKind::kMcd1 ? ev.Hbar(map.lambda) : ev.H(map.lambda);
    return true;
  };
  return cb;
}

DesignSolution assemble_solution(const Instance& inst, const Subgraph& s, double lambda,
                                 double objective) {
  DesignSolution out;
  out.design = s;
  out.eval = evaluate(inst, s);
  out.lambda = lambda;
  out.objective = objective;
  out.routing.resize(inst.pairs.size());
  out.private_mode.assign(inst.pairs.size(), 1);
  for (size_t w = 0; w < inst.pairs.size(); ++w) {
    const ODPair& pair = inst.pairs[w];
    if (!s.node_on[pair.s] || !s.node_on[pair.t]) continue;
    PathResult pr = shortest_path(inst.net, s, pair.s, pair.t);
    if (pr.reachable && pr.length <= pair.u) {
      out.routing[w] = std::move(pr);
      out.private_mode[w] = 0;
    }
  }
  return out;
}

SolveOutcome solve_model(const Instance& inst, const BuiltModel& bm, const BnbParams& params) {
  if (bm.map.kind == ModelKind::kMaster)
    throw ValidationError("the decomposition master needs its cut loop; use solve_benders");
  SolveOutcome out;
  out.mip = solve_mip(bm.model, params, completion(inst, bm));
  if (out.mip.has_incumbent) {
    Subgraph s = design_from(inst, bm.map, out.mip.x);
    out.solution = assemble_solution(inst, s, bm.map.lambda, out.mip.obj);
  }
  return out;
}

}  // namespace centdian
