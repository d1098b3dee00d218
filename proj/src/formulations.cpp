#include "centdian/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace centdian {

namespace {

std::string num(double v) { return fmt_double(v); }

// Shared assembly steps for all four model kinds.
struct Builder {
  const Instance& inst;
  const Network& net;
  BuiltModel bm;
  double G;

  Builder(const Instance& in, ModelKind kind, double lambda, std::string name)
      : inst(in), net(in.net), G(in.total_demand()) {
    if (inst.pairs.empty()) throw ValidationError("model needs at least one demand pair");
    bm.model.name = std::move(name);
    bm.map.kind = kind;
    bm.map.lambda = lambda;
    int np = static_cast<int>(inst.pairs.size());
    bm.map.sub.reserve(np);
    for (const ODPair& w : inst.pairs) bm.map.sub.push_back(pair_subnetwork(net, w));
    bm.map.pv.resize(np);
    bm.map.active.assign(np, 1);
    bm.map.sigma_bound.assign(np, 0.0);
  }

  Model& m() { return bm.model; }
  FormulationMap& map() { return bm.map; }

  void design_block() {
    auto& mp = map();
    mp.y.resize(net.num_nodes());
    mp.x.resize(net.num_edges());
    for (int i = 0; i < net.num_nodes(); ++i)
      mp.y[i] = m().add_var("y_" + std::to_string(i), 0.0, 0.0, 1.0, true, 0);
    for (int e = 0; e < net.num_edges(); ++e)
      mp.x[e] = m().add_var("x_" + std::to_string(e), 0.0, 0.0, 1.0, true, 0);

    std::vector<int> cols;
    std::vector<double> vals;
    for (int e = 0; e < net.num_edges(); ++e) {
      cols.push_back(mp.x[e]);
      vals.push_back(net.edges[e].cost);
    }
    for (int i = 0; i < net.num_nodes(); ++i) {
      cols.push_back(mp.y[i]);
      vals.push_back(net.node_cost[i]);
    }
    m().add_row("budget", -kInf, inst.budget() + kBudgetTol, cols, vals);

    for (int e = 0; e < net.num_edges(); ++e) {
      const Edge& ed = net.edges[e];
      std::string base = "cpl_e" + std::to_string(e);
      m().add_row(base + "_a", -kInf, 0.0, {mp.x[e], mp.y[ed.u]}, {1.0, -1.0});
      m().add_row(base + "_b", -kInf, 0.0, {mp.x[e], mp.y[ed.v]}, {1.0, -1.0});
    }
  }

  // routing variables of one pair; med_coeff scales the length expression in
  // the objective ((1-lambda) g/G for the blend models, 0 for stage one)
  void flow_vars(int wi, double med_coeff, bool relax) {
    const ODPair& w = inst.pairs[wi];
    const PairSubnetwork& sn = map().sub[wi];
    PairVars& pv = map().pv[wi];
    std::string tag = "_w" + std::to_string(wi);
    pv.f.resize(sn.arcs.size());
    for (std::size_t k = 0; k < sn.arcs.size(); ++k) {
      int a = sn.arcs[k];
      pv.f[k] = m().add_var("f" + tag + "_a" + std::to_string(a), med_coeff * net.arc_length(a),
                            0.0, 1.0, !relax, 1);
    }
    pv.fr = m().add_var("fr" + tag, med_coeff * w.u, 0.0, 1.0, !relax, 1);
  }

  // flow conservation rows; the destination row is dropped when the dual
  // normalization pins its multiplier (the reformulated model)
  void flow_rows(int wi, bool include_dest) {
    const ODPair& w = inst.pairs[wi];
    const PairSubnetwork& sn = map().sub[wi];
    const PairVars& pv = map().pv[wi];
    for (std::size_t ni = 0; ni < sn.nodes.size(); ++ni) {
      int i = sn.nodes[ni];
      if (!include_dest && i == w.t) continue;
      std::vector<int> cols;
      std::vector<double> vals;
      if (i == w.s) {
        cols.push_back(pv.fr);
        vals.push_back(1.0);
      } else if (i == w.t) {
        cols.push_back(pv.fr);
        vals.push_back(-1.0);
      }
      for (std::size_t k = 0; k < sn.arcs.size(); ++k) {
        int a = sn.arcs[k];
        if (net.arc_tail(a) == i) {
          cols.push_back(pv.f[k]);
          vals.push_back(1.0);
        } else if (net.arc_head(a) == i) {
          cols.push_back(pv.f[k]);
          vals.push_back(-1.0);
        }
      }
      double rhs = i == w.s ? 1.0 : (i == w.t ? -1.0 : 0.0);
      m().add_row("flow_w" + std::to_string(wi) + "_n" + std::to_string(i), rhs, rhs, cols, vals);
    }
  }

  void capacity_rows(int wi) {
    const PairSubnetwork& sn = map().sub[wi];
    const PairVars& pv = map().pv[wi];
    for (std::size_t ek = 0; ek < sn.edges.size(); ++ek) {
      int e = sn.edges[ek];
      std::vector<int> cols;
      std::vector<double> vals;
      for (int a : {2 * e, 2 * e + 1})
        if (sn.arc_local[a] >= 0) {
          cols.push_back(pv.f[sn.arc_local[a]]);
          vals.push_back(1.0);
        }
      cols.push_back(map().x[e]);
      vals.push_back(-1.0);
      m().add_row("cap_w" + std::to_string(wi) + "_e" + std::to_string(e), -kInf, 0.0, cols, vals);
    }
  }

  // columns/values of  sum_a d_a f_a + u fr  for one pair
  void length_expr(int wi, std::vector<int>& cols, std::vector<double>& vals,
                   double scale = 1.0) {
    const ODPair& w = inst.pairs[wi];
    const PairSubnetwork& sn = map().sub[wi];
    const PairVars& pv = map().pv[wi];
    for (std::size_t k = 0; k < sn.arcs.size(); ++k) {
      cols.push_back(pv.f[k]);
      vals.push_back(scale * net.arc_length(sn.arcs[k]));
    }
    cols.push_back(pv.fr);
    vals.push_back(scale * w.u);
  }

  void center_row(int wi) {
    std::vector<int> cols;
    std::vector<double> vals;
    length_expr(wi, cols, vals);
    cols.push_back(map().gamma);
    vals.push_back(-1.0);
    m().add_row("ctr_w" + std::to_string(wi), -kInf, 0.0, cols, vals);
  }

  // (1/G) sum over active pairs of g^w (length expression), as one row body
  void mean_expr(std::vector<int>& cols, std::vector<double>& vals, double scale = 1.0) {
    for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
      if (!map().active[wi]) continue;
      length_expr(static_cast<int>(wi), cols, vals, scale * inst.pairs[wi].g / G);
    }
  }

  void efficiency_row(const EfficiencySpec& eff) {
    if (eff.delta < 0.0) throw ValidationError("efficiency delta must be >= 0");
    if (eff.fm_star < 0.0) throw ValidationError("efficiency reference mean must be >= 0");
    std::vector<int> cols;
    std::vector<double> vals;
    mean_expr(cols, vals);
    double rhs = (1.0 + eff.delta) * eff.fm_star - map().folded_len_demand / G;
    m().add_row("eff", -kInf, rhs + kBudgetTol, cols, vals);
  }

  // dual feasibility + strong duality + McCormick block of one pair
  void dual_block(int wi) {
    const ODPair& w = inst.pairs[wi];
    const PairSubnetwork& sn = map().sub[wi];
    PairVars& pv = map().pv[wi];
    double sig = map().sigma_bound[wi];
    std::string tag = "_w" + std::to_string(wi);

    pv.nu.assign(sn.nodes.size(), -1);
    for (std::size_t ni = 0; ni < sn.nodes.size(); ++ni) {
      int i = sn.nodes[ni];
      if (i == w.t) continue;  // pinned to 0 by the dual normalization
      double hi = i == w.s ? w.u : kInf;
      pv.nu[ni] = m().add_var("nu" + tag + "_n" + std::to_string(i), 0.0, -kInf, hi, false, 0);
    }
    pv.sigma.resize(sn.edges.size());
    pv.xi.resize(sn.edges.size());
    for (std::size_t ek = 0; ek < sn.edges.size(); ++ek) {
      std::string etag = tag + "_e" + std::to_string(sn.edges[ek]);
      pv.sigma[ek] = m().add_var("sg" + etag, 0.0, 0.0, sig, false, 0);
      pv.xi[ek] = m().add_var("xi" + etag, 0.0, 0.0, sig, false, 0);
    }

    for (std::size_t k = 0; k < sn.arcs.size(); ++k) {
      int a = sn.arcs[k];
      int i = net.arc_tail(a), j = net.arc_head(a);
      std::vector<int> cols;
      std::vector<double> vals;
      if (int vi = pv.nu[sn.node_local[i]]; vi >= 0) {
        cols.push_back(vi);
        vals.push_back(1.0);
      }
      if (int vj = pv.nu[sn.node_local[j]]; vj >= 0) {
        cols.push_back(vj);
        vals.push_back(-1.0);
      }
      cols.push_back(pv.sigma[sn.edge_local[Network::arc_edge(a)]]);
      vals.push_back(-1.0);
      m().add_row("dual" + tag + "_a" + std::to_string(a), -kInf, net.arc_length(a), cols, vals);
    }

    // sum_a d_a f_a + u fr - nu_s + sum_e xi_e = 0
    std::vector<int> cols;
    std::vector<double> vals;
    length_expr(wi, cols, vals);
    cols.push_back(pv.nu[sn.node_local[w.s]]);
    vals.push_back(-1.0);
    for (int v : pv.xi) {
      cols.push_back(v);
      vals.push_back(1.0);
    }
    m().add_row("sd" + tag, 0.0, 0.0, cols, vals);

    for (std::size_t ek = 0; ek < sn.edges.size(); ++ek) {
      int xe = map().x[sn.edges[ek]];
      std::string etag = tag + "_e" + std::to_string(sn.edges[ek]);
      m().add_row("mc1" + etag, -kInf, 0.0, {pv.xi[ek], xe}, {1.0, -sig});
      m().add_row("mc2" + etag, -kInf, 0.0, {pv.xi[ek], pv.sigma[ek]}, {1.0, -1.0});
      m().add_row("mc3" + etag, -sig, kInf, {pv.xi[ek], pv.sigma[ek], xe}, {1.0, -1.0, -sig});
    }
  }
};

void check_lambda(double lambda, double lo, double hi, bool open, const char* what) {
  bool ok = open ? (lambda > lo && lambda < hi) : (lambda >= lo && lambda <= hi);
  if (!std::isfinite(lambda) || !ok)
    throw ValidationError(std::string(what) + ": lambda " + num(lambda) + " outside its domain");
}

}  // namespace

std::vector<double> sigma_bounds(const Instance& inst) {
  std::vector<double> out(inst.pairs.size());
  std::vector<std::vector<double>> from(inst.net.num_nodes());
  Subgraph full = full_subgraph(inst.net);
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
    const ODPair& w = inst.pairs[wi];
    if (from[w.s].empty()) from[w.s] = shortest_distances(inst.net, full, w.s);
    double dn = from[w.s][w.t];
    if (!(dn <= w.u))
      throw ValidationError("pair " + std::to_string(wi) +
                            " prefers the private mode (best length " + num(dn) + " > utility " +
                            num(w.u) + "); fold it away before computing dual bounds");
    out[wi] = w.u - dn;
  }
  return out;
}

BuiltModel build_cd(const Instance& inst, const BuildOptions& opt) {
  check_lambda(opt.lambda, 0.0, 1.0, false, "blend model");
  double lam = opt.lambda;
  Builder b(inst, ModelKind::kCd, lam, "cd-l" + num(lam));
  b.design_block();
  b.map().gamma =
      b.m().add_var("gamma", lam, 0.0, opt.center_cap.value_or(kInf), false, 0);
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
    double med = (1.0 - lam) * inst.pairs[wi].g / b.G;
    b.flow_vars(static_cast<int>(wi), med, opt.relax_flows);
  }
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
    int w = static_cast<int>(wi);
    b.flow_rows(w, true);
    b.capacity_rows(w);
    b.center_row(w);
  }
  if (opt.efficiency) b.efficiency_row(*opt.efficiency);
  return std::move(b.bm);
}

BuiltModel build_bcd(const Instance& inst, const BuildOptions& opt) {
  if (!(opt.lambda >= 0.0) || !std::isfinite(opt.lambda))
    throw ValidationError("reformulated model: lambda must be >= 0");
  if (opt.relax_flows)
    throw ValidationError("reformulated model requires integral routing variables");
  double lam = opt.lambda;
  Builder b(inst, ModelKind::kBcd, lam, "bcd-l" + num(lam));
  FormulationMap& mp = b.map();

  // pairs whose best possible path already exceeds the utility never use the
  // network: fold their fixed contribution into the objective and the center
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
    if (mp.sub[wi].arcs.empty()) {
      const ODPair& w = inst.pairs[wi];
      mp.active[wi] = 0;
      mp.folded_len_demand += w.g * w.u;
      mp.gamma_lb = std::max(mp.gamma_lb, w.u);
      b.m().obj_offset += (1.0 - lam) * (w.g / b.G) * w.u;
    }
  }
  // uniform dual bound per kept pair (kept <=> d_N(w) <= u^w)
  {
    std::vector<std::vector<double>> from(inst.net.num_nodes());
    Subgraph full = full_subgraph(inst.net);
    for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
      if (!mp.active[wi]) continue;
      const ODPair& w = inst.pairs[wi];
      if (from[w.s].empty()) from[w.s] = shortest_distances(inst.net, full, w.s);
      mp.sigma_bound[wi] = w.u - from[w.s][w.t];
    }
  }

  b.design_block();
  double cap = opt.center_cap.value_or(kInf);
  mp.gamma = b.m().add_var("gamma", lam, mp.gamma_lb, cap, false, 0);
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
    if (!mp.active[wi]) continue;
    double med = (1.0 - lam) * inst.pairs[wi].g / b.G;
    b.flow_vars(static_cast<int>(wi), med, false);
  }
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
    if (!mp.active[wi]) continue;
    int w = static_cast<int>(wi);
    b.flow_rows(w, false);
    b.capacity_rows(w);
    b.center_row(w);
    b.dual_block(w);
  }
  if (opt.efficiency) b.efficiency_row(*opt.efficiency);
  return std::move(b.bm);
}

BuiltModel build_mcd1(const Instance& inst, double lambda) {
  check_lambda(lambda, 0.0, 1.0, true, "minimax stage one");
  Builder b(inst, ModelKind::kMcd1, lambda, "mcd1-l" + num(lambda));
  b.design_block();
  b.map().mu = b.m().add_var("mu", 1.0, 0.0, kInf, false, 0);
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi)
    b.flow_vars(static_cast<int>(wi), 0.0, false);
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
    int w = static_cast<int>(wi);
    b.flow_rows(w, true);
    b.capacity_rows(w);
    // lambda * (length expression of w) <= mu
    std::vector<int> cols;
    std::vector<double> vals;
    b.length_expr(w, cols, vals, lambda);
    cols.push_back(b.map().mu);
    vals.push_back(-1.0);
    b.m().add_row("sc_w" + std::to_string(w), -kInf, 0.0, cols, vals);
  }
  // (1-lambda) * mean expression <= mu
  std::vector<int> cols;
  std::vector<double> vals;
  b.mean_expr(cols, vals, 1.0 - lambda);
  cols.push_back(b.map().mu);
  vals.push_back(-1.0);
  b.m().add_row("scm", -kInf, 0.0, cols, vals);
  return std::move(b.bm);
}

BuiltModel build_mcd2(const Instance& inst, double lambda, double vstar) {
  check_lambda(lambda, 0.0, 1.0, true, "minimax stage two");
  if (std::isfinite(vstar) && vstar < 0.0)
    throw ValidationError("minimax stage two: cap must be >= 0");
  Builder b(inst, ModelKind::kMcd2, lambda, "mcd2-l" + num(lambda));
  b.design_block();
  b.map().gamma = b.m().add_var("gamma", lambda, 0.0, kInf, false, 0);
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
    double med = (1.0 - lambda) * inst.pairs[wi].g / b.G;
    b.flow_vars(static_cast<int>(wi), med, false);
  }
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
    int w = static_cast<int>(wi);
    b.flow_rows(w, true);
    b.capacity_rows(w);
    b.center_row(w);
    if (std::isfinite(vstar)) {
      std::vector<int> cols;
      std::vector<double> vals;
      b.length_expr(w, cols, vals, lambda);
      b.m().add_row("sc_w" + std::to_string(w), -kInf, vstar + kStageCapSlack, cols, vals);
    }
  }
  if (std::isfinite(vstar)) {
    std::vector<int> cols;
    std::vector<double> vals;
    b.mean_expr(cols, vals, 1.0 - lambda);
    b.m().add_row("scm", -kInf, vstar + kStageCapSlack, cols, vals);
  }
  return std::move(b.bm);
}

BuiltModel build_master(const Instance& inst, const std::vector<std::uint8_t>& active,
                        const BuildOptions& opt) {
  check_lambda(opt.lambda, 0.0, 1.0, false, "decomposition master");
  if (opt.relax_flows)
    throw ValidationError("decomposition master has no routing variables to relax");
  if (active.size() != inst.pairs.size())
    throw ValidationError("decomposition master: active-pair mask size mismatch");
  double lam = opt.lambda;
  Builder b(inst, ModelKind::kMaster, lam, "master-l" + num(lam));
  FormulationMap& mp = b.map();

  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
    if (active[wi]) continue;
    const ODPair& w = inst.pairs[wi];
    mp.active[wi] = 0;
    mp.folded_len_demand += w.g * w.u;
    mp.gamma_lb = std::max(mp.gamma_lb, w.u);
    b.m().obj_offset += (1.0 - lam) * (w.g / b.G) * w.u;
  }

  b.design_block();
  mp.gamma = b.m().add_var("gamma", lam, mp.gamma_lb, opt.center_cap.value_or(kInf), false, 0);
  mp.zeta.assign(inst.pairs.size(), -1);
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
    if (!mp.active[wi]) continue;
    std::string tag = "_w" + std::to_string(wi);
    mp.zeta[wi] = b.m().add_var("zeta" + tag, (1.0 - lam) * inst.pairs[wi].g / b.G, 0.0, kInf,
                                false, 1);
    b.m().add_row("inc" + tag, -kInf, 0.0, {mp.zeta[wi], mp.gamma}, {1.0, -1.0});
  }
  if (opt.efficiency) {
    const EfficiencySpec& eff = *opt.efficiency;
    if (eff.delta < 0.0) throw ValidationError("efficiency delta must be >= 0");
    if (eff.fm_star < 0.0) throw ValidationError("efficiency reference mean must be >= 0");
    std::vector<int> cols;
    std::vector<double> vals;
    for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
      if (!mp.active[wi]) continue;
      cols.push_back(mp.zeta[wi]);
      vals.push_back(inst.pairs[wi].g / b.G);
    }
    double rhs = (1.0 + eff.delta) * eff.fm_star - mp.folded_len_demand / b.G;
    if (cols.empty()) {
      if (rhs < -kBudgetTol)
        throw ValidationError("efficiency cap is below the fixed private-mode mean");
    } else {
      b.m().add_row("eff", -kInf, rhs + kBudgetTol, cols, vals);
    }
  }
  return std::move(b.bm);
}

Subgraph design_from(const Instance& inst, const FormulationMap& map,
                     const std::vector<double>& xvals) {
  Subgraph s = empty_subgraph(inst.net);
  for (int i = 0; i < inst.net.num_nodes(); ++i) s.node_on[i] = xvals[map.y[i]] > 0.5;
  for (int e = 0; e < inst.net.num_edges(); ++e) s.edge_on[e] = xvals[map.x[e]] > 0.5;
  validate_subgraph(inst.net, s);
  return s;
}

void audit_formulation(const Instance& inst, const BuiltModel& bm) {
  const FormulationMap& mp = bm.map;
  const Model& m = bm.model;
  m.audit();

  auto fail = [&m](const std::string& msg) {
    throw ValidationError("model '" + m.name + "' audit: " + msg);
  };
  int N = inst.net.num_nodes(), E = inst.net.num_edges(), W = static_cast<int>(inst.pairs.size());
  if (static_cast<int>(mp.y.size()) != N || static_cast<int>(mp.x.size()) != E ||
      static_cast<int>(mp.sub.size()) != W)
    fail("variable map shape mismatch");

  long Sn = 0, Se = 0, Sa = 0, Wa = 0;
  for (int wi = 0; wi < W; ++wi) {
    if (!mp.active[wi]) continue;
    ++Wa;
    Sn += static_cast<long>(mp.sub[wi].nodes.size());
    Se += static_cast<long>(mp.sub[wi].edges.size());
    Sa += static_cast<long>(mp.sub[wi].arcs.size());
  }

  auto count_prefix = [&m](const std::string& p) {
    long c = 0;
    for (const ModelRow& r : m.rows)
      if (r.name.compare(0, p.size(), p) == 0) ++c;
    return c;
  };
  long eff = count_prefix("eff");
  long caps = count_prefix("sc");

  long vars = 0, rows = 0;
  switch (mp.kind) {
    case ModelKind::kCd:
    case ModelKind::kMcd2:
      vars = N + E + 1 + Sa + Wa;
      rows = 1 + 2L * E + Sn + Se + Wa + eff + caps;
      break;
    case ModelKind::kMcd1:
      vars = N + E + 1 + Sa + Wa;
      rows = 1 + 2L * E + Sn + Se + caps;  // caps = W per-pair rows + mean row
      break;
    case ModelKind::kBcd:
      vars = N + E + 1 + (Sa + Wa) + (Sn - Wa) + 2 * Se;
      rows = 1 + 2L * E + (Sn - Wa) + Se + Wa + Sa + Wa + 3 * Se + eff;
      break;
    case ModelKind::kMaster:
      vars = N + E + 1 + Wa;
      rows = 1 + 2L * E + Wa + eff;
      break;
  }
  if (m.num_vars() != vars)
    fail("variable count " + std::to_string(m.num_vars()) + " != expected " +
         std::to_string(vars));
  if (m.num_rows() != rows)
    fail("row count " + std::to_string(m.num_rows()) + " != expected " + std::to_string(rows));

  if (mp.kind == ModelKind::kCd || mp.kind == ModelKind::kMcd2 || mp.kind == ModelKind::kBcd) {
    if (mp.gamma < 0) fail("missing center variable");
    long ctr = count_prefix("ctr_");
    if (ctr != Wa) fail("center row count mismatch");
  }
  if (mp.kind == ModelKind::kBcd) {
    if (count_prefix("dual_") != Sa) fail("dual row count mismatch");
    if (count_prefix("sd_") != Wa) fail("strong duality row count mismatch");
    if (count_prefix("mc") != 3 * Se) fail("product linearization row count mismatch");
    for (int wi = 0; wi < W; ++wi)
      if (mp.active[wi] && mp.sigma_bound[wi] < 0.0) fail("negative dual bound on a kept pair");
  }
}

}  // namespace centdian
