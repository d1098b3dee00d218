#include "centdian/benders.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "centdian/lp.hpp"

namespace centdian {

namespace {

// Cheapest-build path serving the pair (length <= u^w, cost within budget),
// or nothing.  Label-setting on (cost, length) with dominance; build cost
// counts every node and edge of the path once, endpoints included.
std::optional<std::vector<int>> cheapest_serving_path(const Instance& inst,
                                                      const PairSubnetwork& sub, const ODPair& w) {
  const Network& net = inst.net;
  const double budget = inst.budget() + kBudgetTol;

  struct Label {
    double cost, len;
    int node, pred, edge;
  };
  std::vector<Label> arena;
  using Key = std::tuple<double, double, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> pq;
  std::vector<std::vector<std::pair<double, double>>> accepted(sub.nodes.size());

  auto dominated = [&](int local, double c, double l) {
    for (auto [c0, l0] : accepted[local])
      if (c0 <= c + 1e-12 && l0 <= l + 1e-12) return true;
    return false;
  };

  std::vector<std::vector<int>> out_arcs(sub.nodes.size());
  for (std::size_t k = 0; k < sub.arcs.size(); ++k)
    out_arcs[sub.node_local[net.arc_tail(sub.arcs[k])]].push_back(static_cast<int>(k));

  arena.push_back({net.node_cost[w.s], 0.0, w.s, -1, -1});
  if (arena[0].cost <= budget) pq.push({arena[0].cost, 0.0, 0});

  while (!pq.empty()) {
    auto [c, l, id] = pq.top();
    pq.pop();
    int node = arena[id].node;
    int local = sub.node_local[node];
    if (dominated(local, c, l)) continue;
    accepted[local].emplace_back(c, l);
    if (node == w.t) {
      std::vector<int> edges;
      for (int cur = id; arena[cur].edge >= 0; cur = arena[cur].pred)
        edges.push_back(arena[cur].edge);
      std::reverse(edges.begin(), edges.end());
      return edges;
    }
    for (int k : out_arcs[local]) {
      int a = sub.arcs[k];
      int j = net.arc_head(a), e = Network::arc_edge(a);
      double nl = l + net.arc_length(a);
      if (nl > w.u) continue;
      double nc = c + net.edges[e].cost + net.node_cost[j];
      if (nc > budget) continue;
      if (dominated(sub.node_local[j], nc, nl)) continue;
      arena.push_back({nc, nl, j, id, e});
      pq.push({nc, nl, static_cast<int>(arena.size()) - 1});
    }
  }
  return std::nullopt;
}

int gaussian_rank(std::vector<std::vector<double>> m, double tol) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    double best = tol;
    for (int r = rank; r < rows; ++r)
      if (std::fabs(m[r][c]) > best) {
        best = std::fabs(m[r][c]);
        piv = r;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      double f = m[r][c] / m[rank][c];
      if (f == 0.0) continue;
      for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Cut generation against a prebuilt pair subnetwork (the solve loop caches
// them); the public entry point rebuilds the subnetwork.
std::optional<BendersCut> separate_sub(const Instance& inst, const PairSubnetwork& sub, int pair,
                                       const MasterPoint& ext, const MasterPoint& interior,
                                       lp::LpBackend& be) {
  const Network& net = inst.net;
  const ODPair& w = inst.pairs[pair];
  const double zeta_out = ext.zeta[pair];
  const double dzeta = zeta_out - interior.zeta[pair];

  lp::Problem p;
  const int mu = p.add_col(1.0, 0.0, 1.0);
  std::vector<int> f(sub.arcs.size());
  for (std::size_t k = 0; k < sub.arcs.size(); ++k) f[k] = p.add_col(0.0, 0.0, kInf);
  const int fr = p.add_col(0.0, 0.0, kInf);

  for (std::size_t ni = 0; ni < sub.nodes.size(); ++ni) {
    int i = sub.nodes[ni];
    std::vector<int> cols;
    std::vector<double> vals;
    if (i == w.s) {
      cols.push_back(fr);
      vals.push_back(1.0);
    } else if (i == w.t) {
      cols.push_back(fr);
      vals.push_back(-1.0);
    }
    for (std::size_t k = 0; k < sub.arcs.size(); ++k) {
      int a = sub.arcs[k];
      if (net.arc_tail(a) == i) {
        cols.push_back(f[k]);
        vals.push_back(1.0);
      } else if (net.arc_head(a) == i) {
        cols.push_back(f[k]);
        vals.push_back(-1.0);
      }
    }
    double rhs = i == w.s ? 1.0 : (i == w.t ? -1.0 : 0.0);
    p.add_row(rhs, rhs, cols, vals);
  }
  for (std::size_t ek = 0; ek < sub.edges.size(); ++ek) {
    int e = sub.edges[ek];
    std::vector<int> cols;
    std::vector<double> vals;
    for (int a : {2 * e, 2 * e + 1})
      if (sub.arc_local[a] >= 0) {
        cols.push_back(f[sub.arc_local[a]]);
        vals.push_back(1.0);
      }
    cols.push_back(mu);
    vals.push_back(ext.x[e] - interior.x[e]);
    p.add_row(-kInf, ext.x[e], cols, vals);
  }
  {
    std::vector<int> cols;
    std::vector<double> vals;
    for (std::size_t k = 0; k < sub.arcs.size(); ++k) {
      cols.push_back(f[k]);
      vals.push_back(net.arc_length(sub.arcs[k]));
    }
    cols.push_back(fr);
    vals.push_back(w.u);
    cols.push_back(mu);
    vals.push_back(dzeta);
    p.add_row(-kInf, zeta_out, cols, vals);
  }

  lp::Solution sol = be.solve(p);
  if (sol.status != lp::Status::kOptimal)
    throw std::runtime_error("cut generation LP failed for pair " + std::to_string(pair) + " (" +
                             lp::to_string(sol.status) + ")");
  double mu_star = sol.x[mu];
  if (mu_star <= 1e-9) return std::nullopt;

  const int ns = static_cast<int>(sub.nodes.size());
  BendersCut cut;
  cut.pair = pair;
  double lhs_out = 0.0, lhs_in = 0.0;
  for (std::size_t ek = 0; ek < sub.edges.size(); ++ek) {
    double sg = std::max(0.0, -sol.y[ns + static_cast<int>(ek)]);
    if (sg <= 1e-12) continue;
    int e = sub.edges[ek];
    cut.edges.push_back(e);
    cut.sigma.push_back(sg);
    lhs_out += sg * ext.x[e];
    lhs_in += sg * interior.x[e];
  }
  cut.upsilon = std::max(0.0, -sol.y[ns + static_cast<int>(sub.edges.size())]);
  lhs_out += cut.upsilon * zeta_out;
  lhs_in += cut.upsilon * interior.zeta[pair];
  cut.rhs = sol.y[sub.node_local[w.s]] - sol.y[sub.node_local[w.t]];
  cut.violation = cut.rhs - lhs_out;

  if (cut.violation <= 1e-7) {
    if (mu_star <= 1e-6) return std::nullopt;  // marginal step: treat as served
    throw std::logic_error("cut generation for pair " + std::to_string(pair) +
                           " produced a non-violated cut at step " + fmt_double(mu_star));
  }
  if (lhs_in < cut.rhs - 1e-9)
    throw std::logic_error("cut for pair " + std::to_string(pair) +
                           " excludes the interior point");
  return cut;
}

MasterPoint point_from(const Instance& inst, const FormulationMap& map,
                       const std::vector<double>& x) {
  MasterPoint pt;
  pt.y.resize(inst.net.num_nodes());
  pt.x.resize(inst.net.num_edges());
  for (int i = 0; i < inst.net.num_nodes(); ++i) pt.y[i] = x[map.y[i]];
  for (int e = 0; e < inst.net.num_edges(); ++e) pt.x[e] = x[map.x[e]];
  pt.gamma = x[map.gamma];
  pt.zeta.resize(inst.pairs.size());
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi)
    pt.zeta[wi] = map.active[wi] ? x[map.zeta[wi]] : inst.pairs[wi].u;
  return pt;
}

}  // namespace

ReducedInstance preprocess(const Instance& inst) {
  ReducedInstance red;
  red.inst = &inst;
  red.active.assign(inst.pairs.size(), 0);
  red.witness.resize(inst.pairs.size());
  for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
    const ODPair& w = inst.pairs[wi];
    PairSubnetwork sub = pair_subnetwork(inst.net, w);
    if (auto path = cheapest_serving_path(inst, sub, w)) {
      red.active[wi] = 1;
      red.witness[wi] = std::move(*path);
      ++red.surviving;
    } else {
      red.folded_len_demand += w.g * w.u;
      red.gamma_lb = std::max(red.gamma_lb, w.u);
    }
  }
  return red;
}

std::vector<MasterPoint> interior_points(const ReducedInstance& red) {
  if (!red.inst) throw ValidationError("interior points need a preprocessed instance");
  const Instance& inst = *red.inst;
  if (red.surviving == 0)
    throw ValidationError("interior points need at least one surviving pair");
  const int N = inst.net.num_nodes(), E = inst.net.num_edges();
  const int W = static_cast<int>(inst.pairs.size());

  double base_gamma = red.gamma_lb;
  for (int wi = 0; wi < W; ++wi)
    if (red.active[wi]) base_gamma = std::max(base_gamma, inst.pairs[wi].u);

  MasterPoint base;
  base.y.assign(N, 0.0);
  base.x.assign(E, 0.0);
  base.zeta.resize(W);
  for (int wi = 0; wi < W; ++wi) base.zeta[wi] = inst.pairs[wi].u;
  base.gamma = base_gamma;

  std::vector<MasterPoint> pts;
  pts.push_back(base);
  pts.push_back(base);
  pts.back().gamma = 2.0 * base_gamma;
  for (int i = 0; i < N; ++i) {
    pts.push_back(base);
    pts.back().y[i] = 1.0;
  }
  for (int e = 0; e < E; ++e) {
    pts.push_back(base);
    pts.back().x[e] = 1.0;
    pts.back().y[inst.net.edges[e].u] = 1.0;
    pts.back().y[inst.net.edges[e].v] = 1.0;
  }
  for (int wi = 0; wi < W; ++wi) {
    if (!red.active[wi]) continue;
    pts.push_back(base);
    MasterPoint& pt = pts.back();
    for (int e : red.witness[wi]) {
      pt.x[e] = 1.0;
      pt.y[inst.net.edges[e].u] = 1.0;
      pt.y[inst.net.edges[e].v] = 1.0;
    }
    pt.zeta[wi] = 2.0 * inst.pairs[wi].u;
    pt.gamma = std::max(2.0 * inst.pairs[wi].u, base_gamma);
  }
  return pts;
}

MasterPoint interior_point(const ReducedInstance& red) {
  const Instance& inst = *red.inst;
  std::vector<MasterPoint> pts = interior_points(red);
  const int N = inst.net.num_nodes(), E = inst.net.num_edges();
  const int W = static_cast<int>(inst.pairs.size());
  const double K = static_cast<double>(pts.size());

  MasterPoint mean;
  mean.y.assign(N, 0.0);
  mean.x.assign(E, 0.0);
  mean.zeta.assign(W, 0.0);
  for (const MasterPoint& pt : pts) {
    for (int i = 0; i < N; ++i) mean.y[i] += pt.y[i] / K;
    for (int e = 0; e < E; ++e) mean.x[e] += pt.x[e] / K;
    for (int wi = 0; wi < W; ++wi) mean.zeta[wi] += pt.zeta[wi] / K;
    mean.gamma += pt.gamma / K;
  }

  auto inside = [](double slack, const std::string& what) {
    if (!(slack > 0.0))
      throw ValidationError("interior point is not strictly inside at " + what +
                            " (slack " + fmt_double(slack) + ")");
  };
  double cost = 0.0;
  for (int e = 0; e < E; ++e) cost += inst.net.edges[e].cost * mean.x[e];
  for (int i = 0; i < N; ++i) cost += inst.net.node_cost[i] * mean.y[i];
  inside(inst.budget() - cost, "the budget row");
  for (int e = 0; e < E; ++e) {
    const Edge& ed = inst.net.edges[e];
    inside(mean.y[ed.u] - mean.x[e], "coupling of edge " + std::to_string(e));
    inside(mean.y[ed.v] - mean.x[e], "coupling of edge " + std::to_string(e));
  }
  for (int i = 0; i < N; ++i) {
    inside(mean.y[i], "the lower bound of y_" + std::to_string(i));
    inside(1.0 - mean.y[i], "the upper bound of y_" + std::to_string(i));
  }
  for (int e = 0; e < E; ++e) {
    inside(mean.x[e], "the lower bound of x_" + std::to_string(e));
    inside(1.0 - mean.x[e], "the upper bound of x_" + std::to_string(e));
  }
  for (int wi = 0; wi < W; ++wi) {
    if (!red.active[wi]) continue;
    inside(mean.zeta[wi], "the lower bound of zeta_w" + std::to_string(wi));
    inside(mean.gamma - mean.zeta[wi], "the center row of pair " + std::to_string(wi));
  }
  inside(mean.gamma - red.gamma_lb, "the center floor");

  // affine rank: differences to the first point, one column per master var
  const int D = N + E + red.surviving + 1;
  std::vector<std::vector<double>> diff(pts.size() - 1, std::vector<double>(D, 0.0));
  for (std::size_t k = 1; k < pts.size(); ++k) {
    std::vector<double>& row = diff[k - 1];
    int c = 0;
    for (int i = 0; i < N; ++i) row[c++] = pts[k].y[i] - pts[0].y[i];
    for (int e = 0; e < E; ++e) row[c++] = pts[k].x[e] - pts[0].x[e];
    for (int wi = 0; wi < W; ++wi)
      if (red.active[wi]) row[c++] = pts[k].zeta[wi] - pts[0].zeta[wi];
    row[c] = pts[k].gamma - pts[0].gamma;
  }
  int rank = gaussian_rank(std::move(diff), 1e-7);
  if (rank != D)
    throw ValidationError("interior point basis is rank deficient (" + std::to_string(rank) +
                          " of " + std::to_string(D) + ")");
  return mean;
}

std::optional<BendersCut> separate(const Instance& inst, int pair, const MasterPoint& exterior,
                                   const MasterPoint& interior) {
  if (pair < 0 || pair >= static_cast<int>(inst.pairs.size()))
    throw ValidationError("pair id out of range");
  auto sizes_ok = [&](const MasterPoint& pt) {
    return static_cast<int>(pt.y.size()) == inst.net.num_nodes() &&
           static_cast<int>(pt.x.size()) == inst.net.num_edges() &&
           pt.zeta.size() == inst.pairs.size();
  };
  if (!sizes_ok(exterior) || !sizes_ok(interior))
    throw ValidationError("master point dimensions do not match the instance");
  PairSubnetwork sub = pair_subnetwork(inst.net, inst.pairs[pair]);
  auto backend = lp::make_backend("revised");
  return separate_sub(inst, sub, pair, exterior, interior, *backend);
}

BendersResult solve_benders(const Instance& inst, const BuildOptions& opt,
                            const BnbParams& params) {
  BendersResult out;
  out.reduced = preprocess(inst);
  BuiltModel bm = build_master(inst, out.reduced.active, opt);

  MipCallbacks cb = completion(inst, bm);
  MasterPoint ip;
  auto backend = lp::make_backend("revised");
  std::vector<std::set<std::vector<long long>>> seen(inst.pairs.size());

  if (out.reduced.surviving > 0) {
    ip = interior_point(out.reduced);
    cb.separate = [&](const NodeView& view) {
      std::vector<CutRow> rows;
      MasterPoint ext = point_from(inst, bm.map, view.x);
      for (std::size_t wi = 0; wi < inst.pairs.size(); ++wi) {
        if (!bm.map.active[wi]) continue;
        auto cut = separate_sub(inst, bm.map.sub[wi], static_cast<int>(wi), ext, ip, *backend);
        if (!cut) continue;
        cut->node = view.node;
        std::vector<long long> sig;
        for (std::size_t k = 0; k < cut->edges.size(); ++k) {
          sig.push_back(cut->edges[k]);
          sig.push_back(std::llround(cut->sigma[k] * 1e9));
        }
        sig.push_back(std::llround(cut->upsilon * 1e9));
        sig.push_back(std::llround(cut->rhs * 1e9));
        if (!seen[wi].insert(std::move(sig)).second) continue;

        CutRow row;
        row.name = "bd_w" + std::to_string(wi) + "_" + std::to_string(out.ledger.size());
        row.lo = cut->rhs;
        row.hi = kInf;
        for (std::size_t k = 0; k < cut->edges.size(); ++k) {
          row.cols.push_back(bm.map.x[cut->edges[k]]);
          row.vals.push_back(cut->sigma[k]);
        }
        if (cut->upsilon > 1e-12) {
          row.cols.push_back(bm.map.zeta[wi]);
          row.vals.push_back(cut->upsilon);
        }
        if (row.cols.empty()) continue;
        out.ledger.push_back(std::move(*cut));
        rows.push_back(std::move(row));
      }
      return rows;
    };
  }

  out.mip = solve_mip(bm.model, params, cb);
  if (out.mip.has_incumbent) {
    Subgraph s = design_from(inst, bm.map, out.mip.x);
    out.solution = assemble_solution(inst, s, opt.lambda, out.mip.obj);
  }
  return out;
}

}  // namespace centdian
