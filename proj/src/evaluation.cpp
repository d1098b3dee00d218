#include "centdian/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace centdian {

Evaluation evaluate(const Instance& inst, const Subgraph& s) {
  validate_subgraph(inst.net, s);
  Evaluation ev;
  ev.instance_digest = inst.digest();
  ev.total_demand = inst.total_demand();
  if (inst.pairs.empty()) throw ValidationError("instance has no demand pairs");

  // one Dijkstra per distinct built origin
  std::vector<std::vector<double>> dist_from(inst.net.num_nodes());
  ev.len.resize(inst.pairs.size());
  double served_g = 0.0;
  int served_pairs = 0;
  for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
    const ODPair& w = inst.pairs[k];
    double d = kInf;
    if (s.node_on[w.s] && s.node_on[w.t]) {
      auto& row = dist_from[w.s];
      if (row.empty()) row = shortest_distances(inst.net, s, w.s);
      d = row[w.t];
    }
    ev.len[k] = std::min(d, w.u);
    if (d < w.u) {  // served by the network: strictly better than private mode
      served_g += w.g;
      ++served_pairs;
    }
  }
  ev.lmin = kInf;
  ev.lmax = 0.0;
  double lsum = 0.0, gl = 0.0;
  for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
    ev.lmin = std::min(ev.lmin, ev.len[k]);
    ev.lmax = std::max(ev.lmax, ev.len[k]);
    lsum += ev.len[k];
    gl += inst.pairs[k].g * ev.len[k];
  }
  ev.lmean = lsum / static_cast<double>(inst.pairs.size());
  ev.Fm = gl / ev.total_demand;
  ev.Fc = ev.lmax;
  double mad = 0.0;
  for (std::size_t a = 0; a < inst.pairs.size(); ++a)
    for (std::size_t b = a + 1; b < inst.pairs.size(); ++b)
      mad += inst.pairs[a].g * inst.pairs[b].g * std::abs(ev.len[a] - ev.len[b]);
  ev.mad_raw = mad;  // the half cancels: each unordered pair counted once
  ev.mad = mad / (ev.total_demand * ev.total_demand);
  ev.od_pct = 100.0 * served_g / ev.total_demand;
  ev.od_pct_unweighted = 100.0 * served_pairs / static_cast<double>(inst.pairs.size());
  return ev;
}

bool dominates(const Evaluation& a, const Evaluation& b) {
  if (a.instance_digest != b.instance_digest)
    throw ValidationError("comparing evaluations from different instances");
  if (a.Fm <= b.Fm && a.Fc <= b.Fc && (a.Fm < b.Fm || a.Fc < b.Fc)) return true;
  return false;
}

std::vector<int> pareto_filter(const std::vector<Evaluation>& evals) {
  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(evals.size()); ++i) {
    bool dominated = false;
    for (int j = 0; j < static_cast<int>(evals.size()) && !dominated; ++j)
      if (j != i && dominates(evals[j], evals[i])) dominated = true;
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

std::string metrics_csv_header() { return "lambda,delta,l_min,l_max,l_mean,MAD,OD_pct"; }

std::string metrics_csv_row(const Evaluation& ev, double lambda, std::optional<double> delta) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s,%s,%.6f,%.6f,%.6f,%.6f,%.6f", fmt_double(lambda).c_str(),
                delta ? fmt_double(*delta).c_str() : "-", ev.lmin, ev.lmax, ev.lmean, ev.mad,
                ev.od_pct);
  return buf;
}

}  // namespace centdian
