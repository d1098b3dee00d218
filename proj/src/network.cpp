#include "centdian/network.hpp"

#include <algorithm>
#include <queue>
#include <tuple>
#include <utility>

namespace centdian {

Network build_network(int num_nodes, std::vector<Edge> edges) {
  if (num_nodes <= 0) throw ValidationError("network needs at least one node");
  Network net;
  net.node_cost.assign(num_nodes, 0.0);
  net.incident.assign(num_nodes, {});
  std::vector<std::vector<std::uint8_t>> seen;  // duplicate-edge check via sorted pairs
  std::vector<std::pair<int, int>> keys;
  keys.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    Edge& e = edges[k];
    if (e.u < 0 || e.u >= num_nodes || e.v < 0 || e.v >= num_nodes)
      throw ValidationError("edge " + std::to_string(k) + ": endpoint out of range");
    if (e.u == e.v) throw ValidationError("edge " + std::to_string(k) + ": self-loop");
    if (!(e.length > 0.0)) throw ValidationError("edge " + std::to_string(k) + ": length must be positive");
    if (e.cost < 0.0) throw ValidationError("edge " + std::to_string(k) + ": negative cost");
    if (e.u > e.v) std::swap(e.u, e.v);
    keys.emplace_back(e.u, e.v);
  }
  {
    auto sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("duplicate edge between the same endpoints");
  }
  net.edges = std::move(edges);
  for (int e = 0; e < net.num_edges(); ++e) {
    net.incident[net.edges[e].u].push_back(e);
    net.incident[net.edges[e].v].push_back(e);
  }
  for (auto& inc : net.incident) std::sort(inc.begin(), inc.end());
  net.total_build_cost = 0.0;
  for (double b : net.node_cost) net.total_build_cost += b;
  for (const Edge& e : net.edges) net.total_build_cost += e.cost;
  return net;
}

std::vector<int> Subgraph::nodes() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(node_on.size()); ++i)
    if (node_on[i]) out.push_back(i);
  return out;
}

std::vector<int> Subgraph::edges() const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(edge_on.size()); ++e)
    if (edge_on[e]) out.push_back(e);
  return out;
}

Subgraph empty_subgraph(const Network& net) {
  Subgraph s;
  s.node_on.assign(net.num_nodes(), 0);
  s.edge_on.assign(net.num_edges(), 0);
  return s;
}

Subgraph full_subgraph(const Network& net) {
  Subgraph s;
  s.node_on.assign(net.num_nodes(), 1);
  s.edge_on.assign(net.num_edges(), 1);
  return s;
}

Subgraph subgraph_from_edges(const Network& net, const std::vector<int>& edge_ids) {
  Subgraph s = empty_subgraph(net);
  for (int e : edge_ids) {
    if (e < 0 || e >= net.num_edges())
      throw ValidationError("subgraph edge id " + std::to_string(e) + " out of range");
    s.edge_on[e] = 1;
    s.node_on[net.edges[e].u] = 1;
    s.node_on[net.edges[e].v] = 1;
  }
  return s;
}

void validate_subgraph(const Network& net, const Subgraph& s) {
  if (static_cast<int>(s.node_on.size()) != net.num_nodes() ||
      static_cast<int>(s.edge_on.size()) != net.num_edges())
    throw ValidationError("subgraph mask sizes do not match the network");
  for (int e = 0; e < net.num_edges(); ++e) {
    if (s.edge_on[e] && !(s.node_on[net.edges[e].u] && s.node_on[net.edges[e].v]))
      throw ValidationError("edge " + std::to_string(e) + " built without both endpoints");
  }
}

double subgraph_cost(const Network& net, const Subgraph& s) {
  double c = 0.0;
  for (int i = 0; i < net.num_nodes(); ++i)
    if (s.node_on[i]) c += net.node_cost[i];
  for (int e = 0; e < net.num_edges(); ++e)
    if (s.edge_on[e]) c += net.edges[e].cost;
  return c;
}

std::uint64_t subgraph_hash(const Subgraph& s) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(0x6e6f646573ull);  // "nodes"
  for (int i = 0; i < static_cast<int>(s.node_on.size()); ++i)
    if (s.node_on[i]) mix(static_cast<std::uint64_t>(i) + 1);
  mix(0x6564676573ull);  // "edges"
  for (int e = 0; e < static_cast<int>(s.edge_on.size()); ++e)
    if (s.edge_on[e]) mix(static_cast<std::uint64_t>(e) + 1);
  return h;
}

std::vector<double> shortest_distances(const Network& net, const Subgraph& s, int src) {
  if (src < 0 || src >= net.num_nodes()) throw ValidationError("source node out of range");
  if (!s.node_on[src]) throw ValidationError("source node is not built");
  std::vector<double> dist(net.num_nodes(), kInf);
  // label-setting Dijkstra; ties broken toward the lower node id so the
  // settle order is deterministic
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  dist[src] = 0.0;
  heap.emplace(0.0, src);
  std::vector<std::uint8_t> done(net.num_nodes(), 0);
  while (!heap.empty()) {
    auto [d, i] = heap.top();
    heap.pop();
    if (done[i]) continue;
    done[i] = 1;
    for (int e : net.incident[i]) {
      if (!s.edge_on[e]) continue;
      int j = net.edges[e].u == i ? net.edges[e].v : net.edges[e].u;
      if (!s.node_on[j]) continue;  // defensive: invalid subgraphs
      double nd = d + net.edges[e].length;
      if (nd < dist[j]) {
        dist[j] = nd;
        heap.emplace(nd, j);
      }
    }
  }
  return dist;
}

PathResult shortest_path(const Network& net, const Subgraph& s, int src, int dst) {
  if (dst < 0 || dst >= net.num_nodes()) throw ValidationError("destination node out of range");
  PathResult res;
  if (!s.node_on[dst]) return res;
  // Distances to the destination (lengths are symmetric), then a greedy
  // forward walk that always takes the smallest-id next node lying on some
  // shortest path.  This yields the lexicographically smallest node-id
  // sequence among all shortest src-dst paths.
  std::vector<double> dist = shortest_distances(net, s, dst);
  if (dist[src] == kInf) return res;
  res.reachable = true;
  res.length = dist[src];
  res.nodes.push_back(src);
  int cur = src;
  while (cur != dst) {
    int best_node = -1, best_edge = -1;
    for (int e : net.incident[cur]) {
      if (!s.edge_on[e]) continue;
      int j = net.edges[e].u == cur ? net.edges[e].v : net.edges[e].u;
      if (!s.node_on[j] || dist[j] == kInf) continue;
      if (net.edges[e].length + dist[j] == dist[cur] && (best_node == -1 || j < best_node)) {
        best_node = j;
        best_edge = e;
      }
    }
    if (best_node == -1) {
      // exact equality failed due to accumulated floating error; fall back
      // to a tolerance-based match to stay total
      double best_gap = kInf;
      for (int e : net.incident[cur]) {
        if (!s.edge_on[e]) continue;
        int j = net.edges[e].u == cur ? net.edges[e].v : net.edges[e].u;
        if (!s.node_on[j] || dist[j] == kInf) continue;
        double gap = std::abs(net.edges[e].length + dist[j] - dist[cur]);
        if (gap < best_gap - 1e-12 || (gap <= best_gap + 1e-12 && (best_node == -1 || j < best_node))) {
          best_gap = gap;
          best_node = j;
          best_edge = e;
        }
      }
    }
    res.nodes.push_back(best_node);
    res.edges.push_back(best_edge);
    cur = best_node;
  }
  return res;
}

PairSubnetwork pair_subnetwork(const Network& net, const ODPair& w) {
  if (w.s < 0 || w.s >= net.num_nodes() || w.t < 0 || w.t >= net.num_nodes())
    throw ValidationError("pair endpoint out of range");
  if (w.s == w.t) throw ValidationError("pair with identical endpoints");
  Subgraph full = full_subgraph(net);
  std::vector<double> from_s = shortest_distances(net, full, w.s);
  std::vector<double> to_t = shortest_distances(net, full, w.t);
  PairSubnetwork sub;
  sub.node_local.assign(net.num_nodes(), -1);
  sub.edge_local.assign(net.num_edges(), -1);
  sub.arc_local.assign(net.num_arcs(), -1);
  std::vector<std::uint8_t> node_keep(net.num_nodes(), 0), edge_keep(net.num_edges(), 0);
  node_keep[w.s] = node_keep[w.t] = 1;
  for (int a = 0; a < net.num_arcs(); ++a) {
    int i = net.arc_tail(a), j = net.arc_head(a);
    if (from_s[i] + net.arc_length(a) + to_t[j] <= w.u) {
      sub.arcs.push_back(a);
      edge_keep[Network::arc_edge(a)] = 1;
      node_keep[i] = node_keep[j] = 1;
    }
  }
  for (int i = 0; i < net.num_nodes(); ++i)
    if (node_keep[i]) {
      sub.node_local[i] = static_cast<int>(sub.nodes.size());
      sub.nodes.push_back(i);
    }
  for (int e = 0; e < net.num_edges(); ++e)
    if (edge_keep[e]) {
      sub.edge_local[e] = static_cast<int>(sub.edges.size());
      sub.edges.push_back(e);
    }
  for (std::size_t k = 0; k < sub.arcs.size(); ++k) sub.arc_local[sub.arcs[k]] = static_cast<int>(k);
  return sub;
}

}  // namespace centdian
