#ifndef CENTDIAN_NETWORK_HPP
#define CENTDIAN_NETWORK_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace centdian {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Thrown when input data violates a documented precondition (bad ids,
// non-positive lengths, duplicate edges, malformed files, ...).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct Edge {
  int u = -1;            // endpoint ids, u < v after normalization
  int v = -1;
  double cost = 0.0;     // build cost c_e
  double length = 0.0;   // traversal length d_e (both directions)
};

// Undirected network with node build costs.  Edges are stored once; each
// edge e yields two directed arcs: arc 2e runs u->v, arc 2e+1 runs v->u.
struct Network {
  std::vector<double> node_cost;            // b_i
  std::vector<Edge> edges;
  std::vector<std::vector<int>> incident;   // node -> incident edge ids, ascending
  double total_build_cost = 0.0;            // C_total = sum of all node and edge costs

  int num_nodes() const { return static_cast<int>(node_cost.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_arcs() const { return 2 * num_edges(); }

  int arc_tail(int a) const { return (a & 1) ? edges[a >> 1].v : edges[a >> 1].u; }
  int arc_head(int a) const { return (a & 1) ? edges[a >> 1].u : edges[a >> 1].v; }
  double arc_length(int a) const { return edges[a >> 1].length; }
  static int arc_edge(int a) { return a >> 1; }
  static int arc_reverse(int a) { return a ^ 1; }
  // arc id of edge e oriented tail->head, or -1 if e does not join them
  int arc_of(int e, int tail) const {
    if (edges[e].u == tail) return 2 * e;
    if (edges[e].v == tail) return 2 * e + 1;
    return -1;
  }
};

// Validates and builds a network: ids in range, u != v, positive costs and
// lengths, no duplicate edges.  Endpoint order is normalized to u < v.
Network build_network(int num_nodes, std::vector<Edge> edges);

// A subset S of the network: built nodes and built edges.  Invariant: every
// built edge has both endpoints built (checked by validate_subgraph).
struct Subgraph {
  std::vector<std::uint8_t> node_on;
  std::vector<std::uint8_t> edge_on;

  std::vector<int> nodes() const;   // built node ids, ascending
  std::vector<int> edges() const;   // built edge ids, ascending
  bool operator==(const Subgraph&) const = default;
};

Subgraph empty_subgraph(const Network& net);
Subgraph full_subgraph(const Network& net);
// Nodes are exactly the endpoints of the given edges.
Subgraph subgraph_from_edges(const Network& net, const std::vector<int>& edge_ids);
void validate_subgraph(const Network& net, const Subgraph& s);
// Build cost of S: sum of built node costs plus built edge costs.
double subgraph_cost(const Network& net, const Subgraph& s);
// Stable identity for a design: FNV-1a over the sorted node and edge id lists.
std::uint64_t subgraph_hash(const Subgraph& s);

// Single-source shortest path lengths within S (label-setting Dijkstra,
// lexicographic tie-breaking).  Unreachable nodes get +infinity; src must be
// built.  Nodes outside S are unreachable.
std::vector<double> shortest_distances(const Network& net, const Subgraph& s, int src);

struct PathResult {
  bool reachable = false;
  double length = kInf;
  std::vector<int> nodes;   // src..dst inclusive; among shortest paths the
                            // lexicographically smallest node-id sequence
  std::vector<int> edges;   // edge ids along the path
};

PathResult shortest_path(const Network& net, const Subgraph& s, int src, int dst);

// An O/D demand pair: origin s, destination t, private-mode utility bound u
// (maximum acceptable travel length), demand weight g.
struct ODPair {
  int s = -1;
  int t = -1;
  double u = 0.0;
  double g = 0.0;
};

// Pair-specific subnetwork N^w: arc a=(i,j) is kept iff
//   dist(w.s, i) + length(a) + dist(j, w.t) <= u^w
// with distances taken in the full network.  Node set: endpoints of kept
// arcs plus w.s and w.t.  Edge set: edges with at least one kept arc.
struct PairSubnetwork {
  std::vector<int> arcs;    // kept arc ids, ascending
  std::vector<int> edges;   // edges with >= 1 kept arc, ascending
  std::vector<int> nodes;   // kept node ids, ascending (always contains s, t)
  std::vector<int> node_local;  // node id -> position in nodes, -1 if absent
  std::vector<int> edge_local;  // edge id -> position in edges, -1 if absent
  std::vector<int> arc_local;   // arc id -> position in arcs, -1 if absent
};

PairSubnetwork pair_subnetwork(const Network& net, const ODPair& w);

}  // namespace centdian

#endif  // CENTDIAN_NETWORK_HPP
