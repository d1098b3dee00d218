#ifndef CENTDIAN_INSTANCE_HPP
#define CENTDIAN_INSTANCE_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "centdian/network.hpp"

namespace centdian {

// Absolute slack used whenever a build cost is compared against the budget
// alpha * C_total; all generated costs are integral, so this only absorbs
// floating-point noise from the alpha multiplication.
constexpr double kBudgetTol = 1e-6;

// A problem instance: the potential network, the O/D demand pairs and the
// budget fraction alpha (the spendable budget is alpha * C_total).
struct Instance {
  Network net;
  std::vector<ODPair> pairs;
  double alpha = 0.0;
  std::string name;
  std::optional<std::uint64_t> seed;               // present on generated instances
  std::vector<std::array<double, 2>> coords;       // empty if unknown

  double budget() const { return alpha * net.total_build_cost; }
  double total_demand() const {
    double g = 0.0;
    for (const ODPair& w : pairs) g += w.g;
    return g;
  }
  // FNV-1a digest of all instance data; used to tie evaluations to the
  // instance they were computed on.
  std::uint64_t digest() const;
};

bool budget_feasible(const Instance& inst, double cost);

struct GenParams {
  int n = 10;                      // number of nodes (== number of grid cells)
  double alpha = 0.25;             // budget fraction
  double edge_delete_prob = 0.2;   // independent edge deletion probability
  std::uint64_t seed = 0;
  double cell_side = 10.0;         // square cell side length
  double node_cost_lo = 7.0;       // node build cost ~ round(U(lo, hi))
  double node_cost_hi = 13.0;
  double demand_lo = 10.0;         // pair demand ~ round(U(lo, hi))
  double demand_hi = 300.0;
  double utility_factor = 2.0;     // u^w = factor * Euclidean(s, t)
  int max_retries = 64;            // deletion re-sampling attempts
  std::string name;                // defaults to "gen-n<n>-a<alpha>-s<seed>"
};

// Random planar instance:
//  - one point near the center of each of n square cells (uniform inside the
//    central half of the cell),
//  - Delaunay triangulation of the points (a maximal planar straight-line
//    graph), each edge then deleted independently with probability p; the
//    deletion pass is re-sampled while it disconnects the graph,
//  - node costs round(U(7,13)); edge cost = edge length = rounded Euclidean
//    distance; demands round(U(10,300)); u^w = 2 x Euclidean distance,
//  - pairs: all ordered (i, j), i != j.
// Deterministic for a fixed parameter set (own PRNG, no std distributions).
Instance generate_instance(const GenParams& p);

// Four-node reference instance (node costs 8,7,10,8; five edges; four pairs;
// alpha = 63/92 so the budget is 63).
Instance prop2_fixture();

// Versioned human-readable text format; see docs in README.  Read errors
// carry 1-based line numbers.
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(const Instance& inst, std::ostream& out);
void write_instance_file(const Instance& inst, const std::string& path);

// Shortest %.17g-style representation that round-trips the double exactly;
// integers print without a decimal point.
std::string fmt_double(double v);

}  // namespace centdian

#endif  // CENTDIAN_INSTANCE_HPP
