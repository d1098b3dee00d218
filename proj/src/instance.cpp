#include "centdian/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace centdian {

namespace {

// Self-contained PRNG (splitmix64-seeded xoshiro256**) so generated
// instances are identical across platforms and standard library versions.
struct Rng {
  std::uint64_t s[4];

  explicit Rng(std::uint64_t seed) {
    std::uint64_t z = seed;
    for (auto& si : s) {
      z += 0x9e3779b97f4a7c15ull;
      std::uint64_t w = z;
      w = (w ^ (w >> 30)) * 0xbf58476d1ce4e5b9ull;
      w = (w ^ (w >> 27)) * 0x94d049bb133111ebull;
      si = w ^ (w >> 31);
    }
  }

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t next() {
    std::uint64_t result = rotl(s[1] * 5, 7) * 9;
    std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
  }

  double real(double lo, double hi) {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;  // [0,1)
    return lo + u * (hi - lo);
  }

  // integer-rounded uniform draw, the rounding used by the generator
  double rounded(double lo, double hi) { return static_cast<double>(std::llround(real(lo, hi))); }
};

struct P2 {
  double x, y;
};

double orient(const P2& a, const P2& b, const P2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// > 0 iff d lies strictly inside the circumcircle of the ccw triangle (a,b,c)
double incircle(const P2& a, const P2& b, const P2& c, const P2& d) {
  double adx = a.x - d.x, ady = a.y - d.y;
  double bdx = b.x - d.x, bdy = b.y - d.y;
  double cdx = c.x - d.x, cdy = c.y - d.y;
  double ad = adx * adx + ady * ady;
  double bd = bdx * bdx + bdy * bdy;
  double cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

// Delaunay triangulation edge set by direct circumcircle tests; fine at the
// instance sizes the generator targets (tens of nodes).
std::vector<std::pair<int, int>> delaunay_edges(const std::vector<P2>& pts) {
  int n = static_cast<int>(pts.size());
  std::vector<std::pair<int, int>> out;
  if (n == 2) {
    out.emplace_back(0, 1);
    return out;
  }
  std::vector<std::uint8_t> have(static_cast<std::size_t>(n) * n, 0);
  auto add = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    if (!have[static_cast<std::size_t>(i) * n + j]) {
      have[static_cast<std::size_t>(i) * n + j] = 1;
      out.emplace_back(i, j);
    }
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        P2 a = pts[i], b = pts[j], c = pts[k];
        double o = orient(a, b, c);
        if (std::abs(o) < 1e-9) continue;  // collinear
        if (o < 0) std::swap(b, c);
        bool empty = true;
        for (int d = 0; d < n && empty; ++d) {
          if (d == i || d == j || d == k) continue;
          if (incircle(a, b, c, pts[d]) > 0) empty = false;
        }
        if (empty) {
          add(i, j);
          add(j, k);
          add(i, k);
        }
      }
  std::sort(out.begin(), out.end());
  return out;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

bool connected(int n, const std::vector<std::pair<int, int>>& edges) {
  UnionFind uf(n);
  for (auto [a, b] : edges) uf.unite(a, b);
  for (int i = 1; i < n; ++i)
    if (uf.find(i) != uf.find(0)) return false;
  return true;
}

}  // namespace

bool budget_feasible(const Instance& inst, double cost) {
  return cost <= inst.budget() + kBudgetTol;
}

std::uint64_t Instance::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  auto mixd = [&](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    mix(bits);
  };
  mix(static_cast<std::uint64_t>(net.num_nodes()));
  for (double b : net.node_cost) mixd(b);
  for (const Edge& e : net.edges) {
    mix(static_cast<std::uint64_t>(e.u));
    mix(static_cast<std::uint64_t>(e.v));
    mixd(e.cost);
    mixd(e.length);
  }
  for (const ODPair& w : pairs) {
    mix(static_cast<std::uint64_t>(w.s));
    mix(static_cast<std::uint64_t>(w.t));
    mixd(w.u);
    mixd(w.g);
  }
  mixd(alpha);
  return h;
}

Instance generate_instance(const GenParams& p) {
  if (p.n < 2) throw ValidationError("generator needs n >= 2");
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw ValidationError("alpha must lie in (0, 1]");
  if (p.edge_delete_prob < 0.0 || p.edge_delete_prob >= 1.0)
    throw ValidationError("edge deletion probability must lie in [0, 1)");
  Rng rng(p.seed);
  int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(p.n))));

  for (int attempt = 0; attempt < p.max_retries; ++attempt) {
    // one point near the center of each square cell: uniform inside the
    // central half of the cell
    std::vector<P2> pts(p.n);
    for (int i = 0; i < p.n; ++i) {
      double cx = (i % cols + 0.5) * p.cell_side;
      double cy = (i / cols + 0.5) * p.cell_side;
      pts[i] = {cx + rng.real(-p.cell_side / 4, p.cell_side / 4),
                cy + rng.real(-p.cell_side / 4, p.cell_side / 4)};
    }
    std::vector<std::pair<int, int>> tri = delaunay_edges(pts);
    if (p.n >= 3 && (static_cast<int>(tri.size()) < p.n - 1 ||
                     static_cast<int>(tri.size()) > 3 * p.n - 6))
      continue;  // degenerate geometry; redraw the points
    bool short_edge = false;
    for (auto [a, b] : tri)
      if (std::llround(std::hypot(pts[a].x - pts[b].x, pts[a].y - pts[b].y)) < 1)
        short_edge = true;
    if (short_edge || !connected(p.n, tri)) continue;

    // deletion pass; re-sample while it disconnects the graph
    std::vector<std::pair<int, int>> kept;
    bool ok = false;
    for (int del_try = 0; del_try < p.max_retries && !ok; ++del_try) {
      kept.clear();
      for (auto e : tri)
        if (rng.real(0.0, 1.0) >= p.edge_delete_prob) kept.push_back(e);
      ok = connected(p.n, kept);
    }
    if (!ok) continue;

    Instance inst;
    inst.alpha = p.alpha;
    inst.seed = p.seed;
    inst.coords.resize(p.n);
    for (int i = 0; i < p.n; ++i) inst.coords[i] = {pts[i].x, pts[i].y};
    std::vector<Edge> edges;
    edges.reserve(kept.size());
    for (auto [a, b] : kept) {
      double len = std::max<double>(1.0, std::llround(std::hypot(pts[a].x - pts[b].x, pts[a].y - pts[b].y)));
      edges.push_back({a, b, len, len});
    }
    inst.net = build_network(p.n, std::move(edges));
    for (int i = 0; i < p.n; ++i) inst.net.node_cost[i] = rng.rounded(p.node_cost_lo, p.node_cost_hi);
    inst.net.total_build_cost = 0.0;
    for (double b : inst.net.node_cost) inst.net.total_build_cost += b;
    for (const Edge& e : inst.net.edges) inst.net.total_build_cost += e.cost;
    for (int s = 0; s < p.n; ++s)
      for (int t = 0; t < p.n; ++t) {
        if (s == t) continue;
        double eu = std::hypot(pts[s].x - pts[t].x, pts[s].y - pts[t].y);
        inst.pairs.push_back({s, t, p.utility_factor * eu, rng.rounded(p.demand_lo, p.demand_hi)});
      }
    if (p.name.empty()) {
      inst.name = "gen-n" + std::to_string(p.n) + "-a" + fmt_double(p.alpha) + "-s" +
                  std::to_string(p.seed);
    } else {
      inst.name = p.name;
    }
    return inst;
  }
  throw ValidationError("generator failed to produce a connected instance within retry budget");
}

Instance prop2_fixture() {
  Instance inst;
  inst.name = "prop2";
  inst.alpha = 63.0 / 92.0;  // budget 63 of C_total 92
  std::vector<Edge> edges = {
      {0, 1, 12, 12}, {0, 2, 14, 14}, {0, 3, 17, 17}, {1, 3, 10, 10}, {2, 3, 6, 6},
  };
  inst.net = build_network(4, std::move(edges));
  inst.net.node_cost = {8, 7, 10, 8};
  inst.net.total_build_cost = 92;
  inst.pairs = {
      {0, 1, 24, 181},  // (1,2)
      {0, 3, 34, 168},  // (1,4)
      {1, 3, 20, 43},   // (2,4)
      {2, 1, 32, 121},  // (3,2)
  };
  return inst;
}

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == static_cast<double>(std::llround(v)) && std::abs(v) < 1e15)
    return std::to_string(std::llround(v));
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

constexpr const char* kMagic = "centdian-instance";
constexpr const char* kVersion = "v1";

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ValidationError("instance file line " + std::to_string(line) + ": " + msg);
}

struct LineReader {
  std::istream& in;
  int line_no = 0;
  bool next(std::vector<std::string>& toks, std::string& raw) {
    while (std::getline(in, raw)) {
      ++line_no;
      std::istringstream ss(raw);
      toks.clear();
      std::string t;
      while (ss >> t) {
        if (t[0] == '#') break;  // comment to end of line
        toks.push_back(t);
      }
      if (!toks.empty()) return true;
    }
    return false;
  }
};

double parse_num(const std::string& s, int line, const char* what) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') fail(line, std::string("bad ") + what + " '" + s + "'");
  return v;
}

int parse_int(const std::string& s, int line, const char* what) {
  double v = parse_num(s, line, what);
  if (v != static_cast<double>(static_cast<long long>(v)))
    fail(line, std::string(what) + " must be an integer, got '" + s + "'");
  return static_cast<int>(v);
}

}  // namespace

Instance read_instance(std::istream& in) {
  LineReader rd{in};
  std::vector<std::string> t;
  std::string raw;
  if (!rd.next(t, raw) || t.size() != 2 || t[0] != kMagic || t[1] != kVersion)
    fail(rd.line_no, std::string("expected header '") + kMagic + " " + kVersion + "'");
  Instance inst;
  bool have_alpha = false;
  int n_nodes = -1, n_edges = -1, n_pairs = -1;
  std::vector<Edge> edges;
  int next_node = 0, next_edge = 0, next_pair = 0;
  std::vector<double> node_costs;
  while (rd.next(t, raw)) {
    const std::string& key = t[0];
    if (key == "name" && t.size() == 2) {
      inst.name = t[1];
    } else if (key == "alpha" && t.size() == 2) {
      inst.alpha = parse_num(t[1], rd.line_no, "alpha");
      if (!(inst.alpha > 0.0 && inst.alpha <= 1.0)) fail(rd.line_no, "alpha must lie in (0, 1]");
      have_alpha = true;
    } else if (key == "seed" && t.size() == 2) {
      inst.seed = static_cast<std::uint64_t>(parse_num(t[1], rd.line_no, "seed"));
    } else if (key == "nodes" && t.size() == 2) {
      n_nodes = parse_int(t[1], rd.line_no, "node count");
      if (n_nodes <= 0) fail(rd.line_no, "node count must be positive");
    } else if (key == "node") {
      if (n_nodes < 0) fail(rd.line_no, "'node' before 'nodes' count");
      if (t.size() != 4 && t.size() != 7) fail(rd.line_no, "expected: node <id> cost <b> [at <x> <y>]");
      int id = parse_int(t[1], rd.line_no, "node id");
      if (id != next_node) fail(rd.line_no, "node ids must run 0.." + std::to_string(n_nodes - 1) + " in order");
      if (t[2] != "cost") fail(rd.line_no, "expected 'cost'");
      double b = parse_num(t[3], rd.line_no, "node cost");
      if (b < 0) fail(rd.line_no, "negative node cost");
      node_costs.push_back(b);
      if (t.size() == 7) {
        if (t[4] != "at") fail(rd.line_no, "expected 'at'");
        inst.coords.push_back({parse_num(t[5], rd.line_no, "x"), parse_num(t[6], rd.line_no, "y")});
      }
      ++next_node;
    } else if (key == "edges" && t.size() == 2) {
      n_edges = parse_int(t[1], rd.line_no, "edge count");
      if (n_edges < 0) fail(rd.line_no, "negative edge count");
    } else if (key == "edge") {
      if (n_edges < 0) fail(rd.line_no, "'edge' before 'edges' count");
      if (t.size() != 8 || t[4] != "cost" || t[6] != "length")
        fail(rd.line_no, "expected: edge <id> <u> <v> cost <c> length <d>");
      int id = parse_int(t[1], rd.line_no, "edge id");
      if (id != next_edge) fail(rd.line_no, "edge ids must run in order");
      Edge e;
      e.u = parse_int(t[2], rd.line_no, "edge endpoint");
      e.v = parse_int(t[3], rd.line_no, "edge endpoint");
      e.cost = parse_num(t[5], rd.line_no, "edge cost");
      e.length = parse_num(t[7], rd.line_no, "edge length");
      if (!(e.length > 0)) fail(rd.line_no, "edge length must be positive");
      edges.push_back(e);
      ++next_edge;
    } else if (key == "pairs" && t.size() == 2) {
      n_pairs = parse_int(t[1], rd.line_no, "pair count");
      if (n_pairs < 0) fail(rd.line_no, "negative pair count");
    } else if (key == "pair") {
      if (n_pairs < 0) fail(rd.line_no, "'pair' before 'pairs' count");
      if (t.size() != 8 || t[4] != "max-length" || t[6] != "demand")
        fail(rd.line_no, "expected: pair <id> <s> <t> max-length <u> demand <g>");
      int id = parse_int(t[1], rd.line_no, "pair id");
      if (id != next_pair) fail(rd.line_no, "pair ids must run in order");
      ODPair w;
      w.s = parse_int(t[2], rd.line_no, "pair origin");
      w.t = parse_int(t[3], rd.line_no, "pair destination");
      w.u = parse_num(t[5], rd.line_no, "pair max-length");
      w.g = parse_num(t[7], rd.line_no, "pair demand");
      if (w.s == w.t) fail(rd.line_no, "pair with identical endpoints");
      if (!(w.u > 0)) fail(rd.line_no, "pair max-length must be positive");
      if (!(w.g > 0)) fail(rd.line_no, "pair demand must be positive");
      inst.pairs.push_back(w);
      ++next_pair;
    } else {
      fail(rd.line_no, "unrecognized line '" + raw + "'");
    }
  }
  if (!have_alpha) fail(rd.line_no, "missing 'alpha'");
  if (n_nodes < 0) fail(rd.line_no, "missing 'nodes' section");
  if (next_node != n_nodes) fail(rd.line_no, "node count mismatch");
  if (n_edges < 0 || next_edge != n_edges) fail(rd.line_no, "edge count mismatch");
  if (n_pairs < 0 || next_pair != n_pairs) fail(rd.line_no, "pair count mismatch");
  if (!inst.coords.empty() && static_cast<int>(inst.coords.size()) != n_nodes)
    fail(rd.line_no, "either all or no nodes must carry coordinates");
  try {
    inst.net = build_network(n_nodes, std::move(edges));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("instance file: ") + e.what());
  }
  inst.net.node_cost = node_costs;
  inst.net.total_build_cost = 0.0;
  for (double b : node_costs) inst.net.total_build_cost += b;
  for (const Edge& e : inst.net.edges) inst.net.total_build_cost += e.cost;
  for (const ODPair& w : inst.pairs)
    if (w.s >= n_nodes || w.t >= n_nodes || w.s < 0 || w.t < 0)
      throw ValidationError("instance file: pair endpoint out of range");
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file '" + path + "'");
  return read_instance(in);
}

void write_instance(const Instance& inst, std::ostream& out) {
  out << kMagic << ' ' << kVersion << '\n';
  if (!inst.name.empty()) out << "name " << inst.name << '\n';
  out << "alpha " << fmt_double(inst.alpha) << '\n';
  if (inst.seed) out << "seed " << *inst.seed << '\n';
  out << "nodes " << inst.net.num_nodes() << '\n';
  for (int i = 0; i < inst.net.num_nodes(); ++i) {
    out << "node " << i << " cost " << fmt_double(inst.net.node_cost[i]);
    if (!inst.coords.empty())
      out << " at " << fmt_double(inst.coords[i][0]) << ' ' << fmt_double(inst.coords[i][1]);
    out << '\n';
  }
  out << "edges " << inst.net.num_edges() << '\n';
  for (int e = 0; e < inst.net.num_edges(); ++e) {
    const Edge& ed = inst.net.edges[e];
    out << "edge " << e << ' ' << ed.u << ' ' << ed.v << " cost " << fmt_double(ed.cost)
        << " length " << fmt_double(ed.length) << '\n';
  }
  out << "pairs " << inst.pairs.size() << '\n';
  for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
    const ODPair& w = inst.pairs[k];
    out << "pair " << k << ' ' << w.s << ' ' << w.t << " max-length " << fmt_double(w.u)
        << " demand " << fmt_double(w.g) << '\n';
  }
}

void write_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  write_instance(inst, out);
  if (!out.good()) throw ValidationError("failed writing instance file '" + path + "'");
}

}  // namespace centdian
