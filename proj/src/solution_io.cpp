#include "centdian/solution_io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace centdian {

namespace {

constexpr const char* kMagic = "centdian-solution";
constexpr const char* kVersion = "v1";

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ValidationError("solution file line " + std::to_string(line) + ": " + msg);
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
        if (t[0] == '#') break;
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

void write_solution(const Instance& inst, const DesignSolution& sol, std::ostream& out) {
  out << kMagic << ' ' << kVersion << '\n';
  out << "instance-digest " << inst.digest() << '\n';
  out << "lambda " << fmt_double(sol.lambda) << '\n';
  out << "objective " << fmt_double(sol.objective) << '\n';
  out << "center " << fmt_double(sol.eval.Fc) << '\n';
  out << "mean " << fmt_double(sol.eval.Fm) << '\n';
  std::vector<int> nodes = sol.design.nodes();
  out << "nodes " << nodes.size() << '\n';
  for (int i : nodes) out << "node " << i << '\n';
  std::vector<int> edges = sol.design.edges();
  out << "edges " << edges.size() << '\n';
  for (int e : edges) out << "edge " << e << '\n';
  out << "routes " << sol.routing.size() << '\n';
  for (std::size_t w = 0; w < sol.routing.size(); ++w) {
    out << "route " << w;
    if (sol.private_mode[w]) {
      out << " private\n";
      continue;
    }
    out << " network";
    for (int e : sol.routing[w].edges) out << ' ' << e;
    out << '\n';
  }
}

void write_solution_file(const Instance& inst, const DesignSolution& sol,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  write_solution(inst, sol, out);
  if (!out.good()) throw ValidationError("failed writing solution file '" + path + "'");
}

DesignSolution read_solution(const Instance& inst, std::istream& in) {
  LineReader rd{in};
  std::vector<std::string> t;
  std::string raw;
  if (!rd.next(t, raw) || t.size() != 2 || t[0] != kMagic || t[1] != kVersion)
    fail(rd.line_no, std::string("expected header '") + kMagic + " " + kVersion + "'");

  bool have_digest = false, have_lambda = false, have_objective = false;
  bool have_center = false, have_mean = false;
  std::string digest;
  double lambda = 0.0, objective = 0.0, center = 0.0, mean = 0.0;
  int n_nodes = -1, n_edges = -1, n_routes = -1;
  Subgraph s = empty_subgraph(inst.net);
  std::vector<std::vector<int>> routes;
  std::vector<std::uint8_t> route_private;
  int next_route = 0, seen_nodes = 0, seen_edges = 0;

  while (rd.next(t, raw)) {
    const std::string& key = t[0];
    if (key == "instance-digest" && t.size() == 2) {
      digest = t[1];
      have_digest = true;
    } else if (key == "lambda" && t.size() == 2) {
      lambda = parse_num(t[1], rd.line_no, "lambda");
      have_lambda = true;
    } else if (key == "objective" && t.size() == 2) {
      objective = parse_num(t[1], rd.line_no, "objective");
      have_objective = true;
    } else if (key == "center" && t.size() == 2) {
      center = parse_num(t[1], rd.line_no, "center");
      have_center = true;
    } else if (key == "mean" && t.size() == 2) {
      mean = parse_num(t[1], rd.line_no, "mean");
      have_mean = true;
    } else if (key == "nodes" && t.size() == 2) {
      n_nodes = parse_int(t[1], rd.line_no, "node count");
    } else if (key == "node" && t.size() == 2) {
      int id = parse_int(t[1], rd.line_no, "node id");
      if (id < 0 || id >= inst.net.num_nodes()) fail(rd.line_no, "node id out of range");
      if (s.node_on[id]) fail(rd.line_no, "duplicate node");
      s.node_on[id] = 1;
      ++seen_nodes;
    } else if (key == "edges" && t.size() == 2) {
      n_edges = parse_int(t[1], rd.line_no, "edge count");
    } else if (key == "edge" && t.size() == 2) {
      int id = parse_int(t[1], rd.line_no, "edge id");
      if (id < 0 || id >= inst.net.num_edges()) fail(rd.line_no, "edge id out of range");
      if (s.edge_on[id]) fail(rd.line_no, "duplicate edge");
      s.edge_on[id] = 1;
      ++seen_edges;
    } else if (key == "routes" && t.size() == 2) {
      n_routes = parse_int(t[1], rd.line_no, "route count");
      if (n_routes != static_cast<int>(inst.pairs.size()))
        fail(rd.line_no, "route count does not match the instance's pair count");
    } else if (key == "route") {
      if (t.size() < 3) fail(rd.line_no, "expected: route <pair> private|network <edges...>");
      int id = parse_int(t[1], rd.line_no, "route pair");
      if (id != next_route) fail(rd.line_no, "route ids must run in order");
      if (t[2] == "private") {
        if (t.size() != 3) fail(rd.line_no, "private route carries no edges");
        route_private.push_back(1);
        routes.emplace_back();
      } else if (t[2] == "network") {
        route_private.push_back(0);
        std::vector<int> edges;
        for (std::size_t k = 3; k < t.size(); ++k)
          edges.push_back(parse_int(t[k], rd.line_no, "route edge"));
        routes.push_back(std::move(edges));
      } else {
        fail(rd.line_no, "route mode must be 'private' or 'network'");
      }
      ++next_route;
    } else {
      fail(rd.line_no, "unrecognized line '" + raw + "'");
    }
  }
  if (!have_digest) fail(rd.line_no, "missing 'instance-digest'");
  if (!have_lambda || !have_objective || !have_center || !have_mean)
    fail(rd.line_no, "missing one of lambda/objective/center/mean");
  if (n_nodes != seen_nodes) fail(rd.line_no, "node count mismatch");
  if (n_edges != seen_edges) fail(rd.line_no, "edge count mismatch");
  if (n_routes != next_route) fail(rd.line_no, "route count mismatch");

  if (digest != std::to_string(inst.digest()))
    throw ValidationError("solution file was computed on a different instance (digest " + digest +
                          " vs " + std::to_string(inst.digest()) + ")");
  validate_subgraph(inst.net, s);

  DesignSolution sol = assemble_solution(inst, s, lambda, objective);
  if (sol.eval.Fc != center || sol.eval.Fm != mean)
    throw ValidationError("solution file metrics disagree with re-evaluation: center/mean " +
                          fmt_double(center) + "/" + fmt_double(mean) + " vs " +
                          fmt_double(sol.eval.Fc) + "/" + fmt_double(sol.eval.Fm));
  double h = sol.eval.H(lambda);
  if (std::fabs(objective - h) > 1e-6 * std::max(1.0, std::fabs(objective)))
    throw ValidationError("solution file objective " + fmt_double(objective) +
                          " disagrees with the blend value " + fmt_double(h));
  for (std::size_t w = 0; w < inst.pairs.size(); ++w) {
    if (route_private[w] != sol.private_mode[w] ||
        (!route_private[w] && routes[w] != sol.routing[w].edges))
      throw ValidationError("solution file routing of pair " + std::to_string(w) +
                            " disagrees with recomputed shortest-path routing");
  }
  return sol;
}

DesignSolution read_solution_file(const Instance& inst, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open solution file '" + path + "'");
  return read_solution(inst, in);
}

std::string frontier_csv(const std::vector<ParetoPoint>& points) {
  std::ostringstream out;
  out << "lambda_lo,lambda_hi,Fc,Fm,design\n";
  for (const ParetoPoint& pt : points)
    out << fmt_double(pt.lambda_lo) << ',' << fmt_double(pt.lambda_hi) << ','
        << fmt_double(pt.Fc) << ',' << fmt_double(pt.Fm) << ','
        << subgraph_hash(pt.solution.design) << '\n';
  return out.str();
}

std::string run_ledger_json(const Instance& inst, const std::string& method, double lambda,
                            std::optional<double> delta, const MipResult& mip,
                            const DesignSolution* sol, const std::vector<BendersCut>* cuts) {
  nlohmann::json j;
  j["schema"] = "centdian-run-v1";
  j["instance"] = {{"name", inst.name},
                   {"digest", std::to_string(inst.digest())},
                   {"nodes", inst.net.num_nodes()},
                   {"edges", inst.net.num_edges()},
                   {"pairs", inst.pairs.size()},
                   {"alpha", inst.alpha},
                   {"budget", inst.budget()}};
  j["method"] = method;
  j["lambda"] = lambda;
  if (delta) j["delta"] = *delta;

  nlohmann::json r;
  r["status"] = to_string(mip.status);
  r["bound"] = mip.bound;
  r["nodes"] = mip.nodes;
  r["cuts"] = mip.cuts;
  r["lp_iterations"] = mip.lp_iterations;
  r["seconds"] = mip.seconds;
  if (mip.has_incumbent) {
    r["objective"] = mip.obj;
    if (std::isfinite(mip.gap())) r["gap"] = mip.gap();
  }
  j["result"] = std::move(r);

  if (sol) {
    j["design"] = {{"nodes", sol->design.nodes()},
                   {"edges", sol->design.edges()},
                   {"cost", subgraph_cost(inst.net, sol->design)},
                   {"hash", std::to_string(subgraph_hash(sol->design))}};
    const Evaluation& ev = sol->eval;
    j["evaluation"] = {{"Fc", ev.Fc},           {"Fm", ev.Fm},
                       {"H", ev.H(lambda)},     {"lmin", ev.lmin},
                       {"lmax", ev.lmax},       {"lmean", ev.lmean},
                       {"mad", ev.mad},         {"mad_raw", ev.mad_raw},
                       {"od_pct", ev.od_pct},   {"od_pct_unweighted", ev.od_pct_unweighted}};
  }
  if (cuts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BendersCut& c : *cuts)
      arr.push_back({{"pair", c.pair},
                     {"node", c.node},
                     {"edges", c.edges},
                     {"sigma", c.sigma},
                     {"upsilon", c.upsilon},
                     {"rhs", c.rhs},
                     {"violation", c.violation}});
    j["cut_ledger"] = std::move(arr);
  }
  return j.dump(2) + "\n";
}

}  // namespace centdian
