// Command-line front end: instance generation, the exact formulations, the
// Benders decomposition, the bi-objective frontier sweep, metric tables for
// stored designs, and seeded benchmark sweeps.
//
// Exit codes: 0 success, 2 usage error, 3 solver failure, 4 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "centdian/benders.hpp"
#include "centdian/evaluation.hpp"
#include "centdian/formulations.hpp"
#include "centdian/instance.hpp"
#include "centdian/mip.hpp"
#include "centdian/network.hpp"
#include "centdian/pareto.hpp"
#include "centdian/solution_io.hpp"
#include "centdian/solver.hpp"

namespace {

using namespace centdian;

// Filesystem trouble (unopenable paths, failed writes); exits with 4 while
// ValidationError (bad input data, bad flag combinations) exits with 2.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Instance sourcing shared by every command but `generate`.

struct InstanceOpts {
  std::string path;
  std::string fixture;
  double alpha = -1.0;   // < 0: keep the instance's own value
  double budget = -1.0;  // < 0: keep; else alpha = budget / C_total
};

void add_instance_opts(CLI::App* cmd, InstanceOpts& io) {
  auto* p = cmd->add_option("-i,--instance", io.path, "instance file");
  auto* f = cmd->add_option("--fixture", io.fixture, "built-in instance: prop2")
                ->check(CLI::IsMember({"prop2"}));
  p->excludes(f);
  f->excludes(p);
  auto* a = cmd->add_option("--alpha", io.alpha, "override the budget fraction")
                ->check(CLI::Range(0.0, 1.0));
  auto* b = cmd->add_option("--budget", io.budget, "override the absolute budget")
                ->check(CLI::NonNegativeNumber);
  a->excludes(b);
  b->excludes(a);
}

Instance load_instance(const InstanceOpts& io) {
  Instance inst;
  if (!io.fixture.empty()) {
    inst = prop2_fixture();
  } else if (!io.path.empty()) {
    std::ifstream in(io.path);
    if (!in) throw IoError("cannot open instance file '" + io.path + "'");
    inst = read_instance(in);
  } else {
    throw ValidationError("an instance is required: --instance FILE or --fixture prop2");
  }
  if (io.alpha >= 0.0) inst.alpha = io.alpha;
  if (io.budget >= 0.0) inst.alpha = io.budget / inst.net.total_build_cost;
  return inst;
}

DesignSolution load_solution(const Instance& inst, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open solution file '" + path + "'");
  return read_solution(inst, in);
}

// ---------------------------------------------------------------------------
// Branch-and-bound knobs shared by the solving commands.

void add_solver_opts(CLI::App* cmd, BnbParams& p) {
  cmd->add_option("--gap", p.rel_gap, "relative optimality gap")->check(CLI::NonNegativeNumber);
  cmd->add_option("--time-limit", p.time_limit, "wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--node-limit", p.node_limit, "search node limit (negative: unlimited)");
  cmd->add_option("--backend", p.backend, "LP backend")
      ->check(CLI::IsMember({"revised", "dense"}));
  cmd->add_flag("--log", p.log, "one line per search node on stderr");
}

// ---------------------------------------------------------------------------
// Human-readable summaries (stdout).  CSV/JSON artifacts are byte-stable;
// these summaries are not (they include wall-clock time).

void print_instance_line(const Instance& inst) {
  std::cout << "instance " << inst.name << "  nodes " << inst.net.num_nodes() << "  edges "
            << inst.net.num_edges() << "  pairs " << inst.pairs.size() << "  alpha "
            << fmt_double(inst.alpha) << "  budget " << fmt_double(inst.budget()) << "\n";
}

void print_mip_line(const MipResult& mip) {
  std::cout << "status " << to_string(mip.status);
  if (mip.has_incumbent)
    std::cout << "  objective " << fmt_double(mip.obj) << "  bound " << fmt_double(mip.bound)
              << "  gap " << fmt_double(mip.gap());
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", mip.seconds);
  std::cout << "  nodes " << mip.nodes << "  cuts " << mip.cuts << "  lp-iterations "
            << mip.lp_iterations << "  seconds " << buf << "\n";
}

void print_solution(const Instance& inst, const DesignSolution& sol, bool routes) {
  std::cout << "design nodes";
  for (int i : sol.design.nodes()) std::cout << ' ' << i;
  std::cout << "\ndesign edges";
  for (int e : sol.design.edges()) std::cout << ' ' << e;
  std::cout << "\ndesign cost " << fmt_double(subgraph_cost(inst.net, sol.design)) << "\n";
  std::cout << "Fc " << fmt_double(sol.eval.Fc) << "  Fm " << fmt_double(sol.eval.Fm)
            << "  objective " << fmt_double(sol.objective) << "\n";
  std::size_t priv = 0;
  for (std::uint8_t m : sol.private_mode) priv += m;
  if (!routes) {
    std::cout << "routes " << inst.pairs.size() - priv << " network, " << priv
              << " private (--routes lists them)\n";
    return;
  }
  for (std::size_t w = 0; w < inst.pairs.size(); ++w) {
    const ODPair& p = inst.pairs[w];
    std::cout << "route " << w << " (" << p.s << "->" << p.t << ") ";
    if (sol.private_mode[w]) {
      std::cout << "private len " << fmt_double(sol.eval.len[w]) << "\n";
    } else {
      std::cout << "len " << fmt_double(sol.eval.len[w]) << " edges";
      for (int e : sol.routing[w].edges) std::cout << ' ' << e;
      std::cout << "\n";
    }
  }
}

// ---------------------------------------------------------------------------
// generate

struct GenerateCfg {
  GenParams p;
  std::string out;
};

void run_generate(const GenerateCfg& cfg) {
  Instance inst = generate_instance(cfg.p);
  if (cfg.out.empty()) {
    write_instance(inst, std::cout);
  } else {
    std::ostringstream text;
    write_instance(inst, text);
    save_text(cfg.out, text.str());
    print_instance_line(inst);
    std::cout << "wrote " << cfg.out << "\n";
  }
}

// ---------------------------------------------------------------------------
// solve / benders

// Optimal demand-weighted mean of the pure-median problem (lambda = 0),
// solved with the same machinery as the main run; anchors the efficiency row.
double median_optimum(const Instance& inst, const std::string& method, const BnbParams& params) {
  BuildOptions opt;
  opt.lambda = 0.0;
  MipResult mip;
  if (method == "benders") {
    mip = solve_benders(inst, opt, params).mip;
  } else {
    BuiltModel bm = method == "bcd" ? build_bcd(inst, opt) : build_cd(inst, opt);
    mip = solve_model(inst, bm, params).mip;
  }
  if (mip.status != MipStatus::kOptimal)
    throw std::runtime_error(std::string("median stage for the efficiency bound ended ") +
                             to_string(mip.status));
  return mip.obj;
}

struct SolveCfg {
  InstanceOpts io;
  BnbParams params;
  std::string method = "cd";
  double lambda = 0.5;
  std::optional<double> delta;
  bool relax_flows = false;
  bool routes = false;
  std::string out;
  std::string ledger;
};

void run_solve(const SolveCfg& cfg) {
  Instance inst = load_instance(cfg.io);
  print_instance_line(inst);
  std::cout << "method " << cfg.method << "  lambda " << fmt_double(cfg.lambda) << "\n";
  if (cfg.method == "cd" && cfg.lambda > 1.0)
    throw ValidationError("method cd covers lambda in [0, 1]; use --method bcd beyond");
  if (cfg.relax_flows && cfg.method != "cd")
    throw ValidationError("--relax-flows applies to --method cd only");

  if (cfg.method == "brute") {
    if (!cfg.ledger.empty())
      throw ValidationError("--ledger needs a search-based method (cd, bcd or benders)");
    BruteResult br = brute_force(inst, BruteObjective::kCentdian, cfg.lambda, cfg.delta);
    DesignSolution sol = assemble_solution(inst, br.optima.front(), cfg.lambda, br.value);
    std::cout << "status optimal  objective " << fmt_double(br.value) << "  optima "
              << br.optima.size() << "\n";
    print_solution(inst, sol, cfg.routes);
    if (!cfg.out.empty()) {
      std::ostringstream text;
      write_solution(inst, sol, text);
      save_text(cfg.out, text.str());
      std::cout << "wrote " << cfg.out << "\n";
    }
    return;
  }

  BuildOptions opt;
  opt.lambda = cfg.lambda;
  opt.relax_flows = cfg.relax_flows;
  if (cfg.delta) {
    double fm_star = median_optimum(inst, cfg.method, cfg.params);
    opt.efficiency = EfficiencySpec{*cfg.delta, fm_star};
    std::cout << "efficiency delta " << fmt_double(*cfg.delta) << "  fm_star "
              << fmt_double(fm_star) << "\n";
  }
  BuiltModel bm = cfg.method == "bcd" ? build_bcd(inst, opt) : build_cd(inst, opt);
  SolveOutcome out = solve_model(inst, bm, cfg.params);
  print_mip_line(out.mip);
  if (!out.mip.has_incumbent)
    throw std::runtime_error(std::string("no incumbent found: search ended ") +
                             to_string(out.mip.status));
  print_solution(inst, out.solution, cfg.routes);
  if (!cfg.out.empty()) {
    std::ostringstream text;
    write_solution(inst, out.solution, text);
    save_text(cfg.out, text.str());
    std::cout << "wrote " << cfg.out << "\n";
  }
  if (!cfg.ledger.empty()) {
    save_text(cfg.ledger, run_ledger_json(inst, cfg.method, cfg.lambda, cfg.delta, out.mip,
                                          &out.solution));
    std::cout << "wrote " << cfg.ledger << "\n";
  }
}

struct BendersCfg {
  InstanceOpts io;
  BnbParams params;
  double lambda = 0.5;
  std::optional<double> delta;
  bool routes = false;
  std::string out;
  std::string ledger;
};

void run_benders(const BendersCfg& cfg) {
  Instance inst = load_instance(cfg.io);
  print_instance_line(inst);
  std::cout << "method benders  lambda " << fmt_double(cfg.lambda) << "\n";
  if (cfg.lambda < 0.0 || cfg.lambda > 1.0)
    throw ValidationError("the decomposition covers lambda in [0, 1]; use solve --method bcd");

  BuildOptions opt;
  opt.lambda = cfg.lambda;
  if (cfg.delta) {
    double fm_star = median_optimum(inst, "benders", cfg.params);
    opt.efficiency = EfficiencySpec{*cfg.delta, fm_star};
    std::cout << "efficiency delta " << fmt_double(*cfg.delta) << "  fm_star "
              << fmt_double(fm_star) << "\n";
  }
  BendersResult r = solve_benders(inst, opt, cfg.params);
  std::cout << "preprocess surviving " << r.reduced.surviving << " of " << inst.pairs.size()
            << " pairs  center floor " << fmt_double(r.reduced.gamma_lb) << "\n";
  print_mip_line(r.mip);
  if (!r.mip.has_incumbent)
    throw std::runtime_error(std::string("no incumbent found: search ended ") +
                             to_string(r.mip.status));
  print_solution(inst, r.solution, cfg.routes);
  if (!cfg.out.empty()) {
    std::ostringstream text;
    write_solution(inst, r.solution, text);
    save_text(cfg.out, text.str());
    std::cout << "wrote " << cfg.out << "\n";
  }
  if (!cfg.ledger.empty()) {
    save_text(cfg.ledger, run_ledger_json(inst, "benders", cfg.lambda, cfg.delta, r.mip,
                                          &r.solution, &r.ledger));
    std::cout << "wrote " << cfg.ledger << "\n";
  }
}

// ---------------------------------------------------------------------------
// pareto

struct ParetoCfg {
  InstanceOpts io;
  BnbParams params;
  double tolerance = 1e-3;
  bool lex = false;
  std::string out;
  std::string designs;
};

void run_pareto(const ParetoCfg& cfg) {
  Instance inst = load_instance(cfg.io);
  std::vector<ParetoPoint> pts = parametrize_po2(inst, cfg.tolerance, cfg.params);
  std::string csv = frontier_csv(pts);
  if (cfg.out.empty())
    std::cout << csv;
  else
    save_text(cfg.out, csv);

  std::set<std::uint64_t> designs;
  for (const ParetoPoint& p : pts) designs.insert(subgraph_hash(p.solution.design));
  std::cerr << "frontier points " << pts.size() << "  distinct designs " << designs.size()
            << "\n";
  if (!cfg.designs.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.designs, ec);
    if (ec) throw IoError("cannot create directory '" + cfg.designs + "': " + ec.message());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      std::ostringstream text;
      write_solution(inst, pts[k].solution, text);
      save_text(cfg.designs + "/point-" + std::to_string(k) + ".sol", text.str());
    }
    std::cerr << "wrote " << pts.size() << " designs to " << cfg.designs << "\n";
  }
  if (cfg.lex) {
    DesignSolution lex = lexicographic_centdian(inst, cfg.params);
    std::cerr << "lexicographic Fc " << fmt_double(lex.eval.Fc) << "  Fm "
              << fmt_double(lex.eval.Fm) << "\n";
    if (!cfg.designs.empty()) {
      std::ostringstream text;
      write_solution(inst, lex, text);
      save_text(cfg.designs + "/lex.sol", text.str());
    }
  }
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateCfg {
  InstanceOpts io;
  std::vector<std::string> solutions;
  std::vector<double> lambdas;
  std::vector<double> deltas;
  std::string out;
};

void run_evaluate(const EvaluateCfg& cfg) {
  Instance inst = load_instance(cfg.io);
  if (!cfg.lambdas.empty() && !cfg.deltas.empty() && cfg.deltas.size() != cfg.lambdas.size())
    throw ValidationError("need one --delta per --lambda, or none");
  if (cfg.lambdas.empty() && cfg.deltas.size() > 1)
    throw ValidationError("several --delta values need matching --lambda values");

  std::ostringstream csv;
  csv << metrics_csv_header() << ",F_c,F_m,H,design\n";
  for (const std::string& path : cfg.solutions) {
    DesignSolution sol = load_solution(inst, path);
    auto emit = [&](double lambda, std::optional<double> delta) {
      csv << metrics_csv_row(sol.eval, lambda, delta) << ',' << fmt_double(sol.eval.Fc) << ','
          << fmt_double(sol.eval.Fm) << ',' << fmt_double(sol.eval.H(lambda)) << ','
          << subgraph_hash(sol.design) << "\n";
    };
    if (cfg.lambdas.empty()) {
      emit(sol.lambda, cfg.deltas.empty() ? std::nullopt
                                          : std::optional<double>(cfg.deltas.front()));
    } else {
      for (std::size_t i = 0; i < cfg.lambdas.size(); ++i)
        emit(cfg.lambdas[i], cfg.deltas.empty() ? std::nullopt
                                                : std::optional<double>(cfg.deltas[i]));
    }
  }
  if (cfg.out.empty())
    std::cout << csv.str();
  else
    save_text(cfg.out, csv.str());
}

// ---------------------------------------------------------------------------
// bench

struct BenchCfg {
  int n = 10;
  int seeds = 10;
  std::vector<double> alphas;   // default {0.25, 0.4}
  std::vector<double> lambdas;  // default {0, 0.25, 0.5, 0.75, 1}
  std::string method = "benders";
  std::optional<double> delta;
  BnbParams params;
  bool times = false;
  std::string out;
};

void run_bench(const BenchCfg& cfg_in) {
  BenchCfg cfg = cfg_in;
  if (cfg.alphas.empty()) cfg.alphas = {0.25, 0.4};
  if (cfg.lambdas.empty()) cfg.lambdas = {0.0, 0.25, 0.5, 0.75, 1.0};

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw IoError("cannot open '" + cfg.out + "' for writing");
    os = &file;
  }
  *os << "n,alpha,seed,lambda,method,status,block,objective,bound,gap,nodes,cuts,lp_iterations";
  if (cfg.times) *os << ",seconds";
  *os << "\n";

  int count_a = 0, count_b = 0, count_c = 0;
  for (double alpha : cfg.alphas) {
    for (int seed = 0; seed < cfg.seeds; ++seed) {
      GenParams gp;
      gp.n = cfg.n;
      gp.alpha = alpha;
      gp.seed = static_cast<std::uint64_t>(seed);
      Instance inst = generate_instance(gp);
      std::optional<EfficiencySpec> eff;
      if (cfg.delta) eff = EfficiencySpec{*cfg.delta, median_optimum(inst, cfg.method, cfg.params)};
      for (double lambda : cfg.lambdas) {
        BuildOptions opt;
        opt.lambda = lambda;
        opt.efficiency = eff;
        MipResult mip;
        if (cfg.method == "benders") {
          mip = solve_benders(inst, opt, cfg.params).mip;
        } else {
          BuiltModel bm = cfg.method == "bcd" ? build_bcd(inst, opt) : build_cd(inst, opt);
          mip = solve_model(inst, bm, cfg.params).mip;
        }
        char block = mip.status == MipStatus::kOptimal ? 'A' : (mip.has_incumbent ? 'B' : 'C');
        (block == 'A' ? count_a : block == 'B' ? count_b : count_c) += 1;
        *os << cfg.n << ',' << fmt_double(alpha) << ',' << seed << ',' << fmt_double(lambda)
            << ',' << cfg.method << ',' << to_string(mip.status) << ',' << block << ','
            << (mip.has_incumbent ? fmt_double(mip.obj) : "-") << ',' << fmt_double(mip.bound)
            << ',' << (mip.has_incumbent ? fmt_double(mip.gap()) : "-") << ',' << mip.nodes
            << ',' << mip.cuts << ',' << mip.lp_iterations;
        if (cfg.times) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.3f", mip.seconds);
          *os << ',' << buf;
        }
        *os << "\n" << std::flush;
      }
    }
  }
  if (!cfg.out.empty() && !file) throw IoError("write to '" + cfg.out + "' failed");
  std::cerr << "blocks A " << count_a << "  B " << count_b << "  C " << count_c << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lambda-cent-dian network design toolkit"};
  app.require_subcommand(1);

  GenerateCfg gen;
  CLI::App* cgen = app.add_subcommand("generate", "write a random planar instance");
  cgen->add_option("-n,--nodes", gen.p.n, "number of nodes")->check(CLI::Range(2, 1000));
  cgen->add_option("--alpha", gen.p.alpha, "budget fraction")->check(CLI::Range(0.0, 1.0));
  cgen->add_option("--seed", gen.p.seed, "generator seed");
  cgen->add_option("--delete-prob", gen.p.edge_delete_prob, "edge deletion probability")
      ->check(CLI::Range(0.0, 1.0));
  cgen->add_option("--utility-factor", gen.p.utility_factor,
                   "private-mode utility as a multiple of the O/D distance")
      ->check(CLI::PositiveNumber);
  cgen->add_option("--name", gen.p.name, "instance name (defaults to gen-n<n>-a<alpha>-s<seed>)");
  cgen->add_option("-o,--output", gen.out, "output file (default: stdout)");
  cgen->callback([&] { run_generate(gen); });

  SolveCfg slv;
  CLI::App* cslv = app.add_subcommand("solve", "run an exact formulation");
  add_instance_opts(cslv, slv.io);
  cslv->add_option("--method", slv.method, "cd (lambda in [0,1]), bcd (any lambda >= 0), brute")
      ->check(CLI::IsMember({"cd", "bcd", "brute"}));
  cslv->add_option("--lambda", slv.lambda, "scalarization weight")->check(CLI::NonNegativeNumber);
  cslv->add_option("--delta", slv.delta, "efficiency slack: mean <= (1+delta) * median optimum")
      ->check(CLI::NonNegativeNumber);
  cslv->add_flag("--relax-flows", slv.relax_flows, "drop integrality on the routing variables");
  cslv->add_flag("--routes", slv.routes, "list the per-pair routing");
  cslv->add_option("-o,--output", slv.out, "write the solved design to this file");
  cslv->add_option("--ledger", slv.ledger, "write a JSON run record to this file");
  add_solver_opts(cslv, slv.params);
  cslv->callback([&] { run_solve(slv); });

  BendersCfg bnd;
  CLI::App* cbnd = app.add_subcommand("benders", "run the branch-and-cut decomposition");
  add_instance_opts(cbnd, bnd.io);
  cbnd->add_option("--lambda", bnd.lambda, "scalarization weight in [0, 1]")
      ->check(CLI::NonNegativeNumber);
  cbnd->add_option("--delta", bnd.delta, "efficiency slack: mean <= (1+delta) * median optimum")
      ->check(CLI::NonNegativeNumber);
  cbnd->add_flag("--routes", bnd.routes, "list the per-pair routing");
  cbnd->add_option("-o,--output", bnd.out, "write the solved design to this file");
  cbnd->add_option("--ledger", bnd.ledger, "write a JSON run record with the cut ledger");
  add_solver_opts(cbnd, bnd.params);
  cbnd->callback([&] { run_benders(bnd); });

  ParetoCfg par;
  CLI::App* cpar = app.add_subcommand("pareto", "sweep the Pareto frontier");
  add_instance_opts(cpar, par.io);
  cpar->add_option("--tolerance", par.tolerance, "lambda resolution in (0, 0.5)");
  cpar->add_flag("--lex", par.lex, "also report the lexicographic cent-dian");
  cpar->add_option("-o,--output", par.out, "frontier CSV file (default: stdout)");
  cpar->add_option("--designs", par.designs, "directory for per-point design files");
  add_solver_opts(cpar, par.params);
  cpar->callback([&] { run_pareto(par); });

  EvaluateCfg ev;
  CLI::App* cev = app.add_subcommand("evaluate", "metric rows for stored designs");
  add_instance_opts(cev, ev.io);
  cev->add_option("-s,--solution", ev.solutions, "solution file (repeatable)")->required();
  cev->add_option("--lambda", ev.lambdas, "report row weight (repeatable; default: stored)");
  cev->add_option("--delta", ev.deltas, "report row delta label (repeatable)");
  cev->add_option("-o,--output", ev.out, "CSV file (default: stdout)");
  cev->callback([&] { run_evaluate(ev); });

  BenchCfg ben;
  CLI::App* cben = app.add_subcommand("bench", "seeded benchmark sweep");
  cben->add_option("-n,--nodes", ben.n, "instance size")->check(CLI::Range(2, 1000));
  cben->add_option("--seeds", ben.seeds, "number of seeds (0..k-1)")->check(CLI::PositiveNumber);
  cben->add_option("--alpha", ben.alphas, "budget fraction (repeatable; default 0.25 0.4)");
  cben->add_option("--lambda", ben.lambdas,
                   "scalarization weight (repeatable; default 0 0.25 0.5 0.75 1)");
  cben->add_option("--method", ben.method, "cd, bcd or benders")
      ->check(CLI::IsMember({"cd", "bcd", "benders"}));
  cben->add_option("--delta", ben.delta, "efficiency slack applied to every run")
      ->check(CLI::NonNegativeNumber);
  cben->add_flag("--times", ben.times, "append a wall-clock column (breaks byte-stability)");
  cben->add_option("-o,--output", ben.out, "CSV file (default: stdout)");
  add_solver_opts(cben, ben.params);
  cben->callback([&] { run_bench(ben); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
