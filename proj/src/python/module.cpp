// Python bindings for the main operations: instance generation and I/O,
// design evaluation, the exact formulations, the Benders decomposition, and
// the bi-objective frontier tools.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "centdian/benders.hpp"
#include "centdian/evaluation.hpp"
#include "centdian/formulations.hpp"
#include "centdian/instance.hpp"
#include "centdian/mip.hpp"
#include "centdian/network.hpp"
#include "centdian/pareto.hpp"
#include "centdian/solution_io.hpp"
#include "centdian/solver.hpp"

namespace py = pybind11;
using namespace centdian;

namespace {

BnbParams make_params(double gap, double time_limit, std::int64_t node_limit,
                      const std::string& backend, bool log) {
  BnbParams p;
  p.rel_gap = gap;
  p.time_limit = time_limit;
  p.node_limit = node_limit;
  p.backend = backend;
  p.log = log;
  return p;
}

py::dict mip_dict(const MipResult& mip) {
  py::dict d;
  d["status"] = std::string(to_string(mip.status));
  d["has_incumbent"] = mip.has_incumbent;
  d["bound"] = mip.bound;
  d["nodes"] = mip.nodes;
  d["cuts"] = mip.cuts;
  d["lp_iterations"] = mip.lp_iterations;
  d["seconds"] = mip.seconds;
  if (mip.has_incumbent) {
    d["objective"] = mip.obj;
    d["gap"] = mip.gap();
  }
  return d;
}

// Optimal demand-weighted mean of the pure-median problem, solved with the
// same machinery; anchors the efficiency row when delta is given.
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

BruteObjective brute_objective(const std::string& name) {
  if (name == "median") return BruteObjective::kMedian;
  if (name == "center") return BruteObjective::kCenter;
  if (name == "centdian") return BruteObjective::kCentdian;
  if (name == "max_centdian") return BruteObjective::kMaxCentdian;
  if (name == "gen_center_po") return BruteObjective::kGenCenterPO;
  throw ValidationError("unknown brute-force objective '" + name +
                        "' (median, center, centdian, max_centdian, gen_center_po)");
}

}  // namespace

PYBIND11_MODULE(_centdian, m) {
  m.doc() = "budget-constrained lambda-cent-dian network design";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<Evaluation>(m, "Evaluation", "Service metrics of one design")
      .def_readonly("Fc", &Evaluation::Fc, "worst served length (center criterion)")
      .def_readonly("Fm", &Evaluation::Fm, "demand-weighted mean length (median criterion)")
      .def_readonly("lmin", &Evaluation::lmin)
      .def_readonly("lmax", &Evaluation::lmax)
      .def_readonly("lmean", &Evaluation::lmean)
      .def_readonly("mad", &Evaluation::mad)
      .def_readonly("od_pct", &Evaluation::od_pct)
      .def_readonly("len", &Evaluation::len, "served length per pair")
      .def("H", &Evaluation::H, py::arg("lam"), "blend lam * Fc + (1 - lam) * Fm")
      .def("Hbar", &Evaluation::Hbar, py::arg("lam"), "minimax scalar max(lam Fc, (1-lam) Fm)")
      .def("gen_center", &Evaluation::gen_center)
      .def("__repr__", [](const Evaluation& e) {
        return "Evaluation(Fc=" + fmt_double(e.Fc) + ", Fm=" + fmt_double(e.Fm) + ")";
      });

  py::class_<Instance>(m, "Instance", "Potential network, demand pairs and budget")
      .def_property_readonly("name", [](const Instance& i) { return i.name; })
      .def_property_readonly("alpha", [](const Instance& i) { return i.alpha; })
      .def_property_readonly("num_nodes", [](const Instance& i) { return i.net.num_nodes(); })
      .def_property_readonly("num_edges", [](const Instance& i) { return i.net.num_edges(); })
      .def_property_readonly("num_pairs", [](const Instance& i) { return i.pairs.size(); })
      .def_property_readonly("budget", [](const Instance& i) { return i.budget(); })
      .def_property_readonly("total_demand", [](const Instance& i) { return i.total_demand(); })
      .def_property_readonly("digest", [](const Instance& i) { return i.digest(); })
      .def("__repr__", [](const Instance& i) {
        return "Instance('" + i.name + "', nodes=" + std::to_string(i.net.num_nodes()) +
               ", edges=" + std::to_string(i.net.num_edges()) +
               ", pairs=" + std::to_string(i.pairs.size()) + ")";
      });

  py::class_<DesignSolution>(m, "DesignSolution", "A solved design with its evaluation")
      .def_property_readonly("nodes", [](const DesignSolution& s) { return s.design.nodes(); })
      .def_property_readonly("edges", [](const DesignSolution& s) { return s.design.edges(); })
      .def_readonly("eval", &DesignSolution::eval)
      .def_readonly("lam", &DesignSolution::lambda)
      .def_readonly("objective", &DesignSolution::objective)
      .def_property_readonly("private_mode",
                             [](const DesignSolution& s) {
                               return std::vector<bool>(s.private_mode.begin(),
                                                        s.private_mode.end());
                             })
      .def_property_readonly("routes",
                             [](const DesignSolution& s) {
                               std::vector<std::vector<int>> r;
                               for (const PathResult& p : s.routing) r.push_back(p.edges);
                               return r;
                             },
                             "edge ids of each pair's network route (empty in private mode)")
      .def("__repr__", [](const DesignSolution& s) {
        return "DesignSolution(edges=" + std::to_string(s.design.edges().size()) +
               ", objective=" + fmt_double(s.objective) + ")";
      });

  m.def("prop2_fixture", &prop2_fixture, "the four-node reference instance");

  m.def(
      "generate_instance",
      [](int n, double alpha, std::uint64_t seed, double edge_delete_prob, double utility_factor,
         const std::string& name) {
        GenParams p;
        p.n = n;
        p.alpha = alpha;
        p.seed = seed;
        p.edge_delete_prob = edge_delete_prob;
        p.utility_factor = utility_factor;
        p.name = name;
        return generate_instance(p);
      },
      py::arg("n"), py::arg("alpha") = 0.25, py::arg("seed") = 0,
      py::arg("edge_delete_prob") = 0.2, py::arg("utility_factor") = 2.0, py::arg("name") = "",
      "random planar instance, deterministic in the parameters");

  m.def("read_instance", &read_instance_file, py::arg("path"));
  m.def("write_instance", &write_instance_file, py::arg("instance"), py::arg("path"));
  m.def("read_solution", &read_solution_file, py::arg("instance"), py::arg("path"),
        "load a stored design; digest, metrics and routing are re-verified");
  m.def("write_solution", &write_solution_file, py::arg("instance"), py::arg("solution"),
        py::arg("path"));

  m.def(
      "evaluate_design",
      [](const Instance& inst, const std::vector<int>& edges) {
        Subgraph s = subgraph_from_edges(inst.net, edges);
        return evaluate(inst, s);
      },
      py::arg("instance"), py::arg("edges"),
      "metrics of the design spanned by the given edges (nodes: their endpoints)");

  m.def(
      "solve",
      [](const Instance& inst, const std::string& method, double lam,
         std::optional<double> delta, bool relax_flows, double gap, double time_limit,
         std::int64_t node_limit, const std::string& backend, bool log) {
        if (method != "cd" && method != "bcd")
          throw ValidationError("method must be cd or bcd");
        BnbParams params = make_params(gap, time_limit, node_limit, backend, log);
        BuildOptions opt;
        opt.lambda = lam;
        opt.relax_flows = relax_flows;
        if (delta) opt.efficiency = EfficiencySpec{*delta, median_optimum(inst, method, params)};
        BuiltModel bm = method == "bcd" ? build_bcd(inst, opt) : build_cd(inst, opt);
        SolveOutcome out = solve_model(inst, bm, params);
        py::dict d = mip_dict(out.mip);
        if (delta) d["fm_star"] = opt.efficiency->fm_star;
        if (out.mip.has_incumbent) d["solution"] = out.solution;
        return d;
      },
      py::arg("instance"), py::arg("method") = "cd", py::arg("lam") = 0.5,
      py::arg("delta") = py::none(), py::arg("relax_flows") = false, py::arg("gap") = 1e-6,
      py::arg("time_limit") = 1e18, py::arg("node_limit") = -1, py::arg("backend") = "revised",
      py::arg("log") = false,
      "exact run: cd is the blend model (lam in [0,1]), bcd the single-level "
      "reformulation (any lam >= 0)");

  m.def(
      "solve_benders",
      [](const Instance& inst, double lam, std::optional<double> delta, double gap,
         double time_limit, std::int64_t node_limit, const std::string& backend, bool log) {
        BnbParams params = make_params(gap, time_limit, node_limit, backend, log);
        BuildOptions opt;
        opt.lambda = lam;
        if (delta)
          opt.efficiency = EfficiencySpec{*delta, median_optimum(inst, "benders", params)};
        BendersResult r = solve_benders(inst, opt, params);
        py::dict d = mip_dict(r.mip);
        d["surviving"] = r.reduced.surviving;
        if (delta) d["fm_star"] = opt.efficiency->fm_star;
        if (r.mip.has_incumbent) d["solution"] = r.solution;
        return d;
      },
      py::arg("instance"), py::arg("lam") = 0.5, py::arg("delta") = py::none(),
      py::arg("gap") = 1e-6, py::arg("time_limit") = 1e18, py::arg("node_limit") = -1,
      py::arg("backend") = "revised", py::arg("log") = false,
      "branch-and-cut decomposition (lam in [0,1])");

  m.def(
      "brute_force",
      [](const Instance& inst, const std::string& objective, double lam,
         std::optional<double> delta) {
        BruteResult br = brute_force(inst, brute_objective(objective), lam, delta);
        py::dict d;
        d["value"] = br.value;
        d["stage1"] = br.stage1;
        std::vector<std::vector<int>> optima;
        for (const Subgraph& s : br.optima) optima.push_back(s.edges());
        d["optima"] = optima;
        return d;
      },
      py::arg("instance"), py::arg("objective") = "centdian", py::arg("lam") = 0.5,
      py::arg("delta") = py::none(), "exhaustive oracle over every edge subset (<= 18 edges)");

  m.def(
      "max_centdian",
      [](const Instance& inst, double lam, double gap, double time_limit,
         std::int64_t node_limit, const std::string& backend, bool log) {
        MaxCentdianResult r =
            max_centdian(inst, lam, make_params(gap, time_limit, node_limit, backend, log));
        py::dict d;
        d["vstar"] = r.vstar;
        d["solution"] = r.solution;
        return d;
      },
      py::arg("instance"), py::arg("lam"), py::arg("gap") = 1e-6, py::arg("time_limit") = 1e18,
      py::arg("node_limit") = -1, py::arg("backend") = "revised", py::arg("log") = false,
      "two-stage minimax blend (lam strictly inside (0,1))");

  m.def(
      "lexicographic_centdian",
      [](const Instance& inst, double gap, double time_limit, std::int64_t node_limit,
         const std::string& backend, bool log) {
        return lexicographic_centdian(inst,
                                      make_params(gap, time_limit, node_limit, backend, log));
      },
      py::arg("instance"), py::arg("gap") = 1e-6, py::arg("time_limit") = 1e18,
      py::arg("node_limit") = -1, py::arg("backend") = "revised", py::arg("log") = false,
      "minimal center, then minimal mean among the center optima");

  m.def(
      "parametrize_po2",
      [](const Instance& inst, double tolerance, double gap, double time_limit,
         std::int64_t node_limit, const std::string& backend, bool log) {
        std::vector<ParetoPoint> pts = parametrize_po2(
            inst, tolerance, make_params(gap, time_limit, node_limit, backend, log));
        py::list out;
        for (const ParetoPoint& p : pts) {
          py::dict d;
          d["lambda_lo"] = p.lambda_lo;
          d["lambda_hi"] = p.lambda_hi;
          d["Fc"] = p.Fc;
          d["Fm"] = p.Fm;
          d["vstar"] = p.vstar;
          d["solution"] = p.solution;
          out.append(d);
        }
        return out;
      },
      py::arg("instance"), py::arg("tolerance") = 1e-3, py::arg("gap") = 1e-6,
      py::arg("time_limit") = 1e18, py::arg("node_limit") = -1, py::arg("backend") = "revised",
      py::arg("log") = false, "frontier sweep over the minimax scalarization");
}
