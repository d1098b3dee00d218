#include <doctest.h>

#include <cmath>
#include <sstream>

#include "centdian/evaluation.hpp"
#include "centdian/formulations.hpp"
#include "centdian/instance.hpp"
#include "centdian/lp.hpp"
#include "centdian/model.hpp"

using namespace centdian;

TEST_CASE("model container basics, audit, and MPS dump") {
  Model m;
  m.name = "tiny";
  int x = m.add_var("x_0", 1.0, 0.0, 1.0, true, 0);
  int z = m.add_var("z", -2.0, -kInf, kInf, false, 0);
  m.add_row("r_eq", 1.0, 1.0, {x, z}, {1.0, 1.0});
  m.add_row("r_rng", 0.0, 2.0, {z}, {1.0});
  m.obj_offset = 3.5;
  CHECK_NOTHROW(m.audit());
  CHECK(m.integer_vars() == std::vector<int>{x});

  lp::Problem p = m.to_lp();
  CHECK(p.ncols() == 2);
  CHECK(p.nrows() == 2);
  CHECK(p.ub[x] == 1.0);

  std::stringstream ss;
  m.write_mps(ss);
  std::string s = ss.str();
  CHECK(s.find("NAME tiny") != std::string::npos);
  CHECK(s.find(" E r_eq") != std::string::npos);
  CHECK(s.find(" G r_rng") != std::string::npos);
  CHECK(s.find("RANGES") != std::string::npos);
  CHECK(s.find("'INTORG'") != std::string::npos);
  CHECK(s.find("'INTEND'") != std::string::npos);
  CHECK(s.find(" BV BND x_0") != std::string::npos);
  CHECK(s.find(" FR BND z") != std::string::npos);
  CHECK(s.find("ENDATA") != std::string::npos);

  Model bad = m;
  bad.rows[0].cols = {x, x};
  bad.rows[0].vals = {1.0, 1.0};
  CHECK_THROWS_AS(bad.audit(), ValidationError);
  Model bad2 = m;
  bad2.vars[0].ub = 2.0;  // integer must be binary
  CHECK_THROWS_AS(bad2.audit(), ValidationError);
}

TEST_CASE("blend model on the fixture: counts, coefficients, audit") {
  Instance inst = prop2_fixture();
  BuildOptions opt;
  opt.lambda = 0.5;
  BuiltModel bm = build_cd(inst, opt);
  CHECK_NOTHROW(audit_formulation(inst, bm));

  // variables: 4 nodes + 5 edges + gamma + sum_w(|A^w|+1) = 4+5+1+17
  CHECK(bm.model.num_vars() == 27);
  // rows: budget + 10 coupling + 12 flow + 11 capacity + 4 center
  CHECK(bm.model.num_rows() == 38);

  const Model& m = bm.model;
  CHECK(m.vars[bm.map.gamma].obj == doctest::Approx(0.5));
  // pair 0 routes over the single arc of edge {0,1}; objective coefficients
  // are (1-lambda) g/G times length / utility
  const PairVars& pv0 = bm.map.pv[0];
  REQUIRE(pv0.f.size() == 1);
  CHECK(m.vars[pv0.f[0]].obj == doctest::Approx(0.5 * (181.0 / 513.0) * 12.0));
  CHECK(m.vars[pv0.fr].obj == doctest::Approx(0.5 * (181.0 / 513.0) * 24.0));
  CHECK(m.vars[pv0.f[0]].integer);
  CHECK(m.vars[pv0.f[0]].branch_class == 1);
  CHECK(m.vars[bm.map.x[0]].branch_class == 0);

  // budget row: 5 edge + 4 node coefficients, rhs 63 (+tolerance)
  const ModelRow& budget = m.rows[0];
  CHECK(budget.name == "budget");
  CHECK(budget.cols.size() == 9);
  CHECK(budget.hi == doctest::Approx(63.0 + kBudgetTol).epsilon(1e-12));

  { BuildOptions o; o.lambda = 1.5; CHECK_THROWS_AS(build_cd(inst, o), ValidationError); }
  { BuildOptions o; o.lambda = -0.1; CHECK_THROWS_AS(build_cd(inst, o), ValidationError); }
}

TEST_CASE("blend model LP relaxation: slack budget at lambda=0 yields the full-network mean") {
  Instance inst = prop2_fixture();
  inst.alpha = 1.0;  // the whole network is affordable
  BuildOptions opt;
  opt.lambda = 0.0;
  BuiltModel bm = build_cd(inst, opt);
  lp::Solution s = lp::make_revised_simplex()->solve(bm.model.to_lp());
  REQUIRE(s.status == lp::Status::kOptimal);
  Evaluation full = evaluate(inst, full_subgraph(inst.net));
  CHECK(s.obj == doctest::Approx(full.Fm).epsilon(1e-9));
}

TEST_CASE("blend model LP relaxation is a lower bound on feasible designs") {
  Instance inst = prop2_fixture();
  BuildOptions opt;
  opt.lambda = 0.5;
  BuiltModel bm = build_cd(inst, opt);
  lp::Problem p = bm.model.to_lp();
  lp::Solution rev = lp::make_revised_simplex()->solve(p);
  lp::Solution den = lp::make_dense_simplex()->solve(p);
  REQUIRE(rev.status == lp::Status::kOptimal);
  REQUIRE(den.status == lp::Status::kOptimal);
  CHECK(rev.obj == doctest::Approx(den.obj).epsilon(1e-8));
  // any budget-feasible design upper-bounds the integer optimum
  Evaluation ev = evaluate(inst, subgraph_from_edges(inst.net, {1, 3, 4}));
  CHECK(rev.obj <= ev.H(0.5) + 1e-9);
}

TEST_CASE("dual bound table matches the fixture shortest paths") {
  Instance inst = prop2_fixture();
  std::vector<double> sig = sigma_bounds(inst);
  REQUIRE(sig.size() == 4);
  CHECK(sig[0] == doctest::Approx(12.0));  // u=24, d_N=12
  CHECK(sig[1] == doctest::Approx(17.0));  // u=34, d_N=17
  CHECK(sig[2] == doctest::Approx(10.0));
  CHECK(sig[3] == doctest::Approx(16.0));

  Instance bad = prop2_fixture();
  bad.pairs[0].u = 5.0;  // best possible path is 12 > 5
  CHECK_THROWS_AS(sigma_bounds(bad), ValidationError);
}

TEST_CASE("reformulated model on the fixture: counts and structure") {
  Instance inst = prop2_fixture();
  BuildOptions opt;
  opt.lambda = 20.0;  // beyond the blend domain, valid here
  BuiltModel bm = build_bcd(inst, opt);
  CHECK_NOTHROW(audit_formulation(inst, bm));
  // vars: 4+5+1 + (13 arcs + 4 fr) + (12-4 nu) + 2*11 sigma/xi = 57
  CHECK(bm.model.num_vars() == 57);
  // rows: 1 + 10 + 8 flow + 11 cap + 4 ctr + 13 dual + 4 sd + 33 mccormick
  CHECK(bm.model.num_rows() == 84);
  CHECK(bm.map.gamma >= 0);
  CHECK(bm.model.vars[bm.map.gamma].obj == doctest::Approx(20.0));

  // nu at the source carries the utility bound; nu at the destination is out
  const PairVars& pv0 = bm.map.pv[0];
  const PairSubnetwork& sn0 = bm.map.sub[0];
  int nu_s = pv0.nu[sn0.node_local[inst.pairs[0].s]];
  CHECK(nu_s >= 0);
  CHECK(bm.model.vars[nu_s].ub == doctest::Approx(24.0));
  CHECK(pv0.nu[sn0.node_local[inst.pairs[0].t]] == -1);
  // sigma/xi bounded by the pair's dual bound
  CHECK(bm.model.vars[pv0.sigma[0]].ub == doctest::Approx(12.0));
  CHECK(bm.model.vars[pv0.xi[0]].ub == doctest::Approx(12.0));

  { BuildOptions o; o.lambda = -1.0; CHECK_THROWS_AS(build_bcd(inst, o), ValidationError); }
  BuildOptions relax;
  relax.lambda = 0.5;
  relax.relax_flows = true;
  CHECK_THROWS_AS(build_bcd(inst, relax), ValidationError);
  CHECK_NOTHROW(build_cd(inst, relax));
  CHECK(build_cd(inst, relax).model.integer_vars().size() == 9);  // only the design
}

TEST_CASE("reformulated model folds pairs that always prefer the private mode") {
  Instance inst = prop2_fixture();
  inst.pairs[0].u = 5.0;  // d_N = 12 > 5: never served by any design
  BuildOptions opt;
  opt.lambda = 2.0;
  BuiltModel bm = build_bcd(inst, opt);
  CHECK_NOTHROW(audit_formulation(inst, bm));
  CHECK(bm.map.active[0] == 0);
  CHECK(bm.map.active[1] == 1);
  CHECK(bm.map.folded_len_demand == doctest::Approx(181.0 * 5.0));
  CHECK(bm.map.gamma_lb == doctest::Approx(5.0));
  CHECK(bm.model.vars[bm.map.gamma].lb == doctest::Approx(5.0));
  CHECK(bm.model.obj_offset == doctest::Approx((1.0 - 2.0) * (181.0 / 513.0) * 5.0));
  // no variables for the folded pair
  CHECK(bm.map.pv[0].f.empty());
  CHECK(bm.map.pv[0].fr == -1);
}

TEST_CASE("reformulated model LP relaxation matches across backends") {
  Instance inst = prop2_fixture();
  BuildOptions opt;
  opt.lambda = 20.0;
  BuiltModel bm = build_bcd(inst, opt);
  lp::Problem p = bm.model.to_lp();
  lp::Solution rev = lp::make_revised_simplex()->solve(p);
  lp::Solution den = lp::make_dense_simplex()->solve(p);
  REQUIRE(rev.status == lp::Status::kOptimal);
  REQUIRE(den.status == lp::Status::kOptimal);
  CHECK(rev.obj == doctest::Approx(den.obj).epsilon(1e-8));
}

TEST_CASE("minimax stage models") {
  Instance inst = prop2_fixture();
  BuiltModel m1 = build_mcd1(inst, 0.5);
  CHECK_NOTHROW(audit_formulation(inst, m1));
  CHECK(m1.model.num_vars() == 27);      // mu replaces gamma
  CHECK(m1.model.num_rows() == 39);      // CD base rows - center + (4+1) caps
  CHECK(m1.map.mu >= 0);
  CHECK(m1.map.gamma == -1);
  CHECK(m1.model.vars[m1.map.mu].obj == doctest::Approx(1.0));

  BuiltModel m2 = build_mcd2(inst, 0.5, 12.0);
  CHECK_NOTHROW(audit_formulation(inst, m2));
  CHECK(m2.model.num_vars() == 27);
  CHECK(m2.model.num_rows() == 38 + 5);  // blend rows + 4 pair caps + mean cap
  // unbounded cap reduces to the plain blend model
  BuiltModel m2inf = build_mcd2(inst, 0.5, kInf);
  CHECK(m2inf.model.num_rows() == 38);

  CHECK_THROWS_AS(build_mcd1(inst, 0.0), ValidationError);
  CHECK_THROWS_AS(build_mcd1(inst, 1.0), ValidationError);
  CHECK_THROWS_AS(build_mcd2(inst, 0.5, -1.0), ValidationError);
}

TEST_CASE("efficiency row and design extraction") {
  Instance inst = prop2_fixture();
  BuildOptions opt;
  opt.lambda = 1.0;
  opt.efficiency = EfficiencySpec{0.05, 19.0};
  BuiltModel bm = build_cd(inst, opt);
  CHECK_NOTHROW(audit_formulation(inst, bm));
  CHECK(bm.model.num_rows() == 39);
  const ModelRow& eff = bm.model.rows[38];
  CHECK(eff.name == "eff");
  CHECK(eff.hi == doctest::Approx(1.05 * 19.0 + kBudgetTol).epsilon(1e-12));

  BuildOptions bad;
  bad.lambda = 1.0;
  bad.efficiency = EfficiencySpec{-0.1, 19.0};
  CHECK_THROWS_AS(build_cd(inst, bad), ValidationError);

  // design extraction by rounding
  std::vector<double> xv(bm.model.num_vars(), 0.0);
  for (int i = 0; i < 4; ++i) xv[bm.map.y[i]] = 1.0;
  for (int e : {1, 3, 4}) xv[bm.map.x[e]] = 0.99;
  Subgraph s = design_from(inst, bm.map, xv);
  CHECK(s == subgraph_from_edges(inst.net, {1, 3, 4}));
}

TEST_CASE("center cap bounds the center variable") {
  Instance inst = prop2_fixture();
  BuildOptions opt;
  opt.lambda = 0.0;
  opt.center_cap = 17.0 + 1e-9;
  BuiltModel bm = build_cd(inst, opt);
  CHECK(bm.model.vars[bm.map.gamma].ub == doctest::Approx(17.0));
}
