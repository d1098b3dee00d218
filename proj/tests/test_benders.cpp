#include <cmath>
#include <vector>

#include "centdian/benders.hpp"
#include "centdian/formulations.hpp"
#include "centdian/instance.hpp"
#include "centdian/solver.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace centdian;
using centdian::testing::enumerate_feasible;

namespace {

// Master point of an integral design with exact effective lengths.
MasterPoint true_point(const Instance& inst, const Subgraph& s, const Evaluation& ev) {
  MasterPoint pt;
  pt.y.resize(inst.net.num_nodes());
  pt.x.resize(inst.net.num_edges());
  for (int i = 0; i < inst.net.num_nodes(); ++i) pt.y[i] = s.node_on[i] ? 1.0 : 0.0;
  for (int e = 0; e < inst.net.num_edges(); ++e) pt.x[e] = s.edge_on[e] ? 1.0 : 0.0;
  pt.zeta = ev.len;
  pt.gamma = ev.Fc;
  return pt;
}

double cut_lhs(const BendersCut& cut, const std::vector<double>& x, double zeta) {
  double lhs = cut.upsilon * zeta;
  for (std::size_t k = 0; k < cut.edges.size(); ++k) lhs += cut.sigma[k] * x[cut.edges[k]];
  return lhs;
}

// Every feasible design with its true lengths must satisfy the cut, and the
// interior point must satisfy it strictly.
void check_cut_sound(const Instance& inst, const BendersCut& cut, const MasterPoint& interior) {
  CHECK(cut.violation > 1e-7);
  for (const auto& [s, ev] : enumerate_feasible(inst)) {
    std::vector<double> x(inst.net.num_edges(), 0.0);
    for (int e = 0; e < inst.net.num_edges(); ++e) x[e] = s.edge_on[e] ? 1.0 : 0.0;
    CHECK(cut_lhs(cut, x, ev.len[cut.pair]) >= cut.rhs - 1e-9);
  }
  CHECK(cut_lhs(cut, interior.x, interior.zeta[cut.pair]) > cut.rhs);
}

}  // namespace

TEST_CASE("preprocessing keeps servable pairs with their cheapest witness paths") {
  Instance inst = prop2_fixture();
  ReducedInstance red = preprocess(inst);
  CHECK(red.surviving == 4);
  CHECK(red.active == std::vector<std::uint8_t>{1, 1, 1, 1});
  CHECK(red.witness[0] == std::vector<int>{0});     // 0-1 direct, cost 27
  CHECK(red.witness[1] == std::vector<int>{2});     // 0-3 direct, cost 33
  CHECK(red.witness[2] == std::vector<int>{3});     // 1-3 direct, cost 25
  CHECK(red.witness[3] == std::vector<int>{4, 3});  // 2-3-1, cost 41
  CHECK(red.folded_len_demand == 0.0);
  CHECK(red.gamma_lb == 0.0);
}

TEST_CASE("preprocessing folds pairs the budget or the utility rules out") {
  Instance tight = prop2_fixture();
  tight.alpha = 26.0 / 92.0;  // budget 26: only the cost-25 pair (1,3) fits
  ReducedInstance red = preprocess(tight);
  CHECK(red.surviving == 1);
  CHECK(red.active == std::vector<std::uint8_t>{0, 0, 1, 0});
  CHECK(red.witness[2] == std::vector<int>{3});
  CHECK(red.folded_len_demand == doctest::Approx(181.0 * 24 + 168.0 * 34 + 121.0 * 32));
  CHECK(red.gamma_lb == 34.0);

  Instance low_u = prop2_fixture();
  low_u.pairs[1].u = 5.0;  // below every 0-3 path length
  ReducedInstance red_u = preprocess(low_u);
  CHECK(red_u.active == std::vector<std::uint8_t>{1, 0, 1, 1});
  CHECK(red_u.gamma_lb == 5.0);

  Instance bare = prop2_fixture();
  bare.alpha = 20.0 / 92.0;  // cheapest serving path overall costs 25
  ReducedInstance red_all = preprocess(bare);
  CHECK(red_all.surviving == 0);
  CHECK(red_all.folded_len_demand == doctest::Approx(14788.0));
  CHECK(red_all.gamma_lb == 34.0);
}

TEST_CASE("decomposition master carries the design, one incumbent length per "
          "surviving pair, and the folded offset") {
  Instance inst = prop2_fixture();
  BuildOptions opt;
  opt.lambda = 0.25;

  ReducedInstance red = preprocess(inst);
  BuiltModel bm = build_master(inst, red.active, opt);
  audit_formulation(inst, bm);
  CHECK(bm.model.num_vars() == 4 + 5 + 1 + 4);
  CHECK(bm.model.num_rows() == 1 + 10 + 4);
  CHECK(bm.map.kind == ModelKind::kMaster);
  CHECK(bm.model.vars[bm.map.gamma].obj == doctest::Approx(0.25));
  CHECK(bm.model.vars[bm.map.zeta[0]].obj == doctest::Approx(0.75 * 181.0 / 513.0));
  CHECK(bm.model.obj_offset == 0.0);

  Instance tight = prop2_fixture();
  tight.alpha = 26.0 / 92.0;
  ReducedInstance tred = preprocess(tight);
  BuiltModel tbm = build_master(tight, tred.active, opt);
  audit_formulation(tight, tbm);
  CHECK(tbm.model.num_vars() == 4 + 5 + 1 + 1);
  CHECK(tbm.model.num_rows() == 1 + 10 + 1);
  CHECK(tbm.map.zeta[0] == -1);
  CHECK(tbm.map.folded_len_demand == doctest::Approx(13928.0));
  CHECK(tbm.map.gamma_lb == 34.0);
  CHECK(tbm.model.vars[tbm.map.gamma].lb == 34.0);
  CHECK(tbm.model.obj_offset == doctest::Approx(0.75 * 13928.0 / 513.0));

  BuildOptions eff = opt;
  eff.efficiency = EfficiencySpec{0.1, 25.0};
  BuiltModel ebm = build_master(inst, red.active, eff);
  audit_formulation(inst, ebm);
  CHECK(ebm.model.num_rows() == 1 + 10 + 4 + 1);
  CHECK(ebm.model.rows.back().name == "eff");

  BuildOptions bad = opt;
  bad.lambda = 1.5;
  CHECK_THROWS_AS(build_master(inst, red.active, bad), ValidationError);
  BuildOptions relaxed = opt;
  relaxed.relax_flows = true;
  CHECK_THROWS_AS(build_master(inst, red.active, relaxed), ValidationError);
  CHECK_THROWS_AS(build_master(inst, std::vector<std::uint8_t>{1, 1}, opt), ValidationError);
}

TEST_CASE("interior points are feasible, strictly interior, and affinely independent") {
  Instance inst = prop2_fixture();
  ReducedInstance red = preprocess(inst);
  std::vector<MasterPoint> pts = interior_points(red);
  REQUIRE(pts.size() == 15);  // 2 + |N| + |E| + |W|

  // Base design is empty at the utility profile, center at the largest one.
  CHECK(pts[0].x == std::vector<double>(5, 0.0));
  CHECK(pts[0].zeta == std::vector<double>{24, 34, 20, 32});
  CHECK(pts[0].gamma == 34.0);
  CHECK(pts[1].gamma == 68.0);
  CHECK(pts[2].y == std::vector<double>{1, 0, 0, 0});
  // Edge points carry both endpoints; witness points a whole serving path.
  CHECK(pts[6].x == std::vector<double>{1, 0, 0, 0, 0});
  CHECK(pts[6].y == std::vector<double>{1, 1, 0, 0});
  const MasterPoint& w3 = pts[14];  // pair (2,1) routed over 2-3-1
  CHECK(w3.x == std::vector<double>{0, 0, 0, 1, 1});
  CHECK(w3.y == std::vector<double>{0, 1, 1, 1});
  CHECK(w3.zeta[3] == 64.0);
  CHECK(w3.gamma == 64.0);

  MasterPoint mean = interior_point(red);  // throws unless strictly interior + full rank
  CHECK(mean.y[0] == doctest::Approx(6.0 / 15.0));
  CHECK(mean.y[3] == doctest::Approx(7.0 / 15.0));
  CHECK(mean.x[3] == doctest::Approx(3.0 / 15.0));
  CHECK(mean.zeta[2] == doctest::Approx(20.0 * 16.0 / 15.0));
  CHECK(mean.gamma == doctest::Approx(628.0 / 15.0));
  double cost = 0.0;
  for (int e = 0; e < 5; ++e) cost += inst.net.edges[e].cost * mean.x[e];
  for (int i = 0; i < 4; ++i) cost += inst.net.node_cost[i] * mean.y[i];
  CHECK(cost == doctest::Approx(20.0));  // slack 43 under the budget of 63

  // Folded pairs push the base center level above every surviving utility.
  Instance tight = prop2_fixture();
  tight.alpha = 26.0 / 92.0;
  ReducedInstance tred = preprocess(tight);
  std::vector<MasterPoint> tpts = interior_points(tred);
  REQUIRE(tpts.size() == 12);
  CHECK(tpts[0].gamma == 34.0);  // floor from the folded pairs, not max u = 20
  CHECK(tpts[11].zeta[2] == 40.0);
  CHECK(tpts[11].gamma == 40.0);
  CHECK_NOTHROW(interior_point(tred));

  Instance bare = prop2_fixture();
  bare.alpha = 20.0 / 92.0;
  ReducedInstance red_none = preprocess(bare);
  CHECK_THROWS_AS(interior_points(red_none), ValidationError);
}

TEST_CASE("cut generation serves true design points and cuts off the origin") {
  Instance inst = prop2_fixture();
  ReducedInstance red = preprocess(inst);
  MasterPoint ip = interior_point(red);

  // The interior point serves every pair, so no cut separates it from itself.
  for (int w = 0; w < 4; ++w) CHECK_FALSE(separate(inst, w, ip, ip).has_value());

  // The origin (nothing built, zero incumbent lengths) is cut off per pair,
  // and each cut holds for every budget-feasible design at its true lengths.
  MasterPoint origin;
  origin.y.assign(4, 0.0);
  origin.x.assign(5, 0.0);
  origin.zeta.assign(4, 0.0);
  origin.gamma = 0.0;
  for (int w = 0; w < 4; ++w) {
    auto cut = separate(inst, w, origin, ip);
    REQUIRE(cut.has_value());
    CHECK(cut->pair == w);
    CHECK(cut->rhs > 1e-7);
    CHECK(cut->violation == doctest::Approx(cut->rhs));  // lhs is zero at the origin
    check_cut_sound(inst, *cut, ip);
  }

  // Integral designs with exact incumbent lengths are never separated.
  for (const auto& [s, ev] : enumerate_feasible(inst)) {
    MasterPoint pt = true_point(inst, s, ev);
    for (int w = 0; w < 4; ++w) CHECK_FALSE(separate(inst, w, pt, ip).has_value());
  }

  CHECK_THROWS_AS(separate(inst, 7, ip, ip), ValidationError);
  MasterPoint stunted = ip;
  stunted.zeta.pop_back();
  CHECK_THROWS_AS(separate(inst, 0, stunted, ip), ValidationError);
}

TEST_CASE("branch and cut matches the exhaustive oracle on the fixture") {
  Instance inst = prop2_fixture();
  for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CAPTURE(lambda);
    BuildOptions opt;
    opt.lambda = lambda;
    BendersResult res = solve_benders(inst, opt);
    REQUIRE(res.mip.status == MipStatus::kOptimal);
    REQUIRE(res.mip.has_incumbent);

    double best = kInf;
    for (const auto& [s, ev] : enumerate_feasible(inst)) best = std::min(best, ev.H(lambda));
    CHECK(res.mip.obj == doctest::Approx(best).epsilon(1e-9));
    CHECK(res.solution.eval.H(lambda) == doctest::Approx(best).epsilon(1e-9));
    CHECK(res.solution.objective == res.mip.obj);

    SolveOutcome cd = solve_model(inst, build_cd(inst, opt));
    CHECK(res.mip.obj == doctest::Approx(cd.mip.obj).epsilon(1e-9));

    CHECK(res.mip.cuts == static_cast<int>(res.ledger.size()));
    MasterPoint ip = interior_point(res.reduced);
    for (const BendersCut& cut : res.ledger) check_cut_sound(inst, cut, ip);
  }
}

TEST_CASE("branch and cut handles folded pairs and reduced budgets") {
  Instance tight = prop2_fixture();
  tight.alpha = 26.0 / 92.0;
  BuildOptions opt;
  opt.lambda = 0.5;
  BendersResult res = solve_benders(tight, opt);
  REQUIRE(res.mip.status == MipStatus::kOptimal);
  double best = kInf;
  for (const auto& [s, ev] : enumerate_feasible(tight)) best = std::min(best, ev.H(0.5));
  CHECK(res.mip.obj == doctest::Approx(best).epsilon(1e-9));

  Instance low_u = prop2_fixture();
  low_u.pairs[1].u = 5.0;
  BendersResult res_u = solve_benders(low_u, opt);
  best = kInf;
  for (const auto& [s, ev] : enumerate_feasible(low_u)) best = std::min(best, ev.H(0.5));
  CHECK(res_u.mip.obj == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("fully folded instances collapse to the private-mode objective") {
  Instance bare = prop2_fixture();
  bare.alpha = 20.0 / 92.0;
  for (double lambda : {0.0, 0.5, 1.0}) {
    CAPTURE(lambda);
    BuildOptions opt;
    opt.lambda = lambda;
    BendersResult res = solve_benders(bare, opt);
    REQUIRE(res.mip.status == MipStatus::kOptimal);
    CHECK(res.reduced.surviving == 0);
    CHECK(res.ledger.empty());
    double expect = lambda * 34.0 + (1.0 - lambda) * 14788.0 / 513.0;
    CHECK(res.mip.obj == doctest::Approx(expect).epsilon(1e-12));
    CHECK(res.solution.eval.Fc == 34.0);
    CHECK(res.solution.eval.Fm == doctest::Approx(14788.0 / 513.0));
  }
}

TEST_CASE("branch and cut matches the oracle on generated instances") {
  for (std::uint64_t seed : {1, 3}) {
    GenParams gp;
    gp.n = 6;
    gp.seed = seed;
    gp.alpha = seed % 2 ? 0.4 : 0.25;
    Instance inst = generate_instance(gp);
    for (double lambda : {0.0, 0.5, 1.0}) {
      CAPTURE(seed);
      CAPTURE(lambda);
      BruteResult br = brute_force(inst, BruteObjective::kCentdian, lambda);
      BuildOptions opt;
      opt.lambda = lambda;
      BendersResult res = solve_benders(inst, opt);
      REQUIRE(res.mip.status == MipStatus::kOptimal);
      CHECK(res.mip.obj == doctest::Approx(br.value).epsilon(1e-9));
      CHECK(res.solution.eval.H(lambda) == doctest::Approx(br.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("the master model refuses the plain solver and bad weights") {
  Instance inst = prop2_fixture();
  ReducedInstance red = preprocess(inst);
  BuildOptions opt;
  BuiltModel bm = build_master(inst, red.active, opt);
  CHECK_THROWS_AS(solve_model(inst, bm), ValidationError);

  BuildOptions gen;
  gen.lambda = 20.0;  // generalized-center weights need the reformulation
  CHECK_THROWS_AS(solve_benders(inst, gen), ValidationError);
}

TEST_CASE("branch and cut is deterministic") {
  Instance inst = prop2_fixture();
  BuildOptions opt;
  opt.lambda = 0.5;
  BendersResult a = solve_benders(inst, opt);
  BendersResult b = solve_benders(inst, opt);
  CHECK(a.mip.obj == b.mip.obj);
  CHECK(a.mip.nodes == b.mip.nodes);
  CHECK(a.ledger.size() == b.ledger.size());
  CHECK(a.solution.design == b.solution.design);
}
