#include <doctest.h>

#include <string>
#include <vector>

#include "centdian/evaluation.hpp"
#include "centdian/instance.hpp"

using namespace centdian;

TEST_CASE("evaluation of the reference design freezes the hand-computed metrics") {
  Instance inst = prop2_fixture();
  Subgraph s = subgraph_from_edges(inst.net, {1, 3, 4});
  Evaluation ev = evaluate(inst, s);

  REQUIRE(ev.len.size() == 4);
  CHECK(ev.len[0] == doctest::Approx(24.0));  // 0-1 detour is 30, capped at u=24
  CHECK(ev.len[1] == doctest::Approx(20.0));
  CHECK(ev.len[2] == doctest::Approx(10.0));
  CHECK(ev.len[3] == doctest::Approx(16.0));

  CHECK(ev.Fm == doctest::Approx(10070.0 / 513.0).epsilon(1e-12));
  CHECK(ev.Fc == doctest::Approx(24.0));
  CHECK(ev.H(20.0) == doctest::Approx(54910.0 / 513.0).epsilon(1e-12));
  CHECK(ev.H(0.5) == doctest::Approx(11191.0 / 513.0).epsilon(1e-12));
  CHECK(ev.H(0.0) == doctest::Approx(ev.Fm));
  CHECK(ev.H(1.0) == doctest::Approx(24.0));
  CHECK(ev.gen_center() == doctest::Approx(2242.0 / 513.0).epsilon(1e-12));
  CHECK(ev.Hbar(0.5) == doctest::Approx(12.0));

  CHECK(ev.lmin == doctest::Approx(10.0));
  CHECK(ev.lmax == doctest::Approx(24.0));
  CHECK(ev.lmean == doctest::Approx(17.5));
  CHECK(ev.mad_raw == doctest::Approx(590572.0));
  CHECK(ev.mad == doctest::Approx(590572.0 / (513.0 * 513.0)).epsilon(1e-12));
  CHECK(ev.od_pct == doctest::Approx(100.0 * 332.0 / 513.0).epsilon(1e-12));
  CHECK(ev.od_pct_unweighted == doctest::Approx(75.0));
  CHECK(ev.total_demand == doctest::Approx(513.0));
  CHECK(ev.instance_digest == inst.digest());
}

TEST_CASE("evaluation of full and empty designs") {
  Instance inst = prop2_fixture();

  Evaluation full = evaluate(inst, full_subgraph(inst.net));
  CHECK(full.len[0] == doctest::Approx(12.0));
  CHECK(full.len[1] == doctest::Approx(17.0));
  CHECK(full.len[2] == doctest::Approx(10.0));
  CHECK(full.len[3] == doctest::Approx(16.0));
  CHECK(full.Fm == doctest::Approx(7394.0 / 513.0).epsilon(1e-12));
  CHECK(full.Fc == doctest::Approx(17.0));
  CHECK(full.od_pct == doctest::Approx(100.0));

  Evaluation empty = evaluate(inst, empty_subgraph(inst.net));
  CHECK(empty.len[0] == doctest::Approx(24.0));
  CHECK(empty.len[1] == doctest::Approx(34.0));
  CHECK(empty.Fm == doctest::Approx(14788.0 / 513.0).epsilon(1e-12));
  CHECK(empty.Fc == doctest::Approx(34.0));
  CHECK(empty.od_pct == doctest::Approx(0.0));

  // pairs at exactly u do not count as served
  Subgraph s = subgraph_from_edges(inst.net, {1, 3, 4});
  Evaluation ev = evaluate(inst, s);
  CHECK(ev.od_pct < 100.0 * 333.0 / 513.0);
}

TEST_CASE("dominance and the Pareto filter") {
  Instance inst = prop2_fixture();
  Evaluation better = evaluate(inst, full_subgraph(inst.net));   // (14.41.., 17)
  Evaluation worse = evaluate(inst, subgraph_from_edges(inst.net, {1, 3, 4}));  // (19.63, 24)
  CHECK(dominates(better, worse));
  CHECK(!dominates(worse, better));
  CHECK(!dominates(better, better));  // needs one strict inequality

  // trade-off pair: neither dominates (median vs center)
  Evaluation a, b;
  a.Fm = 45.037;
  a.Fc = 100.0;
  b.Fm = 47.149;
  b.Fc = 96.0;
  CHECK(!dominates(a, b));
  CHECK(!dominates(b, a));

  Evaluation c;
  c.Fm = 50.0;
  c.Fc = 101.0;  // dominated by a
  std::vector<Evaluation> all{a, b, c};
  CHECK(pareto_filter(all) == std::vector<int>{0, 1});

  Evaluation mismatched = a;
  mismatched.instance_digest = 123;
  CHECK_THROWS_AS(dominates(mismatched, b), ValidationError);
}

TEST_CASE("metric csv rows") {
  CHECK(metrics_csv_header() == "lambda,delta,l_min,l_max,l_mean,MAD,OD_pct");
  Instance inst = prop2_fixture();
  Evaluation ev = evaluate(inst, full_subgraph(inst.net));
  std::string with = metrics_csv_row(ev, 0.5, 0.25);
  std::string without = metrics_csv_row(ev, 0.5, std::nullopt);
  CHECK(with.substr(0, 4) == "0.5,");
  CHECK(without.find(",-,") != std::string::npos);
  // six commas -> seven fields
  CHECK(std::count(with.begin(), with.end(), ',') == 6);
}

TEST_CASE("evaluate validates its inputs") {
  Instance inst = prop2_fixture();
  Subgraph bad = subgraph_from_edges(inst.net, {1, 3, 4});
  bad.node_on[2] = 0;
  CHECK_THROWS_AS(evaluate(inst, bad), ValidationError);
  Instance no_pairs = inst;
  no_pairs.pairs.clear();
  CHECK_THROWS_AS(evaluate(no_pairs, full_subgraph(inst.net)), ValidationError);
}
