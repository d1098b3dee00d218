#include <doctest.h>

#include <cmath>
#include <sstream>

#include "centdian/instance.hpp"
#include "centdian/network.hpp"

using namespace centdian;

TEST_CASE("reference fixture has the frozen data") {
  Instance inst = prop2_fixture();
  CHECK(inst.net.num_nodes() == 4);
  CHECK(inst.net.num_edges() == 5);
  CHECK(inst.net.total_build_cost == doctest::Approx(92.0));
  CHECK(inst.budget() == doctest::Approx(63.0));
  CHECK(inst.total_demand() == doctest::Approx(513.0));
  REQUIRE(inst.pairs.size() == 4);
  CHECK(inst.pairs[0].s == 0);
  CHECK(inst.pairs[0].t == 1);
  CHECK(inst.pairs[0].u == doctest::Approx(24.0));
  CHECK(inst.pairs[0].g == doctest::Approx(181.0));
  CHECK(inst.pairs[3].s == 2);
  CHECK(inst.pairs[3].t == 1);
  // digest is stable and sensitive
  CHECK(inst.digest() == prop2_fixture().digest());
  Instance other = prop2_fixture();
  other.pairs[0].g += 1.0;
  CHECK(inst.digest() != other.digest());
}

TEST_CASE("budget feasibility uses a small absolute slack") {
  Instance inst = prop2_fixture();
  CHECK(budget_feasible(inst, 63.0));
  CHECK(budget_feasible(inst, 63.0 + 0.5 * kBudgetTol));
  CHECK(!budget_feasible(inst, 63.0 + 3.0 * kBudgetTol));
  CHECK(budget_feasible(inst, 0.0));
}

TEST_CASE("generator is deterministic and respects its parameter ranges") {
  GenParams p;
  p.n = 12;
  p.alpha = 0.3;
  p.seed = 7;
  Instance a = generate_instance(p);
  Instance b = generate_instance(p);
  CHECK(a.digest() == b.digest());
  p.seed = 8;
  CHECK(generate_instance(p).digest() != a.digest());

  CHECK(a.net.num_nodes() == 12);
  CHECK(a.coords.size() == 12);
  CHECK(a.seed.has_value());
  CHECK(*a.seed == 7);
  CHECK(a.alpha == doctest::Approx(0.3));
  CHECK(static_cast<int>(a.pairs.size()) == 12 * 11);

  for (double b_i : a.net.node_cost) {
    CHECK(b_i >= 7.0);
    CHECK(b_i <= 13.0);
    CHECK(b_i == std::floor(b_i));
  }
  for (const Edge& e : a.net.edges) {
    double dx = a.coords[e.u][0] - a.coords[e.v][0];
    double dy = a.coords[e.u][1] - a.coords[e.v][1];
    double eu = std::hypot(dx, dy);
    CHECK(e.cost == e.length);
    CHECK(e.length == doctest::Approx(std::round(eu)));
    CHECK(e.length >= 1.0);
  }
  // pairs: ordered (s, t), s-major, with exact doubled Euclidean utility
  int k = 0;
  for (int s = 0; s < 12; ++s)
    for (int t = 0; t < 12; ++t) {
      if (s == t) continue;
      const ODPair& w = a.pairs[k++];
      CHECK(w.s == s);
      CHECK(w.t == t);
      double dx = a.coords[s][0] - a.coords[t][0];
      double dy = a.coords[s][1] - a.coords[t][1];
      CHECK(w.u == 2.0 * std::hypot(dx, dy));
      CHECK(w.g >= 10.0);
      CHECK(w.g <= 300.0);
      CHECK(w.g == std::floor(w.g));
    }
  // connected
  std::vector<double> d = shortest_distances(a.net, full_subgraph(a.net), 0);
  for (double v : d) CHECK(v < kInf);

  GenParams tiny;
  tiny.n = 1;
  CHECK_THROWS_AS(generate_instance(tiny), ValidationError);
}

TEST_CASE("generator handles the two-node corner case") {
  GenParams p;
  p.n = 2;
  p.seed = 3;
  Instance a = generate_instance(p);
  CHECK(a.net.num_edges() == 1);
  CHECK(a.pairs.size() == 2);
}

TEST_CASE("instance files round-trip exactly") {
  GenParams p;
  p.n = 9;
  p.seed = 42;
  p.alpha = 0.4;
  Instance a = generate_instance(p);
  std::stringstream ss;
  write_instance(a, ss);
  Instance b = read_instance(ss);
  CHECK(a.digest() == b.digest());
  CHECK(b.coords.size() == a.coords.size());
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    CHECK(a.coords[i][0] == b.coords[i][0]);
    CHECK(a.coords[i][1] == b.coords[i][1]);
  }
  CHECK(b.seed.has_value());
  CHECK(*b.seed == 42);
  CHECK(b.name == a.name);

  // the fixture has no coordinates; still round-trips
  Instance f = prop2_fixture();
  std::stringstream fs;
  write_instance(f, fs);
  CHECK(read_instance(fs).digest() == f.digest());
}

TEST_CASE("instance reader rejects malformed input with line numbers") {
  auto parse = [](const std::string& text) {
    std::stringstream ss(text);
    return read_instance(ss);
  };
  CHECK_THROWS_AS(parse("bogus v9\n"), ValidationError);
  CHECK_THROWS_AS(parse("centdian-instance v1\nalpha 2.0\nnodes 0\n"), ValidationError);
  try {
    parse(
        "centdian-instance v1\n"
        "alpha 0.5\n"
        "nodes 2\n"
        "node 0 cost 5\n"
        "node 1 cost oops\n");
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }
}

TEST_CASE("fmt_double prints round-trippable shortest forms") {
  CHECK(fmt_double(17.0) == "17");
  CHECK(fmt_double(1.5) == "1.5");
  CHECK(fmt_double(0.25) == "0.25");
  double ugly = 2.0 * std::hypot(3.7, 9.2);
  CHECK(std::stod(fmt_double(ugly)) == ugly);
}
