#include <sstream>
#include <string>

#include "centdian/benders.hpp"
#include "centdian/formulations.hpp"
#include "centdian/instance.hpp"
#include "centdian/pareto.hpp"
#include "centdian/solution_io.hpp"
#include "centdian/solver.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace centdian;

TEST_CASE("solution files round-trip against their instance") {
  Instance inst = prop2_fixture();
  BuildOptions opt;
  opt.lambda = 0.5;
  SolveOutcome res = solve_model(inst, build_cd(inst, opt));
  REQUIRE(res.mip.status == MipStatus::kOptimal);

  std::ostringstream out;
  write_solution(inst, res.solution, out);
  std::istringstream in(out.str());
  DesignSolution back = read_solution(inst, in);

  CHECK(back.design == res.solution.design);
  CHECK(back.lambda == res.solution.lambda);
  CHECK(back.objective == res.solution.objective);
  CHECK(back.eval.Fc == res.solution.eval.Fc);
  CHECK(back.eval.Fm == res.solution.eval.Fm);
  CHECK(back.private_mode == res.solution.private_mode);
  for (std::size_t w = 0; w < inst.pairs.size(); ++w)
    CHECK(back.routing[w].edges == res.solution.routing[w].edges);

  // A second write of the read-back value is byte-identical.
  std::ostringstream again;
  write_solution(inst, back, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("solution files are rejected when stale or tampered") {
  Instance inst = prop2_fixture();
  BuildOptions opt;
  opt.lambda = 0.5;
  SolveOutcome res = solve_model(inst, build_cd(inst, opt));
  std::ostringstream out;
  write_solution(inst, res.solution, out);
  const std::string text = out.str();

  // Wrong instance: any data change moves the digest.
  Instance other = prop2_fixture();
  other.alpha = 0.5;
  std::istringstream stale(text);
  CHECK_THROWS_WITH_AS(read_solution(other, stale), doctest::Contains("different instance"),
                       ValidationError);

  // Tampered metric line.
  std::string bad = text;
  REQUIRE(bad.find("center 22") != std::string::npos);
  bad.replace(bad.find("center 22"), 9, "center 23");
  std::istringstream tampered(bad);
  CHECK_THROWS_WITH_AS(read_solution(inst, tampered), doctest::Contains("disagree"),
                       ValidationError);

  // Tampered routing.
  std::string bad_route = text;
  REQUIRE(bad_route.find("route 2 network 3") != std::string::npos);
  bad_route.replace(bad_route.find("route 2 network 3"), 17, "route 2 private");
  std::istringstream misrouted(bad_route);
  CHECK_THROWS_WITH_AS(read_solution(inst, misrouted), doctest::Contains("routing"),
                       ValidationError);

  std::istringstream garbage("centdian-solution v1\nwat 3\n");
  CHECK_THROWS_WITH_AS(read_solution(inst, garbage), doctest::Contains("line 2"),
                       ValidationError);
}

TEST_CASE("frontier csv lists one row per pareto point") {
  Instance inst = prop2_fixture();
  std::vector<ParetoPoint> pts = parametrize_po2(inst, 1e-3);
  std::string csv = frontier_csv(pts);

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "lambda_lo,lambda_hi,Fc,Fm,design");
  std::size_t rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == pts.size());
  CHECK(csv.find("0.001,") != std::string::npos);
}

TEST_CASE("run ledger json carries the result, design, and cut ledger") {
  Instance inst = prop2_fixture();
  BuildOptions opt;
  opt.lambda = 0.5;
  BendersResult res = solve_benders(inst, opt);
  REQUIRE(res.mip.status == MipStatus::kOptimal);

  std::string text =
      run_ledger_json(inst, "benders", 0.5, std::nullopt, res.mip, &res.solution, &res.ledger);
  nlohmann::json j = nlohmann::json::parse(text);

  CHECK(j["schema"] == "centdian-run-v1");
  CHECK(j["method"] == "benders");
  CHECK(j["instance"]["digest"] == std::to_string(inst.digest()));
  CHECK(j["instance"]["pairs"] == 4);
  CHECK(!j.contains("delta"));
  CHECK(j["result"]["status"] == "optimal");
  CHECK(j["result"]["objective"].get<double>() == doctest::Approx(res.mip.obj));
  CHECK(j["design"]["edges"].get<std::vector<int>>() == res.solution.design.edges());
  REQUIRE(j["cut_ledger"].size() == res.ledger.size());
  for (std::size_t k = 0; k < res.ledger.size(); ++k) {
    CHECK(j["cut_ledger"][k]["pair"] == res.ledger[k].pair);
    CHECK(j["cut_ledger"][k]["violation"].get<double>() ==
          doctest::Approx(res.ledger[k].violation));
  }

  std::string with_delta =
      run_ledger_json(inst, "bcd", 1.0, 0.25, res.mip, &res.solution, nullptr);
  nlohmann::json jd = nlohmann::json::parse(with_delta);
  CHECK(jd["delta"].get<double>() == 0.25);
  CHECK(!jd.contains("cut_ledger"));
}
