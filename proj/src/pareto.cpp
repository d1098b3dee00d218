#include "centdian/pareto.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "centdian/formulations.hpp"

namespace centdian {

namespace {

void require_optimal(const MipResult& mip, const char* stage) {
  if (mip.status != MipStatus::kOptimal)
    throw std::runtime_error(std::string(stage) + " did not solve to optimality (" +
                             to_string(mip.status) + ")");
}

}  // namespace

MaxCentdianResult max_centdian(const Instance& inst, double lambda, const BnbParams& params) {
  SolveOutcome stage1 = solve_model(inst, build_mcd1(inst, lambda), params);
  require_optimal(stage1.mip, "minimax stage one");

  SolveOutcome stage2 = solve_model(inst, build_mcd2(inst, lambda, stage1.mip.obj), params);
  if (stage2.mip.status == MipStatus::kInfeasible)
    throw std::logic_error("minimax stage two lost the stage-one value " +
                           fmt_double(stage1.mip.obj) + "; the caps must stay achievable");
  require_optimal(stage2.mip, "minimax stage two");

  MaxCentdianResult out;
  out.vstar = stage1.mip.obj;
  out.solution = std::move(stage2.solution);
  return out;
}

DesignSolution lexicographic_centdian(const Instance& inst, const BnbParams& params) {
  BuildOptions center;
  center.lambda = 1.0;
  SolveOutcome stage1 = solve_model(inst, build_cd(inst, center), params);
  require_optimal(stage1.mip, "center stage");

  BuildOptions median;
  median.lambda = 0.0;
  median.center_cap = stage1.mip.obj + kStageCapSlack;
  SolveOutcome stage2 = solve_model(inst, build_cd(inst, median), params);
  if (stage2.mip.status == MipStatus::kInfeasible)
    throw std::logic_error("median stage lost the center optimum " +
                           fmt_double(stage1.mip.obj) + "; the cap must stay achievable");
  require_optimal(stage2.mip, "median stage");
  return std::move(stage2.solution);
}

std::vector<ParetoPoint> parametrize_po2(const Instance& inst, double lambda_tolerance,
                                         const BnbParams& params) {
  if (!(lambda_tolerance > 0.0) || lambda_tolerance >= 0.5)
    throw ValidationError("frontier sweep needs a tolerance in (0, 0.5)");

  struct Sample {
    double vstar = 0.0;
    DesignSolution sol;
  };
  std::map<double, Sample> samples;  // ordered by lambda
  auto eval = [&](double lam) -> const Sample& {
    auto it = samples.find(lam);
    if (it == samples.end()) {
      MaxCentdianResult mc = max_centdian(inst, lam, params);
      it = samples.emplace(lam, Sample{mc.vstar, std::move(mc.solution)}).first;
    }
    return it->second;
  };
  auto same = [](const Sample& a, const Sample& b) {
    return a.sol.eval.Fc == b.sol.eval.Fc && a.sol.eval.Fm == b.sol.eval.Fm;
  };

  double lo = lambda_tolerance, hi = 1.0 - lambda_tolerance;
  eval(lo);
  eval(hi);
  // Interval stack; an interval is settled when its endpoint samples agree
  // on (Fc, Fm) or it is narrower than the tolerance.
  std::vector<std::pair<double, double>> work{{lo, hi}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    if (same(eval(a), eval(b)) || b - a < lambda_tolerance) continue;
    double mid = 0.5 * (a + b);
    eval(mid);
    work.push_back({a, mid});
    work.push_back({mid, b});
  }

  std::vector<ParetoPoint> out;
  for (const auto& [lam, smp] : samples) {
    if (!out.empty() && out.back().Fc == smp.sol.eval.Fc && out.back().Fm == smp.sol.eval.Fm) {
      out.back().lambda_hi = lam;
      continue;
    }
    ParetoPoint pt;
    pt.lambda_lo = pt.lambda_hi = lam;
    pt.solution = smp.sol;
    pt.Fc = smp.sol.eval.Fc;
    pt.Fm = smp.sol.eval.Fm;
    pt.vstar = smp.vstar;
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace centdian
