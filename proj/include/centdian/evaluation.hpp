#ifndef CENTDIAN_EVALUATION_HPP
#define CENTDIAN_EVALUATION_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "centdian/instance.hpp"
#include "centdian/network.hpp"

namespace centdian {

// All objective and equity metrics of one design S on one instance.
//
//   len[w]  effective length: min(shortest path length in S, u^w)
//   Fm      demand-weighted median  (1/G) * sum_w g^w len[w]
//   Fc      center                  max_w len[w]
//   H(l)    lambda-cent-dian        l*Fc + (1-l)*Fm        (any l >= 0)
//   Hbar(l) max-cent-dian scalar    max(l*Fc, (1-l)*Fm)
struct Evaluation {
  std::vector<double> len;
  double Fm = 0.0;
  double Fc = 0.0;
  double lmin = 0.0;        // min/max/mean of len over pairs, unweighted
  double lmax = 0.0;
  double lmean = 0.0;
  double mad_raw = 0.0;     // (1/2) sum_w sum_w' g^w g^w' |len[w]-len[w']|
  double mad = 0.0;         // mad_raw / G^2
  double od_pct = 0.0;      // demand share served by the network (len < u), percent
  double od_pct_unweighted = 0.0;  // pair share served, percent
  double total_demand = 0.0;
  std::uint64_t instance_digest = 0;

  double H(double lambda) const { return lambda * Fc + (1.0 - lambda) * Fm; }
  double Hbar(double lambda) const {
    double a = lambda * Fc, b = (1.0 - lambda) * Fm;
    return a > b ? a : b;
  }
  // generalized center reading of the blend: Fc - Fm
  double gen_center() const { return Fc - Fm; }
};

// Evaluates S (shortest-path routing per pair, private mode at utility u^w
// when the network path is longer or missing).  S must be a valid subgraph.
Evaluation evaluate(const Instance& inst, const Subgraph& s);

// PO2 dominance: a dominates b iff Fm(a) <= Fm(b) and Fc(a) <= Fc(b) with at
// least one strict.  Exact comparisons on the computed doubles.  Throws
// ValidationError when the evaluations come from different instances.
bool dominates(const Evaluation& a, const Evaluation& b);

// Indices of the non-dominated entries, in input order.
std::vector<int> pareto_filter(const std::vector<Evaluation>& evals);

// CSV rows in Table-1 column order.  Delta is printed as '-' when absent.
std::string metrics_csv_header();
std::string metrics_csv_row(const Evaluation& ev, double lambda, std::optional<double> delta);

}  // namespace centdian

#endif  // CENTDIAN_EVALUATION_HPP
