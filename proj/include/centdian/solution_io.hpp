#ifndef CENTDIAN_SOLUTION_IO_HPP
#define CENTDIAN_SOLUTION_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "centdian/benders.hpp"
#include "centdian/mip.hpp"
#include "centdian/pareto.hpp"
#include "centdian/solver.hpp"

namespace centdian {

// Versioned text format for a solved design.  Reading needs the instance the
// design was solved on: the file's digest must match and the re-evaluated
// metrics and routing must agree with the stored ones, so stale or
// mismatched files are rejected instead of silently trusted.
void write_solution(const Instance& inst, const DesignSolution& sol, std::ostream& out);
void write_solution_file(const Instance& inst, const DesignSolution& sol,
                         const std::string& path);
DesignSolution read_solution(const Instance& inst, std::istream& in);
DesignSolution read_solution_file(const Instance& inst, const std::string& path);

// Frontier table: lambda_lo,lambda_hi,Fc,Fm,design (design identity hash).
std::string frontier_csv(const std::vector<ParetoPoint>& points);

// One machine-readable record per solver run (JSON with sorted keys, so
// reruns diff cleanly).  The design block is present when `sol` is given,
// the cut ledger when `cuts` is.
std::string run_ledger_json(const Instance& inst, const std::string& method, double lambda,
                            std::optional<double> delta, const MipResult& mip,
                            const DesignSolution* sol = nullptr,
                            const std::vector<BendersCut>* cuts = nullptr);

}  // namespace centdian

#endif  // CENTDIAN_SOLUTION_IO_HPP
