#ifndef CENTDIAN_MODEL_HPP
#define CENTDIAN_MODEL_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "centdian/lp.hpp"

namespace centdian {

// One decision variable of a mixed-integer model.  branch_class orders
// branching priorities in the solver: class 0 is branched before class 1,
// and so on.  Only integer variables are branching candidates.
struct ModelVar {
  std::string name;
  double obj = 0.0;
  double lb = 0.0;
  double ub = 0.0;
  bool integer = false;
  int branch_class = 0;
};

// One linear row lo <= a.x <= hi (equalities have lo == hi).
struct ModelRow {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<int> cols;
  std::vector<double> vals;
};

// Solver-neutral minimization MILP.  Rows and variables keep their creation
// order everywhere (LP export, MPS dump), which makes runs reproducible.
struct Model {
  std::string name = "model";
  std::vector<ModelVar> vars;
  std::vector<ModelRow> rows;
  double obj_offset = 0.0;  // constant added to the objective value

  int num_vars() const { return static_cast<int>(vars.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_var(std::string name, double obj, double lb, double ub, bool integer,
              int branch_class = 0);
  int add_row(std::string name, double lo, double hi, std::vector<int> cols,
              std::vector<double> vals);

  std::vector<int> integer_vars() const;

  // Continuous relaxation (integrality dropped, bounds kept).
  lp::Problem to_lp() const;

  // Structural sanity: indices in range, finite coefficients, lb <= ub,
  // binaries inside [0,1], no duplicate column within a row.  Throws
  // ValidationError on violation.
  void audit() const;

  // Free-format MPS dump (minimize; integer markers; RANGES for two-sided
  // rows; BOUNDS for non-default bounds).  Deterministic ordering.
  void write_mps(std::ostream& out) const;
};

}  // namespace centdian

#endif  // CENTDIAN_MODEL_HPP
