#include "centdian/lp.hpp"

#include <stdexcept>

namespace centdian::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kIterLimit: return "iteration-limit";
    case Status::kNumerical: return "numerical-error";
  }
  return "?";
}

int Problem::add_col(double obj, double lo, double hi) {
  c.push_back(obj);
  lb.push_back(lo);
  ub.push_back(hi);
  return ncols() - 1;
}

int Problem::add_row(double lo, double hi, const std::vector<int>& cols,
                     const std::vector<double>& vals) {
  if (cols.size() != vals.size()) throw std::invalid_argument("row cols/vals size mismatch");
  row_lo.push_back(lo);
  row_hi.push_back(hi);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    a_col.push_back(cols[k]);
    a_val.push_back(vals[k]);
  }
  a_begin.push_back(static_cast<int>(a_col.size()));
  return nrows() - 1;
}

std::vector<double> Problem::row_activity(const std::vector<double>& x) const {
  std::vector<double> act(nrows(), 0.0);
  for (int i = 0; i < nrows(); ++i)
    for (int k = a_begin[i]; k < a_begin[i + 1]; ++k) act[i] += a_val[k] * x[a_col[k]];
  return act;
}

}  // namespace centdian::lp
