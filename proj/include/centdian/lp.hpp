#ifndef CENTDIAN_LP_HPP
#define CENTDIAN_LP_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace centdian::lp {

// Primal feasibility / dual optimality tolerances shared by both bindings.
constexpr double kFeasTol = 1e-7;
constexpr double kOptTol = 1e-7;

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterLimit, kNumerical };

const char* to_string(Status s);

// minimize c.x  subject to  row_lo <= A x <= row_hi,  lb <= x <= ub.
// Rows are stored CSR; columns may repeat across rows but not within one.
struct Problem {
  std::vector<double> c, lb, ub;
  std::vector<double> row_lo, row_hi;
  std::vector<int> a_begin{0};
  std::vector<int> a_col;
  std::vector<double> a_val;

  int ncols() const { return static_cast<int>(c.size()); }
  int nrows() const { return static_cast<int>(row_lo.size()); }
  int add_col(double obj, double lo, double hi);
  int add_row(double lo, double hi, const std::vector<int>& cols, const std::vector<double>& vals);
  std::vector<double> row_activity(const std::vector<double>& x) const;
};

enum class VStat : std::int8_t { kAtLower = 0, kAtUpper = 1, kBasic = 2, kFreeZero = 3 };

struct Basis {
  std::vector<VStat> col_stat;
  std::vector<VStat> row_stat;  // status of the row logicals
  bool empty() const { return col_stat.empty() && row_stat.empty(); }
};

struct Solution {
  Status status = Status::kNumerical;
  double obj = 0.0;
  std::vector<double> x;        // primal values
  std::vector<double> row_act;  // A x
  // Row duals with the convention  d_j = c_j - sum_i y_i A_ij  for the
  // reduced costs: a row active at its lower bound has y_i >= 0, one active
  // at its upper bound has y_i <= 0 (minimization).
  std::vector<double> y;
  std::vector<double> dj;       // reduced costs of the structural columns
  Basis basis;
  long iterations = 0;
};

// Contract for pluggable LP solvers: exact bounds handling, deterministic
// (identical input and warm basis give identical output), duals satisfying
// complementary slackness within kOptTol.  Any conforming solver can be
// bound; the suite ships two:
//   - "revised": sparse bounded-variable revised simplex (default),
//   - "dense":   dense tableau simplex with Bland's rule (small/test use).
class LpBackend {
 public:
  virtual ~LpBackend() = default;
  virtual const char* name() const = 0;
  virtual Solution solve(const Problem& p, const Basis* warm = nullptr) = 0;
};

std::unique_ptr<LpBackend> make_revised_simplex();
std::unique_ptr<LpBackend> make_dense_simplex();
std::unique_ptr<LpBackend> make_backend(const std::string& name);

}  // namespace centdian::lp

#endif  // CENTDIAN_LP_HPP
