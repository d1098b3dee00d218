#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "centdian/lp.hpp"

// Dense tableau-style bounded-variable simplex with Bland's rule.  Serves as
// the slow-but-transparent fallback binding used to cross-check the sparse
// solver on small problems.  The constraint system is handled as
// A x - s = 0 with logical s bounded by the row bounds, so the right-hand
// side is identically zero and a basis is any nonsingular column subset.

namespace centdian::lp {

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();
constexpr double kPivTol = 1e-9;
constexpr double kClassTol = 1e-10;  // bound-violation classification
constexpr double kExitTol = 1e-9;    // total violation accepted as feasible

struct DenseSimplex {
  const Problem& p;
  int n;  // structurals
  int m;  // rows / logicals
  int nv; // n + m

  std::vector<double> vlb, vub, vcost;  // over all variables
  std::vector<std::vector<std::pair<int, double>>> cols;  // variable -> sparse column

  std::vector<VStat> stat;      // per variable
  std::vector<int> basic;       // basis position -> variable
  std::vector<int> pos_of;      // variable -> basis position or -1
  std::vector<double> binv;     // m x m row-major
  std::vector<double> xval;     // per variable
  long iters = 0;

  explicit DenseSimplex(const Problem& prob) : p(prob) {
    n = p.ncols();
    m = p.nrows();
    nv = n + m;
    vlb.resize(nv);
    vub.resize(nv);
    vcost.assign(nv, 0.0);
    cols.resize(nv);
    for (int j = 0; j < n; ++j) {
      vlb[j] = p.lb[j];
      vub[j] = p.ub[j];
      vcost[j] = p.c[j];
    }
    for (int i = 0; i < m; ++i) {
      vlb[n + i] = p.row_lo[i];
      vub[n + i] = p.row_hi[i];
      cols[n + i].emplace_back(i, -1.0);
    }
    for (int i = 0; i < m; ++i)
      for (int k = p.a_begin[i]; k < p.a_begin[i + 1]; ++k)
        cols[p.a_col[k]].emplace_back(i, p.a_val[k]);
  }

  double nonbasic_value(int j) const {
    switch (stat[j]) {
      case VStat::kAtLower: return vlb[j];
      case VStat::kAtUpper: return vub[j];
      case VStat::kFreeZero: return 0.0;
      default: return xval[j];
    }
  }

  void cold_basis() {
    stat.assign(nv, VStat::kAtLower);
    basic.clear();
    pos_of.assign(nv, -1);
    for (int j = 0; j < n; ++j) {
      if (vlb[j] > -kInfD)
        stat[j] = VStat::kAtLower;
      else if (vub[j] < kInfD)
        stat[j] = VStat::kAtUpper;
      else
        stat[j] = VStat::kFreeZero;
    }
    for (int i = 0; i < m; ++i) {
      stat[n + i] = VStat::kBasic;
      pos_of[n + i] = i;
      basic.push_back(n + i);
    }
  }

  bool adopt_warm(const Basis& w) {
    if (static_cast<int>(w.col_stat.size()) != n || static_cast<int>(w.row_stat.size()) != m)
      return false;
    stat.assign(nv, VStat::kAtLower);
    for (int j = 0; j < n; ++j) stat[j] = w.col_stat[j];
    for (int i = 0; i < m; ++i) stat[n + i] = w.row_stat[i];
    // fix statuses that point at missing bounds
    for (int j = 0; j < nv; ++j) {
      if (stat[j] == VStat::kAtLower && vlb[j] <= -kInfD)
        stat[j] = vub[j] < kInfD ? VStat::kAtUpper : VStat::kFreeZero;
      else if (stat[j] == VStat::kAtUpper && vub[j] >= kInfD)
        stat[j] = vlb[j] > -kInfD ? VStat::kAtLower : VStat::kFreeZero;
    }
    basic.clear();
    for (int j = 0; j < nv; ++j)
      if (stat[j] == VStat::kBasic) basic.push_back(j);
    // repair cardinality: promote logicals / demote extras, lowest index first
    if (static_cast<int>(basic.size()) > m) {
      std::vector<int> keep;
      for (int j : basic) {
        if (static_cast<int>(keep.size()) < m)
          keep.push_back(j);
        else
          stat[j] = vlb[j] > -kInfD ? VStat::kAtLower
                                    : (vub[j] < kInfD ? VStat::kAtUpper : VStat::kFreeZero);
      }
      basic = keep;
    }
    for (int i = 0; i < m && static_cast<int>(basic.size()) < m; ++i)
      if (stat[n + i] != VStat::kBasic) {
        stat[n + i] = VStat::kBasic;
        basic.push_back(n + i);
      }
    pos_of.assign(nv, -1);
    for (int t = 0; t < m; ++t) pos_of[basic[t]] = t;
    return invert_basis();
  }

  // Gauss-Jordan inversion of the current basis matrix; false when singular.
  bool invert_basis() {
    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
    for (int t = 0; t < m; ++t)
      for (auto [i, v] : cols[basic[t]]) a[static_cast<std::size_t>(i) * m + t] = v;
    binv.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) binv[static_cast<std::size_t>(i) * m + i] = 1.0;
    for (int col = 0; col < m; ++col) {
      int piv = -1;
      double best = kPivTol;
      for (int r = col; r < m; ++r) {
        double v = std::abs(a[static_cast<std::size_t>(r) * m + col]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (piv < 0) return false;
      if (piv != col) {
        // row exchanges fold into the accumulated inverse; the basis order is untouched
        for (int k = 0; k < m; ++k) {
          std::swap(a[static_cast<std::size_t>(piv) * m + k], a[static_cast<std::size_t>(col) * m + k]);
          std::swap(binv[static_cast<std::size_t>(piv) * m + k], binv[static_cast<std::size_t>(col) * m + k]);
        }
      }
      double d = a[static_cast<std::size_t>(col) * m + col];
      for (int k = 0; k < m; ++k) {
        a[static_cast<std::size_t>(col) * m + k] /= d;
        binv[static_cast<std::size_t>(col) * m + k] /= d;
      }
      for (int r = 0; r < m; ++r) {
        if (r == col) continue;
        double f = a[static_cast<std::size_t>(r) * m + col];
        if (f == 0.0) continue;
        for (int k = 0; k < m; ++k) {
          a[static_cast<std::size_t>(r) * m + k] -= f * a[static_cast<std::size_t>(col) * m + k];
          binv[static_cast<std::size_t>(r) * m + k] -= f * binv[static_cast<std::size_t>(col) * m + k];
        }
      }
    }
    for (int t = 0; t < m; ++t) pos_of[basic[t]] = t;
    return true;
  }

  void compute_basics() {
    xval.assign(nv, 0.0);
    std::vector<double> r(m, 0.0);
    for (int j = 0; j < nv; ++j) {
      if (stat[j] == VStat::kBasic) continue;
      double v = nonbasic_value(j);
      xval[j] = v;
      if (v != 0.0)
        for (auto [i, av] : cols[j]) r[i] += av * v;
    }
    for (int t = 0; t < m; ++t) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += binv[static_cast<std::size_t>(t) * m + i] * r[i];
      xval[basic[t]] = -s;
    }
  }

  std::vector<double> ftran(int j) const {
    std::vector<double> out(m, 0.0);
    for (int t = 0; t < m; ++t) {
      double s = 0.0;
      for (auto [i, v] : cols[j]) s += binv[static_cast<std::size_t>(t) * m + i] * v;
      out[t] = s;
    }
    return out;
  }

  // one simplex phase; phase1 = minimize infeasibility, else minimize cost
  Status run_phase(bool phase1, long iter_cap) {
    while (true) {
      if (++iters > iter_cap) return Status::kIterLimit;
      compute_basics();
      std::vector<double> w(m, 0.0);
      double infeas = 0.0;
      if (phase1) {
        for (int t = 0; t < m; ++t) {
          int b = basic[t];
          if (xval[b] > vub[b] + kClassTol) {
            w[t] = 1.0;
            infeas += xval[b] - vub[b];
          } else if (xval[b] < vlb[b] - kClassTol) {
            w[t] = -1.0;
            infeas += vlb[b] - xval[b];
          }
        }
        if (infeas <= kExitTol) return Status::kOptimal;  // primal feasible
      } else {
        for (int t = 0; t < m; ++t) w[t] = vcost[basic[t]];
      }
      std::vector<double> y(m, 0.0);
      for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int t = 0; t < m; ++t) s += w[t] * binv[static_cast<std::size_t>(t) * m + i];
        y[i] = s;
      }
      // Bland: first eligible variable
      int enter = -1, dir = 0;
      double tol = phase1 ? 1e-9 : kOptTol;
      for (int j = 0; j < nv && enter < 0; ++j) {
        if (stat[j] == VStat::kBasic || vub[j] - vlb[j] <= 0.0) continue;
        double d = phase1 ? 0.0 : vcost[j];
        for (auto [i, v] : cols[j]) d -= y[i] * v;
        if ((stat[j] == VStat::kAtLower || stat[j] == VStat::kFreeZero) && d < -tol) {
          enter = j;
          dir = +1;
        } else if ((stat[j] == VStat::kAtUpper || stat[j] == VStat::kFreeZero) && d > tol) {
          enter = j;
          dir = -1;
        }
      }
      if (enter < 0) return phase1 ? Status::kInfeasible : Status::kOptimal;

      std::vector<double> alpha = ftran(enter);
      double best_theta = kInfD;
      int leave_pos = -1;
      bool leave_to_upper = false;
      // entering bound flip
      double flip = vub[enter] - vlb[enter];
      if (flip < kInfD) best_theta = flip;
      for (int t = 0; t < m; ++t) {
        double delta = -dir * alpha[t];
        if (std::abs(delta) < kPivTol) continue;
        int b = basic[t];
        bool below = phase1 && xval[b] < vlb[b] - kClassTol;
        bool above = phase1 && xval[b] > vub[b] + kClassTol;
        double theta = kInfD;
        bool to_upper = false;
        if (above) {
          if (delta < 0) {
            theta = (vub[b] - xval[b]) / delta;
            to_upper = true;
          }
        } else if (below) {
          if (delta > 0) theta = (vlb[b] - xval[b]) / delta;
        } else if (delta > 0) {
          if (vub[b] < kInfD) {
            theta = (vub[b] - xval[b]) / delta;
            to_upper = true;
          }
        } else {
          if (vlb[b] > -kInfD) theta = (vlb[b] - xval[b]) / delta;
        }
        if (theta == kInfD) continue;
        theta = std::max(theta, 0.0);
        if (theta < best_theta - 1e-12 ||
            (theta < best_theta + 1e-12 &&
             (leave_pos < 0 || std::abs(delta) > std::abs(-dir * alpha[leave_pos]) + 1e-12))) {
          best_theta = theta;
          leave_pos = t;
          leave_to_upper = to_upper;
        }
      }
      if (best_theta == kInfD) return phase1 ? Status::kNumerical : Status::kUnbounded;
      if (leave_pos < 0) {
        // bound flip: entering runs to its other bound
        stat[enter] = dir > 0 ? VStat::kAtUpper : VStat::kAtLower;
        continue;
      }
      int leave = basic[leave_pos];
      stat[leave] = leave_to_upper ? VStat::kAtUpper
                                   : (vlb[leave] > -kInfD ? VStat::kAtLower : VStat::kFreeZero);
      stat[enter] = VStat::kBasic;
      basic[leave_pos] = enter;
      pos_of[leave] = -1;
      pos_of[enter] = leave_pos;
      // elementary update of binv
      double piv = alpha[leave_pos];
      for (int k = 0; k < m; ++k) binv[static_cast<std::size_t>(leave_pos) * m + k] /= piv;
      for (int t = 0; t < m; ++t) {
        if (t == leave_pos) continue;
        double f = alpha[t];
        if (f == 0.0) continue;
        for (int k = 0; k < m; ++k)
          binv[static_cast<std::size_t>(t) * m + k] -=
              f * binv[static_cast<std::size_t>(leave_pos) * m + k];
      }
    }
  }

  Solution solve(const Basis* warm) {
    Solution sol;
    bool ok = false;
    if (warm && !warm->empty()) ok = adopt_warm(*warm);
    if (!ok) {
      cold_basis();
      if (m > 0 && !invert_basis()) {
        sol.status = Status::kNumerical;
        return sol;
      }
    }
    long cap = 200000 + 200L * nv;
    Status st = run_phase(true, cap);
    if (st == Status::kInfeasible) {
      // a degenerate stall within the feasibility tolerance still counts
      compute_basics();
      double resid = 0.0;
      for (int t = 0; t < m; ++t) {
        int b = basic[t];
        resid += std::max(0.0, xval[b] - vub[b]) + std::max(0.0, vlb[b] - xval[b]);
      }
      if (resid <= kFeasTol) st = Status::kOptimal;
    }
    if (st == Status::kOptimal) st = run_phase(false, cap);
    sol.iterations = iters;
    compute_basics();
    // final duals with the phase-2 cost vector
    std::vector<double> w(m);
    for (int t = 0; t < m; ++t) w[t] = vcost[basic[t]];
    sol.y.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      for (int t = 0; t < m; ++t) s += w[t] * binv[static_cast<std::size_t>(t) * m + i];
      sol.y[i] = s;
    }
    sol.x.assign(p.lb.begin(), p.lb.end());
    for (int j = 0; j < n; ++j) sol.x[j] = xval[j];
    sol.row_act = p.row_activity(sol.x);
    sol.dj.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
      if (stat[j] == VStat::kBasic) continue;
      double d = vcost[j];
      for (auto [i, v] : cols[j]) d -= sol.y[i] * v;
      sol.dj[j] = d;
    }
    sol.obj = 0.0;
    for (int j = 0; j < n; ++j) sol.obj += p.c[j] * sol.x[j];
    sol.basis.col_stat.assign(stat.begin(), stat.begin() + n);
    sol.basis.row_stat.assign(stat.begin() + n, stat.end());
    sol.status = st;
    return sol;
  }
};

class DenseBackend : public LpBackend {
 public:
  const char* name() const override { return "dense"; }
  Solution solve(const Problem& prob, const Basis* warm) override {
    DenseSimplex s(prob);
    return s.solve(warm);
  }
};

}  // namespace

std::unique_ptr<LpBackend> make_dense_simplex() { return std::make_unique<DenseBackend>(); }

}  // namespace centdian::lp
