#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "centdian/lp.hpp"

// Sparse bounded-variable revised simplex: Markowitz-pivoted sparse LU of the
// basis with product-form eta updates between refactorizations, Dantzig
// pricing with a Bland fallback against stalling, and a composite phase-1
// (minimize the sum of basic bound violations with dynamic costs).  The
// constraint system is A x - s = 0 with the row bounds carried by the
// logicals s, so the simplex right-hand side is identically zero.

namespace centdian::lp {

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();
constexpr double kAbsPivTol = 1e-10;   // smallest acceptable LU pivot
constexpr double kRelPivTol = 0.01;    // threshold partial pivoting factor
constexpr double kDropTol = 1e-13;     // drop fill-in below this magnitude
constexpr double kRatioPivTol = 1e-9;  // smallest usable ratio-test pivot
constexpr int kEtaLimit = 96;          // refactor after this many updates
constexpr double kClassTol = 1e-10;    // bound-violation classification
constexpr double kExitTol = 1e-9;      // total violation accepted as feasible

// ---------------------------------------------------------------- sparse LU

struct SparseLU {
  int m = 0;
  std::vector<int> prow, pcolpos;          // pivot step -> row / basis position
  std::vector<double> diag;                // pivot values
  std::vector<int> lbeg;                   // L eta ranges per step
  std::vector<int> lrow;
  std::vector<double> lval;
  std::vector<int> urbeg;                  // U pivot-row entries per step (cols = basis positions)
  std::vector<int> urcol;
  std::vector<double> urval;
  std::vector<std::vector<std::pair<int, double>>> ucol;  // basis position -> (row, val) above-diagonal
  std::vector<int> deficient_rows;         // rank deficiency report
  std::vector<int> leftover_cols;

  void clear() {
    prow.clear();
    pcolpos.clear();
    diag.clear();
    lbeg.assign(1, 0);
    lrow.clear();
    lval.clear();
    urbeg.assign(1, 0);
    urcol.clear();
    urval.clear();
    ucol.clear();
    deficient_rows.clear();
    leftover_cols.clear();
  }

  // Factor the given basis columns; returns true on full rank.
  bool factor(int rows, const std::vector<std::vector<std::pair<int, double>>>& bcol) {
    m = rows;
    clear();
    ucol.assign(m, {});
    if (m == 0) return true;

    std::vector<std::vector<std::pair<int, double>>> cval = bcol;  // active columns
    std::vector<int> col_count(m), row_count(m, 0);
    std::vector<std::uint8_t> row_done(m, 0), col_done(m, 0);
    std::vector<std::vector<int>> rcols(m);  // row -> candidate columns (lazy)
    for (int j = 0; j < m; ++j) {
      col_count[j] = static_cast<int>(cval[j].size());
      for (auto [i, v] : cval[j]) {
        (void)v;
        ++row_count[i];
        rcols[i].push_back(j);
      }
    }
    // lazy count buckets
    std::vector<std::vector<int>> bucket(m + 2);
    for (int j = 0; j < m; ++j) bucket[std::min(col_count[j], m + 1)].push_back(j);
    auto push_bucket = [&](int j) { bucket[std::min(col_count[j], m + 1)].push_back(j); };

    for (int step = 0; step < m; ++step) {
      // ---- pivot selection (Markowitz cost with threshold pivoting)
      int best_col = -1, best_row = -1;
      double best_cost = kInfD, best_abs = 0.0;
      int scanned = 0;
      for (int cnt = 1; cnt <= m + 1 && best_col < 0; ++cnt) {
        auto& bk = bucket[cnt];
        std::size_t keep = 0;
        for (std::size_t bi = 0; bi < bk.size(); ++bi) {
          int j = bk[bi];
          if (col_done[j] || std::min(col_count[j], m + 1) != cnt) continue;  // stale
          bk[keep++] = j;
          if (best_col >= 0 && scanned >= 16) continue;
          ++scanned;
          double cmax = 0.0;
          for (auto [i, v] : cval[j]) cmax = std::max(cmax, std::abs(v));
          if (cmax < kAbsPivTol) continue;
          for (auto [i, v] : cval[j]) {
            double a = std::abs(v);
            if (a < kRelPivTol * cmax || a < kAbsPivTol) continue;
            double cost = static_cast<double>(row_count[i] - 1) * (col_count[j] - 1);
            if (cost < best_cost - 0.5 ||
                (cost < best_cost + 0.5 &&
                 (a > best_abs * 1.000001 ||
                  (a > best_abs * 0.999999 && (j < best_col || (j == best_col && i < best_row)))))) {
              best_cost = cost;
              best_abs = a;
              best_col = j;
              best_row = i;
            }
          }
        }
        bk.resize(keep);
        if (best_col >= 0 && (cnt == 1 || best_cost <= static_cast<double>(cnt - 1)))
          break;  // good enough: cannot beat it in later buckets cheaply
      }
      if (best_col < 0) {
        for (int i = 0; i < m; ++i)
          if (!row_done[i]) deficient_rows.push_back(i);
        for (int j = 0; j < m; ++j)
          if (!col_done[j]) leftover_cols.push_back(j);
        return false;
      }

      int r = best_row, c = best_col;
      double pv = 0.0;
      for (auto [i, v] : cval[c])
        if (i == r) pv = v;
      prow.push_back(r);
      pcolpos.push_back(c);
      diag.push_back(pv);
      row_done[r] = 1;
      col_done[c] = 1;

      // ---- L multipliers from the pivot column
      for (auto [i, v] : cval[c]) {
        if (i == r) continue;
        lrow.push_back(i);
        lval.push_back(v / pv);
        --row_count[i];
      }
      lbeg.push_back(static_cast<int>(lrow.size()));
      int lfrom = lbeg[step], lto = lbeg[step + 1];

      // ---- pivot row entries -> U; update the touched columns
      for (int j : rcols[r]) {
        if (col_done[j] || j == c) continue;
        auto& colj = cval[j];
        double vrj = 0.0;
        bool found = false;
        for (auto& [i, v] : colj)
          if (i == r) {
            vrj = v;
            found = true;
            break;
          }
        if (!found || vrj == 0.0) continue;
        urcol.push_back(j);
        urval.push_back(vrj);
        ucol[j].emplace_back(r, vrj);
        // eliminate row r from column j, then apply the rank-1 update
        std::size_t w = 0;
        for (auto& e : colj)
          if (e.first != r) colj[w++] = e;
        colj.resize(w);
        --row_count[r];
        for (int k = lfrom; k < lto; ++k) {
          int i = lrow[k];
          double upd = -lval[k] * vrj;
          bool found = false;
          for (auto& e : colj)
            if (e.first == i) {
              found = true;
              double nv = e.second + upd;
              if (std::abs(nv) <= kDropTol) {
                --row_count[i];
                e = colj.back();
                colj.pop_back();
              } else {
                e.second = nv;
              }
              break;
            }
          if (!found && std::abs(upd) > kDropTol) {
            colj.emplace_back(i, upd);
            ++row_count[i];
            rcols[i].push_back(j);
          }
        }
        col_count[j] = static_cast<int>(colj.size());
        push_bucket(j);
      }
      urbeg.push_back(static_cast<int>(urcol.size()));
      cval[c].clear();
      cval[c].shrink_to_fit();
    }
    return true;
  }

  // z = B^{-1} v; v enters indexed by row, z leaves indexed by basis position.
  void ftran(std::vector<double>& v, std::vector<double>& z) const {
    for (int t = 0; t < m; ++t) {
      double piv = v[prow[t]];
      if (piv != 0.0)
        for (int k = lbeg[t]; k < lbeg[t + 1]; ++k) v[lrow[k]] -= lval[k] * piv;
    }
    for (int t = m - 1; t >= 0; --t) {
      double s = v[prow[t]];
      for (int k = urbeg[t]; k < urbeg[t + 1]; ++k) s -= urval[k] * z[urcol[k]];
      z[pcolpos[t]] = s / diag[t];
    }
  }

  // y = B^{-T} w; w enters indexed by basis position, y leaves indexed by row.
  void btran(const std::vector<double>& w, std::vector<double>& y) const {
    for (int t = 0; t < m; ++t) {
      double s = w[pcolpos[t]];
      for (auto [i, u] : ucol[pcolpos[t]]) s -= u * y[i];
      y[prow[t]] = s / diag[t];
    }
    for (int t = m - 1; t >= 0; --t) {
      double acc = 0.0;
      for (int k = lbeg[t]; k < lbeg[t + 1]; ++k) acc += lval[k] * y[lrow[k]];
      y[prow[t]] -= acc;
    }
  }
};

// ------------------------------------------------------------ simplex core

struct Eta {
  int rpos;
  double pivot;
  std::vector<std::pair<int, double>> col;  // (basis position, alpha) incl. rpos
};

struct RevisedSimplex {
  const Problem& p;
  int n, m, nv;
  std::vector<double> vlb, vub, vcost;
  // structural columns CSC
  std::vector<int> cbeg, crow;
  std::vector<double> cvalx;

  std::vector<VStat> stat;
  std::vector<int> basic;    // position -> var
  std::vector<int> pos_of;   // var -> position or -1
  std::vector<double> xval;  // all variables
  SparseLU lu;
  std::vector<Eta> etas;
  long iters = 0;
  long stall = 0;
  bool bland = false;
  double last_goal = kInfD;

  std::vector<double> wrk_row, wrk_pos, alpha, ydual;

  explicit RevisedSimplex(const Problem& prob) : p(prob) {
    n = p.ncols();
    m = p.nrows();
    nv = n + m;
    vlb.resize(nv);
    vub.resize(nv);
    vcost.assign(nv, 0.0);
    for (int j = 0; j < n; ++j) {
      vlb[j] = p.lb[j];
      vub[j] = p.ub[j];
      vcost[j] = p.c[j];
    }
    for (int i = 0; i < m; ++i) {
      vlb[n + i] = p.row_lo[i];
      vub[n + i] = p.row_hi[i];
    }
    // CSR -> CSC
    cbeg.assign(n + 1, 0);
    for (int k = 0; k < static_cast<int>(p.a_col.size()); ++k) ++cbeg[p.a_col[k] + 1];
    for (int j = 0; j < n; ++j) cbeg[j + 1] += cbeg[j];
    crow.resize(p.a_col.size());
    cvalx.resize(p.a_col.size());
    std::vector<int> fill(cbeg.begin(), cbeg.end() - 1);
    for (int i = 0; i < m; ++i)
      for (int k = p.a_begin[i]; k < p.a_begin[i + 1]; ++k) {
        int j = p.a_col[k];
        crow[fill[j]] = i;
        cvalx[fill[j]] = p.a_val[k];
        ++fill[j];
      }
    wrk_row.assign(m, 0.0);
    wrk_pos.assign(m, 0.0);
    alpha.assign(m, 0.0);
    ydual.assign(m, 0.0);
  }

  double col_dot_y(int j, const std::vector<double>& y) const {
    if (j >= n) return -y[j - n];
    double s = 0.0;
    for (int k = cbeg[j]; k < cbeg[j + 1]; ++k) s += y[crow[k]] * cvalx[k];
    return s;
  }

  void scatter_col(int j, std::vector<double>& v, double coef) const {
    if (j >= n) {
      v[j - n] -= coef;
      return;
    }
    for (int k = cbeg[j]; k < cbeg[j + 1]; ++k) v[crow[k]] += coef * cvalx[k];
  }

  double nonbasic_value(int j) const {
    switch (stat[j]) {
      case VStat::kAtLower: return vlb[j];
      case VStat::kAtUpper: return vub[j];
      case VStat::kFreeZero: return 0.0;
      default: return xval[j];
    }
  }

  void normalize_stat(int j) {
    if (stat[j] == VStat::kAtLower && vlb[j] <= -kInfD)
      stat[j] = vub[j] < kInfD ? VStat::kAtUpper : VStat::kFreeZero;
    else if (stat[j] == VStat::kAtUpper && vub[j] >= kInfD)
      stat[j] = vlb[j] > -kInfD ? VStat::kAtLower : VStat::kFreeZero;
  }

  void cold_basis() {
    stat.assign(nv, VStat::kAtLower);
    for (int j = 0; j < n; ++j) normalize_stat(j);
    basic.clear();
    pos_of.assign(nv, -1);
    for (int i = 0; i < m; ++i) {
      stat[n + i] = VStat::kBasic;
      basic.push_back(n + i);
      pos_of[n + i] = i;
    }
  }

  void adopt_warm(const Basis& w) {
    // Rows appended after the basis was recorded get a basic logical.
    const int wr = static_cast<int>(w.row_stat.size());
    stat.assign(nv, VStat::kAtLower);
    for (int j = 0; j < n; ++j) stat[j] = w.col_stat[j];
    for (int i = 0; i < m; ++i) stat[n + i] = i < wr ? w.row_stat[i] : VStat::kBasic;
    for (int j = 0; j < nv; ++j)
      if (stat[j] != VStat::kBasic) normalize_stat(j);
    basic.clear();
    for (int j = 0; j < nv; ++j)
      if (stat[j] == VStat::kBasic) basic.push_back(j);
    if (static_cast<int>(basic.size()) > m) {
      std::vector<int> keep;
      for (int j : basic) {
        if (static_cast<int>(keep.size()) < m)
          keep.push_back(j);
        else {
          stat[j] = VStat::kAtLower;
          normalize_stat(j);
        }
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
  }

  bool refactor() {
    for (int attempt = 0; attempt < 4; ++attempt) {
      std::vector<std::vector<std::pair<int, double>>> bcol(m);
      for (int t = 0; t < m; ++t) {
        int j = basic[t];
        if (j >= n)
          bcol[t].emplace_back(j - n, -1.0);
        else
          for (int k = cbeg[j]; k < cbeg[j + 1]; ++k) bcol[t].emplace_back(crow[k], cvalx[k]);
      }
      if (lu.factor(m, bcol)) {
        etas.clear();
        compute_basics();
        return true;
      }
      // repair: give deficient rows their logicals, demote leftover columns
      std::size_t fix = 0;
      for (int t : lu.leftover_cols) {
        while (fix < lu.deficient_rows.size() && pos_of[n + lu.deficient_rows[fix]] >= 0) ++fix;
        if (fix >= lu.deficient_rows.size()) break;
        int logical = n + lu.deficient_rows[fix++];
        int out = basic[t];
        stat[out] = VStat::kAtLower;
        normalize_stat(out);
        pos_of[out] = -1;
        stat[logical] = VStat::kBasic;
        basic[t] = logical;
        pos_of[logical] = t;
      }
    }
    return false;
  }

  void compute_basics() {
    xval.assign(nv, 0.0);
    std::fill(wrk_row.begin(), wrk_row.end(), 0.0);
    for (int j = 0; j < nv; ++j) {
      if (stat[j] == VStat::kBasic) continue;
      double v = nonbasic_value(j);
      xval[j] = v;
      if (v != 0.0) scatter_col(j, wrk_row, -v);  // rhs residual: 0 - N x_N
    }
    std::fill(wrk_pos.begin(), wrk_pos.end(), 0.0);
    lu.ftran(wrk_row, wrk_pos);
    apply_etas_ftran(wrk_pos);
    for (int t = 0; t < m; ++t) xval[basic[t]] = wrk_pos[t];
  }

  void apply_etas_ftran(std::vector<double>& v) const {
    for (const Eta& e : etas) {
      double vr = v[e.rpos] / e.pivot;
      if (vr != 0.0) {
        for (auto [j, a] : e.col)
          if (j != e.rpos) v[j] -= a * vr;
      }
      v[e.rpos] = vr;
    }
  }

  void apply_etas_btran(std::vector<double>& w) const {
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      double s = w[it->rpos];
      for (auto [j, a] : it->col)
        if (j != it->rpos) s -= a * w[j];
      w[it->rpos] = s / it->pivot;
    }
  }

  // FTRAN of a variable column into alpha (basis-position space)
  void ftran_col(int j) {
    std::fill(wrk_row.begin(), wrk_row.end(), 0.0);
    scatter_col(j, wrk_row, 1.0);
    std::fill(alpha.begin(), alpha.end(), 0.0);
    lu.ftran(wrk_row, alpha);
    apply_etas_ftran(alpha);
  }

  // duals for the given basic cost vector (basis-position space)
  void btran_costs(const std::vector<double>& wpos) {
    std::vector<double> w = wpos;
    apply_etas_btran(w);
    std::fill(ydual.begin(), ydual.end(), 0.0);
    lu.btran(w, ydual);
  }

  double infeasibility() const {
    double s = 0.0;
    for (int t = 0; t < m; ++t) {
      int b = basic[t];
      if (xval[b] > vub[b] + kClassTol)
        s += xval[b] - vub[b];
      else if (xval[b] < vlb[b] - kClassTol)
        s += vlb[b] - xval[b];
    }
    return s;
  }

  Status run(bool phase1, long iter_cap) {
    stall = 0;
    bland = false;
    last_goal = kInfD;
    while (true) {
      if (++iters > iter_cap) return Status::kIterLimit;
      double goal;
      std::vector<double> w(m, 0.0);
      if (phase1) {
        goal = 0.0;
        for (int t = 0; t < m; ++t) {
          int b = basic[t];
          if (xval[b] > vub[b] + kClassTol) {
            w[t] = 1.0;
            goal += xval[b] - vub[b];
          } else if (xval[b] < vlb[b] - kClassTol) {
            w[t] = -1.0;
            goal += vlb[b] - xval[b];
          }
        }
        if (goal <= kExitTol) return Status::kOptimal;
      } else {
        goal = 0.0;
        for (int t = 0; t < m; ++t) w[t] = vcost[basic[t]];
        for (int j = 0; j < nv; ++j) goal += vcost[j] * xval[j];
      }
      if (goal < last_goal - 1e-12) {
        last_goal = goal;
        stall = 0;
        bland = false;
      } else if (++stall > 1000) {
        bland = true;  // anti-cycling: least-index rule until progress
      }

      btran_costs(w);

      int enter = -1, dir = 0;
      double best_score = phase1 ? 1e-9 : kOptTol;
      for (int j = 0; j < nv; ++j) {
        if (stat[j] == VStat::kBasic || vub[j] - vlb[j] <= 0.0) continue;
        double d = (phase1 ? 0.0 : vcost[j]) - col_dot_y(j, ydual);
        double score = 0.0;
        int dd = 0;
        if ((stat[j] == VStat::kAtLower || stat[j] == VStat::kFreeZero) && d < 0) {
          score = -d;
          dd = +1;
        } else if ((stat[j] == VStat::kAtUpper || stat[j] == VStat::kFreeZero) && d > 0) {
          score = d;
          dd = -1;
        }
        if (dd == 0) continue;
        if (bland) {
          if (score > (phase1 ? 1e-9 : kOptTol)) {
            enter = j;
            dir = dd;
            break;
          }
        } else if (score > best_score) {
          best_score = score;
          enter = j;
          dir = dd;
        }
      }
      if (enter < 0) return phase1 ? Status::kInfeasible : Status::kOptimal;

      ftran_col(enter);

      double best_theta = kInfD;
      int leave_pos = -1;
      bool leave_to_upper = false;
      double flip = vub[enter] - vlb[enter];
      if (flip < kInfD) best_theta = flip;
      double best_piv = 0.0;
      for (int t = 0; t < m; ++t) {
        double delta = -dir * alpha[t];
        if (std::abs(delta) < kRatioPivTol) continue;
        int b = basic[t];
        bool above = phase1 && xval[b] > vub[b] + kClassTol;
        bool below = phase1 && xval[b] < vlb[b] - kClassTol;
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
        double apiv = std::abs(delta);
        if (theta < best_theta - 1e-12 ||
            (theta <= best_theta + 1e-12 && leave_pos >= 0 && apiv > best_piv * (1.0 + 1e-9)) ||
            (theta <= best_theta + 1e-12 && leave_pos >= 0 && apiv >= best_piv * (1.0 - 1e-9) &&
             basic[t] < basic[leave_pos])) {
          if (theta < best_theta) best_theta = theta;
          leave_pos = t;
          best_piv = apiv;
          leave_to_upper = to_upper;
        }
      }
      if (best_theta == kInfD) return phase1 ? Status::kNumerical : Status::kUnbounded;

      if (leave_pos < 0) {
        // bound flip
        double delta = dir > 0 ? flip : -flip;
        for (int t = 0; t < m; ++t)
          if (alpha[t] != 0.0) xval[basic[t]] -= alpha[t] * delta;
        stat[enter] = dir > 0 ? VStat::kAtUpper : VStat::kAtLower;
        xval[enter] = nonbasic_value(enter);
        continue;
      }

      double theta = best_theta;
      double delta = dir > 0 ? theta : -theta;
      for (int t = 0; t < m; ++t)
        if (alpha[t] != 0.0) xval[basic[t]] -= alpha[t] * delta;
      int leave = basic[leave_pos];
      // snap the leaving variable exactly onto its bound
      if (leave_to_upper) {
        xval[leave] = vub[leave];
        stat[leave] = VStat::kAtUpper;
      } else if (vlb[leave] > -kInfD) {
        xval[leave] = vlb[leave];
        stat[leave] = VStat::kAtLower;
      } else {
        xval[leave] = 0.0;
        stat[leave] = VStat::kFreeZero;
      }
      xval[enter] = nonbasic_value(enter) + delta;
      stat[enter] = VStat::kBasic;
      basic[leave_pos] = enter;
      pos_of[leave] = -1;
      pos_of[enter] = leave_pos;

      Eta e;
      e.rpos = leave_pos;
      e.pivot = alpha[leave_pos];
      for (int t = 0; t < m; ++t)
        if (alpha[t] != 0.0) e.col.emplace_back(t, alpha[t]);
      etas.push_back(std::move(e));
      if (static_cast<int>(etas.size()) >= kEtaLimit) {
        if (!refactor()) return Status::kNumerical;
      }
    }
  }

  Solution solve(const Basis* warm) {
    Solution sol;
    if (warm && static_cast<int>(warm->col_stat.size()) == n &&
        static_cast<int>(warm->row_stat.size()) <= m)
      adopt_warm(*warm);
    else
      cold_basis();
    if (!refactor()) {
      cold_basis();
      if (!refactor()) {
        sol.status = Status::kNumerical;
        return sol;
      }
    }
    long cap = 400000 + 200L * nv;
    Status st = Status::kOptimal;
    if (infeasibility() > kExitTol) st = run(true, cap);
    if (st == Status::kInfeasible && infeasibility() <= kFeasTol)
      st = Status::kOptimal;  // degenerate stall within tolerance
    if (st == Status::kOptimal) st = run(false, cap);
    sol.iterations = iters;
    std::vector<double> w(m);
    for (int t = 0; t < m; ++t) w[t] = vcost[basic[t]];
    btran_costs(w);
    sol.y = ydual;
    sol.x.assign(n, 0.0);
    for (int j = 0; j < n; ++j) sol.x[j] = xval[j];
    sol.row_act = p.row_activity(sol.x);
    sol.dj.assign(n, 0.0);
    for (int j = 0; j < n; ++j)
      if (stat[j] != VStat::kBasic) sol.dj[j] = vcost[j] - col_dot_y(j, ydual);
    sol.obj = 0.0;
    for (int j = 0; j < n; ++j) sol.obj += p.c[j] * sol.x[j];
    sol.basis.col_stat.assign(stat.begin(), stat.begin() + n);
    sol.basis.row_stat.assign(stat.begin() + n, stat.end());
    sol.status = st;
    return sol;
  }
};

class RevisedBackend : public LpBackend {
 public:
  const char* name() const override { return "revised"; }
  Solution solve(const Problem& prob, const Basis* warm) override {
    RevisedSimplex s(prob);
    return s.solve(warm);
  }
};

}  // namespace

std::unique_ptr<LpBackend> make_revised_simplex() { return std::make_unique<RevisedBackend>(); }

std::unique_ptr<LpBackend> make_backend(const std::string& name) {
  if (name == "revised") return make_revised_simplex();
  if (name == "dense") return make_dense_simplex();
  throw std::invalid_argument("unknown lp backend '" + name + "' (use 'revised' or 'dense')");
}

}  // namespace centdian::lp
