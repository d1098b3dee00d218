#include "centdian/mip.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <queue>
#include <stdexcept>
#include <utility>

#include "centdian/lp.hpp"
#include "centdian/network.hpp"

namespace centdian {

namespace {

using clock_type = std::chrono::steady_clock;

double frac_dist(double v) { return std::fabs(v - std::round(v)); }

// One open node: cumulative bound tightenings along the branching path plus
// the parent's optimal basis for warm starts.
struct Node {
  double bound = -kInf;
  std::vector<std::array<double, 2>> tight;  // parallel to tight_col
  std::vector<int> tight_col;
  lp::Basis basis;
};

// Worst violation of x against the variable bounds and every row (original
// rows and appended cuts alike).  `where` names the worst offender.
double residual(const lp::Problem& p, const std::vector<double>& lb,
                const std::vector<double>& ub, const std::vector<double>& x,
                std::string* where = nullptr) {
  double worst = 0.0;
  auto note = [&](double v, int id, const char* what) {
    if (v > worst) {
      worst = v;
      if (where) *where = std::string(what) + " " + std::to_string(id);
    }
  };
  for (int j = 0; j < p.ncols(); ++j) {
    note(lb[j] - x[j], j, "col-lb");
    note(x[j] - ub[j], j, "col-ub");
  }
  std::vector<double> act = p.row_activity(x);
  for (int i = 0; i < p.nrows(); ++i) {
    if (p.row_lo[i] > -kInf) note(p.row_lo[i] - act[i], i, "row-lo");
    if (p.row_hi[i] < kInf) note(act[i] - p.row_hi[i], i, "row-hi");
  }
  return worst;
}

}  // namespace

const char* to_string(MipStatus s) {
  switch (s) {
    case MipStatus::kOptimal: return "optimal";
    case MipStatus::kFeasible: return "feasible";
    case MipStatus::kInfeasible: return "infeasible";
    case MipStatus::kNodeLimit: return "node_limit";
    case MipStatus::kTimeLimit: return "time_limit";
  }
  return "?";
}

double MipResult::gap() const {
  if (!has_incumbent) return kInf;
  return (obj - bound) / std::max(1.0, std::fabs(obj));
}

MipResult solve_mip(const Model& model, const BnbParams& params, const MipCallbacks& cb) {
  if (!(params.int_tol > 0.0) || !(params.rel_gap > 0.0) || !(params.abs_gap >= 0.0))
    throw ValidationError("solve_mip: tolerances must be positive");
  model.audit();

  const auto t0 = clock_type::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock_type::now() - t0).count(); };

  lp::Problem prob = model.to_lp();
  const std::vector<double> base_lb = prob.lb;
  const std::vector<double> base_ub = prob.ub;
  const std::vector<int> ints = model.integer_vars();
  auto backend = lp::make_backend(params.backend);

  MipResult res;
  bool has_inc = false;
  double inc_obj = kInf;
  std::vector<double> inc_x;
  double global_bound = -kInf;

  auto append_cuts = [&](const std::vector<CutRow>& cuts) {
    for (const CutRow& cut : cuts) {
      if (cut.cols.size() != cut.vals.size() || cut.cols.empty())
        throw ValidationError("solve_mip: malformed cut " + cut.name);
      for (int c : cut.cols)
        if (c < 0 || c >= prob.ncols())
          throw ValidationError("solve_mip: cut " + cut.name + " references column out of range");
      for (double v : cut.vals)
        if (!std::isfinite(v))
          throw ValidationError("solve_mip: cut " + cut.name + " has a non-finite coefficient");
      prob.add_row(cut.lo, cut.hi, cut.cols, cut.vals);
      ++res.cuts;
    }
  };

  // Accepts a candidate incumbent after re-checking rows, bounds, cuts, and
  // integrality.  A violated candidate is a callback or solver bug.
  auto offer = [&](const std::vector<double>& x, double obj, const char* src, std::int64_t id) {
    std::string where;
    double viol = residual(prob, base_lb, base_ub, x, &where);
    if (viol > 1e-7)
      throw std::logic_error("solve_mip: node " + std::to_string(id) + " candidate from " + src +
                             " violates the relaxation by " + std::to_string(viol) + " at " +
                             where);
    for (int j : ints)
      if (frac_dist(x[j]) > params.int_tol)
        throw std::logic_error("solve_mip: node " + std::to_string(id) + " candidate from " + src +
                               " is not integral");
    if (!has_inc || obj < inc_obj - 1e-12) {
      has_inc = true;
      inc_obj = obj;
      inc_x = x;
    }
  };

  auto prune_slack = [&] {
    return has_inc ? params.abs_gap + params.rel_gap * std::fabs(inc_obj) : 0.0;
  };

  // Open list: min-heap on (bound, sequence id); ids give FIFO tie-breaks.
  std::deque<Node> pool;
  using Key = std::pair<std::pair<double, std::int64_t>, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> open;
  std::int64_t next_id = 0;
  auto push_node = [&](Node nd) {
    int slot = static_cast<int>(pool.size());
    double b = nd.bound;
    pool.push_back(std::move(nd));
    open.push({{b, next_id++}, slot});
  };
  push_node(Node{});

  MipStatus stop_status = MipStatus::kOptimal;
  bool stopped = false;

  while (!open.empty()) {
    auto [key, slot] = open.top();
    open.pop();
    Node nd = std::move(pool[slot]);
    const std::int64_t id = key.second;
    global_bound = std::max(global_bound, key.first);
    res.bound_trace.push_back(global_bound);

    if (has_inc && inc_obj - global_bound <= params.abs_gap + params.rel_gap * std::fabs(inc_obj)) {
      stopped = true;
      stop_status = MipStatus::kOptimal;
      break;
    }
    if (params.node_limit >= 0 && res.nodes >= params.node_limit) {
      stopped = true;
      stop_status = MipStatus::kNodeLimit;
      break;
    }
    if (elapsed() > params.time_limit) {
      stopped = true;
      stop_status = MipStatus::kTimeLimit;
      break;
    }
    ++res.nodes;

    for (size_t k = 0; k < nd.tight_col.size(); ++k) {
      prob.lb[nd.tight_col[k]] = nd.tight[k][0];
      prob.ub[nd.tight_col[k]] = nd.tight[k][1];
    }
    auto restore = [&] {
      for (int c : nd.tight_col) {
        prob.lb[c] = base_lb[c];
        prob.ub[c] = base_ub[c];
      }
    };

    auto lp_solve = [&](const lp::Basis* warm) {
      lp::Solution s = backend->solve(prob, warm);
      if (s.status == lp::Status::kIterLimit || s.status == lp::Status::kNumerical)
        s = backend->solve(prob, nullptr);
      res.lp_iterations += s.iterations;
      if (s.status == lp::Status::kUnbounded)
        throw std::runtime_error("solve_mip: relaxation unbounded at node " + std::to_string(id));
      if (s.status != lp::Status::kOptimal && s.status != lp::Status::kInfeasible)
        throw std::runtime_error("solve_mip: lp backend failed at node " + std::to_string(id) +
                                 " (" + lp::to_string(s.status) + ")");
      return s;
    };

    lp::Solution sol = lp_solve(nd.basis.empty() ? nullptr : &nd.basis);
    bool pruned = sol.status == lp::Status::kInfeasible;
    double obj = 0.0;
    bool integral = false, design_integral = false;

    auto classify = [&] {
      obj = sol.obj + model.obj_offset;
      integral = design_integral = true;
      for (int j : ints)
        if (frac_dist(sol.x[j]) > params.int_tol) {
          integral = false;
          if (model.vars[j].branch_class == 0) {
            design_integral = false;
            break;
          }
        }
    };
    if (!pruned) classify();

    // Fractional separation rounds, root node only.
    if (!pruned && id == 0 && cb.separate && !integral) {
      for (int round = 0; round < params.root_cut_rounds; ++round) {
        NodeView view{sol.x, obj, id, integral, design_integral};
        std::vector<CutRow> cuts = cb.separate(view);
        if (cuts.empty()) break;
        append_cuts(cuts);
        lp::Basis wb = sol.basis;
        sol = lp_solve(&wb);
        if (sol.status == lp::Status::kInfeasible) {
          pruned = true;
          break;
        }
        classify();
        if (integral) break;
      }
    }

    // Lazy separation at integer-feasible candidates.
    if (!pruned && cb.separate) {
      int rounds = 0;
      while (integral) {
        if (rounds++ >= params.node_cut_rounds) {
          // Round budget exhausted: requeue and keep the bound.
          Node again;
          again.bound = std::max(nd.bound, obj);
          again.tight = nd.tight;
          again.tight_col = nd.tight_col;
          again.basis = sol.basis;
          push_node(std::move(again));
          pruned = true;
          break;
        }
        NodeView view{sol.x, obj, id, integral, design_integral};
        std::vector<CutRow> cuts = cb.separate(view);
        if (cuts.empty()) break;
        append_cuts(cuts);
        lp::Basis wb = sol.basis;
        sol = lp_solve(&wb);
        if (sol.status == lp::Status::kInfeasible) {
          pruned = true;
          break;
        }
        classify();
        if (elapsed() > params.time_limit) {
          pruned = true;  // discard: the time check at the next pop stops the run
          break;
        }
      }
    }

    if (!pruned) {
      bool finished = false;
      if (design_integral && cb.finish) {
        NodeView view{sol.x, obj, id, integral, design_integral};
        std::vector<double> xf;
        double objf = 0.0;
        if (cb.finish(view, xf, objf)) {
          offer(xf, objf, "finish", id);
          finished = true;
        }
      }
      if (integral) {
        if (!finished) offer(sol.x, obj, "lp", id);
        pruned = true;  // integral relaxation optimum: node fully explored
      } else if (has_inc && obj >= inc_obj - prune_slack()) {
        pruned = true;
      } else {
        // Branch: most fractional variable of the lowest fractional class.
        int pick = -1, pick_class = 0;
        double pick_score = -1.0;
        for (int j : ints) {
          double d = frac_dist(sol.x[j]);
          if (d <= params.int_tol) continue;
          int cls = model.vars[j].branch_class;
          if (pick >= 0 && cls > pick_class) continue;
          if (pick < 0 || cls < pick_class || d > pick_score + 1e-12) {
            pick = j;
            pick_class = cls;
            pick_score = d;
          }
        }
        double child_bound = std::max(nd.bound, obj);
        for (int side = 0; side < 2; ++side) {
          Node child;
          child.bound = child_bound;
          child.tight = nd.tight;
          child.tight_col = nd.tight_col;
          child.basis = sol.basis;
          child.tight_col.push_back(pick);
          if (side == 0)
            child.tight.push_back({prob.lb[pick], std::floor(sol.x[pick])});
          else
            child.tight.push_back({std::ceil(sol.x[pick]), prob.ub[pick]});
          push_node(std::move(child));
        }
      }
    }

    restore();
    if (params.log)
      std::fprintf(stderr, "node %lld bound %.9g incumbent %s cuts %d open %zu\n",
                   static_cast<long long>(id), global_bound,
                   has_inc ? std::to_string(inc_obj).c_str() : "-", res.cuts, open.size());
  }

  if (!stopped) {
    stop_status = has_inc ? MipStatus::kOptimal : MipStatus::kInfeasible;
    global_bound = has_inc ? inc_obj : kInf;
  } else if (stop_status == MipStatus::kNodeLimit && has_inc) {
    stop_status = MipStatus::kFeasible;
  }

  res.status = stop_status;
  res.has_incumbent = has_inc;
  res.obj = inc_obj;
  // The open-list minimum can overshoot the incumbent once the subtrees
  // around it are pruned; the proven global bound never exceeds the optimum.
  res.bound = has_inc ? std::min(global_bound, inc_obj) : global_bound;
  res.seconds = elapsed();
  if (has_inc) {
    // The returned incumbent must satisfy every row and cut of the final
    // relaxation; a violation here means some later cut was invalid.
    double viol = residual(prob, base_lb, base_ub, inc_x);
    if (viol > 1e-7)
      throw std::logic_error("solve_mip: final incumbent violates an appended cut by " +
                             std::to_string(viol));
    res.x = std::move(inc_x);
  }
  return res;
}

}  // namespace centdian
