#include "centdian/model.hpp"

#include <cmath>
#include <ostream>
#include <set>
#include <utility>

#include "centdian/instance.hpp"
#include "centdian/network.hpp"

namespace centdian {

int Model::add_var(std::string vname, double obj, double lb, double ub, bool integer,
                   int branch_class) {
  vars.push_back(ModelVar{std::move(vname), obj, lb, ub, integer, branch_class});
  return num_vars() - 1;
}

int Model::add_row(std::string rname, double lo, double hi, std::vector<int> cols,
                   std::vector<double> vals) {
  rows.push_back(ModelRow{std::move(rname), lo, hi, std::move(cols), std::move(vals)});
  return num_rows() - 1;
}

std::vector<int> Model::integer_vars() const {
  std::vector<int> ids;
  for (int j = 0; j < num_vars(); ++j)
    if (vars[j].integer) ids.push_back(j);
  return ids;
}

lp::Problem Model::to_lp() const {
  lp::Problem p;
  for (const ModelVar& v : vars) p.add_col(v.obj, v.lb, v.ub);
  for (const ModelRow& r : rows) p.add_row(r.lo, r.hi, r.cols, r.vals);
  return p;
}

void Model::audit() const {
  auto fail = [this](const std::string& msg) {
    throw ValidationError("model '" + name + "': " + msg);
  };
  for (int j = 0; j < num_vars(); ++j) {
    const ModelVar& v = vars[j];
    if (std::isnan(v.obj) || std::isnan(v.lb) || std::isnan(v.ub))
      fail("NaN in variable " + v.name);
    if (std::isinf(v.obj)) fail("infinite objective coefficient on " + v.name);
    if (v.lb > v.ub) fail("empty bound interval on " + v.name);
    if (v.integer && (v.lb < 0.0 || v.ub > 1.0))
      fail("integer variable " + v.name + " is not binary");
  }
  for (int i = 0; i < num_rows(); ++i) {
    const ModelRow& r = rows[i];
    if (r.cols.size() != r.vals.size()) fail("ragged row " + r.name);
    if (std::isnan(r.lo) || std::isnan(r.hi) || r.lo > r.hi) fail("bad bounds on row " + r.name);
    if (r.lo == -kInf && r.hi == kInf) fail("vacuous row " + r.name);
    std::set<int> seen;
    for (std::size_t k = 0; k < r.cols.size(); ++k) {
      int j = r.cols[k];
      if (j < 0 || j >= num_vars()) fail("column out of range in row " + r.name);
      if (!seen.insert(j).second) fail("duplicate column in row " + r.name);
      if (!std::isfinite(r.vals[k])) fail("non-finite coefficient in row " + r.name);
    }
  }
}

void Model::write_mps(std::ostream& out) const {
  out << "NAME " << name << "\n";
  out << "ROWS\n N OBJ\n";
  for (const ModelRow& r : rows) {
    char sense;
    if (r.lo == r.hi)
      sense = 'E';
    else if (r.lo == -kInf)
      sense = 'L';
    else
      sense = 'G';  // G also covers two-sided rows, completed by RANGES
    out << ' ' << sense << ' ' << r.name << "\n";
  }

  // column-major entries in variable order, rows in creation order
  std::vector<std::vector<std::pair<int, double>>> bycol(num_vars());
  for (int i = 0; i < num_rows(); ++i)
    for (std::size_t k = 0; k < rows[i].cols.size(); ++k)
      bycol[rows[i].cols[k]].emplace_back(i, rows[i].vals[k]);

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int j = 0; j < num_vars(); ++j) {
    const ModelVar& v = vars[j];
    if (v.integer != in_int) {
      out << "    MARKER" << marker++ << " 'MARKER' " << (v.integer ? "'INTORG'" : "'INTEND'")
          << "\n";
      in_int = v.integer;
    }
    if (v.obj != 0.0) out << "    " << v.name << " OBJ " << fmt_double(v.obj) << "\n";
    for (auto [i, a] : bycol[j])
      out << "    " << v.name << ' ' << rows[i].name << ' ' << fmt_double(a) << "\n";
  }
  if (in_int) out << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";

  out << "RHS\n";
  if (obj_offset != 0.0) out << "    RHS OBJ " << fmt_double(-obj_offset) << "\n";
  for (const ModelRow& r : rows) {
    double rhs = r.lo == -kInf ? r.hi : r.lo;
    if (rhs != 0.0) out << "    RHS " << r.name << ' ' << fmt_double(rhs) << "\n";
  }

  bool any_range = false;
  for (const ModelRow& r : rows)
    if (r.lo != r.hi && r.lo != -kInf && r.hi != kInf) any_range = true;
  if (any_range) {
    out << "RANGES\n";
    for (const ModelRow& r : rows)
      if (r.lo != r.hi && r.lo != -kInf && r.hi != kInf)
        out << "    RNG " << r.name << ' ' << fmt_double(r.hi - r.lo) << "\n";
  }

  out << "BOUNDS\n";
  for (const ModelVar& v : vars) {
    if (v.integer && v.lb == 0.0 && v.ub == 1.0) {
      out << " BV BND " << v.name << "\n";
      continue;
    }
    if (v.lb == -kInf && v.ub == kInf) {
      out << " FR BND " << v.name << "\n";
      continue;
    }
    if (v.lb == -kInf)
      out << " MI BND " << v.name << "\n";
    else if (v.lb != 0.0)
      out << " LO BND " << v.name << ' ' << fmt_double(v.lb) << "\n";
    if (v.ub != kInf) out << " UP BND " << v.name << ' ' << fmt_double(v.ub) << "\n";
  }
  out << "ENDATA\n";
}

}  // namespace centdian
