#include "dsim/lp.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace dsim {

std::string Tag::str() const {
  const char* names[] = {"",        "balance", "soc_tr",    "ramp_d", "ramp_c",
                         "cap_d",   "cap_c",   "soc_limit", "x"};
  std::ostringstream os;
  os << names[kind];
  if (i >= 0 || t >= 0 || k >= 0) {
    os << '[';
    bool first = true;
    if (i >= 0) { os << 'i' << i; first = false; }
    if (t >= 0) { os << (first ? "" : ",") << 't' << t; first = false; }
    if (k >= 0) { os << (first ? "" : ",") << 'k' << k; }
    os << ']';
  }
  return os.str();
}

std::int32_t LinearProgram::add_variable(double lb, double ub, double cost, Tag tag) {
  vars_.push_back({lb, ub, cost, tag});
  return static_cast<std::int32_t>(vars_.size()) - 1;
}

std::int32_t LinearProgram::add_row(double lb, double ub, std::vector<std::int32_t> cols,
                                    std::vector<double> vals, Tag tag) {
  rows_.push_back({lb, ub, std::move(cols), std::move(vals), tag});
  return static_cast<std::int32_t>(rows_.size()) - 1;
}

void LinearProgram::set_var_bounds(std::int32_t j, double lb, double ub) {
  vars_[j].lb = lb;
  vars_[j].ub = ub;
}

void LinearProgram::set_row_bounds(std::int32_t r, double lb, double ub) {
  rows_[r].lb = lb;
  rows_[r].ub = ub;
}

void LinearProgram::set_cost(std::int32_t j, double cost) { vars_[j].cost = cost; }

std::string LinearProgram::validate() const {
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    const auto& v = vars_[j];
    if (std::isnan(v.lb) || std::isnan(v.ub) || !std::isfinite(v.cost))
      return "variable " + std::to_string(j) + ": non-finite data";
    if (v.lb > v.ub) return "variable " + std::to_string(j) + ": lb > ub";
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const auto& row = rows_[r];
    if (row.cols.size() != row.vals.size())
      return "row " + std::to_string(r) + ": col/val size mismatch";
    if (std::isnan(row.lb) || std::isnan(row.ub) || row.lb > row.ub)
      return "row " + std::to_string(r) + ": bad bounds";
    std::set<std::int32_t> seen;
    for (std::size_t idx = 0; idx < row.cols.size(); ++idx) {
      const auto c = row.cols[idx];
      if (c < 0 || c >= static_cast<std::int32_t>(vars_.size()))
        return "row " + std::to_string(r) + ": column out of range";
      if (!seen.insert(c).second)
        return "row " + std::to_string(r) + ": duplicate column";
      if (!std::isfinite(row.vals[idx]))
        return "row " + std::to_string(r) + ": non-finite coefficient";
    }
  }
  return {};
}

namespace {
void append_num(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  out += buf;
}
}  // namespace

std::string LinearProgram::dump() const {
  std::string out = "minimize\n  obj:";
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    if (vars_[j].cost == 0.0) continue;
    out += vars_[j].cost >= 0 ? " + " : " - ";
    append_num(out, std::fabs(vars_[j].cost));
    out += " x" + std::to_string(j);
  }
  out += "\nsubject to\n";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const auto& row = rows_[r];
    out += "  " + (row.tag.kind != Tag::none ? row.tag.str() : "r" + std::to_string(r)) + ": ";
    if (row.lb == row.ub) {
      // equality
    } else if (std::isfinite(row.lb)) {
      append_num(out, row.lb);
      out += " <= ";
    }
    for (std::size_t idx = 0; idx < row.cols.size(); ++idx) {
      out += row.vals[idx] >= 0 ? (idx ? " + " : "") : " - ";
      append_num(out, std::fabs(row.vals[idx]));
      out += " x" + std::to_string(row.cols[idx]);
    }
    if (row.lb == row.ub) {
      out += " = ";
      append_num(out, row.lb);
    } else if (std::isfinite(row.ub)) {
      out += " <= ";
      append_num(out, row.ub);
    }
    out += "\n";
  }
  out += "bounds\n";
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    out += "  ";
    append_num(out, vars_[j].lb);
    out += " <= x" + std::to_string(j) + " <= ";
    append_num(out, vars_[j].ub);
    if (vars_[j].tag.kind != Tag::none) out += "  \\ " + vars_[j].tag.str();
    out += "\n";
  }
  return out;
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
    case LpStatus::numerical_error: return "numerical_error";
  }
  return "?";
}

}  // namespace dsim
