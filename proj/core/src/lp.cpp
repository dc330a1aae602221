#include "dflp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "simplex.hpp"

namespace dflp {
namespace {

bool finite(double x) { return std::isfinite(x); }

// How each original variable is expressed in the standard-form kernel.
struct VarMap {
  enum class Mode { Shifted, Negated, Split, Fixed } mode;
  double ref = 0.0;  // lower bound, upper bound, or fixed value
  int col0 = -1, col1 = -1;
};

struct Lowering {
  detail::StdLP std_lp;
  std::vector<VarMap> vars;
  std::vector<RowSense> row_sense;      // per kernel row
  std::vector<int> synth_var;           // var index of each synthetic upper row
  int n_orig_rows = 0;
  double obj_offset = 0.0;
};

Lowering lower(const LPProblem& lp) {
  Lowering low;
  low.n_orig_rows = static_cast<int>(lp.rows.size());
  low.vars.resize(lp.n_vars);

  for (int j = 0; j < lp.n_vars; ++j) {
    double l = lp.var_lower[j], u = lp.var_upper[j];
    VarMap& vm = low.vars[j];
    if (finite(l) && finite(u) && u - l <= 0.0) {
      vm.mode = VarMap::Mode::Fixed;
      vm.ref = l;
    } else if (finite(l)) {
      vm.mode = VarMap::Mode::Shifted;
      vm.ref = l;
      if (finite(u)) low.synth_var.push_back(j);
    } else if (finite(u)) {
      vm.mode = VarMap::Mode::Negated;
      vm.ref = u;
    } else {
      vm.mode = VarMap::Mode::Split;
    }
  }

  const int m = low.n_orig_rows + static_cast<int>(low.synth_var.size());
  detail::StdLP& s = low.std_lp;
  s.m = m;
  s.rhs.assign(m, 0.0);
  low.row_sense.resize(m);

  // Kernel rows: original rows, then one LE row per two-sided variable.
  std::vector<std::vector<std::pair<int, double>>> col_terms;  // per kernel column
  std::vector<double> col_cost;
  std::vector<std::vector<std::pair<int, double>>> var_rows(lp.n_vars);

  auto ingest_row = [&](int krow, const std::vector<std::pair<int, double>>& terms,
                        RowSense sense, double rhs) {
    low.row_sense[krow] = sense;
    double adj = rhs;
    for (auto [j, a] : terms) {
      const VarMap& vm = low.vars[j];
      switch (vm.mode) {
        case VarMap::Mode::Shifted:
          adj -= a * vm.ref;
          var_rows[j].emplace_back(krow, a);
          break;
        case VarMap::Mode::Negated:
          adj -= a * vm.ref;
          var_rows[j].emplace_back(krow, -a);
          break;
        case VarMap::Mode::Fixed:
          adj -= a * vm.ref;
          break;
        case VarMap::Mode::Split:
          var_rows[j].emplace_back(krow, a);
          break;
      }
    }
    s.rhs[krow] = adj;
  };

  for (int i = 0; i < low.n_orig_rows; ++i)
    ingest_row(i, lp.rows[i].terms, lp.rows[i].sense, lp.rows[i].rhs);
  for (size_t k = 0; k < low.synth_var.size(); ++k) {
    int j = low.synth_var[k];
    ingest_row(low.n_orig_rows + static_cast<int>(k), {{j, 1.0}}, RowSense::LE,
               lp.var_upper[j]);
  }

  for (int j = 0; j < lp.n_vars; ++j) {
    VarMap& vm = low.vars[j];
    double c = lp.objective[j];
    switch (vm.mode) {
      case VarMap::Mode::Fixed:
        low.obj_offset += c * vm.ref;
        break;
      case VarMap::Mode::Shifted:
        vm.col0 = static_cast<int>(col_terms.size());
        col_terms.push_back(var_rows[j]);
        col_cost.push_back(c);
        low.obj_offset += c * vm.ref;
        break;
      case VarMap::Mode::Negated:
        vm.col0 = static_cast<int>(col_terms.size());
        col_terms.push_back(var_rows[j]);  // coefficients already negated
        col_cost.push_back(-c);
        low.obj_offset += c * vm.ref;
        break;
      case VarMap::Mode::Split: {
        vm.col0 = static_cast<int>(col_terms.size());
        col_terms.push_back(var_rows[j]);
        col_cost.push_back(c);
        vm.col1 = static_cast<int>(col_terms.size());
        std::vector<std::pair<int, double>> neg = var_rows[j];
        for (auto& t : neg) t.second = -t.second;
        col_terms.push_back(std::move(neg));
        col_cost.push_back(-c);
        break;
      }
    }
  }

  // Logical columns: surplus for GE, slack for LE.
  for (int i = 0; i < m; ++i) {
    if (low.row_sense[i] == RowSense::EQ) continue;
    double sign = low.row_sense[i] == RowSense::GE ? -1.0 : 1.0;
    col_terms.push_back({{i, sign}});
    col_cost.push_back(0.0);
  }

  s.n = static_cast<int>(col_terms.size());
  s.cost = std::move(col_cost);
  s.col_ptr.assign(s.n + 1, 0);
  size_t nnz = 0;
  for (const auto& ct : col_terms) nnz += ct.size();
  s.row_ind.reserve(nnz);
  s.val.reserve(nnz);
  for (int jc = 0; jc < s.n; ++jc) {
    for (auto [r, a] : col_terms[jc]) {
      s.row_ind.push_back(r);
      s.val.push_back(a);
    }
    s.col_ptr[jc + 1] = static_cast<int>(s.row_ind.size());
  }
  return low;
}

}  // namespace

LPProblem LPProblem::make(int n_vars) {
  if (n_vars <= 0) throw MalformedProblem("LPProblem needs at least one variable");
  LPProblem lp;
  lp.n_vars = n_vars;
  lp.objective = Eigen::VectorXd::Zero(n_vars);
  lp.var_lower = Eigen::VectorXd::Constant(n_vars, -kInf);
  lp.var_upper = Eigen::VectorXd::Constant(n_vars, kInf);
  return lp;
}

void LPProblem::add_row(LPRow row) {
  for (auto [j, a] : row.terms) {
    if (j < 0 || j >= n_vars)
      throw MalformedProblem("row term references variable " + std::to_string(j));
    (void)a;
  }
  rows.push_back(std::move(row));
}

void LPProblem::add_row(const Eigen::VectorXd& coeffs, RowSense sense, double rhs) {
  if (coeffs.size() != n_vars)
    throw MalformedProblem("row coefficient vector has length " +
                           std::to_string(coeffs.size()) + ", expected " +
                           std::to_string(n_vars));
  LPRow r;
  r.sense = sense;
  r.rhs = rhs;
  for (int j = 0; j < n_vars; ++j)
    if (coeffs[j] != 0.0) r.terms.emplace_back(j, coeffs[j]);
  rows.push_back(std::move(r));
}

void LPProblem::add_row_terms(std::vector<std::pair<int, double>> terms, RowSense sense,
                              double rhs) {
  LPRow r;
  r.terms = std::move(terms);
  r.sense = sense;
  r.rhs = rhs;
  add_row(std::move(r));
}

void LPProblem::validate() const {
  if (n_vars <= 0) throw MalformedProblem("no variables");
  if (objective.size() != n_vars || var_lower.size() != n_vars ||
      var_upper.size() != n_vars)
    throw MalformedProblem("objective/bound vectors do not match n_vars");
  for (int j = 0; j < n_vars; ++j)
    if (!std::isfinite(objective[j]))
      throw MalformedProblem("non-finite objective coefficient");
  for (const LPRow& row : rows) {
    if (!std::isfinite(row.rhs)) throw MalformedProblem("non-finite rhs");
    for (auto [j, a] : row.terms) {
      if (j < 0 || j >= n_vars)
        throw MalformedProblem("row term references variable " + std::to_string(j));
      if (!std::isfinite(a)) throw MalformedProblem("non-finite row coefficient");
    }
  }
}

int canonical_row_count(const LPProblem& lp) {
  int m = 0;
  for (const LPRow& row : lp.rows) m += row.sense == RowSense::EQ ? 2 : 1;
  for (int j = 0; j < lp.n_vars; ++j) {
    if (finite(lp.var_lower[j])) ++m;
    if (finite(lp.var_upper[j])) ++m;
  }
  return m;
}

CanonicalForm canonicalize(const LPProblem& lp) {
  lp.validate();
  CanonicalForm cf;
  const int m = canonical_row_count(lp);
  cf.A = Eigen::MatrixXd::Zero(m, lp.n_vars);
  cf.b = Eigen::VectorXd::Zero(m);
  cf.origins.reserve(m);
  int r = 0;
  for (int i = 0; i < static_cast<int>(lp.rows.size()); ++i) {
    const LPRow& row = lp.rows[i];
    switch (row.sense) {
      case RowSense::GE:
        for (auto [j, a] : row.terms) cf.A(r, j) += a;
        cf.b[r] = row.rhs;
        cf.origins.push_back({CanonicalRowKind::Structural, i});
        ++r;
        break;
      case RowSense::LE:
        for (auto [j, a] : row.terms) cf.A(r, j) -= a;
        cf.b[r] = -row.rhs;
        cf.origins.push_back({CanonicalRowKind::Structural, i});
        ++r;
        break;
      case RowSense::EQ:
        for (auto [j, a] : row.terms) cf.A(r, j) += a;
        cf.b[r] = row.rhs;
        cf.origins.push_back({CanonicalRowKind::EqPos, i});
        ++r;
        for (auto [j, a] : row.terms) cf.A(r, j) -= a;
        cf.b[r] = -row.rhs;
        cf.origins.push_back({CanonicalRowKind::EqNeg, i});
        ++r;
        break;
    }
  }
  for (int j = 0; j < lp.n_vars; ++j) {
    if (finite(lp.var_lower[j])) {
      cf.A(r, j) = 1.0;
      cf.b[r] = lp.var_lower[j];
      cf.origins.push_back({CanonicalRowKind::LowerBound, j});
      ++r;
    }
    if (finite(lp.var_upper[j])) {
      cf.A(r, j) = -1.0;
      cf.b[r] = -lp.var_upper[j];
      cf.origins.push_back({CanonicalRowKind::UpperBound, j});
      ++r;
    }
  }
  return cf;
}

LPSolution solve(const LPProblem& lp) {
  lp.validate();
  LPSolution sol;
  for (int j = 0; j < lp.n_vars; ++j) {
    if (lp.var_lower[j] > lp.var_upper[j] + Tol::feas) {
      sol.status = LPStatus::Infeasible;
      return sol;
    }
  }

  Lowering low = lower(lp);
  const long cap = 50L * (canonical_row_count(lp) + lp.n_vars);
  detail::StdResult kr = detail::solve_standard_form(low.std_lp, cap);
  sol.status = kr.status;
  sol.iterations = kr.iterations;
  if (kr.status != LPStatus::Optimal) return sol;

  // Primal.
  sol.primal.resize(lp.n_vars);
  for (int j = 0; j < lp.n_vars; ++j) {
    const VarMap& vm = low.vars[j];
    switch (vm.mode) {
      case VarMap::Mode::Shifted: sol.primal[j] = vm.ref + kr.x[vm.col0]; break;
      case VarMap::Mode::Negated: sol.primal[j] = vm.ref - kr.x[vm.col0]; break;
      case VarMap::Mode::Split:   sol.primal[j] = kr.x[vm.col0] - kr.x[vm.col1]; break;
      case VarMap::Mode::Fixed:   sol.primal[j] = vm.ref; break;
    }
  }
  sol.objective = lp.objective.dot(sol.primal);

  // Duals on canonical rows. Structural rows map straight from the kernel
  // duals (LE rows negate, EQ rows split into a nonnegative pair); bound-row
  // duals come from the objective residual c - A' rho over structural rows.
  Eigen::VectorXd residual = lp.objective;
  for (int i = 0; i < low.n_orig_rows; ++i) {
    double pi = kr.pi[i];
    for (auto [j, a] : lp.rows[i].terms) residual[j] -= pi * a;
  }
  std::vector<double> synth_upper_dual(lp.n_vars, 0.0);
  for (size_t k = 0; k < low.synth_var.size(); ++k) {
    int j = low.synth_var[k];
    double pi = kr.pi[low.n_orig_rows + static_cast<int>(k)];
    synth_upper_dual[j] = -pi;  // canonical upper row is -v_j >= -u_j
    residual[j] -= pi;
  }

  const int m_canon = canonical_row_count(lp);
  sol.dual.resize(m_canon);
  int r = 0;
  for (int i = 0; i < low.n_orig_rows; ++i) {
    double pi = kr.pi[i];
    switch (lp.rows[i].sense) {
      case RowSense::GE: sol.dual[r++] = pi; break;
      case RowSense::LE: sol.dual[r++] = -pi; break;
      case RowSense::EQ:
        sol.dual[r++] = std::max(pi, 0.0);
        sol.dual[r++] = std::max(-pi, 0.0);
        break;
    }
  }
  for (int j = 0; j < lp.n_vars; ++j) {
    const bool has_l = finite(lp.var_lower[j]);
    const bool has_u = finite(lp.var_upper[j]);
    if (has_l) sol.dual[r++] = std::max(residual[j], 0.0);
    if (has_u) {
      if (low.vars[j].mode == VarMap::Mode::Shifted)
        sol.dual[r++] = synth_upper_dual[j];
      else
        sol.dual[r++] = std::max(-residual[j], 0.0);
    }
  }

  // Active canonical rows at the primal point.
  r = 0;
  for (int i = 0; i < low.n_orig_rows; ++i) {
    const LPRow& row = lp.rows[i];
    double lhs = 0.0;
    for (auto [j, a] : row.terms) lhs += a * sol.primal[j];
    bool tight = std::abs(lhs - row.rhs) <= Tol::active;
    if (row.sense == RowSense::EQ) {
      if (tight) {
        sol.active_rows.push_back(r);
        sol.active_rows.push_back(r + 1);
      }
      r += 2;
    } else {
      if (tight) sol.active_rows.push_back(r);
      ++r;
    }
  }
  for (int j = 0; j < lp.n_vars; ++j) {
    if (finite(lp.var_lower[j])) {
      if (std::abs(sol.primal[j] - lp.var_lower[j]) <= Tol::active)
        sol.active_rows.push_back(r);
      ++r;
    }
    if (finite(lp.var_upper[j])) {
      if (std::abs(sol.primal[j] - lp.var_upper[j]) <= Tol::active)
        sol.active_rows.push_back(r);
      ++r;
    }
  }
  return sol;
}

bool assert_bounded_nonempty(const LPProblem& lp) {
  LPProblem probe = lp;
  probe.objective.setZero();
  if (solve(probe).status != LPStatus::Optimal) return false;
  for (int j = 0; j < lp.n_vars; ++j) {
    for (double dir : {1.0, -1.0}) {
      probe.objective.setZero();
      probe.objective[j] = dir;
      if (solve(probe).status == LPStatus::Unbounded) return false;
    }
  }
  return true;
}

}  // namespace dflp
