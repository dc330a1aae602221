#pragma once

#include <vector>

#include "dflp/lp.hpp"

namespace dflp::detail {

/// Standard-form LP: min cost'y  s.t.  M y = rhs, y >= 0.
/// M is stored column-compressed; artificial columns are appended internally
/// by the solver and never appear here.
struct StdLP {
  int m = 0;  // rows
  int n = 0;  // columns
  std::vector<int> col_ptr;   // size n+1
  std::vector<int> row_ind;   // size nnz
  std::vector<double> val;    // size nnz
  std::vector<double> cost;   // size n
  std::vector<double> rhs;    // size m
};

struct StdResult {
  LPStatus status = LPStatus::Infeasible;
  std::vector<double> x;    // size n (Optimal only)
  std::vector<double> pi;   // row duals, size m (Optimal only)
  double objective = 0.0;
  long iterations = 0;
};

/// Two-phase revised simplex with a sparse-LU factored basis, product-form
/// eta updates and Dantzig pricing that falls back to Bland's rule whenever
/// the objective stalls (anti-cycling). Deterministic.
StdResult solve_standard_form(const StdLP& lp, long iter_cap);

}  // namespace dflp::detail
