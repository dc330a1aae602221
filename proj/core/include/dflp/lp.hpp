#pragma once

#include <Eigen/Dense>
#include <limits>
#include <utility>
#include <vector>

#include "dflp/errors.hpp"

namespace dflp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Solver tolerances. Feasibility and optimality are enforced at 1e-9;
/// active-set detection is looser to absorb accumulated pivot error.
struct Tol {
  static constexpr double feas = 1e-9;
  static constexpr double opt = 1e-9;
  static constexpr double active = 1e-7;
  static constexpr double pivot = 1e-9;
};

enum class RowSense { GE, LE, EQ };

/// One linear constraint, coefficients stored sparsely as (var, coeff) terms.
struct LPRow {
  std::vector<std::pair<int, double>> terms;
  RowSense sense = RowSense::GE;
  double rhs = 0.0;
};

/// A linear program in minimization sense:
///   min c'v  s.t.  rows (>=, <=, =),  var_lower <= v <= var_upper.
struct LPProblem {
  int n_vars = 0;
  Eigen::VectorXd objective;   // length n_vars
  std::vector<LPRow> rows;
  Eigen::VectorXd var_lower;   // -inf allowed
  Eigen::VectorXd var_upper;   // +inf allowed

  static LPProblem make(int n_vars);

  void add_row(LPRow row);
  void add_row(const Eigen::VectorXd& coeffs, RowSense sense, double rhs);
  void add_row_terms(std::vector<std::pair<int, double>> terms, RowSense sense,
                     double rhs);

  /// Throws MalformedProblem on dimension mismatches or bad indices.
  void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

/// Provenance of a canonical row: a structural row of the original problem
/// (GE as-is, LE negated, EQ split into a GE pair) or a lifted variable bound.
enum class CanonicalRowKind { Structural, EqPos, EqNeg, LowerBound, UpperBound };

struct CanonicalRowOrigin {
  CanonicalRowKind kind;
  int index;  // original row index, or variable index for bound rows
};

/// The pure "A v >= b" form: LE rows negated, EQ rows split into GE pairs,
/// finite variable bounds lifted into rows. Canonicalizing an LPProblem that
/// is already in this shape is the identity.
struct CanonicalForm {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<CanonicalRowOrigin> origins;

  int n_rows() const { return static_cast<int>(A.rows()); }
  int n_vars() const { return static_cast<int>(A.cols()); }
};

CanonicalForm canonicalize(const LPProblem& lp);

/// Number of canonical rows without materializing the matrix.
int canonical_row_count(const LPProblem& lp);

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Eigen::VectorXd primal;       // length n_vars, empty unless Optimal
  Eigen::VectorXd dual;         // aligned with canonical rows, >= 0, empty unless Optimal
  double objective = 0.0;
  std::vector<int> active_rows; // canonical rows tight at the primal point
  long iterations = 0;
};

/// Two-phase revised simplex. Deterministic: a fixed problem always yields
/// the same solution. Throws NumericalFailure if pivoting exceeds the
/// iteration cap 50*(canonical rows + vars) or a basis cannot be factored.
LPSolution solve(const LPProblem& lp);

/// True iff the feasible region is non-empty and bounded. Checked by a
/// feasibility solve followed by minimizing and maximizing each coordinate.
bool assert_bounded_nonempty(const LPProblem& lp);

}  // namespace dflp
