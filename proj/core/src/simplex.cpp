#include "simplex.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "dflp/errors.hpp"

namespace dflp::detail {
namespace {

constexpr int kRefactorEvery = 100;
constexpr int kStallLimit = 25;        // stalled pivots before Bland engages
constexpr double kPhase1Tol = 1e-7;    // residual infeasibility threshold
constexpr double kRatioTie = 1e-9;

using SpMat = Eigen::SparseMatrix<double>;
using LU = Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>;

struct Eta {
  int r;
  Eigen::VectorXd w;  // B^{-1} * entering column at pivot time
};

class Simplex {
 public:
  Simplex(const StdLP& lp, long iter_cap) : lp_(lp), cap_(iter_cap) {
    m_ = lp.m;
    n_real_ = lp.n;
    n_total_ = n_real_ + m_;
    art_sign_.resize(m_);
    for (int i = 0; i < m_; ++i) art_sign_[i] = lp.rhs[i] >= 0.0 ? 1.0 : -1.0;
    basis_.resize(m_);
    in_basis_.assign(n_total_, 0);
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_real_ + i;
      in_basis_[n_real_ + i] = 1;
    }
    cost_.assign(n_total_, 0.0);
    rhs_vec_ = Eigen::Map<const Eigen::VectorXd>(lp.rhs.data(), m_);
    refactor();
  }

  StdResult run() {
    StdResult res;
    // Phase 1: minimize the sum of artificials.
    for (int j = 0; j < n_total_; ++j) cost_[j] = j >= n_real_ ? 1.0 : 0.0;
    LPStatus ph1 = optimize(/*phase=*/1);
    if (ph1 != LPStatus::Optimal)
      throw NumericalFailure("phase-1 simplex did not reach an optimum");
    if (objective_value() > kPhase1Tol * (1.0 + rhs_vec_.cwiseAbs().maxCoeff())) {
      res.status = LPStatus::Infeasible;
      res.iterations = iters_;
      return res;
    }
    drive_out_artificials();

    // Phase 2: minimize the real objective; artificials pinned at zero.
    for (int j = 0; j < n_total_; ++j) cost_[j] = j < n_real_ ? lp_.cost[j] : 0.0;
    LPStatus ph2 = optimize(/*phase=*/2);
    res.iterations = iters_;
    if (ph2 == LPStatus::Unbounded) {
      res.status = LPStatus::Unbounded;
      return res;
    }
    res.status = LPStatus::Optimal;
    res.x.assign(n_real_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_real_) res.x[basis_[i]] = x_b_[i];
    Eigen::VectorXd pi = btran(basic_costs());
    res.pi.assign(pi.data(), pi.data() + m_);
    res.objective = 0.0;
    for (int j = 0; j < n_real_; ++j) res.objective += lp_.cost[j] * res.x[j];
    return res;
  }

 private:
  Eigen::VectorXd basic_costs() const {
    Eigen::VectorXd cb(m_);
    for (int i = 0; i < m_; ++i) cb[i] = cost_[basis_[i]];
    return cb;
  }

  double objective_value() const {
    double v = 0.0;
    for (int i = 0; i < m_; ++i) v += cost_[basis_[i]] * x_b_[i];
    return v;
  }

  // Column j of [M | artificials] into dense scratch (returns sparse view).
  void column(int j, Eigen::VectorXd& out) const {
    out.setZero(m_);
    if (j < n_real_) {
      for (int k = lp_.col_ptr[j]; k < lp_.col_ptr[j + 1]; ++k)
        out[lp_.row_ind[k]] = lp_.val[k];
    } else {
      out[j - n_real_] = art_sign_[j - n_real_];
    }
  }

  double dot_column(int j, const Eigen::VectorXd& v) const {
    if (j < n_real_) {
      double s = 0.0;
      for (int k = lp_.col_ptr[j]; k < lp_.col_ptr[j + 1]; ++k)
        s += lp_.val[k] * v[lp_.row_ind[k]];
      return s;
    }
    return art_sign_[j - n_real_] * v[j - n_real_];
  }

  void refactor() {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(m_) * 4);
    for (int i = 0; i < m_; ++i) {
      int j = basis_[i];
      if (j < n_real_) {
        for (int k = lp_.col_ptr[j]; k < lp_.col_ptr[j + 1]; ++k)
          trips.emplace_back(lp_.row_ind[k], i, lp_.val[k]);
      } else {
        trips.emplace_back(j - n_real_, i, art_sign_[j - n_real_]);
      }
    }
    SpMat B(m_, m_);
    B.setFromTriplets(trips.begin(), trips.end());
    B.makeCompressed();
    lu_.compute(B);
    if (lu_.info() != Eigen::Success)
      throw NumericalFailure("singular simplex basis");
    etas_.clear();
    x_b_ = ftran(rhs_vec_);
  }

  Eigen::VectorXd ftran(const Eigen::VectorXd& v) const {
    Eigen::VectorXd x = lu_.solve(v);
    for (const Eta& e : etas_) {
      double xr = x[e.r] / e.w[e.r];
      x.noalias() -= e.w * xr;
      x[e.r] = xr;
    }
    return x;
  }

  Eigen::VectorXd btran(const Eigen::VectorXd& v) {
    Eigen::VectorXd y = v;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      const Eta& e = *it;
      double t = e.w.dot(y);
      y[e.r] = (y[e.r] - t + e.w[e.r] * y[e.r]) / e.w[e.r];
    }
    return lu_.transpose().solve(y);
  }

  int pick_entering(const Eigen::VectorXd& pi, bool bland) const {
    int best = -1;
    double best_red = -Tol::opt;
    for (int j = 0; j < n_real_; ++j) {  // artificials never re-enter
      if (in_basis_[j]) continue;
      double red = cost_[j] - dot_column(j, pi);
      if (red < -Tol::opt) {
        if (bland) return j;
        if (red < best_red) {
          best_red = red;
          best = j;
        }
      }
    }
    return best;
  }

  // Leaving row for entering direction w; -1 if no blocking row (unbounded).
  // In phase 2, basic artificials must stay at zero, so any movement in an
  // artificial row blocks at theta = 0.
  int pick_leaving(const Eigen::VectorXd& w, int phase, bool bland, double& theta) const {
    double best = kInf;
    std::vector<int> ties;
    for (int i = 0; i < m_; ++i) {
      double wi = w[i];
      bool artificial = basis_[i] >= n_real_;
      double ratio;
      if (phase == 2 && artificial && std::abs(wi) > Tol::pivot) {
        ratio = 0.0;
      } else if (wi > Tol::pivot) {
        ratio = std::max(x_b_[i], 0.0) / wi;
      } else {
        continue;
      }
      if (ratio < best - kRatioTie) {
        best = ratio;
        ties.clear();
        ties.push_back(i);
      } else if (ratio <= best + kRatioTie) {
        ties.push_back(i);
      }
    }
    if (ties.empty()) return -1;
    theta = std::max(best, 0.0);
    if (bland) {
      int r = ties[0];
      for (int i : ties)
        if (basis_[i] < basis_[r]) r = i;
      return r;
    }
    int r = ties[0];
    for (int i : ties)
      if (std::abs(w[i]) > std::abs(w[r])) r = i;
    return r;
  }

  void pivot(int enter, int leave_row, double theta, const Eigen::VectorXd& w) {
    x_b_.noalias() -= theta * w;
    x_b_[leave_row] = theta;
    in_basis_[basis_[leave_row]] = 0;
    in_basis_[enter] = 1;
    basis_[leave_row] = enter;
    etas_.push_back({leave_row, w});
    if (static_cast<int>(etas_.size()) >= kRefactorEvery) refactor();
  }

  LPStatus optimize(int phase) {
    bool bland = false;
    int stalled = 0;
    double last_obj = kInf;
    Eigen::VectorXd w(m_), col(m_);
    for (;;) {
      if (++iters_ > cap_)
        throw NumericalFailure("simplex iteration cap exceeded");
      Eigen::VectorXd pi = btran(basic_costs());
      int enter = pick_entering(pi, bland);
      if (enter < 0) return LPStatus::Optimal;
      column(enter, col);
      w = ftran(col);
      double theta = 0.0;
      int leave = pick_leaving(w, phase, bland, theta);
      if (leave < 0) {
        if (phase == 1)
          throw NumericalFailure("phase-1 subproblem reported unbounded");
        return LPStatus::Unbounded;
      }
      pivot(enter, leave, theta, w);
      double obj = objective_value();
      if (obj < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
        stalled = 0;
        bland = false;
      } else if (++stalled >= kStallLimit) {
        bland = true;
      }
      last_obj = obj;
    }
  }

  // After a feasible phase 1, swap basic artificials for real columns where
  // possible. Rows whose artificial cannot be replaced are redundant; the
  // artificial stays basic at zero with zero phase-2 cost.
  void drive_out_artificials() {
    Eigen::VectorXd unit(m_), w(m_), col(m_);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_real_) continue;
      unit.setZero(m_);
      unit[i] = 1.0;
      Eigen::VectorXd u = btran(unit);
      int found = -1;
      for (int j = 0; j < n_real_; ++j) {
        if (in_basis_[j]) continue;
        if (std::abs(dot_column(j, u)) > Tol::active) {
          found = j;
          break;
        }
      }
      if (found < 0) continue;
      column(found, col);
      w = ftran(col);
      if (std::abs(w[i]) <= Tol::pivot) continue;
      pivot(found, i, /*theta=*/0.0, w);
    }
  }

  const StdLP& lp_;
  long cap_;
  int m_ = 0, n_real_ = 0, n_total_ = 0;
  std::vector<double> art_sign_;
  std::vector<int> basis_;
  std::vector<char> in_basis_;
  std::vector<double> cost_;
  Eigen::VectorXd rhs_vec_;
  Eigen::VectorXd x_b_;
  LU lu_;
  std::vector<Eta> etas_;
  long iters_ = 0;
};

}  // namespace

StdResult solve_standard_form(const StdLP& lp, long iter_cap) {
  if (lp.m == 0) {
    // No rows: optimum is y = 0 unless some cost is negative (unbounded).
    StdResult res;
    for (int j = 0; j < lp.n; ++j) {
      if (lp.cost[j] < -Tol::opt) {
        res.status = LPStatus::Unbounded;
        return res;
      }
    }
    res.status = LPStatus::Optimal;
    res.x.assign(lp.n, 0.0);
    res.objective = 0.0;
    return res;
  }
  Simplex s(lp, iter_cap);
  return s.run();
}

}  // namespace dflp::detail
