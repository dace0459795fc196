#pragma once

// Dense revised simplex for  max c^T x  s.t.  A x = b, x >= 0.
//
// Two phases with one artificial per row. The basis inverse is kept
// explicitly, updated by eta pivots and refactorized periodically. Pricing is
// Dantzig (largest reduced cost); after a run of degenerate pivots it switches
// to Bland's rule until the objective moves again. Bland alone is not enough
// in floating point (reduced costs at noise level can cycle), so a long stall
// of the true objective also loosens the optimality tolerance tenfold.
// The right-hand side is first perturbed by a tiny seeded random amount so
// that primal degeneracy (rife in discrete minimax problems) mostly
// disappears; after the perturbed optimum is found the true b is restored and
// a few dual simplex steps repair feasibility. The duals depend on the basis
// only, so the perturbation never leaks into y. Every choice is index-ordered
// and the seed fixed, so runs are bit-reproducible.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebydev {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit, numerical_failure };

inline std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
    case LpStatus::numerical_failure: return "numerical_failure";
  }
  return "?";
}

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-11;
  double pivot_tol = 1e-11;
  double harris_tol = 1e-12;
  std::size_t max_iterations = 200000;
  std::size_t refactor_every = 32;
  std::size_t degenerate_switch = 40;
  double perturbation = 1e-8;  // relative size of the rhs perturbation, 0 disables it
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;  // primal, length n
  Eigen::VectorXd y;  // equality multipliers, length m: c_j - y^T a_j <= 0 at optimum
  std::vector<Eigen::Index> basis;
  std::size_t iterations = 0;
  std::size_t bland_pivots = 0;
  std::size_t tolerance_escalations = 0;  // optimality tolerance raised tenfold after a degenerate stall
  std::size_t cleanup_pivots = 0;         // dual simplex steps after removing the perturbation
};

namespace detail {

class RevisedSimplex {
 public:
  RevisedSimplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const LpOptions& opt)
      : A_(A), b_(b), opt_(opt), m_(A.rows()), n_(A.cols()) {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (b_[i] < 0) {
        A_.row(i) *= -1.0;
        b_[i] = -b_[i];
        flipped_.push_back(i);
      }
    }
    basis_.resize(static_cast<std::size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) basis_[static_cast<std::size_t>(i)] = n_ + i;
    binv_ = Eigen::MatrixXd::Identity(m_, m_);
    b_true_ = b_;
    if (opt_.perturbation > 0.0) {
      std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
      std::uniform_real_distribution<double> u(0.5, 1.5);
      for (Eigen::Index i = 0; i < m_; ++i) b_[i] += opt_.perturbation * (1.0 + b_[i]) * u(rng);
    }
    xb_ = b_;
  }

  LpResult solve(const Eigen::VectorXd& c) {
    LpResult res;
    // Phase 1: maximize -sum of artificials.
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(n_ + m_);
    c1.tail(m_).setConstant(-1.0);
    LpStatus s1 = run(c1, true, res);
    if (s1 == LpStatus::iteration_limit) {
      res.status = s1;
      return res;
    }
    double infeas = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] >= n_) infeas += xb_[i];
    }
    if (infeas > opt_.feasibility_tol * (1.0 + b_.lpNorm<Eigen::Infinity>())) {
      res.status = LpStatus::infeasible;
      return res;
    }
    drive_out_artificials();
    // Phase 2.
    Eigen::VectorXd c2 = Eigen::VectorXd::Zero(n_ + m_);
    c2.head(n_) = c;
    res.status = run(c2, false, res);
    if (res.status == LpStatus::optimal && opt_.perturbation > 0.0) {
      b_ = b_true_;
      refactor();
      res.status = dual_cleanup(c2, res);
    }
    res.x = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index j = basis_[static_cast<std::size_t>(i)];
      if (j < n_) res.x[j] = std::max(0.0, xb_[i]);
    }
    res.objective = c.dot(res.x);
    res.y = duals(c2);
    for (Eigen::Index i : flipped_) res.y[i] = -res.y[i];
    res.basis = basis_;
    return res;
  }

 private:
  Eigen::VectorXd column(Eigen::Index j) const {
    if (j < n_) return A_.col(j);
    return Eigen::VectorXd::Unit(m_, j - n_);
  }

  Eigen::VectorXd duals(const Eigen::VectorXd& cost) const {
    Eigen::VectorXd cb(m_);
    for (Eigen::Index i = 0; i < m_; ++i) cb[i] = cost[basis_[static_cast<std::size_t>(i)]];
    return binv_.transpose() * cb;
  }

  void refactor() {
    Eigen::MatrixXd B(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) B.col(i) = column(basis_[static_cast<std::size_t>(i)]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    binv_ = lu.inverse();
    xb_ = binv_ * b_;
  }

  void pivot(Eigen::Index r, Eigen::Index q, const Eigen::VectorXd& w) {
    const double wr = w[r];
    binv_.row(r) /= wr;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (i != r && w[i] != 0.0) binv_.row(i) -= w[i] * binv_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = q;
    in_basis_[static_cast<std::size_t>(q)] = true;
  }

  LpStatus run(const Eigen::VectorXd& cost, bool allow_artificial, LpResult& res) {
    in_basis_.assign(static_cast<std::size_t>(n_ + m_), false);
    for (Eigen::Index j : basis_) in_basis_[static_cast<std::size_t>(j)] = true;
    std::size_t since_refactor = 0, degenerate_run = 0;
    bool bland = false, verified = false;
    double objective = 0.0;
    double opt_tol = opt_.optimality_tol, checkpoint = -std::numeric_limits<double>::infinity();
    std::size_t stalled = 0;
    const std::size_t stall_limit = 50 * static_cast<std::size_t>(m_) + 200;
    const Eigen::Index ncols = allow_artificial ? n_ + m_ : n_;
    while (true) {
      if (res.iterations >= opt_.max_iterations) return LpStatus::iteration_limit;
      const Eigen::VectorXd y = duals(cost);
      // Reduced costs of the structural columns in one product.
      const Eigen::VectorXd d = cost.head(n_) - A_.transpose() * y;
      Eigen::Index q = -1;
      double best = 0.0, dq = 0.0;
      for (Eigen::Index j = 0; j < ncols; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)]) continue;
        const double dj = j < n_ ? d[j] : cost[j] - y[j - n_];
        if (dj <= opt_tol) continue;
        if (bland) {
          q = j;
          dq = dj;
          break;
        }
        if (dj > best) {
          best = dj;
          q = j;
          dq = dj;
        }
      }
      if (q < 0) {
        // Confirm optimality on a fresh factorization before stopping.
        if (since_refactor == 0 || verified) return LpStatus::optimal;
        refactor();
        since_refactor = 0;
        verified = true;
        continue;
      }
      verified = false;
      const Eigen::VectorXd w = binv_ * column(q);
      // Harris ratio test: pass one bounds the step with slightly relaxed
      // bounds, pass two takes the largest pivot inside that bound.
      const double wtol = std::max(opt_.pivot_tol, 1e-7 * w.cwiseAbs().maxCoeff());
      double bound = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (w[i] > wtol) bound = std::min(bound, (std::max(0.0, xb_[i]) + opt_.harris_tol) / w[i]);
      }
      Eigen::Index r = -1;
      if (bland) {
        // Textbook minimum ratio, ties to the smallest basic index.
        double best_ratio = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m_; ++i) {
          if (w[i] <= wtol) continue;
          const double t = std::max(0.0, xb_[i]) / w[i];
          if (t < best_ratio || (t == best_ratio && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(r)])) {
            best_ratio = t;
            r = i;
          }
        }
      } else {
        for (Eigen::Index i = 0; i < m_; ++i) {
          if (w[i] <= wtol || std::max(0.0, xb_[i]) / w[i] > bound) continue;
          if (r < 0 || w[i] > w[r]) r = i;
        }
      }
      if (r < 0) return LpStatus::unbounded;
      const double theta = std::max(0.0, xb_[r]) / w[r];
      if (bland) ++res.bland_pivots;
      // Degenerate when the objective does not move measurably.
      const double gain = theta * dq;
      if (gain <= 1e-13 * (1.0 + std::abs(objective))) {
        if (++degenerate_run >= opt_.degenerate_switch) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      objective += gain;
      xb_ -= theta * w;
      xb_[r] = theta;
      for (Eigen::Index i = 0; i < m_; ++i) xb_[i] = std::max(0.0, xb_[i]);
      in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = false;
      pivot(r, q, w);
      ++res.iterations;
      if (++since_refactor >= opt_.refactor_every) {
        refactor();
        since_refactor = 0;
      }
      // Bland's rule only guarantees termination in exact arithmetic.  With
      // reduced costs at noise level the clamp on xb can feed a cycle whose
      // true objective never moves; after a long stall treat those reduced
      // costs as zero.
      double true_obj = 0.0;
      for (Eigen::Index i = 0; i < m_; ++i) true_obj += cost[basis_[static_cast<std::size_t>(i)]] * xb_[i];
      if (true_obj > checkpoint + 1e-12 * (1.0 + std::abs(checkpoint))) {
        checkpoint = true_obj;
        stalled = 0;
      } else if (!allow_artificial && ++stalled >= stall_limit && opt_tol < 1e-7) {
        opt_tol *= 10.0;
        stalled = 0;
        ++res.tolerance_escalations;
      }
    }
  }

  // Dual simplex on a dual feasible basis until xb >= 0 again.
  LpStatus dual_cleanup(const Eigen::VectorXd& cost, LpResult& res) {
    const double tol = opt_.feasibility_tol * (1.0 + b_.lpNorm<Eigen::Infinity>());
    std::size_t since_refactor = 0;
    const std::size_t limit = 20 * static_cast<std::size_t>(m_) + 100;
    for (std::size_t step = 0;; ++step) {
      if (!binv_.allFinite()) return LpStatus::numerical_failure;
      Eigen::Index r = -1;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (xb_[i] < -tol && (r < 0 || xb_[i] < xb_[r])) r = i;
      }
      if (r < 0) break;
      if (step >= limit) return LpStatus::iteration_limit;
      const Eigen::VectorXd y = duals(cost);
      const Eigen::VectorXd alpha = A_.transpose() * binv_.row(r).transpose();
      double amax = 0.0;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (!in_basis_[static_cast<std::size_t>(j)]) amax = std::max(amax, -alpha[j]);
      }
      const double atol = std::max(opt_.pivot_tol, 1e-7 * amax);
      Eigen::Index q = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)] || alpha[j] >= -atol) continue;
        const double dj = std::min(0.0, cost[j] - A_.col(j).dot(y));
        const double ratio = dj / alpha[j];
        if (ratio < best || (ratio == best && alpha[j] < alpha[q])) {
          best = ratio;
          q = j;
        }
      }
      if (q < 0) return LpStatus::infeasible;
      const Eigen::VectorXd w = binv_ * column(q);
      const double theta = xb_[r] / w[r];
      xb_ -= theta * w;
      xb_[r] = theta;
      in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = false;
      pivot(r, q, w);
      ++res.iterations;
      ++res.cleanup_pivots;
      if (++since_refactor >= opt_.refactor_every) {
        refactor();
        since_refactor = 0;
      }
    }
    refactor();
    if (!binv_.allFinite()) return LpStatus::numerical_failure;
    return LpStatus::optimal;
  }

  void drive_out_artificials() {
    in_basis_.assign(static_cast<std::size_t>(n_ + m_), false);
    for (Eigen::Index j : basis_) in_basis_[static_cast<std::size_t>(j)] = true;
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < n_) continue;
      const Eigen::VectorXd row = A_.transpose() * binv_.row(r).transpose();
      Eigen::Index q = -1;
      double best = 1e-9;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)]) continue;
        if (std::abs(row[j]) > best) {
          best = std::abs(row[j]);
          q = j;
        }
      }
      if (q < 0) continue;  // redundant row; the artificial stays at zero
      const Eigen::VectorXd w = binv_ * column(q);
      in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = false;
      pivot(r, q, w);
    }
    refactor();
  }

  Eigen::MatrixXd A_;
  Eigen::VectorXd b_, b_true_;
  LpOptions opt_;
  Eigen::Index m_, n_;
  std::vector<Eigen::Index> flipped_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> in_basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
};

}  // namespace detail

inline LpResult solve_lp_max(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                             const LpOptions& opt = {}) {
  if (A.rows() != b.size() || A.cols() != c.size()) throw std::invalid_argument("LP dimensions do not agree");
  detail::RevisedSimplex rs(A, b, opt);
  LpResult r = rs.solve(c);
  // Redundant rows turn inconsistent under the perturbation; so can a basis
  // that went singular. Both get one exact retry.
  if (opt.perturbation > 0.0 && (r.status == LpStatus::infeasible || r.status == LpStatus::numerical_failure)) {
    LpOptions plain = opt;
    plain.perturbation = 0.0;
    detail::RevisedSimplex exact(A, b, plain);
    LpResult r2 = exact.solve(c);
    r2.iterations += r.iterations;
    return r2;
  }
  return r;
}

}  // namespace chebydev
