#pragma once

// Best uniform approximation E_n(f; Omega) = inf_{deg p <= n} max |f - p|.
//
// discrete_minimax solves the problem on a point set as a linear program.
// The LP is stated in dual form, one column per point and sign:
//   max sum_i (u_i - v_i) f(x_i)
//   s.t. sum_i (u_i - v_i) phi_k(x_i) = 0 for every basis function,
//        sum_i (u_i + v_i) = 1,  u, v >= 0,
// whose optimal u - v is a discrete extremal signature and whose simplex
// multipliers are the approximant coefficients and the deviation.
// remez_exchange adds the continuum maxima of the residual and re-solves.

#include "chebydev/constructions.hpp"
#include "chebydev/domain.hpp"
#include "chebydev/evaluator.hpp"
#include "chebydev/lp.hpp"
#include "chebydev/parallel.hpp"
#include "chebydev/poly.hpp"
#include "chebydev/signatures.hpp"
#include "chebydev/supnorm.hpp"
#include "chebydev/symfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chebydev {

enum class BasisKind { full, symmetric, even, even_symmetric };

inline std::string to_string(BasisKind k) {
  switch (k) {
    case BasisKind::full: return "full";
    case BasisKind::symmetric: return "symmetric";
    case BasisKind::even: return "even";
    case BasisKind::even_symmetric: return "even-symmetric";
  }
  return "?";
}

inline BasisKind parse_basis_kind(const std::string& s) {
  if (s == "full") return BasisKind::full;
  if (s == "symmetric") return BasisKind::symmetric;
  if (s == "even") return BasisKind::even;
  if (s == "even-symmetric" || s == "even_symmetric") return BasisKind::even_symmetric;
  throw std::invalid_argument("unknown basis kind '" + s + "'");
}

struct NamedBasis {
  BasisKind kind = BasisKind::full;
  std::vector<QPoly> functions;
  std::vector<std::string> names;
};

namespace detail {

inline std::string exponent_name(const Exponents& e) {
  std::string s = "x^(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

inline std::string partition_name(const std::string& head, const std::vector<unsigned>& lambda) {
  std::string s = head + "[";
  for (std::size_t i = 0; i < lambda.size(); ++i) s += (i ? "," : "") + std::to_string(lambda[i]);
  return s + "]";
}

// Products e_1^{k_1} ... e_d^{k_d} of weighted degree sum i k_i <= n, with
// the factors in `skip` left out. With squared = true the e_i are taken in
// x_1^2, ..., x_d^2 and the weighted degree doubles.
inline void elementary_products(unsigned n, unsigned d, const std::vector<unsigned>& skip, bool squared,
                                NamedBasis& out) {
  std::vector<QPoly> e(d + 1);
  for (unsigned i = 1; i <= d; ++i) {
    e[i] = elementary_symmetric<Rational>(i, d);
    if (squared) {
      std::vector<QPoly> sq;
      for (unsigned j = 0; j < d; ++j) {
        Exponents ex(d, 0U);
        ex[j] = 2;
        sq.push_back(QPoly::monomial(ex));
      }
      e[i] = compose(e[i], sq);
    }
  }
  const unsigned w = squared ? 2 : 1;
  std::vector<unsigned> k(d + 1, 0U);
  std::vector<std::pair<unsigned, std::vector<unsigned>>> found;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
    if (i > d) {
      found.emplace_back(n - left, k);
      return;
    }
    const bool skipped = std::find(skip.begin(), skip.end(), i) != skip.end();
    for (unsigned c = 0; (skipped ? c == 0 : c * i * w <= left); ++c) {
      k[i] = c;
      rec(i + 1, left - c * i * w);
      if (skipped) break;
    }
    k[i] = 0;
  };
  rec(1, n);
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [deg, ks] : found) {
    QPoly p = QPoly::constant(d, 1);
    std::string name;
    for (unsigned i = 1; i <= d; ++i) {
      if (ks[i] == 0) continue;
      p *= e[i].pow(ks[i]);
      if (!name.empty()) name += "*";
      name += "e" + std::to_string(i) + (squared ? "(x^2)" : "");
      if (ks[i] > 1) name += "^" + std::to_string(ks[i]);
    }
    out.functions.push_back(std::move(p));
    out.names.push_back(name.empty() ? "1" : name);
  }
}

}  // namespace detail

/// Basis of the degree-n polynomials in d variables that are invariant under
/// the chosen group: all monomials, monomial symmetric functions m_lambda,
/// even monomials x^(2 beta), or m_lambda with all parts even.
inline NamedBasis invariant_basis(unsigned n, unsigned d, BasisKind kind) {
  NamedBasis b;
  b.kind = kind;
  const bool even = kind == BasisKind::even || kind == BasisKind::even_symmetric;
  if (kind == BasisKind::full || kind == BasisKind::even) {
    for (const auto& e : monomials_up_to(n, d)) {
      if (even && std::any_of(e.begin(), e.end(), [](unsigned v) { return v % 2 != 0; })) continue;
      b.functions.push_back(QPoly::monomial(e));
      b.names.push_back(detail::exponent_name(e));
    }
    return b;
  }
  for (unsigned k = 0; k <= n; ++k) {
    for (const auto& lambda : partitions(k, d)) {
      if (even && std::any_of(lambda.begin(), lambda.end(), [](unsigned v) { return v % 2 != 0; })) continue;
      b.functions.push_back(monomial_symmetric<Rational>(lambda, d));
      b.names.push_back(detail::partition_name("m", lambda));
    }
  }
  return b;
}

/// The basis restricted to a domain on which it would be dependent: on the
/// sphere sum x_i^2 = 1, on the simplex face sum x_i = 1. Each reduction
/// keeps the span of the restrictions and drops exactly the relation.
inline NamedBasis domain_basis(unsigned n, const Domain& dom, BasisKind kind) {
  const unsigned d = dom.dim;
  if (dom.kind == DomainKind::simplex || dom.kind == DomainKind::ball || d == 1) return invariant_basis(n, d, kind);
  NamedBasis b;
  b.kind = kind;
  if (dom.kind == DomainKind::sphere) {
    switch (kind) {
      case BasisKind::full:
      case BasisKind::even: {
        const bool even = kind == BasisKind::even;
        for (const auto& e : monomials_up_to(n, d)) {
          if (even && std::any_of(e.begin(), e.end(), [](unsigned v) { return v % 2 != 0; })) continue;
          if (even ? e[d - 1] != 0 : e[d - 1] > 1) continue;
          b.functions.push_back(QPoly::monomial(e));
          b.names.push_back(detail::exponent_name(e));
        }
        return b;
      }
      case BasisKind::symmetric: detail::elementary_products(n, d, {2}, false, b); return b;
      case BasisKind::even_symmetric: detail::elementary_products(n, d, {1}, true, b); return b;
    }
  }
  // simplex face
  switch (kind) {
    case BasisKind::full:
      for (const auto& e : monomials_up_to(n, d)) {
        if (e[d - 1] != 0) continue;
        b.functions.push_back(QPoly::monomial(e));
        b.names.push_back(detail::exponent_name(e));
      }
      return b;
    case BasisKind::symmetric: detail::elementary_products(n, d, {1}, false, b); return b;
    default: return invariant_basis(n, d, kind);
  }
}

/// Symmetric when f is, even when every exponent is even on a domain that is
/// symmetric under sign changes.
inline BasisKind auto_basis(const FPoly& f, const Domain& dom) {
  const bool sym = dom.dim > 1 && is_symmetric(f);
  bool even = dom.kind == DomainKind::ball || dom.kind == DomainKind::sphere;
  for (const auto& [e, c] : f.terms()) {
    for (unsigned v : e) {
      if (v % 2 != 0) even = false;
    }
  }
  if (sym && even) return BasisKind::even_symmetric;
  if (sym) return BasisKind::symmetric;
  if (even) return BasisKind::even;
  return BasisKind::full;
}

class RankDeficientBasis : public std::runtime_error {
 public:
  RankDeficientBasis(std::string function, std::size_t index)
      : std::runtime_error("basis function '" + function + "' is linearly dependent on the earlier ones over the grid"),
        function_(std::move(function)),
        index_(index) {}
  const std::string& function() const { return function_; }
  std::size_t index() const { return index_; }

 private:
  std::string function_;
  std::size_t index_;
};

/// Modified Gram-Schmidt with one re-orthogonalization pass over the columns
/// of Phi; throws on the first column whose remainder falls below rel_tol of
/// its norm.
inline void check_basis_rank(const Eigen::MatrixXd& Phi, const std::vector<std::string>& names, double rel_tol = 1e-9) {
  std::vector<Eigen::VectorXd> q;
  for (Eigen::Index k = 0; k < Phi.cols(); ++k) {
    Eigen::VectorXd v = Phi.col(k);
    const double norm0 = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : q) v -= u.dot(v) * u;
    }
    const double r = v.norm();
    if (norm0 == 0.0 || r <= rel_tol * norm0) throw RankDeficientBasis(names[static_cast<std::size_t>(k)], static_cast<std::size_t>(k));
    q.push_back(v / r);
  }
}

struct ApproxProblem {
  FPoly target;
  unsigned degree = 0;  // approximants have total degree <= degree
  Domain domain;
  BasisKind basis = BasisKind::full;
  unsigned grid = 16;
};

struct Extremum {
  std::vector<double> x;
  int sign = 1;        // sign of f - p
  double weight = 0.0; // dual weight
};

struct RemezOptions {
  unsigned max_iter = 60;
  double gap_tol = 1e-9;          // relative to the deviation
  double change_tol = 1e-10;      // stop when neither bound moves more than this (relative)
  unsigned refine_resolution = 12;
  unsigned patience = 8;          // stop once the best gap has not improved for this many iterations
  bool strict = true;             // second-stage LP picking a strict approximation on the optimal face
  SearchOptions search;
};

struct ApproxResult {
  BasisKind basis = BasisKind::full;
  std::vector<std::string> basis_names;
  std::vector<double> coefficients;  // over basis_names
  FPoly approximant;                  // in the original coordinates
  double deviation = 0.0;             // LP value: lower bound for E
  double deviation_upper = 0.0;       // sup of |f - p| over the continuum (grid only for discrete_minimax)
  bool continuum_checked = false;
  std::vector<Extremum> residual_extrema;
  std::size_t grid_points = 0;
  std::size_t lp_points = 0;
  std::size_t lp_iterations = 0;
  std::size_t active_points = 0;          // |f - p| >= deviation (1 - 1e-8) on the LP points
  double slackness_violation = 0.0;       // max over dual support of | |f - p| - deviation |
  double dual_annihilation = 0.0;         // max_k |sum_i w_i s_i phi_k(x_i)|
  unsigned iterations = 0;
  bool converged = false;
  bool warning = false;
  bool gap_monotone = true;
  std::vector<std::pair<double, double>> history;  // (lower, upper) per iteration
  std::string message;
};

namespace detail {

// Simplex domains are rescaled to [-1, 1]^d through u = 2x - 1 when that
// keeps the span (full and symmetric bases).
inline bool use_scaling(const Domain& dom, BasisKind kind) {
  return dom.kind == DomainKind::simplex && (kind == BasisKind::full || kind == BasisKind::symmetric);
}

struct CompiledBasis {
  NamedBasis named;
  std::vector<CompiledPoly> compiled;
  bool scaled = false;

  CompiledBasis(NamedBasis b, bool scale) : named(std::move(b)), scaled(scale) {
    for (const auto& f : named.functions) compiled.emplace_back(f);
  }
  std::size_t size() const { return compiled.size(); }

  void eval_row(const std::vector<double>& x, double* out) const {
    std::vector<double> u = x;
    if (scaled) {
      for (double& v : u) v = 2.0 * v - 1.0;
    }
    for (std::size_t k = 0; k < compiled.size(); ++k) out[k] = compiled[k].value(u);
  }

  // sum_k c_k phi_k(2x - 1) (or phi_k(x)) expanded in x.
  FPoly expand(const std::vector<double>& c, std::size_t nvars) const {
    std::vector<FPoly> subs;
    for (std::size_t i = 0; i < nvars; ++i) {
      FPoly s = FPoly::variable(nvars, i);
      if (scaled) s = 2.0 * s - FPoly::constant(nvars, 1.0);
      subs.push_back(std::move(s));
    }
    FPoly p(nvars);
    for (std::size_t k = 0; k < compiled.size(); ++k) {
      if (c[k] == 0.0) continue;
      const FPoly f = named.functions[k].to_float();
      p += c[k] * (scaled ? compose(f, subs) : f);
    }
    return p;
  }

  // Coefficients of p over the unscaled basis: every basis function here is
  // a sum of monomials with disjoint supports, so read one representative.
  std::vector<double> unscaled_coefficients(const FPoly& p) const {
    std::vector<double> out;
    for (const auto& f : named.functions) {
      const auto& [e, c] = *f.terms().rbegin();
      out.push_back(p.coefficient(e) / to_double(c));
    }
    return out;
  }
};

struct DiscreteSolve {
  double t = 0.0;
  std::vector<double> coef;  // over the (possibly scaled) basis
  std::vector<Extremum> extrema;
  std::size_t lp_iterations = 0;
  double dual_annihilation = 0.0;
};

// The discrete optimum is often a whole face of coefficient vectors, and an
// arbitrary vertex of it can overshoot badly between grid points. Second
// stage: keep every residual within t(1 + 1e-10) and minimize the largest
// residual off the first-stage support (a strict approximation).
inline void strict_refine(DiscreteSolve& out, const Eigen::MatrixXd& Phi, const Eigen::VectorXd& f,
                          const LpResult& first, double fscale) {
  const Eigen::Index N = Phi.rows(), K = Phi.cols();
  std::vector<Eigen::Index> off;
  for (Eigen::Index i = 0; i < N; ++i) {
    if (std::abs(first.x[i] - first.x[N + i]) <= 1e-14) off.push_back(i);
  }
  if (off.empty()) return;
  const double T = first.y[K] * (1.0 + 1e-10);
  const auto M = static_cast<Eigen::Index>(off.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(K + 1, 2 * M + 2 * N);
  Eigen::VectorXd c(2 * M + 2 * N);
  for (Eigen::Index k = 0; k < M; ++k) {
    const Eigen::Index i = off[static_cast<std::size_t>(k)];
    A.col(k).head(K) = Phi.row(i).transpose();
    A.col(M + k).head(K) = -Phi.row(i).transpose();
    A(K, k) = A(K, M + k) = 1.0;
    c[k] = f[i];
    c[M + k] = -f[i];
  }
  A.block(0, 2 * M, K, N) = Phi.transpose();
  A.block(0, 2 * M + N, K, N) = -Phi.transpose();
  c.segment(2 * M, N) = f.array() - T;
  c.tail(N) = -f.array() - T;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(K + 1);
  b[K] = 1.0;
  const LpResult lp = solve_lp_max(A, b, c);
  out.lp_iterations += lp.iterations;
  if (lp.status != LpStatus::optimal || !lp.y.allFinite()) return;  // keep the first-stage vertex
  const Eigen::VectorXd coef = lp.y.head(K);
  if (((f - Phi * coef).cwiseAbs().maxCoeff()) > T * (1.0 + 1e-9)) return;
  for (Eigen::Index k = 0; k < K; ++k) out.coef[static_cast<std::size_t>(k)] = coef[k] * fscale;
}

inline DiscreteSolve solve_discrete(const CompiledPoly& f, const CompiledBasis& basis,
                                    const std::vector<std::vector<double>>& pts, bool check_rank,
                                    bool strict = false) {
  const auto N = static_cast<Eigen::Index>(pts.size());
  const auto K = static_cast<Eigen::Index>(basis.size());
  if (N == 0) throw std::invalid_argument("empty point set");
  Eigen::MatrixXd Phi(N, K);
  Eigen::VectorXd fv(N);
  parallel_for(pts.size(), [&](std::size_t i) {
    std::vector<double> row(static_cast<std::size_t>(K));
    basis.eval_row(pts[i], row.data());
    for (Eigen::Index k = 0; k < K; ++k) Phi(static_cast<Eigen::Index>(i), k) = row[static_cast<std::size_t>(k)];
    fv[static_cast<Eigen::Index>(i)] = f.value(pts[i]);
  });
  if (check_rank) check_basis_rank(Phi, basis.named.names);
  Eigen::MatrixXd A(K + 1, 2 * N);
  A.topLeftCorner(K, N) = Phi.transpose();
  A.topRightCorner(K, N) = -Phi.transpose();
  A.row(K).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(K + 1);
  b[K] = 1.0;
  // Solve for f / max|f| so the LP tolerances are relative.
  double fscale = fv.lpNorm<Eigen::Infinity>();
  if (fscale == 0.0) fscale = 1.0;
  Eigen::VectorXd c(2 * N);
  c.head(N) = fv / fscale;
  c.tail(N) = -fv / fscale;
  const LpResult lp = solve_lp_max(A, b, c);
  if (lp.status != LpStatus::optimal) throw std::runtime_error("minimax LP ended " + to_string(lp.status));
  DiscreteSolve out;
  out.t = lp.y[K] * fscale;
  out.coef.resize(static_cast<std::size_t>(K));
  for (Eigen::Index k = 0; k < K; ++k) out.coef[static_cast<std::size_t>(k)] = lp.y[k] * fscale;
  out.lp_iterations = lp.iterations;
  Eigen::VectorXd signed_w = lp.x.head(N) - lp.x.tail(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    const double w = signed_w[i];
    if (std::abs(w) <= 1e-14) continue;
    out.extrema.push_back({pts[static_cast<std::size_t>(i)], w > 0 ? 1 : -1, std::abs(w)});
  }
  out.dual_annihilation = (Phi.transpose() * signed_w).lpNorm<Eigen::Infinity>();
  if (strict) strict_refine(out, Phi, c.head(N), lp, fscale);
  return out;
}

inline void fill_result(ApproxResult& r, const DiscreteSolve& s, const CompiledBasis& basis, const CompiledPoly& f,
                        const std::vector<std::vector<double>>& pts, unsigned nvars) {
  r.basis = basis.named.kind;
  r.basis_names = basis.named.names;
  r.approximant = basis.expand(s.coef, nvars);
  r.coefficients = basis.scaled ? basis.unscaled_coefficients(r.approximant) : s.coef;
  r.deviation = s.t;
  r.residual_extrema = s.extrema;
  r.lp_points = pts.size();
  r.lp_iterations += s.lp_iterations;
  r.dual_annihilation = s.dual_annihilation;
  // Complementary slackness on the LP data.
  const CompiledPoly p(r.approximant);
  std::vector<double> res(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { res[i] = f.value(pts[i]) - p.value(pts[i]); });
  r.active_points = 0;
  double grid_max = 0.0;
  for (double v : res) {
    grid_max = std::max(grid_max, std::abs(v));
    if (std::abs(v) >= s.t * (1.0 - 1e-8)) ++r.active_points;
  }
  r.slackness_violation = 0.0;
  for (const auto& e : s.extrema) {
    const double v = f.value(e.x) - p.value(e.x);
    r.slackness_violation = std::max(r.slackness_violation, std::abs(v - e.sign * s.t));
  }
  r.deviation_upper = grid_max;
}

inline std::vector<std::vector<double>> approx_grid(const Domain& dom, unsigned m) { return sample_domain(dom, m); }

}  // namespace detail

/// One LP over the domain grid.
inline ApproxResult discrete_minimax(const ApproxProblem& prob) {
  if (prob.target.nvars() != prob.domain.dim) throw std::invalid_argument("target arity does not match domain");
  const detail::CompiledBasis basis(domain_basis(prob.degree, prob.domain, prob.basis),
                                    detail::use_scaling(prob.domain, prob.basis));
  const auto pts = detail::approx_grid(prob.domain, prob.grid);
  const CompiledPoly f(prob.target);
  ApproxResult r;
  const auto s = detail::solve_discrete(f, basis, pts, true);
  detail::fill_result(r, s, basis, f, pts, prob.domain.dim);
  r.grid_points = pts.size();
  r.iterations = 1;
  r.converged = true;
  r.history.emplace_back(r.deviation, r.deviation_upper);
  return r;
}

/// Exchange iterations: solve on the current points, find the continuum
/// maxima of |f - p| by critical point search, adjoin the ones at or above
/// the current level, and repeat until sup - LP <= gap_tol * LP.
inline ApproxResult remez_exchange(const ApproxProblem& prob, const RemezOptions& opt = {}) {
  if (prob.target.nvars() != prob.domain.dim) throw std::invalid_argument("target arity does not match domain");
  const detail::CompiledBasis basis(domain_basis(prob.degree, prob.domain, prob.basis),
                                    detail::use_scaling(prob.domain, prob.basis));
  auto pts = detail::approx_grid(prob.domain, prob.grid);
  const std::size_t grid_points = pts.size();
  const CompiledPoly f(prob.target);
  SearchOptions search = opt.search;
  search.symmetric = search.symmetric ||
                     ((prob.basis == BasisKind::symmetric || prob.basis == BasisKind::even_symmetric) &&
                      is_symmetric(prob.target));

  ApproxResult best, cur;
  double best_upper = std::numeric_limits<double>::infinity();
  double prev_t = -1.0, prev_upper = -1.0, prev_gap = std::numeric_limits<double>::infinity();
  bool monotone = true;
  unsigned stalls = 0, since_best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> history;
  std::size_t lp_iters = 0;
  for (unsigned it = 1; it <= opt.max_iter; ++it) {
    const auto s = detail::solve_discrete(f, basis, pts, it == 1, opt.strict);
    cur = ApproxResult();
    detail::fill_result(cur, s, basis, f, pts, prob.domain.dim);
    lp_iters += s.lp_iterations;
    const FPoly g = prob.target - cur.approximant;
    const auto sup = sup_norm(g, prob.domain, opt.refine_resolution, search);
    const double upper = std::max(sup.value, cur.deviation_upper);
    cur.deviation_upper = upper;
    cur.continuum_checked = true;
    cur.iterations = it;
    const double gap = upper - cur.deviation;
    history.emplace_back(cur.deviation, upper);
    if (gap > prev_gap * (1 + 1e-12) + 1e-16) monotone = false;
    prev_gap = std::min(prev_gap, gap);
    if (upper < best_upper) {
      best_upper = upper;
      best = cur;
    }
    if (gap <= opt.gap_tol * std::max(cur.deviation, 1e-300) + 1e-15) {
      cur.converged = true;
      break;
    }
    // Past the floating point floor the gap only jitters.
    if (gap < 0.5 * best_gap) {
      best_gap = gap;
      since_best = 0;
    } else if (++since_best >= opt.patience) {
      cur.message = "gap stopped shrinking";
      break;
    }
    // Adjoin critical points near or above the current level.
    std::size_t added = 0;
    const double thr = cur.deviation * (1.0 - 1e-3);
    std::vector<std::vector<double>> cand;
    for (const auto& c : sup.critical_points) {
      if (std::abs(c.value) >= thr) cand.push_back(c.x);
    }
    if (std::abs(sup.value) >= thr) cand.push_back(sup.argmax);
    for (auto& x : cand) {
      bool dup = false;
      for (std::size_t i = grid_points; i < pts.size() && !dup; ++i) dup = detail::distance(pts[i], x) < 1e-12;
      if (!dup) {
        pts.push_back(std::move(x));
        ++added;
      }
    }
    if (added == 0) {
      cur.message = "no new points at the level";
      break;
    }
    // Stalled: neither bound moves.
    const double scale = std::max(cur.deviation, 1e-300);
    const bool stalled = it > 1 && std::abs(cur.deviation - prev_t) < opt.change_tol * scale &&
                         std::abs(upper - prev_upper) < opt.change_tol * scale;
    stalls = stalled ? stalls + 1 : 0;
    prev_t = cur.deviation;
    prev_upper = upper;
    if (stalls >= 3) {
      cur.message = "deviation stalled";
      break;
    }
  }
  const std::string why = cur.message;
  ApproxResult& out = cur.converged ? cur : best;
  if (!cur.converged) {
    out.warning = true;
    out.message = why.empty() ? "exchange stopped before the gap closed" : why;
  }
  out.history = history;
  out.iterations = static_cast<unsigned>(history.size());
  out.gap_monotone = monotone;
  out.grid_points = grid_points;
  out.lp_iterations = lp_iters;
  return out;
}

// ---------------------------------------------------------------------------
// Simplex and ball

struct CorrespondenceReport {
  std::vector<unsigned> alpha;
  ApproxResult simplex;
  ApproxResult ball;
  double difference = 0.0;  // ball deviation minus simplex deviation
};

/// E(x^alpha; T^d) from degree |alpha| - 1 against E(x^(2 alpha); B^d) from
/// degree 2|alpha| - 1. The substitution x -> (x_1^2, ..., x_d^2) maps B^d
/// onto T^d, so the two numbers should agree.
inline CorrespondenceReport verify_correspondence(const std::vector<unsigned>& alpha, unsigned grid,
                                                  const RemezOptions& opt = {}) {
  const unsigned d = static_cast<unsigned>(alpha.size());
  unsigned order = 0;
  for (unsigned a : alpha) order += a;
  if (order < 1) throw std::invalid_argument("|alpha| must be >= 1");
  const bool sym = std::all_of(alpha.begin(), alpha.end(), [&](unsigned a) { return a == alpha[0]; });
  Exponents two(alpha.begin(), alpha.end());
  for (auto& v : two) v *= 2;
  CorrespondenceReport rep;
  rep.alpha = alpha;
  ApproxProblem ps{FPoly::monomial(Exponents(alpha.begin(), alpha.end())), order - 1, Domain::simplex(d),
                   sym ? BasisKind::symmetric : BasisKind::full, grid};
  ApproxProblem pb{FPoly::monomial(two), 2 * order - 1, Domain::ball(d),
                   sym ? BasisKind::even_symmetric : BasisKind::even, grid};
  rep.simplex = remez_exchange(ps, opt);
  rep.ball = remez_exchange(pb, opt);
  rep.difference = rep.ball.deviation - rep.simplex.deviation;
  return rep;
}

struct MixedMonomialReport {
  unsigned k = 0, n = 0;
  ApproxResult result;
  double expected = 0.0;  // 2^(1-n)
  double difference = 0.0;
};

/// E(x_1^k x_2^(n-k); B^3) from degree n - 1, against 2^(1-n).
inline MixedMonomialReport ball_mixed_monomial_check(unsigned k, unsigned n, unsigned grid = 16,
                                                     const RemezOptions& opt = {}) {
  if (k < 1 || k + 1 > n || n > 4) throw std::invalid_argument("need 1 <= k <= n - 1 and n <= 4");
  MixedMonomialReport rep;
  rep.k = k;
  rep.n = n;
  ApproxProblem p{FPoly::monomial(Exponents{k, n - k, 0}), n - 1, Domain::ball(3), BasisKind::full, grid};
  rep.result = remez_exchange(p, opt);
  rep.expected = std::ldexp(1.0, 1 - static_cast<int>(n));
  rep.difference = rep.result.deviation - rep.expected;
  return rep;
}

}  // namespace chebydev
