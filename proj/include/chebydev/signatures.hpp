#pragma once

// Extremal signatures: signed point sets with positive weights that annihilate
// a polynomial space, and the lower-bound certificate built on them. If
// sum_v lambda_v sigma(v) p(v) = 0 for every p of degree <= n and
// f - p* = sigma(v) r on the support, then no p of degree <= n does better
// than r on any domain containing the support.

#include "chebydev/constructions.hpp"
#include "chebydev/domain.hpp"
#include "chebydev/lp.hpp"
#include "chebydev/poly.hpp"
#include "chebydev/poly_json.hpp"
#include "chebydev/symfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebydev {

template <Field C>
using Point = std::vector<C>;

template <Field C>
struct SignedPointSet {
  std::vector<Point<C>> points;
  std::vector<int> signs;
  std::vector<C> weights;  // empty when no weights are attached

  std::size_t size() const { return points.size(); }
  bool has_weights() const { return !weights.empty(); }

  void add(Point<C> p, int sign, std::optional<C> weight = std::nullopt) {
    points.push_back(std::move(p));
    signs.push_back(sign);
    if (weight) weights.push_back(*weight);
  }

  /// Throws on parallel-list mismatch, bad signs, repeated points or
  /// non-positive weights.
  void validate() const {
    if (signs.size() != points.size()) throw std::invalid_argument("signs and points differ in length");
    if (has_weights() && weights.size() != points.size()) {
      throw std::invalid_argument("weights and points differ in length");
    }
    for (int s : signs) {
      if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
    }
    for (const auto& w : weights) {
      if (!(w > C(0))) throw std::invalid_argument("weights must be strictly positive");
    }
    std::vector<Point<C>> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("support points must be pairwise distinct");
    }
  }
};

template <Field C>
struct Certificate {
  Poly<C> target;
  Poly<C> candidate;
  C level{};
  unsigned degree = 0;
  SignedPointSet<C> support;
  Domain domain;
};

/// All distinct coordinate permutations of base, in ascending lex order.
template <Field C>
std::vector<Point<C>> orbit(Point<C> base) {
  std::sort(base.begin(), base.end());
  std::vector<Point<C>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

template <Field C>
struct ExtremalSets {
  std::vector<Point<C>> plus;
  std::vector<Point<C>> minus;
};

/// Orbits of a_j = (1/j,...,1/j,0,...,0): j with d - j even go to S_+, the
/// rest to S_-. T_d is +1 on the first and -1 on the second.
inline ExtremalSets<Rational> build_extremal_sets(unsigned d) {
  if (d < 3) throw std::invalid_argument("d must be >= 3");
  ExtremalSets<Rational> s;
  for (unsigned j = d; j >= 1; --j) {
    auto pts = orbit<Rational>(ladder_point(j, d));
    auto& dst = (d - j) % 2 == 0 ? s.plus : s.minus;
    dst.insert(dst.end(), pts.begin(), pts.end());
  }
  return s;
}

/// L = sum_j (-1)^(d-j) j^(d-1) sum over the a_j orbit of point evaluations.
inline SignedPointSet<Rational> build_L_functional(unsigned d) {
  if (d < 3) throw std::invalid_argument("d must be >= 3");
  SignedPointSet<Rational> L;
  for (unsigned j = d; j >= 1; --j) {
    const Rational w = rational_pow(Rational(j), d - 1);
    const int sign = (d - j) % 2 == 0 ? 1 : -1;
    for (auto& p : orbit<Rational>(ladder_point(j, d))) L.add(std::move(p), sign, w);
  }
  return L;
}

/// Exponents of all monomials of total degree <= n in d variables.
inline std::vector<Exponents> monomials_up_to(unsigned n, unsigned d) {
  std::vector<Exponents> out;
  detail::for_each_lattice(d, n, false, [&](const std::vector<unsigned>& a) { out.push_back(a); });
  std::sort(out.begin(), out.end(), GradedLex{});
  return out;
}

namespace detail {

template <Field C>
C eval_monomial(const Exponents& e, const Point<C>& x) {
  C v(1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (unsigned k = 0; k < e[i]; ++k) v *= x[i];
  }
  return v;
}

template <Field C>
double abs_value(const C& c) {
  return std::abs(to_double(c));
}

}  // namespace detail

struct AnnihilationReport {
  bool annihilates = false;
  double max_residual = 0.0;  // largest |L(x^alpha)|
  double scale = 0.0;         // sum of weights
  Exponents worst;
  std::size_t checked = 0;
};

/// L(x^alpha) for every |alpha| <= n. Exact data must vanish exactly; float
/// data within tol times the total weight.
template <Field C>
AnnihilationReport annihilation_report(const SignedPointSet<C>& L, unsigned n, unsigned d, double tol = 1e-10) {
  if (!L.has_weights()) throw std::invalid_argument("annihilation needs weights");
  AnnihilationReport rep;
  for (const auto& w : L.weights) rep.scale += detail::abs_value(w);
  bool exact_zero = true;
  for (const auto& e : monomials_up_to(n, d)) {
    C s(0);
    for (std::size_t v = 0; v < L.size(); ++v) {
      const C term = L.weights[v] * detail::eval_monomial(e, L.points[v]);
      s += L.signs[v] > 0 ? term : C(-term);
    }
    ++rep.checked;
    const double r = detail::abs_value(s);
    if (s != C(0)) exact_zero = false;
    if (r >= rep.max_residual) {
      rep.max_residual = r;
      rep.worst = e;
    }
  }
  if constexpr (is_exact_v<C>) {
    rep.annihilates = exact_zero;
  } else {
    rep.annihilates = rep.max_residual <= tol * rep.scale;
  }
  return rep;
}

template <Field C>
bool check_annihilation(const SignedPointSet<C>& L, unsigned n, unsigned d, double tol = 1e-10) {
  return annihilation_report(L, n, d, tol).annihilates;
}

/// Groups points by their sorted coordinates. Returns the orbit index of each point.
template <Field C>
std::vector<std::size_t> orbit_labels(const std::vector<Point<C>>& points, std::vector<Point<C>>* reps = nullptr) {
  std::map<Point<C>, std::size_t> index;
  std::vector<std::size_t> labels;
  for (const auto& p : points) {
    Point<C> key = p;
    std::sort(key.begin(), key.end());
    auto [it, inserted] = index.try_emplace(key, index.size());
    if (inserted && reps) reps->push_back(key);
    labels.push_back(it->second);
  }
  return labels;
}

/// The same test through orbit representatives: a functional that is
/// constant on orbits kills x^alpha for all |alpha| <= n iff it kills every
/// m_lambda, and L(m_lambda) = sum over orbits of w sigma |O| m_lambda(rep).
/// Throws when signs or weights vary inside an orbit, or an orbit is incomplete.
template <Field C>
AnnihilationReport annihilation_report_reduced(const SignedPointSet<C>& L, unsigned n, unsigned d,
                                               double tol = 1e-10) {
  if (!L.has_weights()) throw std::invalid_argument("annihilation needs weights");
  std::vector<Point<C>> reps;
  const auto labels = orbit_labels(L.points, &reps);
  std::vector<std::optional<std::pair<int, C>>> data(reps.size());
  std::vector<std::size_t> count(reps.size(), 0);
  for (std::size_t v = 0; v < L.size(); ++v) {
    auto& slot = data[labels[v]];
    if (!slot) {
      slot = std::make_pair(L.signs[v], L.weights[v]);
    } else if (slot->first != L.signs[v] || slot->second != L.weights[v]) {
      throw std::invalid_argument("functional is not constant on orbits");
    }
    ++count[labels[v]];
  }
  for (std::size_t o = 0; o < reps.size(); ++o) {
    if (count[o] != orbit<C>(reps[o]).size()) throw std::invalid_argument("support has an incomplete orbit");
  }
  AnnihilationReport rep;
  for (const auto& w : L.weights) rep.scale += detail::abs_value(w);
  bool exact_zero = true;
  for (unsigned k = 0; k <= n; ++k) {
    for (const auto& lambda : partitions(k, d)) {
      const Poly<C> m = monomial_symmetric<C>(lambda, d);
      C s(0);
      for (std::size_t o = 0; o < reps.size(); ++o) {
        const C term = data[o]->second * C(static_cast<unsigned>(count[o])) * m(std::span<const C>(reps[o]));
        s += data[o]->first > 0 ? term : C(-term);
      }
      ++rep.checked;
      if (s != C(0)) exact_zero = false;
      const double r = detail::abs_value(s);
      if (r >= rep.max_residual) {
        rep.max_residual = r;
        rep.worst = Exponents(lambda.begin(), lambda.end());
      }
    }
  }
  if constexpr (is_exact_v<C>) {
    rep.annihilates = exact_zero;
  } else {
    rep.annihilates = rep.max_residual <= tol * rep.scale;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Weight solving

enum class WeightStatus { unique, selected, infeasible };

inline std::string to_string(WeightStatus s) {
  switch (s) {
    case WeightStatus::unique: return "unique";
    case WeightStatus::selected: return "selected";
    case WeightStatus::infeasible: return "infeasible";
  }
  return "?";
}

struct WeightSolution {
  WeightStatus status = WeightStatus::infeasible;
  std::size_t nullspace_dim = 0;
  std::size_t orbits = 0;
  std::vector<double> weights;         // per point, sum 1
  std::vector<double> orbit_weights;   // per point weight of each orbit
  std::vector<Rational> exact_weights; // per point, when the data is exact and the solution unique
  std::string message;
};

namespace detail {

// Nullspace of an exact matrix by reduced row echelon form.
inline std::vector<std::vector<Rational>> exact_nullspace(std::vector<std::vector<Rational>> M, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < M.size(); ++c) {
    std::size_t p = row;
    while (p < M.size() && M[p][c] == 0) ++p;
    if (p == M.size()) continue;
    std::swap(M[p], M[row]);
    const Rational inv = Rational(1) / M[row][c];
    for (auto& v : M[row]) v *= inv;
    for (std::size_t r = 0; r < M.size(); ++r) {
      if (r == row || M[r][c] == 0) continue;
      const Rational f = M[r][c];
      for (std::size_t k = 0; k < cols; ++k) M[r][k] -= f * M[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -M[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Maximize the smallest orbit weight over the nullspace: w = N z,
// w_o >= mu, sum |O| w_o = 1. Variables z = z+ - z-, mu = mu+ - mu-, slack s.
inline std::optional<std::pair<double, Eigen::VectorXd>> max_min_weight(const Eigen::MatrixXd& N,
                                                                        const Eigen::VectorXd& sizes) {
  const Eigen::Index m = N.rows(), k = N.cols();
  const Eigen::Index nv = 2 * k + 2 + m;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 1, nv);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 1);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(nv);
  // rows: (N z)_o - mu - s_o = 0
  A.block(0, 0, m, k) = N;
  A.block(0, k, m, k) = -N;
  A.col(2 * k).head(m).setConstant(-1.0);
  A.col(2 * k + 1).head(m).setConstant(1.0);
  A.block(0, 2 * k + 2, m, m) = -Eigen::MatrixXd::Identity(m, m);
  const Eigen::RowVectorXd total = sizes.transpose() * N;
  A.block(m, 0, 1, k) = total;
  A.block(m, k, 1, k) = -total;
  b[m] = 1.0;
  c[2 * k] = 1.0;
  c[2 * k + 1] = -1.0;
  const LpResult r = solve_lp_max(A, b, c);
  if (r.status != LpStatus::optimal) return std::nullopt;
  const Eigen::VectorXd z = r.x.head(k) - r.x.segment(k, k);
  return std::make_pair(r.objective, Eigen::VectorXd(N * z));
}

}  // namespace detail

/// Positive weights, one unknown per orbit, making sigma annihilate all
/// polynomials of degree <= n; normalized to total weight 1. Exact input is
/// eliminated exactly; float input uses an SVD with relative cutoff 1e-10.
/// With more than one free direction the weights maximizing the smallest
/// orbit weight are returned (status "selected").
template <Field C>
WeightSolution solve_signature_weights(const std::vector<Point<C>>& S_plus, const std::vector<Point<C>>& S_minus,
                                       unsigned n, unsigned d) {
  std::vector<Point<C>> pts = S_plus;
  pts.insert(pts.end(), S_minus.begin(), S_minus.end());
  std::vector<int> signs(S_plus.size(), 1);
  signs.resize(pts.size(), -1);
  std::vector<Point<C>> reps;
  const auto labels = orbit_labels(pts, &reps);
  const std::size_t K = reps.size();
  std::vector<int> orbit_sign(K, 0);
  std::vector<double> sizes(K, 0.0);
  for (std::size_t v = 0; v < pts.size(); ++v) {
    int& s = orbit_sign[labels[v]];
    if (s != 0 && s != signs[v]) throw std::invalid_argument("an orbit carries both signs");
    s = signs[v];
    sizes[labels[v]] += 1.0;
  }

  std::vector<std::vector<C>> rows;
  for (unsigned k = 0; k <= n; ++k) {
    for (const auto& lambda : partitions(k, d)) {
      const Poly<C> m = monomial_symmetric<C>(lambda, d);
      std::vector<C> row(K);
      for (std::size_t o = 0; o < K; ++o) {
        row[o] = C(orbit_sign[o]) * C(static_cast<unsigned>(sizes[o])) * m(std::span<const C>(reps[o]));
      }
      rows.push_back(std::move(row));
    }
  }

  WeightSolution sol;
  sol.orbits = K;
  Eigen::VectorXd sz = Eigen::Map<Eigen::VectorXd>(sizes.data(), static_cast<Eigen::Index>(K));
  Eigen::MatrixXd N;
  std::vector<std::vector<Rational>> exact_basis;
  if constexpr (is_exact_v<C>) {
    exact_basis = detail::exact_nullspace(rows, K);
    N.resize(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(exact_basis.size()));
    for (std::size_t j = 0; j < exact_basis.size(); ++j) {
      for (std::size_t o = 0; o < K; ++o) {
        N(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(j)) = to_double(exact_basis[j][o]);
      }
    }
  } else {
    Eigen::MatrixXd M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(K));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t o = 0; o < K; ++o) M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(o)) = rows[r][o];
    }
    // Pad to square so the full right singular basis is available.
    Eigen::MatrixXd Mp = Eigen::MatrixXd::Zero(std::max<Eigen::Index>(M.rows(), M.cols()), M.cols());
    Mp.topRows(M.rows()) = M;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Mp, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-10 * std::max(1.0, sv.size() ? sv[0] : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv[i] > cutoff) ++rank;
    }
    N = svd.matrixV().rightCols(M.cols() - rank);
  }
  sol.nullspace_dim = static_cast<std::size_t>(N.cols());

  auto finish = [&](const Eigen::VectorXd& w) {
    sol.orbit_weights.assign(w.data(), w.data() + w.size());
    sol.weights.resize(pts.size());
    for (std::size_t v = 0; v < pts.size(); ++v) sol.weights[v] = w[static_cast<Eigen::Index>(labels[v])];
  };

  if (N.cols() == 0) {
    sol.message = "only the zero functional annihilates this space";
    return sol;
  }
  if (N.cols() == 1) {
    Eigen::VectorXd w = N.col(0);
    double total = sz.dot(w);
    if (total < 0) {
      w = -w;
      total = -total;
    }
    if (total <= 0.0 || w.minCoeff() <= 1e-12 * w.cwiseAbs().maxCoeff()) {
      sol.message = "the unique annihilating direction has a non-positive orbit weight";
      finish(w / (total > 0 ? total : 1.0));
      return sol;
    }
    w /= total;
    finish(w);
    sol.status = WeightStatus::unique;
    if constexpr (is_exact_v<C>) {
      std::vector<Rational> ew = exact_basis[0];
      Rational t = 0;
      for (std::size_t o = 0; o < K; ++o) t += ew[o] * Rational(static_cast<unsigned>(sizes[o]));
      for (auto& x : ew) x /= t;
      sol.exact_weights.resize(pts.size());
      for (std::size_t v = 0; v < pts.size(); ++v) sol.exact_weights[v] = ew[labels[v]];
    }
    sol.message = "unique up to scale";
    return sol;
  }
  const auto best = detail::max_min_weight(N, sz);
  if (!best || best->first <= 1e-12) {
    sol.message = "no strictly positive solution in the " + std::to_string(N.cols()) + "-dimensional nullspace";
    return sol;
  }
  finish(best->second);
  sol.status = WeightStatus::selected;
  sol.message = "nullspace dimension " + std::to_string(N.cols()) + "; weights maximize the smallest orbit weight";
  return sol;
}

// ---------------------------------------------------------------------------
// Certificate

struct CertifyReport {
  bool certified = false;
  bool well_formed = true;
  bool level_ok = true;
  bool annihilation_ok = true;
  bool positivity_ok = true;
  double max_level_residual = 0.0;
  double annihilation_residual = 0.0;
  double certified_bound = 0.0;  // level minus the worst level residual
  std::vector<std::string> reasons;
};

template <Field C>
CertifyReport certify_lower_bound(const Certificate<C>& cert, double tol = 0.0) {
  CertifyReport rep;
  const auto& S = cert.support;
  const unsigned d = cert.domain.dim;
  auto fail = [&](bool& flag, std::string why) {
    flag = false;
    rep.reasons.push_back(std::move(why));
  };
  try {
    S.validate();
  } catch (const std::exception& e) {
    fail(rep.well_formed, std::string("malformed support: ") + e.what());
  }
  if (!S.has_weights()) fail(rep.well_formed, "support carries no weights");
  if (!(cert.level > C(0))) fail(rep.well_formed, "level must be positive");
  if (cert.target.nvars() != d || cert.candidate.nvars() != d) fail(rep.well_formed, "polynomial arity differs from domain");
  for (const auto& p : S.points) {
    std::vector<double> x(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) x[i] = to_double(p[i]);
    if (!cert.domain.contains(x, 1e-12)) {
      fail(rep.well_formed, "support point outside " + cert.domain.name());
      break;
    }
  }
  // Candidate degree: tiny float coefficients above n are cancellation noise.
  for (const auto& [e, c] : cert.candidate.terms()) {
    if (total_degree(e) <= cert.degree) continue;
    if (is_exact_v<C> || detail::abs_value(c) > std::max(tol, 1e-12)) {
      fail(rep.well_formed, "candidate has degree above " + std::to_string(cert.degree));
      break;
    }
  }
  if (!rep.well_formed) return rep;

  // (i) f - p* = sigma r on the support.
  bool sign_mismatch = false;
  for (std::size_t v = 0; v < S.size(); ++v) {
    const std::span<const C> x(S.points[v]);
    const C g = cert.target(x) - cert.candidate(x);
    const C want = S.signs[v] > 0 ? cert.level : C(-cert.level);
    const double res = detail::abs_value(C(g - want));
    rep.max_level_residual = std::max(rep.max_level_residual, res);
    const bool ok = is_exact_v<C> && tol == 0.0 ? g == want : res <= tol;
    if (!ok) {
      if (detail::abs_value(C(g + want)) <= std::max(tol, res * 1e-6)) sign_mismatch = true;
      rep.level_ok = false;
    }
  }
  if (!rep.level_ok) {
    rep.reasons.push_back(sign_mismatch ? "sign mismatch: f - p* has the opposite sign at a support point"
                                        : "f - p* misses the level at a support point");
  }
  // (ii) annihilation of the approximating space.
  const auto ann = annihilation_report(S, cert.degree, d, tol > 0 ? tol : 1e-10);
  rep.annihilation_residual = ann.max_residual;
  if (!ann.annihilates) fail(rep.annihilation_ok, "weights do not annihilate degree " + std::to_string(cert.degree));
  // (iii) positivity (validate() already rejects, kept explicit for the report).
  for (const auto& w : S.weights) {
    if (!(w > C(0))) {
      fail(rep.positivity_ok, "non-positive weight");
      break;
    }
  }
  rep.certified = rep.level_ok && rep.annihilation_ok && rep.positivity_ok;
  rep.certified_bound = to_double(cert.level) - rep.max_level_residual;
  return rep;
}

template <Field C>
json certificate_to_json(const Certificate<C>& cert) {
  json pts = json::array(), signs = json::array(), weights = json::array();
  for (const auto& p : cert.support.points) {
    json row = json::array();
    for (const auto& c : p) row.push_back(coefficient_to_json(c));
    pts.push_back(row);
  }
  for (int s : cert.support.signs) signs.push_back(s);
  for (const auto& w : cert.support.weights) weights.push_back(coefficient_to_json(w));
  return json{{"target", to_json(cert.target)},
              {"candidate", to_json(cert.candidate)},
              {"level", coefficient_to_json(cert.level)},
              {"degree", cert.degree},
              {"domain", json{{"kind", cert.domain.name().substr(0, cert.domain.name().find('('))},
                              {"dim", cert.domain.dim}}},
              {"points", pts},
              {"signs", signs},
              {"weights", weights}};
}

template <Field C>
Certificate<C> certificate_from_json(const json& j) {
  auto coef = [](const json& v) -> C {
    if constexpr (is_exact_v<C>) {
      return parse_rational(v.get<std::string>());
    } else {
      return v.is_string() ? to_double(parse_rational(v.get<std::string>())) : v.get<double>();
    }
  };
  Certificate<C> c;
  c.target = poly_from_json<C>(j.at("target"));
  c.candidate = poly_from_json<C>(j.at("candidate"));
  c.level = coef(j.at("level"));
  c.degree = j.at("degree").get<unsigned>();
  c.domain = parse_domain(j.at("domain").at("kind").get<std::string>(), j.at("domain").at("dim").get<unsigned>());
  for (const auto& row : j.at("points")) {
    Point<C> p;
    for (const auto& v : row) p.push_back(coef(v));
    c.support.points.push_back(std::move(p));
  }
  c.support.signs = j.at("signs").get<std::vector<int>>();
  for (const auto& w : j.at("weights")) c.support.weights.push_back(coef(w));
  return c;
}

/// The T_d certificate for x_1...x_d on the simplex: p* = x_1...x_d - T_d / r_d,
/// support S_+ and S_-, weights from the L functional normalized to total 1.
inline Certificate<Rational> td_certificate(unsigned d) {
  const auto td = build_Td(d);
  const Rational r = Rational(1) / Rational(td.r_value);
  Certificate<Rational> c;
  c.target = QPoly::monomial(Exponents(d, 1U));
  c.candidate = c.target - r * td.polynomial;
  c.level = r;
  c.degree = d - 1;
  c.domain = Domain::simplex(d);
  c.support = build_L_functional(d);
  Rational total = 0;
  for (const auto& w : c.support.weights) total += w;
  for (auto& w : c.support.weights) w /= total;
  return c;
}

// ---------------------------------------------------------------------------
// R_5 signature

/// Per-point weights printed for the six R_5 orbits, in the order centroid,
/// (1,0,0), (1/2,1/2,0), edge pair, diagonal t2, diagonal t1.
inline constexpr std::array<double, 6> kR5PrintedWeights = {0.0997251873, 0.0097228135, 0.0621246411,
                                                           0.0243979796, 0.0615774830, 0.1178707075};
inline constexpr std::array<int, 6> kR5Signs = {1, 1, 1, -1, 1, -1};

/// Orbit representatives in the order of kR5PrintedWeights.
inline std::array<Point<double>, 6> r5_orbit_representatives(const R5Constants& k) {
  const auto ex = r5_extremal_points(k);
  const double t1 = ex.diagonal_minus, t2 = ex.diagonal_plus, e = ex.edge;
  return {Point<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}, Point<double>{1, 0, 0}, Point<double>{0.5, 0.5, 0},
          Point<double>{e, 1 - e, 0}, Point<double>{t2, t2, 1 - 2 * t2}, Point<double>{t1, t1, 1 - 2 * t1}};
}

/// The R_5 support with the printed weights (optionally replaced per orbit).
inline SignedPointSet<double> r5_signature(const R5Constants& k, const std::array<double, 6>& w = kR5PrintedWeights) {
  SignedPointSet<double> s;
  const auto reps = r5_orbit_representatives(k);
  for (std::size_t o = 0; o < reps.size(); ++o) {
    for (auto& p : orbit<double>(reps[o])) s.add(std::move(p), kR5Signs[o], w[o]);
  }
  return s;
}

/// f = (x_1 x_2 x_3)^2, p* = f - R_5 / (27^2 b), level 1 / (27^2 b), approximants of degree <= 5.
inline Certificate<double> r5_certificate(const R5Constants& k) {
  Certificate<double> c;
  c.target = FPoly::monomial(Exponents{2, 2, 2});
  const FPoly r5 = build_R5(k);
  c.candidate = c.target - (1.0 / k.leading) * r5;
  // Drop the e_3^2 cancellation residue so the candidate has degree 5 exactly.
  FPoly cleaned(3);
  for (const auto& [e, v] : c.candidate.terms()) {
    if (total_degree(e) <= 5) cleaned.add_term(e, v);
  }
  c.candidate = cleaned;
  c.level = 1.0 / k.leading;
  c.degree = 5;
  c.domain = Domain::simplex(3);
  c.support = r5_signature(k);
  return c;
}

// ---------------------------------------------------------------------------
// Combinatorial and cubature identities

/// sum_{j=0}^d (-1)^j C(d,j) j^k.
inline Integer combi_identity(unsigned d, unsigned k) {
  Integer s = 0;
  for (unsigned j = 0; j <= d; ++j) {
    const Integer t = binomial(d, j) * integer_pow(Integer(j), k);
    s += j % 2 == 0 ? t : Integer(-t);
  }
  return s;
}

struct CubatureRow {
  unsigned a = 0, b = 0;
  Rational L1, L2, integral;  // integral = 2 * int_{T^2} x^a y^b
};

struct CubatureReport {
  std::vector<CubatureRow> rows;  // all monomials of degree <= 3
  bool exact_degree2 = false;     // L1 = L2 = integral for every degree <= 2 row
  std::optional<std::pair<unsigned, unsigned>> separating;  // first degree-3 monomial with L1 != L2
};

/// The two degree-2 rules on the face, written in the coordinates (x, y) of T^2:
/// L1 = 3/4 f(1/3,1/3) + 1/12 (f(1,0) + f(0,1) + f(0,0)),
/// L2 = 1/3 (f(1/2,1/2) + f(1/2,0) + f(0,1/2)).
inline CubatureReport cubature_check() {
  auto mono = [](unsigned a, unsigned b, const Rational& x, const Rational& y) {
    return rational_pow(x, a) * rational_pow(y, b);
  };
  const Rational third(1, 3), half(1, 2);
  CubatureReport rep;
  rep.exact_degree2 = true;
  for (unsigned deg = 0; deg <= 3; ++deg) {
    for (unsigned a = deg + 1; a-- > 0;) {
      const unsigned b = deg - a;
      CubatureRow row{a, b, 0, 0, 0};
      row.L1 = Rational(3, 4) * mono(a, b, third, third) +
               Rational(1, 12) * (mono(a, b, 1, 0) + mono(a, b, 0, 1) + mono(a, b, 0, 0));
      row.L2 = third * (mono(a, b, half, half) + mono(a, b, half, 0) + mono(a, b, 0, half));
      row.integral = Rational(2) * Rational(factorial(a) * factorial(b), factorial(a + b + 2));
      if (deg <= 2 && (row.L1 != row.L2 || row.L1 != row.integral)) rep.exact_degree2 = false;
      if (deg == 3 && row.L1 != row.L2 && !rep.separating) rep.separating = std::make_pair(a, b);
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace chebydev
