#pragma once

// Sup-norm estimation on the simplex, its top face, the ball and the sphere.
//
// A polynomial attains its maximum modulus on a compact polytope at a
// critical point of its restriction to some face (vertices included), so the
// simplex search enumerates faces, restricts the polynomial to an affine
// chart of each, and runs multi-start Newton on the chart gradient. The ball
// adds Lagrange stationarity on the boundary sphere.

#include "chebydev/constructions.hpp"
#include "chebydev/domain.hpp"
#include "chebydev/evaluator.hpp"
#include "chebydev/parallel.hpp"
#include "chebydev/poly.hpp"
#include "chebydev/symfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace chebydev {

struct CriticalPoint {
  std::vector<double> x;
  double value = 0.0;
  std::string location;
};

struct SearchOptions {
  unsigned starts = 0;  // per face; 0 selects 50 * d
  std::uint64_t seed = 20240601;
  bool symmetric = false;  // p is invariant under coordinate permutations
  double dedup_tol = 1e-8;
  unsigned max_newton = 80;
  unsigned grid_refine = 16;  // top grid points refined on their active face
};

/// A face of T^d: coordinates outside `free` vanish; on_sum adds sum x = 1.
/// Its chart is the standard simplex in dim() parameters: the free
/// coordinates in order, the last one eliminated when on_sum.
struct SimplexFace {
  std::vector<unsigned> free;
  bool on_sum = false;
  unsigned ambient = 0;

  unsigned dim() const { return static_cast<unsigned>(free.size()) - (on_sum ? 1U : 0U); }

  std::vector<double> embed(const Eigen::VectorXd& y) const {
    std::vector<double> x(ambient, 0.0);
    const unsigned k = dim();
    double s = 0.0;
    for (unsigned i = 0; i < k; ++i) {
      x[free[i]] = y[i];
      s += y[i];
    }
    if (on_sum) x[free.back()] = 1.0 - s;
    return x;
  }

  std::string label() const {
    if (!on_sum && free.size() == ambient) return "interior";
    std::string s;
    unsigned next = 0;
    for (unsigned i = 0; i < ambient; ++i) {
      if (next < free.size() && free[next] == i) {
        ++next;
        continue;
      }
      if (!s.empty()) s += ",";
      s += "x" + std::to_string(i + 1) + "=0";
    }
    if (on_sum) s += std::string(s.empty() ? "" : ",") + "sum=1";
    return s;
  }

  template <Field C>
  Poly<C> restrict(const Poly<C>& p) const {
    const unsigned k = dim();
    std::vector<Poly<C>> subs(ambient, Poly<C>(k));
    Poly<C> last = Poly<C>::constant(k, C(1));
    for (unsigned i = 0; i < k; ++i) {
      subs[free[i]] = Poly<C>::variable(k, i);
      last -= subs[free[i]];
    }
    if (on_sum) subs[free.back()] = last;
    return compose(p, subs);
  }
};

/// Faces in order of increasing dimension. With `symmetric`, one face per
/// permutation class (free = leading coordinates).
inline std::vector<SimplexFace> simplex_faces(const Domain& dom, bool symmetric) {
  const unsigned d = dom.dim;
  std::vector<SimplexFace> faces;
  const bool only_sum = dom.kind == DomainKind::simplex_face;
  for (unsigned mask = 0; mask < (1U << d); ++mask) {
    std::vector<unsigned> free;
    for (unsigned i = 0; i < d; ++i) {
      if (mask & (1U << i)) free.push_back(i);
    }
    if (symmetric) {
      bool leading = true;
      for (unsigned i = 0; i < free.size(); ++i) leading = leading && free[i] == i;
      if (!leading) continue;
    }
    for (int sum = 0; sum <= 1; ++sum) {
      if (only_sum && sum == 0) continue;
      if (sum == 1 && free.empty()) continue;
      faces.push_back({free, sum == 1, d});
    }
  }
  std::stable_sort(faces.begin(), faces.end(),
                   [](const SimplexFace& a, const SimplexFace& b) { return a.dim() < b.dim(); });
  return faces;
}

namespace detail {

inline double coefficient_scale(const FPoly& p) { return std::max(1.0, max_abs_coefficient(p)); }

inline std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

/// Uniform point of the open standard simplex in k parameters.
inline Eigen::VectorXd random_simplex_point(std::mt19937_64& rng, unsigned k) {
  std::exponential_distribution<double> ex(1.0);
  Eigen::VectorXd y(k);
  double s = ex(rng);
  for (unsigned i = 0; i < k; ++i) {
    y[i] = ex(rng);
    s += y[i];
  }
  return y / s;
}

inline Eigen::VectorXd random_unit_vector(std::mt19937_64& rng, unsigned d) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd x(d);
  do {
    for (unsigned i = 0; i < d; ++i) x[i] = g(rng);
  } while (x.norm() < 1e-8);
  return x / x.norm();
}

/// Newton on grad g = 0 from y0; nullopt on singular Hessian or no convergence.
inline std::optional<Eigen::VectorXd> newton_stationary(const CompiledPoly& g, Eigen::VectorXd y,
                                                        double scale, unsigned max_iter) {
  const auto k = y.size();
  Eigen::VectorXd grad(k);
  Eigen::MatrixXd hess(k, k);
  for (unsigned it = 0; it < max_iter; ++it) {
    g.value_grad_hess(y, grad, hess);
    if (grad.norm() <= 1e-14 * scale) return y;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(hess);
    lu.setThreshold(1e-13);
    if (lu.rank() < k) return std::nullopt;
    Eigen::VectorXd step = lu.solve(-grad);
    const double len = step.norm();
    if (!std::isfinite(len)) return std::nullopt;
    if (len > 0.5) step *= 0.5 / len;
    y += step;
    if (y.norm() > 1e3) return std::nullopt;
    if (step.norm() <= 1e-15 * (1.0 + y.norm())) break;
  }
  g.value_grad(y, grad);
  if (grad.norm() <= 1e-9 * scale) return y;
  return std::nullopt;
}

/// Newton on grad p = mu x, |x| = 1 from a unit vector x0.
inline std::optional<Eigen::VectorXd> newton_sphere(const CompiledPoly& p, Eigen::VectorXd x,
                                                    double scale, unsigned max_iter) {
  const auto d = x.size();
  Eigen::VectorXd grad(d);
  Eigen::MatrixXd hess(d, d);
  p.value_grad(x, grad);
  double mu = x.dot(grad);
  Eigen::VectorXd F(d + 1);
  Eigen::MatrixXd J(d + 1, d + 1);
  for (unsigned it = 0; it < max_iter; ++it) {
    p.value_grad_hess(x, grad, hess);
    F.head(d) = grad - mu * x;
    F[d] = 0.5 * (x.squaredNorm() - 1.0);
    if (F.norm() <= 1e-14 * scale) break;
    J.topLeftCorner(d, d) = hess - mu * Eigen::MatrixXd::Identity(d, d);
    J.topRightCorner(d, 1) = -x;
    J.bottomLeftCorner(1, d) = x.transpose();
    J(d, d) = 0.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    lu.setThreshold(1e-13);
    if (lu.rank() < d + 1) return std::nullopt;
    Eigen::VectorXd step = lu.solve(-F);
    if (!std::isfinite(step.norm())) return std::nullopt;
    if (step.head(d).norm() > 0.5) step *= 0.5 / step.head(d).norm();
    x += step.head(d);
    mu += step[d];
    if (step.norm() <= 1e-15 * (1.0 + std::abs(mu))) break;
  }
  x /= x.norm();
  p.value_grad(x, grad);
  const double m = x.dot(grad);
  if ((grad - m * x).norm() <= 1e-9 * scale) return x;
  return std::nullopt;
}

inline bool in_chart(Eigen::VectorXd& y, double tol) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y[i] < -tol) return false;
    if (y[i] < 0.0) y[i] = 0.0;
    s += y[i];
  }
  return s <= 1.0 + tol;
}

inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline void merge_unique(std::vector<CriticalPoint>& into, const CriticalPoint& c, double tol) {
  for (const auto& e : into) {
    if (distance(e.x, c.x) <= tol) return;
  }
  into.push_back(c);
}

}  // namespace detail

struct CriticalSearch {
  std::vector<CriticalPoint> points;
  std::size_t discarded_starts = 0;
};

/// Critical points on one simplex face (in its relative interior or its
/// closure, as Newton lands), returned in ambient coordinates.
inline CriticalSearch face_critical_points(const FPoly& p, const SimplexFace& face,
                                           const SearchOptions& opt, std::uint64_t face_id) {
  CriticalSearch out;
  const unsigned k = face.dim();
  const CompiledPoly full(p);
  if (k == 0) {
    const auto x = face.embed(Eigen::VectorXd(0));
    out.points.push_back({x, full.value(x), face.label()});
    return out;
  }
  const FPoly g = face.restrict(p);
  const CompiledPoly cg(g);
  const double scale = detail::coefficient_scale(g);
  const unsigned starts = opt.starts ? opt.starts : 50U * face.ambient;
  std::vector<std::optional<std::vector<double>>> found(starts);
  parallel_for(starts, [&](std::size_t s) {
    auto rng = detail::task_rng(opt.seed, face_id, s);
    auto y = detail::newton_stationary(cg, detail::random_simplex_point(rng, k), scale, opt.max_newton);
    if (y && detail::in_chart(*y, 1e-9)) found[s] = face.embed(*y);
  });
  for (auto& f : found) {
    if (!f) {
      ++out.discarded_starts;
      continue;
    }
    detail::merge_unique(out.points, {*f, full.value(*f), face.label()}, opt.dedup_tol);
  }
  return out;
}

inline CriticalSearch ball_critical_points(const FPoly& p, const Domain& dom, const SearchOptions& opt) {
  CriticalSearch out;
  const unsigned d = dom.dim;
  const CompiledPoly cp(p);
  const double scale = detail::coefficient_scale(p);
  const unsigned starts = opt.starts ? opt.starts : 50U * d;
  std::vector<std::optional<std::vector<double>>> interior(starts), boundary(starts);
  parallel_for(starts, [&](std::size_t s) {
    auto rng = detail::task_rng(opt.seed, 1000 + d, s);
    const Eigen::VectorXd dir = detail::random_unit_vector(rng, d);
    if (dom.kind == DomainKind::ball) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double radius = std::pow(u(rng), 1.0 / d);
      auto y = detail::newton_stationary(cp, radius * dir, scale, opt.max_newton);
      if (y && y->norm() <= 1.0 + 1e-12) interior[s] = std::vector<double>(y->data(), y->data() + d);
    }
    auto x = detail::newton_sphere(cp, dir, scale, opt.max_newton);
    if (x) boundary[s] = std::vector<double>(x->data(), x->data() + d);
  });
  for (auto& f : interior) {
    if (f) detail::merge_unique(out.points, {*f, cp.value(*f), "interior"}, opt.dedup_tol);
  }
  for (auto& f : boundary) {
    if (!f) {
      ++out.discarded_starts;
      continue;
    }
    detail::merge_unique(out.points, {*f, cp.value(*f), dom.kind == DomainKind::ball ? "boundary" : "sphere"},
                         opt.dedup_tol);
  }
  return out;
}

/// Multi-start critical points over every face of the domain (simplex), or
/// interior plus boundary sphere (ball), or the sphere alone.
inline CriticalSearch critical_points(const FPoly& p, const Domain& dom, const SearchOptions& opt = {}) {
  if (p.nvars() != dom.dim) throw std::invalid_argument("polynomial arity does not match domain");
  if (!dom.is_simplex_like()) return ball_critical_points(p, dom, opt);
  CriticalSearch out;
  const auto faces = simplex_faces(dom, opt.symmetric);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    auto part = face_critical_points(p, faces[f], opt, f);
    out.discarded_starts += part.discarded_starts;
    for (const auto& c : part.points) detail::merge_unique(out.points, c, opt.dedup_tol);
  }
  return out;
}

template <Field C>
CriticalSearch critical_points(const Poly<C>& p, const Domain& dom, unsigned starts, std::uint64_t seed) {
  SearchOptions opt;
  opt.starts = starts;
  opt.seed = seed;
  if constexpr (is_exact_v<C>) {
    return critical_points(p.to_float(), dom, opt);
  } else {
    return critical_points(p, dom, opt);
  }
}

/// Only the critical points whose location is `where`.
inline std::vector<CriticalPoint> at_location(const std::vector<CriticalPoint>& pts, const std::string& where) {
  std::vector<CriticalPoint> out;
  for (const auto& c : pts) {
    if (c.location == where) out.push_back(c);
  }
  return out;
}

/// All coordinate permutations of each point, deduplicated.
inline std::vector<CriticalPoint> expand_orbits(const std::vector<CriticalPoint>& pts, double tol) {
  std::vector<CriticalPoint> out;
  for (const auto& c : pts) {
    std::vector<std::size_t> idx(c.x.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    do {
      CriticalPoint q = c;
      for (std::size_t i = 0; i < idx.size(); ++i) q.x[i] = c.x[idx[i]];
      detail::merge_unique(out, q, tol);
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return out;
}

struct SupNormReport {
  double value = 0.0;
  std::vector<double> argmax;
  std::string location;
  std::vector<CriticalPoint> critical_points;
  unsigned grid_resolution = 0;
  double grid_value = 0.0;
  std::size_t refinement_failures = 0;
};

namespace detail {

/// The face of T^d on which x lies, by a zero threshold.
inline SimplexFace active_face(const std::vector<double>& x, const Domain& dom, double thr = 1e-10) {
  SimplexFace f;
  f.ambient = dom.dim;
  double s = 0.0;
  for (unsigned i = 0; i < dom.dim; ++i) {
    s += x[i];
    if (x[i] > thr) f.free.push_back(i);
  }
  f.on_sum = dom.kind == DomainKind::simplex_face || s >= 1.0 - thr;
  if (f.on_sum && f.free.empty()) f.on_sum = false;
  return f;
}

inline Eigen::VectorXd chart_coordinates(const std::vector<double>& x, const SimplexFace& f) {
  Eigen::VectorXd y(f.dim());
  for (unsigned i = 0; i < f.dim(); ++i) y[i] = x[f.free[i]];
  return y;
}

}  // namespace detail

/// Grid maximum of |p| refined by Newton from the best grid points on their
/// active faces, combined with the multi-start critical points.
inline SupNormReport sup_norm(const FPoly& p, const Domain& dom, unsigned resolution,
                              const SearchOptions& opt = {}) {
  if (p.nvars() != dom.dim) throw std::invalid_argument("polynomial arity does not match domain");
  SupNormReport rep;
  rep.grid_resolution = resolution;
  const CompiledPoly cp(p);
  const auto grid = sample_domain(dom, resolution);
  std::vector<double> vals(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { vals[i] = cp.value(grid[i]); });
  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(vals[a]) > std::abs(vals[b]); });
  rep.grid_value = std::abs(vals[order.front()]);
  rep.value = rep.grid_value;
  rep.argmax = grid[order.front()];
  rep.location = "grid";

  auto search = critical_points(p, dom, opt);
  rep.refinement_failures = 0;
  const unsigned refine = std::min<std::size_t>(opt.grid_refine, order.size());
  for (unsigned r = 0; r < refine; ++r) {
    const auto& x0 = grid[order[r]];
    if (dom.is_simplex_like()) {
      const auto face = detail::active_face(x0, dom);
      if (face.dim() == 0) continue;
      const FPoly g = face.restrict(p);
      auto y = detail::newton_stationary(CompiledPoly(g), detail::chart_coordinates(x0, face),
                                         detail::coefficient_scale(g), opt.max_newton);
      if (y && detail::in_chart(*y, 1e-9)) {
        const auto x = face.embed(*y);
        detail::merge_unique(search.points, {x, cp.value(x), face.label()}, opt.dedup_tol);
      } else {
        ++rep.refinement_failures;
      }
    } else {
      Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(x0.data(), dom.dim);
      const bool on_boundary = dom.kind == DomainKind::sphere || x.norm() > 1.0 - 1e-9;
      std::optional<Eigen::VectorXd> y;
      if (on_boundary && x.norm() > 0) {
        y = detail::newton_sphere(cp, x / x.norm(), detail::coefficient_scale(p), opt.max_newton);
      } else {
        y = detail::newton_stationary(cp, x, detail::coefficient_scale(p), opt.max_newton);
        if (y && y->norm() > 1.0 + 1e-12) y.reset();
      }
      if (y) {
        std::vector<double> v(y->data(), y->data() + dom.dim);
        const std::string where = dom.kind == DomainKind::sphere ? "sphere" : (on_boundary ? "boundary" : "interior");
        detail::merge_unique(search.points, {v, cp.value(v), where}, opt.dedup_tol);
      } else {
        ++rep.refinement_failures;
      }
    }
  }
  for (const auto& c : search.points) {
    if (std::abs(c.value) > rep.value) {
      rep.value = std::abs(c.value);
      rep.argmax = c.x;
      rep.location = c.location;
    }
  }
  rep.critical_points = std::move(search.points);
  return rep;
}

template <Field C>
SupNormReport sup_norm(const Poly<C>& p, const Domain& dom, unsigned resolution, const SearchOptions& opt = {})
  requires std::same_as<C, Rational>
{
  return sup_norm(p.to_float(), dom, resolution, opt);
}

// ---------------------------------------------------------------------------
// |T_d| <= 1 by face recursion

struct TdLevel {
  unsigned k = 0;
  bool face_identity = true;  // T_k(.., 0) = -T_{k-1}, exact
  double interior_max = 0.0;
  double sum_face_max = 0.0;
  double grid_max = 0.0;
  double level_max = 0.0;
  std::vector<double> argmax;
  std::string location;
  std::size_t interior_critical = 0;
  std::size_t sum_face_critical = 0;
  std::size_t sum_face_extremal = 0;  // critical points on sum=1 with |T_k| = 1 to 1e-9
};

struct TdBoundReport {
  unsigned d = 0;
  double max_abs = 0.0;
  std::vector<double> argmax;
  std::string location;
  bool pass = false;
  bool conjecture_mode = false;  // d >= 6: exploratory, not a proved case
  double tol = 1e-9;
  std::vector<TdLevel> levels;
  std::size_t discarded_starts = 0;
};

/// Level k checks the interior and the face sum = 1 of T^k; faces x_i = 0 are
/// handled by the exact identity T_k(.., 0, ..) = -T_{k-1}, so their values are
/// those of level k - 1. Level 3 searches every face of T^3.
inline TdBoundReport verify_Td_bound(unsigned d, unsigned resolution = 12, SearchOptions opt = {},
                                     double tol = 1e-9) {
  if (d < 3) throw std::invalid_argument("d must be >= 3");
  opt.symmetric = true;
  TdBoundReport rep;
  rep.d = d;
  rep.tol = tol;
  rep.conjecture_mode = d >= 6;
  QPoly prev;
  double prev_max = 0.0;
  std::vector<double> prev_arg;
  std::string prev_loc;
  for (unsigned k = 3; k <= d; ++k) {
    TdLevel lv;
    lv.k = k;
    const QPoly tk = build_Td(k).polynomial;
    const FPoly fk = tk.to_float();
    const CompiledPoly ck(fk);
    const Domain dom = Domain::simplex(k);
    if (k > 3) {
      for (unsigned i = 0; i < k && lv.face_identity; ++i) {
        lv.face_identity = restrict_face(tk, Face::zero(i)) == -prev;
      }
    }
    auto consider = [&](double v, const std::vector<double>& x, const std::string& where) {
      if (std::abs(v) > lv.level_max) {
        lv.level_max = std::abs(v);
        lv.argmax = x;
        lv.location = where;
      }
    };
    if (k == 3) {
      auto all = critical_points(fk, dom, opt);
      rep.discarded_starts += all.discarded_starts;
      for (const auto& c : all.points) {
        consider(c.value, c.x, c.location);
        if (c.location == "interior") {
          ++lv.interior_critical;
          lv.interior_max = std::max(lv.interior_max, std::abs(c.value));
        }
        if (c.location == "sum=1") {
          ++lv.sum_face_critical;
          lv.sum_face_max = std::max(lv.sum_face_max, std::abs(c.value));
          if (std::abs(std::abs(c.value) - 1.0) <= 1e-9) ++lv.sum_face_extremal;
        }
      }
    } else {
      std::vector<unsigned> all_free(k);
      for (unsigned i = 0; i < k; ++i) all_free[i] = i;
      const SimplexFace interior{all_free, false, k};
      const SimplexFace sum_face{all_free, true, k};
      auto in = face_critical_points(fk, interior, opt, 2 * k);
      auto sf = face_critical_points(fk, sum_face, opt, 2 * k + 1);
      rep.discarded_starts += in.discarded_starts + sf.discarded_starts;
      for (const auto& c : in.points) {
        ++lv.interior_critical;
        lv.interior_max = std::max(lv.interior_max, std::abs(c.value));
        consider(c.value, c.x, c.location);
      }
      for (const auto& c : sf.points) {
        ++lv.sum_face_critical;
        lv.sum_face_max = std::max(lv.sum_face_max, std::abs(c.value));
        if (std::abs(std::abs(c.value) - 1.0) <= 1e-9) ++lv.sum_face_extremal;
        consider(c.value, c.x, c.location);
      }
      // Faces x_i = 0 carry the values of -T_{k-1}.
      std::vector<double> lifted = prev_arg;
      lifted.push_back(0.0);
      consider(prev_max, lifted, "x" + std::to_string(k) + "=0 (" + prev_loc + ")");
    }
    const auto grid = sample_domain(dom, resolution);
    for (const auto& x : grid) {
      const double v = ck.value(x);
      lv.grid_max = std::max(lv.grid_max, std::abs(v));
      if (std::abs(v) > lv.level_max + 1e-12) consider(v, x, "grid");
    }
    prev = tk;
    prev_max = lv.level_max;
    prev_arg = lv.argmax;
    prev_loc = lv.location;
    rep.levels.push_back(lv);
  }
  const auto& top = rep.levels.back();
  rep.max_abs = top.level_max;
  rep.argmax = top.argmax;
  rep.location = top.location;
  bool identities = true;
  for (const auto& lv : rep.levels) identities = identities && lv.face_identity;
  rep.pass = identities && rep.max_abs <= 1.0 + tol;
  return rep;
}

/// Maximum of (-1)^{d-1} T_d over the interior versus over the boundary of T^d.
struct MaxPrincipleReport {
  unsigned d = 0;
  double interior_max = -std::numeric_limits<double>::infinity();
  double boundary_max = -std::numeric_limits<double>::infinity();
  bool pass = false;
};

inline MaxPrincipleReport max_principle_check(unsigned d, SearchOptions opt = {}, double tol = 1e-8) {
  opt.symmetric = true;
  MaxPrincipleReport rep;
  rep.d = d;
  FPoly q = build_Td(d).polynomial.to_float();
  if (d % 2 == 0) q = -q;
  const auto search = critical_points(q, Domain::simplex(d), opt);
  for (const auto& c : search.points) {
    if (c.location == "interior") {
      rep.interior_max = std::max(rep.interior_max, c.value);
    } else {
      rep.boundary_max = std::max(rep.boundary_max, c.value);
    }
  }
  const double overall = std::max(rep.interior_max, rep.boundary_max);
  rep.pass = std::abs(overall - rep.boundary_max) <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Level sets

struct LevelPoint {
  std::vector<double> x;
  double value = 0.0;  // f - p at x
  int sign = 0;
};

/// Points of the domain where |f - p| = r to within tol: critical points of
/// f - p on every face (a point of maximal modulus is one) plus exact grid
/// hits, clustered at 1e-6 with the smallest-residual representative kept.
template <Field C>
std::vector<LevelPoint> level_set(const Poly<C>& f, const Poly<C>& p, double r, const Domain& dom, double tol,
                                  SearchOptions opt = {}, unsigned resolution = 24) {
  if (!(r > 0.0)) throw std::invalid_argument("level must be positive");
  FPoly g;
  if constexpr (is_exact_v<C>) {
    g = (f - p).to_float();
  } else {
    g = f - p;
  }
  const CompiledPoly cg(g);
  auto search = critical_points(g, dom, opt);
  std::vector<CriticalPoint> cands = opt.symmetric ? expand_orbits(search.points, opt.dedup_tol) : search.points;
  for (const auto& x : sample_domain(dom, resolution)) cands.push_back({x, cg.value(x), "grid"});
  std::vector<LevelPoint> out;
  std::vector<double> resid;
  for (const auto& c : cands) {
    const double res = std::abs(std::abs(c.value) - r);
    if (res > tol) continue;
    bool merged = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (detail::distance(out[i].x, c.x) <= 1e-6) {
        if (res < resid[i]) {
          out[i] = {c.x, c.value, c.value > 0 ? 1 : -1};
          resid[i] = res;
        }
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.push_back({c.x, c.value, c.value > 0 ? 1 : -1});
      resid.push_back(res);
    }
  }
  std::sort(out.begin(), out.end(), [](const LevelPoint& a, const LevelPoint& b) { return a.x < b.x; });
  return out;
}

// ---------------------------------------------------------------------------
// The bordered Vandermonde determinant D_d

/// Determinant of a square matrix of polynomials by cofactor expansion along
/// the last row.
template <Field C>
Poly<C> determinant(const std::vector<std::vector<Poly<C>>>& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return Poly<C>::constant(nvars, C(1));
  if (n == 1) return m[0][0];
  Poly<C> det(nvars);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[n - 1][j].is_zero()) continue;
    std::vector<std::vector<Poly<C>>> minor(n - 1);
    for (std::size_t r = 0; r + 1 < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) minor[r].push_back(m[r][c]);
      }
    }
    Poly<C> term = m[n - 1][j] * determinant(minor, nvars);
    if ((n - 1 + j) % 2 == 1) term = -term;
    det += term;
  }
  return det;
}

/// D_d: rows 1, x_i, ..., x_i^{d-3} and d/dx_i T_d over columns i = 1..d-1,
/// in the variables x_1..x_d.
inline QPoly dd_determinant(unsigned d) {
  if (d < 3) throw std::invalid_argument("d must be >= 3");
  const QPoly td = build_Td(d).polynomial;
  const std::size_t n = d - 1;
  std::vector<std::vector<QPoly>> m(n);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Exponents e(d, 0U);
      e[c] = static_cast<unsigned>(r);
      m[r].push_back(QPoly::monomial(e));
    }
  }
  for (std::size_t c = 0; c < n; ++c) m[n - 1].push_back(partial_derivative(td, c));
  return determinant(m, d);
}

/// Exact division of p by (x_i - x_j); nullopt when the remainder is nonzero.
template <Field C>
std::optional<Poly<C>> divide_by_difference(const Poly<C>& p, std::size_t i, std::size_t j) {
  const std::size_t n = p.nvars();
  if (i >= n || j >= n || i == j) throw std::out_of_range("bad variable pair");
  // p = sum_k a_k x_i^k with a_k free of x_i.
  std::vector<Poly<C>> a;
  for (const auto& [e, c] : p.terms()) {
    if (a.size() <= e[i]) a.resize(e[i] + 1, Poly<C>(n));
    Exponents f = e;
    f[i] = 0;
    a[e[i]].add_term(f, c);
  }
  if (a.empty()) return Poly<C>(n);
  const Poly<C> xj = Poly<C>::variable(n, j);
  const Poly<C> xi = Poly<C>::variable(n, i);
  // Synthetic division by (x_i - x_j): b_{k-1} = a_k + x_j b_k.
  const std::size_t deg = a.size() - 1;
  std::vector<Poly<C>> b(deg, Poly<C>(n));
  Poly<C> carry(n);
  for (std::size_t k = deg; k >= 1; --k) {
    carry = a[k] + xj * carry;
    b[k - 1] = carry;
  }
  const Poly<C> remainder = a[0] + xj * carry;
  if (deg == 0) {
    if (!a[0].is_zero()) return std::nullopt;
    return Poly<C>(n);
  }
  if (!remainder.is_zero()) return std::nullopt;
  Poly<C> q(n);
  Poly<C> power = Poly<C>::constant(n, C(1));
  for (std::size_t k = 0; k < deg; ++k) {
    q += b[k] * power;
    power = power * xi;
  }
  return q;
}

/// prod_{0 <= i < j < m} (x_i - x_j) in n variables.
template <Field C = Rational>
Poly<C> vandermonde_product(std::size_t m, std::size_t n) {
  Poly<C> v = Poly<C>::constant(n, C(1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) v = v * (Poly<C>::variable(n, i) - Poly<C>::variable(n, j));
  }
  return v;
}

struct DdFactorization {
  unsigned d = 0;
  QPoly determinant;
  bool vandermonde_divides = false;
  QPoly quotient;  // D_d / prod_{i<j<=d-1}(x_i - x_j) when it divides
  bool quotient_check = false;  // quotient * product == determinant
};

inline DdFactorization dd_factorization(unsigned d) {
  DdFactorization rep;
  rep.d = d;
  rep.determinant = dd_determinant(d);
  QPoly q = rep.determinant;
  rep.vandermonde_divides = true;
  for (std::size_t i = 0; i + 1 < d && rep.vandermonde_divides; ++i) {
    for (std::size_t j = i + 1; j + 1 < d; ++j) {
      auto next = divide_by_difference(q, i, j);
      if (!next) {
        rep.vandermonde_divides = false;
        break;
      }
      q = std::move(*next);
    }
  }
  if (rep.vandermonde_divides) {
    rep.quotient = q;
    rep.quotient_check = q * vandermonde_product(d - 1, d) == rep.determinant;
  }
  return rep;
}

}  // namespace chebydev
