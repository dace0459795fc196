#pragma once

// The compact domains: the simplex T^d = {x >= 0, sum x <= 1}, its face
// sum x = 1, the unit ball B^d and the sphere S^{d-1}. All live in R^d; B^1
// is the interval [-1, 1].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebydev {

enum class DomainKind { simplex, simplex_face, ball, sphere };

struct Domain {
  DomainKind kind = DomainKind::simplex;
  unsigned dim = 1;  // ambient dimension d

  static Domain simplex(unsigned d) { return {DomainKind::simplex, d}; }
  static Domain simplex_face(unsigned d) { return {DomainKind::simplex_face, d}; }
  static Domain ball(unsigned d) { return {DomainKind::ball, d}; }
  /// The unit sphere S^{d-1} in R^d.
  static Domain sphere(unsigned d) { return {DomainKind::sphere, d}; }

  bool is_simplex_like() const {
    return kind == DomainKind::simplex || kind == DomainKind::simplex_face;
  }

  bool contains(const std::vector<double>& x, double tol = 1e-12) const {
    if (x.size() != dim) return false;
    double s = 0.0, r2 = 0.0;
    for (double v : x) {
      s += v;
      r2 += v * v;
    }
    switch (kind) {
      case DomainKind::simplex:
        return std::all_of(x.begin(), x.end(), [&](double v) { return v >= -tol; }) && s <= 1.0 + tol;
      case DomainKind::simplex_face:
        return std::all_of(x.begin(), x.end(), [&](double v) { return v >= -tol; }) &&
               std::abs(s - 1.0) <= tol;
      case DomainKind::ball:
        return std::sqrt(r2) <= 1.0 + tol;
      case DomainKind::sphere:
        return std::abs(std::sqrt(r2) - 1.0) <= tol;
    }
    return false;
  }

  std::string name() const {
    const std::string d = std::to_string(dim);
    switch (kind) {
      case DomainKind::simplex: return "simplex(" + d + ")";
      case DomainKind::simplex_face: return "simplex_face(" + d + ")";
      case DomainKind::ball: return "ball(" + d + ")";
      case DomainKind::sphere: return "sphere(" + d + ")";
    }
    return "?";
  }
};

inline Domain parse_domain(const std::string& kind, unsigned d) {
  if (kind == "simplex") return Domain::simplex(d);
  if (kind == "simplex_face" || kind == "face") return Domain::simplex_face(d);
  if (kind == "ball") return Domain::ball(d);
  if (kind == "sphere") return Domain::sphere(d);
  throw std::invalid_argument("unknown domain '" + kind + "'");
}

namespace detail {

// Calls visit(alpha) for every alpha in N^d with |alpha| <= m (or == m).
inline void for_each_lattice(unsigned d, unsigned m, bool exact_sum,
                             const std::function<void(const std::vector<unsigned>&)>& visit) {
  std::vector<unsigned> alpha(d, 0U);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
    if (i + 1 == d) {
      if (exact_sum) {
        alpha[i] = left;
        visit(alpha);
      } else {
        for (unsigned k = 0; k <= left; ++k) {
          alpha[i] = k;
          visit(alpha);
        }
      }
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      alpha[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (d == 0) return;
  rec(0, m);
}

}  // namespace detail

/// Deterministic samples. simplex: alpha/m with |alpha| <= m; simplex_face:
/// |alpha| = m; ball: the lattice -1 + 2k/m per axis cut to the unit ball;
/// sphere: the lattice points on the boundary of [-1,1]^d, normalized (this
/// includes the axis points and every sign pattern of the main diagonal).
inline std::vector<std::vector<double>> sample_domain(const Domain& dom, unsigned m) {
  if (m < 1) throw std::invalid_argument("resolution must be >= 1");
  const unsigned d = dom.dim;
  std::vector<std::vector<double>> out;
  switch (dom.kind) {
    case DomainKind::simplex:
    case DomainKind::simplex_face:
      detail::for_each_lattice(d, m, dom.kind == DomainKind::simplex_face,
                               [&](const std::vector<unsigned>& a) {
                                 std::vector<double> x(d);
                                 for (unsigned i = 0; i < d; ++i) x[i] = static_cast<double>(a[i]) / m;
                                 out.push_back(std::move(x));
                               });
      break;
    case DomainKind::ball:
    case DomainKind::sphere: {
      std::vector<unsigned> k(d, 0U);
      while (true) {
        std::vector<double> x(d);
        double r2 = 0.0;
        bool on_cube_boundary = false;
        for (unsigned i = 0; i < d; ++i) {
          x[i] = -1.0 + 2.0 * static_cast<double>(k[i]) / m;
          if (2 * k[i] == m) x[i] = 0.0;
          r2 += x[i] * x[i];
          if (k[i] == 0 || k[i] == m) on_cube_boundary = true;
        }
        if (dom.kind == DomainKind::ball) {
          if (r2 <= 1.0 + 1e-12) out.push_back(std::move(x));
        } else if (on_cube_boundary) {
          const double r = std::sqrt(r2);
          for (double& v : x) v /= r;
          out.push_back(std::move(x));
        }
        unsigned i = 0;
        while (i < d && k[i] == m) k[i++] = 0;
        if (i == d) break;
        ++k[i];
      }
      break;
    }
  }
  return out;
}

}  // namespace chebydev
