#pragma once

// Sparse multivariate polynomials over an exact or floating coefficient field.
//
// A Poly stores a map from exponent vectors to nonzero coefficients, ordered
// graded-lexicographically so that iteration, printing and serialization are
// deterministic. Variables are indexed from 0.

#include "chebydev/rational.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chebydev {

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0U);
}

/// Lower total degree first; within one degree, x1 ranks before x2 (so x1^2,
/// x1*x2, x2^2, ... in two variables).
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

template <Field C>
class Poly {
 public:
  using Coeff = C;
  using TermMap = std::map<Exponents, C, GradedLex>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  Poly(std::size_t nvars, std::initializer_list<std::pair<Exponents, C>> terms)
      : nvars_(nvars) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  static Poly constant(std::size_t nvars, const C& c) {
    Poly p(nvars);
    p.add_term(Exponents(nvars, 0U), c);
    return p;
  }

  static Poly variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw std::out_of_range("variable index out of range");
    Exponents e(nvars, 0U);
    e[i] = 1;
    Poly p(nvars);
    p.add_term(e, C(1));
    return p;
  }

  static Poly monomial(const Exponents& e, const C& c = C(1)) {
    Poly p(e.size());
    p.add_term(e, c);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Total degree; nullopt for the zero polynomial (degree minus infinity).
  std::optional<unsigned> degree() const {
    if (terms_.empty()) return std::nullopt;
    return total_degree(terms_.rbegin()->first);
  }

  C coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C(0) : it->second;
  }

  /// Accumulates c into the coefficient of x^e; zero results are pruned.
  void add_term(const Exponents& e, const C& c) {
    if (e.size() != nvars_) {
      throw std::invalid_argument("exponent vector length does not match nvars");
    }
    if (c == C(0)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == C(0)) terms_.erase(it);
    }
  }

  Poly operator-() const {
    Poly r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  Poly& operator*=(const C& s) {
    if (s == C(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  Poly& operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const C& s) { return a *= s; }
  friend Poly operator*(const C& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    Poly r(a.nvars_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Poly pow(unsigned k) const {
    Poly result = constant(nvars_, C(1));
    Poly base = *this;
    while (k != 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k != 0) base *= base;
    }
    return result;
  }

  /// Evaluates at x; both operands must come from the same field.
  C operator()(std::span<const C> x) const {
    if (x.size() != nvars_) {
      throw std::invalid_argument("point dimension " + std::to_string(x.size()) +
                                  " does not match nvars " + std::to_string(nvars_));
    }
    std::vector<unsigned> max_exp(nvars_, 0U);
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) max_exp[i] = std::max(max_exp[i], e[i]);
    }
    std::vector<std::vector<C>> powers(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      powers[i].resize(max_exp[i] + 1);
      powers[i][0] = C(1);
      for (unsigned k = 1; k <= max_exp[i]; ++k) powers[i][k] = powers[i][k - 1] * x[i];
    }
    C sum(0);
    for (const auto& [e, c] : terms_) {
      C term = c;
      bool vanishes = false;
      for (std::size_t i = 0; i < nvars_ && !vanishes; ++i) {
        if (e[i] == 0) continue;
        if (x[i] == C(0)) {
          vanishes = true;
        } else {
          term *= powers[i][e[i]];
        }
      }
      if (!vanishes) sum += term;
    }
    return sum;
  }

  C operator()(const std::vector<C>& x) const { return (*this)(std::span<const C>(x)); }

  /// Lossless widening to binary64; the reverse conversion is deliberately absent.
  Poly<double> to_float() const
    requires std::same_as<C, Rational>
  {
    Poly<double> r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, to_double(c));
    return r;
  }

 private:
  void check_compatible(const Poly& o) const {
    if (o.nvars_ != nvars_) {
      throw std::invalid_argument("polynomials have different numbers of variables (" +
                                  std::to_string(nvars_) + " vs " +
                                  std::to_string(o.nvars_) + ")");
    }
  }

  std::size_t nvars_;
  TermMap terms_;
};

using QPoly = Poly<Rational>;
using FPoly = Poly<double>;

template <Field C>
C poly_eval(const Poly<C>& p, std::span<const C> x) {
  return p(x);
}

template <Field C>
Poly<C> partial_derivative(const Poly<C>& p, std::size_t i) {
  if (i >= p.nvars()) throw std::out_of_range("partial derivative index out of range");
  Poly<C> r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[i] == 0) continue;
    Exponents d = e;
    --d[i];
    r.add_term(d, c * C(e[i]));
  }
  return r;
}

template <Field C>
std::vector<Poly<C>> gradient(const Poly<C>& p) {
  std::vector<Poly<C>> g;
  g.reserve(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) g.push_back(partial_derivative(p, i));
  return g;
}

template <Field C>
Poly<C> laplacian(const Poly<C>& p) {
  Poly<C> r(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    r += partial_derivative(partial_derivative(p, i), i);
  }
  return r;
}

/// Substitutes x_i -> subs[i]; every substituted polynomial shares one arity,
/// which becomes the arity of the result.
template <Field C>
Poly<C> compose(const Poly<C>& p, std::span<const Poly<C>> subs) {
  if (subs.size() != p.nvars()) {
    throw std::invalid_argument("compose needs one substitution per variable");
  }
  const std::size_t m = subs.empty() ? 0 : subs.front().nvars();
  for (const auto& s : subs) {
    if (s.nvars() != m) throw std::invalid_argument("substitutions differ in arity");
  }
  std::vector<std::vector<Poly<C>>> powers(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) powers[i].push_back(Poly<C>::constant(m, C(1)));
  auto power_of = [&](std::size_t i, unsigned k) -> const Poly<C>& {
    while (powers[i].size() <= k) powers[i].push_back(powers[i].back() * subs[i]);
    return powers[i][k];
  };
  Poly<C> r(m);
  for (const auto& [e, c] : p.terms()) {
    Poly<C> term = Poly<C>::constant(m, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term *= power_of(i, e[i]);
    }
    r += term;
  }
  return r;
}

template <Field C>
Poly<C> compose(const Poly<C>& p, const std::vector<Poly<C>>& subs) {
  return compose(p, std::span<const Poly<C>>(subs));
}

/// Face substitutions used to restrict a polynomial on the simplex.
struct Face {
  enum class Kind { set_var_zero, affine_last };
  Kind kind;
  std::size_t var = 0;

  static Face zero(std::size_t i) { return {Kind::set_var_zero, i}; }
  static Face affine_last() { return {Kind::affine_last, 0}; }
};

/// set_var_zero(i): drop variable i after setting it to 0.
/// affine_last: substitute x_last := 1 - x_0 - ... - x_{last-1}.
template <Field C>
Poly<C> restrict_face(const Poly<C>& p, const Face& face) {
  const std::size_t n = p.nvars();
  if (n < 2) throw std::invalid_argument("restrict_face needs at least two variables");
  if (face.kind == Face::Kind::set_var_zero) {
    if (face.var >= n) throw std::out_of_range("face variable out of range");
    Poly<C> r(n - 1);
    Exponents e(n - 1);
    for (const auto& [ex, c] : p.terms()) {
      if (ex[face.var] != 0) continue;
      for (std::size_t i = 0, j = 0; i < n; ++i) {
        if (i != face.var) e[j++] = ex[i];
      }
      r.add_term(e, c);
    }
    return r;
  }
  std::vector<Poly<C>> subs;
  subs.reserve(n);
  Poly<C> last = Poly<C>::constant(n - 1, C(1));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    subs.push_back(Poly<C>::variable(n - 1, i));
    last -= subs.back();
  }
  subs.push_back(last);
  return compose(p, subs);
}

/// Exact fields compare term maps; float fields compare coefficients to tol.
template <Field C>
bool poly_equal(const Poly<C>& a, const Poly<C>& b, double tol = 0.0) {
  if (a.nvars() != b.nvars()) return false;
  if constexpr (is_exact_v<C>) {
    return a.terms() == b.terms();
  } else {
    const Poly<C> diff = a - b;
    for (const auto& [e, c] : diff.terms()) {
      if (std::abs(c) > tol) return false;
    }
    return true;
  }
}

template <Field C>
double max_abs_coefficient(const Poly<C>& p) {
  double m = 0.0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(to_double(c)));
  return m;
}

/// Renames variable i to perm[i].
template <Field C>
Poly<C> permute_variables(const Poly<C>& p, std::span<const std::size_t> perm) {
  if (perm.size() != p.nvars()) throw std::invalid_argument("permutation length mismatch");
  Poly<C> r(p.nvars());
  Exponents e(p.nvars());
  for (const auto& [ex, c] : p.terms()) {
    for (std::size_t i = 0; i < ex.size(); ++i) e[perm[i]] = ex[i];
    r.add_term(e, c);
  }
  return r;
}

/// Embeds p into one more variable, inserting a fresh variable at index pos.
template <Field C>
Poly<C> insert_variable(const Poly<C>& p, std::size_t pos) {
  if (pos > p.nvars()) throw std::out_of_range("insert position out of range");
  Poly<C> r(p.nvars() + 1);
  for (const auto& [ex, c] : p.terms()) {
    Exponents e = ex;
    e.insert(e.begin() + static_cast<std::ptrdiff_t>(pos), 0U);
    r.add_term(e, c);
  }
  return r;
}

/// Univariate polynomial from ascending coefficients.
template <Field C>
Poly<C> univariate(const std::vector<C>& ascending) {
  Poly<C> r(1);
  for (std::size_t k = 0; k < ascending.size(); ++k) {
    r.add_term(Exponents{static_cast<unsigned>(k)}, ascending[k]);
  }
  return r;
}

inline std::string coefficient_string(const Rational& c) { return to_string(c); }
inline std::string coefficient_string(double c) {
  std::ostringstream os;
  os.precision(17);
  os << c;
  return os.str();
}

inline std::string monomial_string(const Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

/// Human-readable form, e.g. "1 - 4*x1 + 72*x1*x2*x3" (variables 1-based).
template <Field C>
std::string to_string(const Poly<C>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = c < C(0);
    const C mag = negative ? C(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const bool unit = (mag == C(1));
    const bool constant = total_degree(e) == 0;
    if (constant || !unit) {
      out += coefficient_string(mag);
      if (!constant) out += "*";
    }
    if (!constant) out += monomial_string(e);
  }
  return out;
}

}  // namespace chebydev
