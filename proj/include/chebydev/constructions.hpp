#pragma once

// The extremal families: R_3 = T_3 and its recursive extension T_d with
// leading coefficients r_d, the R_5/U_5 family for (x1 x2 x3)^2, and the lift
// x_i -> x_i^2 that carries simplex polynomials to the ball.

#include "chebydev/poly.hpp"
#include "chebydev/symfun.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chebydev {

template <Field C>
struct FamilyReport {
  unsigned dimension = 0;
  Poly<C> polynomial;
  C r_value{};  // r_d for T_d, 27^2 b for R_5
  std::string construction_log;
};

enum class RdMethod { closed_form, recursive };

/// T_3 = 72 e_3 - 4 e_1 + 4 e_1^2 - 8 e_2 + 1 in d >= 3 variables.
inline QPoly t3_polynomial(unsigned d) {
  if (d < 3) throw std::invalid_argument("T_3 needs at least three variables");
  const QPoly e1 = elementary_symmetric(1, d);
  QPoly p = Rational(72) * elementary_symmetric(3, d);
  p -= Rational(4) * e1;
  p += Rational(4) * (e1 * e1);
  p -= Rational(8) * elementary_symmetric(2, d);
  p += QPoly::constant(d, 1);
  return p;
}

/// The point (1/j, ..., 1/j, 0, ..., 0) in R^d with j nonzero coordinates.
inline std::vector<Rational> ladder_point(unsigned j, unsigned d) {
  std::vector<Rational> x(d, Rational(0));
  for (unsigned i = 0; i < j; ++i) x[i] = Rational(1, j);
  return x;
}

namespace detail {

inline Integer rd_closed_form(unsigned d) {
  if (d == 3) return 72;
  Integer sum = 0;
  for (unsigned k = 4; k <= d; ++k) {
    const long long kk = k;
    const long long bracket = ((k % 2 == 0) ? 1 : -1) * (9 * kk * kk - 32 * kk + 24) + kk * kk;
    sum += integer_pow(Integer(k), d - 3) * binomial(d, k) * bracket;
  }
  return Integer(d) * sum;
}

inline Integer require_integer(const Rational& q, unsigned k) {
  if (denominator(q) != 1) {
    throw std::logic_error("r_" + std::to_string(k) + " is not an integer: " + to_string(q));
  }
  return numerator(q);
}

/// T_k in d variables for k = 3..d, together with r_3..r_d from the definition.
struct TdChain {
  QPoly polynomial;
  std::vector<Integer> r;  // r[k] for k >= 3
};

inline TdChain td_chain(unsigned d) {
  TdChain chain{t3_polynomial(d), std::vector<Integer>(d + 1, Integer(0))};
  chain.r[3] = 72;
  for (unsigned k = 4; k <= d; ++k) {
    // T_{k-1} viewed in R^k is T_{k-1} in R^d with the trailing coordinates zero.
    const Rational at_centroid = chain.polynomial(ladder_point(k, d));
    const Rational rk = rational_pow(Rational(k), k) * (at_centroid + 1);
    chain.r[k] = require_integer(rk, k);
    chain.polynomial = Rational(chain.r[k]) * elementary_symmetric(k, d) - chain.polynomial;
  }
  return chain;
}

}  // namespace detail

/// r_d by the closed form or by the defining recursion r_k = k^k [T_{k-1}(1/k..) + 1].
inline Integer compute_rd(unsigned d, RdMethod method) {
  if (d < 3) throw std::invalid_argument("r_d is defined for d >= 3");
  if (method == RdMethod::closed_form) return detail::rd_closed_form(d);
  return detail::td_chain(d).r[d];
}

/// T_d with r_d checked against the closed form; disagreement is a hard error.
inline FamilyReport<Rational> build_Td(unsigned d) {
  if (d < 3) throw std::invalid_argument("d must be >= 3");
  auto chain = detail::td_chain(d);
  std::ostringstream log;
  log << "T_3 = 72 e_3 - 4 e_1 + 4 e_1^2 - 8 e_2 + 1\n";
  for (unsigned k = 4; k <= d; ++k) {
    const Integer closed = detail::rd_closed_form(k);
    if (closed != chain.r[k]) {
      throw std::logic_error("r_" + std::to_string(k) + " disagrees: recursion " +
                             chain.r[k].str() + " vs closed form " + closed.str());
    }
    log << "r_" << k << " = " << chain.r[k].str() << " (recursion = closed form)\n";
    log << "T_" << k << " = r_" << k << " e_" << k << " - T_" << (k - 1) << "\n";
  }
  FamilyReport<Rational> report;
  report.dimension = d;
  report.polynomial = std::move(chain.polynomial);
  report.r_value = Rational(chain.r[d]);
  report.construction_log = log.str();
  return report;
}

/// Prime factorization as (prime, multiplicity) pairs in increasing prime order.
inline std::vector<std::pair<Integer, unsigned>> prime_factorization(Integer n) {
  if (n < 1) throw std::invalid_argument("factorization needs a positive integer");
  std::vector<Integer> primes;
  std::mt19937_64 rng(0x5eedU);
  auto pollard = [&](const Integer& m) -> Integer {
    if (m % 2 == 0) return 2;
    std::uniform_int_distribution<unsigned long long> dist(1, 1ULL << 40);
    while (true) {
      Integer x = Integer(dist(rng)) % m;
      Integer y = x;
      const Integer c = Integer(dist(rng)) % (m - 1) + 1;
      Integer g = 1;
      while (g == 1) {
        x = (x * x + c) % m;
        y = (y * y + c) % m;
        y = (y * y + c) % m;
        g = gcd(x > y ? Integer(x - y) : Integer(y - x), m);
      }
      if (g != m) return g;
    }
  };
  std::vector<Integer> stack;
  for (unsigned p = 2; p < 1000 && n > 1; ++p) {
    while (n % p == 0) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    Integer m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (boost::multiprecision::miller_rabin_test(m, 40)) {
      primes.push_back(m);
      continue;
    }
    const Integer f = pollard(m);
    stack.push_back(f);
    stack.push_back(Integer(m / f));
  }
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, unsigned>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1U);
    }
  }
  return out;
}

/// "2^3 * 3^2" style rendering.
inline std::string factorization_string(const std::vector<std::pair<Integer, unsigned>>& f) {
  std::string s;
  for (const auto& [p, m] : f) {
    if (!s.empty()) s += " * ";
    s += p.str();
    if (m > 1) s += "^" + std::to_string(m);
  }
  return s.empty() ? "1" : s;
}

/// T_3 evaluated at (1/d, ..., 1/d) in R^d through the polynomial itself.
inline Rational t3_at_centroid(unsigned d) { return t3_polynomial(d)(ladder_point(d, d)); }

/// The closed form d^{-2}(9 d^2 - 32 d + 24).
inline Rational t3_centroid_closed_form(unsigned d) {
  const long long dd = d;
  return Rational(9 * dd * dd - 32 * dd + 24, dd * dd);
}

/// J_{k,d} = sum_{j=k}^{d} d C(d,j) j^{d-1} (-1)^{j-k} C(j,k) j^{-k}; equals delta_{k,d}.
inline Rational j_kd(unsigned k, unsigned d) {
  Rational sum = 0;
  for (unsigned j = k; j <= d; ++j) {
    Rational term = Rational(Integer(d) * binomial(d, j) * integer_pow(Integer(j), d - 1) *
                             binomial(j, k));
    term /= rational_pow(Rational(j), k);
    if ((j - k) % 2 == 1) term = -term;
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// R_5 / U_5

/// Integer coefficients (ascending powers) of the degree-8 polynomial whose
/// root in (-1.3, -1.1) fixes the R_5 family.
inline constexpr std::array<long long, 9> kR5RootPolynomial = {
    -612220032LL, -1365527808LL, -835528041LL, -101556504LL, 23270976LL,
    26037504LL,   7670016LL,     929280LL,     41984LL};

struct R5Constants {
  double d_root = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;        // 32/9 + a + b, the value that makes U_5(1/3,1/3) = 1
  double leading = 0.0;  // 27^2 b
  std::vector<double> real_roots;
};

namespace detail {

inline long double horner(std::span<const long long> coeffs, long double x) {
  long double v = 0.0L;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + static_cast<long double>(*it);
  return v;
}

inline long double horner_derivative(std::span<const long long> coeffs, long double x) {
  long double v = 0.0L;
  for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
    v = v * x + static_cast<long double>(k) * static_cast<long double>(coeffs[k]);
  }
  return v;
}

}  // namespace detail

/// Real roots of an integer polynomial found by sign-change scanning on
/// [lo, hi] at the given step, bisection, and a Newton polish.
inline std::vector<double> real_roots_scan(std::span<const long long> coeffs, double lo, double hi,
                                           double step) {
  std::vector<double> roots;
  const long steps = std::lround((hi - lo) / step);
  auto at = [&](long i) { return static_cast<long double>(lo) + static_cast<long double>(i) * step; };
  long double prev_x = at(0);
  long double prev_v = detail::horner(coeffs, prev_x);
  for (long i = 1; i <= steps; ++i) {
    const long double x = at(i);
    const long double v = detail::horner(coeffs, x);
    if (prev_v == 0.0L) {
      roots.push_back(static_cast<double>(prev_x));
    } else if ((prev_v < 0.0L) != (v < 0.0L) && v != 0.0L) {
      long double left = prev_x, right = x, fl = prev_v;
      for (int it = 0; it < 200 && right - left > 1e-15L * std::max(1.0L, std::fabs(left)); ++it) {
        const long double mid = 0.5L * (left + right);
        const long double fm = detail::horner(coeffs, mid);
        if ((fm < 0.0L) == (fl < 0.0L)) {
          left = mid;
          fl = fm;
        } else {
          right = mid;
        }
      }
      long double r = 0.5L * (left + right);
      for (int it = 0; it < 50; ++it) {
        const long double dr = detail::horner(coeffs, r) / detail::horner_derivative(coeffs, r);
        r -= dr;
        if (std::fabs(dr) < 1e-14L * std::max(1.0L, std::fabs(r))) break;
      }
      roots.push_back(static_cast<double>(r));
    }
    prev_x = x;
    prev_v = v;
  }
  return roots;
}

inline R5Constants derive_R5_constants() {
  R5Constants k;
  k.real_roots = real_roots_scan(kR5RootPolynomial, -10.0, 10.0, 0.01);
  std::optional<double> selected;
  for (double r : k.real_roots) {
    if (r > -1.3 && r < -1.1) selected = r;
  }
  if (!selected) {
    throw std::runtime_error(
        "degree-8 polynomial has no real root in (-1.3, -1.1); check its coefficients");
  }
  const double d = *selected;
  k.d_root = d;
  k.b = 32.0 / (d * d);
  k.a = 16.0 * (3.0 - 4.0 * d) / (3.0 * d * d);
  k.c = 32.0 / 9.0 + k.a + k.b;
  k.leading = 729.0 * k.b;
  return k;
}

/// R_5 in three variables (binary64 coefficients; a and b are irrational).
inline FPoly build_R5(const R5Constants& k) {
  const FPoly x1 = FPoly::variable(3, 0), x2 = FPoly::variable(3, 1), x3 = FPoly::variable(3, 2);
  const FPoly s = x1 + x2 + x3;
  const FPoly q = x1 * x1 + x2 * x2 + x3 * x3;
  const FPoly e2 = x1 * x2 + x1 * x3 + x2 * x3;
  const FPoly e3 = x1 * x2 * x3;
  const FPoly one = FPoly::constant(3, 1.0);
  const FPoly inner = one - 4.0 * s + 4.0 * q;
  FPoly r = k.leading * (e3 * e3);
  r += -1.0 * one + 2.0 * s - 2.0 * (s * s) + 2.0 * (inner * inner);
  r -= 27.0 * (e3 * ((32.0 / 9.0 - 2.0 * k.a + k.b) * (s * s) + 6.0 * k.a * e2));
  return r;
}

/// U_5(x, y) = 27 P (27 b P + 3 a Q - c) + 2 (-3 + 4 Q)^2 - 1 with
/// P = x y (1 - x - y) and Q = x^2 + y^2 + (1 - x - y)^2.
inline FPoly build_U5(const R5Constants& k) {
  const FPoly x = FPoly::variable(2, 0), y = FPoly::variable(2, 1);
  const FPoly one = FPoly::constant(2, 1.0);
  const FPoly w = one - x - y;
  const FPoly P = x * y * w;
  const FPoly Q = x * x + y * y + w * w;
  const FPoly cheb = -3.0 * one + 4.0 * Q;
  return 27.0 * (P * (27.0 * k.b * P + 3.0 * k.a * Q - k.c * one)) + 2.0 * (cheb * cheb) - one;
}

/// U_3(x, y) = 72 x y (1 - x - y) - 3 + 4 (x^2 + y^2 + (1 - x - y)^2).
inline QPoly build_U3() {
  const QPoly x = QPoly::variable(2, 0), y = QPoly::variable(2, 1);
  const QPoly one = QPoly::constant(2, 1);
  const QPoly w = one - x - y;
  return Rational(72) * (x * y * w) - Rational(3) * one + Rational(4) * (x * x + y * y + w * w);
}

inline FamilyReport<double> build_R5_family(const R5Constants& k) {
  FamilyReport<double> report;
  report.dimension = 3;
  report.polynomial = build_R5(k);
  report.r_value = k.leading;
  std::ostringstream log;
  log.precision(12);
  log << "d = " << k.d_root << " (root of the degree-8 polynomial in (-1.3, -1.1))\n"
      << "a = 16(3 - 4d)/(3 d^2) = " << k.a << "\n"
      << "b = 32/d^2 = " << k.b << "\n"
      << "c = 32/9 + a + b = " << k.c << "\n"
      << "27^2 b = " << k.leading << "\n";
  report.construction_log = log.str();
  return report;
}

/// Diagonal and edge extremal parameters of U_5: U_5(t,t) = -1 with a
/// vanishing diagonal derivative at diagonal_minus, U_5(t,t) = +1 at
/// diagonal_plus = -d/9, and the edge minima of T_4(2x-1) at (2 -+ sqrt 2)/4.
struct R5ExtremalPoints {
  double diagonal_minus = 0.0;
  double diagonal_plus = 0.0;
  double edge = 0.0;
};

inline FPoly u5_diagonal(const R5Constants& k) {
  const FPoly t = FPoly::variable(1, 0);
  return compose(build_U5(k), std::vector<FPoly>{t, t});
}

inline R5ExtremalPoints r5_extremal_points(const R5Constants& k) {
  const FPoly diag = u5_diagonal(k);
  const FPoly d1 = partial_derivative(diag, 0);
  const FPoly d2 = partial_derivative(d1, 0);
  double t = 0.46;
  for (int it = 0; it < 100; ++it) {
    const double step = d1(std::vector<double>{t}) / d2(std::vector<double>{t});
    t -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return {t, -k.d_root / 9.0, (2.0 - std::sqrt(2.0)) / 4.0};
}

/// p(x_1^2, ..., x_d^2).
template <Field C>
Poly<C> lift_to_ball(const Poly<C>& p) {
  std::vector<Poly<C>> subs;
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    Exponents e(p.nvars(), 0U);
    e[i] = 2;
    subs.push_back(Poly<C>::monomial(e));
  }
  return compose(p, subs);
}

}  // namespace chebydev
