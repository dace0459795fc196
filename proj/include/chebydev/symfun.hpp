#pragma once

// Symmetric-function building blocks: elementary symmetric polynomials, power
// sums, monomial symmetric functions, symmetrization over S_d, and the
// univariate Chebyshev polynomials of the first kind.

#include "chebydev/poly.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace chebydev {

/// All distinct permutations of e, in lexicographic order.
inline std::vector<Exponents> distinct_permutations(Exponents e) {
  std::sort(e.begin(), e.end());
  std::vector<Exponents> out;
  do {
    out.push_back(e);
  } while (std::next_permutation(e.begin(), e.end()));
  return out;
}

/// Partitions of n into at most max_parts positive parts, each non-increasing.
inline std::vector<std::vector<unsigned>> partitions(unsigned n, unsigned max_parts) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> current;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned cap) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    if (current.size() == max_parts) return;
    for (unsigned part = std::min(remaining, cap); part >= 1; --part) {
      current.push_back(part);
      rec(remaining - part, part);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

template <Field C = Rational>
Poly<C> elementary_symmetric(unsigned k, unsigned d) {
  if (k > d) {
    throw std::invalid_argument("elementary symmetric degree " + std::to_string(k) +
                                " exceeds number of variables " + std::to_string(d));
  }
  Poly<C> p(d);
  // Walk the k-subsets of {0..d-1} in lexicographic order.
  std::vector<unsigned> idx(k);
  for (unsigned i = 0; i < k; ++i) idx[i] = i;
  Exponents e(d, 0U);
  while (true) {
    std::fill(e.begin(), e.end(), 0U);
    for (unsigned i : idx) e[i] = 1;
    p.add_term(e, C(1));
    int pos = static_cast<int>(k) - 1;
    while (pos >= 0 && idx[pos] == d - k + static_cast<unsigned>(pos)) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (unsigned j = static_cast<unsigned>(pos) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return p;
}

/// m_k = x_1^k + ... + x_d^k; m_0 is the constant d.
template <Field C = Rational>
Poly<C> power_sum(unsigned k, unsigned d) {
  if (k == 0) return Poly<C>::constant(d, C(d));
  Poly<C> p(d);
  for (unsigned i = 0; i < d; ++i) {
    Exponents e(d, 0U);
    e[i] = k;
    p.add_term(e, C(1));
  }
  return p;
}

/// Sum of x^beta over the distinct permutations beta of the (zero-padded) partition.
template <Field C = Rational>
Poly<C> monomial_symmetric(const std::vector<unsigned>& partition, unsigned d) {
  if (partition.size() > d) throw std::invalid_argument("partition has more parts than variables");
  Exponents e(d, 0U);
  std::copy(partition.begin(), partition.end(), e.begin());
  Poly<C> p(d);
  for (const auto& beta : distinct_permutations(e)) p.add_term(beta, C(1));
  return p;
}

/// T_n(t) by T_{n+1} = 2t T_n - T_{n-1}.
template <Field C = Rational>
Poly<C> chebyshev_univariate(unsigned n) {
  Poly<C> prev = Poly<C>::constant(1, C(1));
  if (n == 0) return prev;
  const Poly<C> t = Poly<C>::variable(1, 0);
  Poly<C> cur = t;
  for (unsigned k = 1; k < n; ++k) {
    Poly<C> next = C(2) * (t * cur) - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Average of p over all permutations of its variables. Each monomial spreads
/// evenly over the distinct permutations of its exponent vector.
template <Field C>
Poly<C> symmetrize(const Poly<C>& p) {
  Poly<C> r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    const auto orbit = distinct_permutations(e);
    const C share = c / C(static_cast<unsigned>(orbit.size()));
    for (const auto& beta : orbit) r.add_term(beta, share);
  }
  return r;
}

template <Field C>
bool is_symmetric(const Poly<C>& p) {
  for (const auto& [e, c] : p.terms()) {
    for (const auto& beta : distinct_permutations(e)) {
      if (p.coefficient(beta) != c) return false;
    }
  }
  return true;
}

}  // namespace chebydev
