#pragma once

// Flat binary64 evaluator for a fixed polynomial: value, gradient and Hessian
// from one table of coordinate powers. Used in every inner loop of the
// searches; the sparse map in Poly is too slow there.

#include "chebydev/poly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <span>
#include <vector>

namespace chebydev {

class CompiledPoly {
 public:
  CompiledPoly() = default;

  explicit CompiledPoly(const FPoly& p) : nvars_(p.nvars()), max_exp_(p.nvars(), 0U) {
    coef_.reserve(p.size());
    exps_.reserve(p.size() * nvars_);
    for (const auto& [e, c] : p.terms()) {
      coef_.push_back(c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        exps_.push_back(e[i]);
        max_exp_[i] = std::max(max_exp_[i], e[i]);
      }
    }
    for (unsigned m : max_exp_) stride_ = std::max<std::size_t>(stride_, m + 1);
  }

  explicit CompiledPoly(const QPoly& p) : CompiledPoly(p.to_float()) {}

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t size() const noexcept { return coef_.size(); }

  double value(std::span<const double> x) const {
    const double* P = fill_powers(x);
    double v = 0.0;
    for (std::size_t t = 0; t < coef_.size(); ++t) {
      double term = coef_[t];
      const unsigned* e = &exps_[t * nvars_];
      for (std::size_t i = 0; i < nvars_; ++i) term *= pw(P, i, e[i]);
      v += term;
    }
    return v;
  }

  double value(const Eigen::VectorXd& x) const {
    return value(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
  }

  double value(const std::vector<double>& x) const { return value(std::span<const double>(x)); }

  /// Value and gradient; grad is resized to nvars.
  double value_grad(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const {
    const double* P = fill_powers(std::span<const double>(x.data(), nvars_));
    grad.setZero(static_cast<Eigen::Index>(nvars_));
    double v = 0.0;
    for (std::size_t t = 0; t < coef_.size(); ++t) {
      const unsigned* e = &exps_[t * nvars_];
      v += coef_[t] * monomial(P, e, nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        grad[static_cast<Eigen::Index>(i)] += coef_[t] * e[i] * monomial(P, e, i);
      }
    }
    return v;
  }

  /// Value, gradient and Hessian.
  double value_grad_hess(const Eigen::VectorXd& x, Eigen::VectorXd& grad,
                         Eigen::MatrixXd& hess) const {
    const auto n = static_cast<Eigen::Index>(nvars_);
    const double* P = fill_powers(std::span<const double>(x.data(), nvars_));
    grad.setZero(n);
    hess.setZero(n, n);
    double v = 0.0;
    for (std::size_t t = 0; t < coef_.size(); ++t) {
      const unsigned* e = &exps_[t * nvars_];
      const double c = coef_[t];
      v += c * monomial(P, e, nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        const auto ii = static_cast<Eigen::Index>(i);
        grad[ii] += c * e[i] * monomial(P, e, i);
        if (e[i] >= 2) hess(ii, ii) += c * e[i] * (e[i] - 1) * monomial2(P, e, i, i);
        for (std::size_t j = i + 1; j < nvars_; ++j) {
          if (e[j] == 0) continue;
          const auto jj = static_cast<Eigen::Index>(j);
          const double h = c * e[i] * e[j] * monomial2(P, e, i, j);
          hess(ii, jj) += h;
          hess(jj, ii) += h;
        }
      }
    }
    return v;
  }

 private:
  // Power tables live in per-thread scratch so one CompiledPoly can be shared
  // across threads.
  static std::vector<double>& scratch() {
    thread_local std::vector<double> buf;
    return buf;
  }

  double pw(const double* P, std::size_t i, unsigned k) const { return P[i * stride_ + k]; }

  const double* fill_powers(std::span<const double> x) const {
    if (x.size() != nvars_) throw std::invalid_argument("point dimension does not match nvars");
    auto& powers = scratch();
    powers.assign(nvars_ * stride_, 1.0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (unsigned k = 1; k <= max_exp_[i]; ++k) powers[i * stride_ + k] = powers[i * stride_ + k - 1] * x[i];
    }
    return powers.data();
  }

  // Product of x^e with the exponent of variable `skip` lowered by one (skip == nvars: none).
  double monomial(const double* P, const unsigned* e, std::size_t skip) const {
    double m = 1.0;
    for (std::size_t i = 0; i < nvars_; ++i) m *= pw(P, i, i == skip ? e[i] - 1 : e[i]);
    return m;
  }

  // Product of x^e with exponents of i and j each lowered by one (twice if i == j).
  double monomial2(const double* P, const unsigned* e, std::size_t i, std::size_t j) const {
    double m = 1.0;
    for (std::size_t k = 0; k < nvars_; ++k) {
      unsigned ek = e[k];
      if (k == i) --ek;
      if (k == j) --ek;
      m *= pw(P, k, ek);
    }
    return m;
  }

  std::size_t nvars_ = 0;
  std::vector<double> coef_;
  std::vector<unsigned> exps_;
  std::vector<unsigned> max_exp_;
  std::size_t stride_ = 1;
};

}  // namespace chebydev
