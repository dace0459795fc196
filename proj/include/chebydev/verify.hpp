#pragma once

// Named invariant suites over a range of dimensions. Each check records
// whether it holds, whether a failure should count (conjecture-mode and
// printed-constant checks only report), and a residual when one exists.

#include "chebydev/constructions.hpp"
#include "chebydev/poly_json.hpp"
#include "chebydev/signatures.hpp"
#include "chebydev/supnorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebydev {

struct Check {
  std::string suite;
  std::optional<unsigned> d;
  std::string name;
  bool pass = false;
  bool asserting = true;
  std::optional<double> residual;
  std::string detail;
};

inline json to_json(const Check& c) {
  json j{{"suite", c.suite}, {"d", c.d ? json(*c.d) : json(nullptr)}, {"name", c.name},
         {"pass", c.pass}, {"asserting", c.asserting}};
  j["residual"] = c.residual ? json(*c.residual) : json(nullptr);
  j["detail"] = c.detail;
  return j;
}

struct VerifyOptions {
  unsigned resolution = 10;        // supnorm grid
  double sup_tol = 1e-9;           // |T_d| <= 1 + sup_tol in the proved cases
  double conjecture_tol = 1e-6;    // reported bound for d >= 6
  double r5_tol = 1e-8;            // certificate tolerance for R_5
  double weight_tol = 1e-5;        // recovered R_5 weights against the printed ones
  std::uint64_t seed = 20240601;
  unsigned max_determinant_d = 8;  // cofactor expansion grows like d!
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"signature", "supnorm", "laplacian", "cubature", "determinant",
                                              "combi"};
  return names;
}

namespace detail {

inline std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace detail

inline std::vector<Check> signature_checks(unsigned d, const VerifyOptions& opt = {}) {
  std::vector<Check> out;
  const QPoly td = build_Td(d).polynomial;
  const auto sets = build_extremal_sets(d);
  bool values = true;
  for (const auto& p : sets.plus) values = values && td(p) == Rational(1);
  for (const auto& p : sets.minus) values = values && td(p) == Rational(-1);
  out.push_back({"signature", d, "extremal_set_values", values, true, std::nullopt,
                 std::to_string(sets.plus.size()) + " plus / " + std::to_string(sets.minus.size()) +
                     " minus points, exact"});

  const auto L = build_L_functional(d);
  const auto ann = annihilation_report(L, d - 1, d);
  out.push_back({"signature", d, "L_annihilates_degree_d_minus_1", ann.annihilates, true, ann.max_residual,
                 std::to_string(ann.checked) + " monomials"});
  Rational le(0);
  const QPoly ed = elementary_symmetric<Rational>(d, d);
  for (std::size_t v = 0; v < L.points.size(); ++v) le += Rational(L.signs[v]) * L.weights[v] * ed(L.points[v]);
  out.push_back({"signature", d, "L_of_e_d_is_1_over_d", le == Rational(1, d), true, std::nullopt,
                 "L(e_d) = " + to_string(le)});

  const auto cert = certify_lower_bound(td_certificate(d));
  std::string why;
  for (const auto& r : cert.reasons) why += (why.empty() ? "" : "; ") + r;
  out.push_back({"signature", d, "td_certificate", cert.certified, true, cert.max_level_residual,
                 cert.certified ? "E >= 1/r_d certified exactly" : why});

  const auto sol = solve_signature_weights(sets.plus, sets.minus, d - 1, d);
  bool match = sol.status == WeightStatus::unique;
  double worst = 0.0;
  if (match) {
    // Compare with the L weights normalized to total mass 1.
    Rational total(0);
    for (const auto& w : L.weights) total += w;
    std::vector<Point<Rational>> pts = sets.plus;
    pts.insert(pts.end(), sets.minus.begin(), sets.minus.end());
    for (std::size_t v = 0; v < pts.size(); ++v) {
      for (std::size_t u = 0; u < L.points.size(); ++u) {
        if (L.points[u] == pts[v]) worst = std::max(worst, std::abs(sol.weights[v] - to_double(L.weights[u] / total)));
      }
    }
    match = worst < 1e-12;
  }
  out.push_back({"signature", d, "weights_recovered", match, true, worst, to_string(sol.status)});
  const auto over = solve_signature_weights(sets.plus, sets.minus, d, d);
  out.push_back({"signature", d, "no_weights_at_degree_d", over.status == WeightStatus::infeasible, true,
                 std::nullopt, to_string(over.status)});

  if (d == 3) {
    const auto k = derive_R5_constants();
    const auto rc = certify_lower_bound(r5_certificate(k), opt.r5_tol);
    out.push_back({"signature", d, "r5_certificate", rc.certified, true, rc.max_level_residual,
                   "tol " + detail::short_double(opt.r5_tol) + ", annihilation residual " +
                       detail::short_double(rc.annihilation_residual)});
    const auto S = r5_signature(k);
    std::vector<Point<double>> plus, minus;
    for (std::size_t v = 0; v < S.size(); ++v) (S.signs[v] > 0 ? plus : minus).push_back(S.points[v]);
    const auto rs = solve_signature_weights(plus, minus, 5, 3);
    double werr = std::numeric_limits<double>::infinity();
    if (rs.status == WeightStatus::unique) {
      // Match the total positive mass, then compare orbit by orbit.
      std::vector<Point<double>> pts = plus;
      pts.insert(pts.end(), minus.begin(), minus.end());
      double printed_plus = 0.0, solved_plus = 0.0;
      for (std::size_t v = 0; v < S.size(); ++v) {
        if (S.signs[v] > 0) printed_plus += S.weights[v];
      }
      for (std::size_t v = 0; v < plus.size(); ++v) solved_plus += rs.weights[v];
      const double scale = printed_plus / solved_plus;
      werr = 0.0;
      for (std::size_t v = 0; v < pts.size(); ++v) {
        for (std::size_t u = 0; u < S.size(); ++u) {
          if (detail::distance(S.points[u], pts[v]) < 1e-12) {
            werr = std::max(werr, std::abs(rs.weights[v] * scale - S.weights[u]));
          }
        }
      }
    }
    out.push_back({"signature", d, "r5_weights_recovered", werr <= opt.weight_tol, true, werr,
                   to_string(rs.status) + ", nullspace " + std::to_string(rs.nullspace_dim)});
  }
  return out;
}

inline std::vector<Check> supnorm_checks(unsigned d, const VerifyOptions& opt = {}) {
  std::vector<Check> out;
  SearchOptions so;
  so.seed = opt.seed;
  const auto rep = verify_Td_bound(d, opt.resolution, so, opt.sup_tol);
  if (rep.conjecture_mode) {
    const bool ok = rep.max_abs <= 1.0 + opt.conjecture_tol;
    out.push_back({"supnorm", d, "td_bound_conjecture", ok, false, rep.max_abs - 1.0,
                   std::string("conjecture mode: ") + (ok ? "no violation found" : "violation found") +
                       ", max at " + rep.location});
  } else {
    out.push_back({"supnorm", d, "td_bound", rep.pass && std::abs(rep.max_abs - 1.0) <= opt.sup_tol, true,
                   rep.max_abs - 1.0, "max at " + rep.location});
    const auto mp = max_principle_check(d, so);
    out.push_back({"supnorm", d, "boundary_carries_maximum", mp.pass, true, mp.boundary_max - mp.interior_max,
                   "interior max " + detail::short_double(mp.interior_max)});
  }
  const auto sph = sup_norm(elementary_symmetric<Rational>(d, d), Domain::sphere(d), 4, so);
  const double expect = std::pow(static_cast<double>(d), -0.5 * d);
  out.push_back({"supnorm", d, "product_on_sphere", std::abs(sph.value - expect) <= 1e-8, true,
                 sph.value - expect, "d^(-d/2)"});
  return out;
}

inline std::vector<Check> laplacian_checks(unsigned d) {
  std::vector<Check> out;
  const QPoly td = build_Td(d).polynomial;
  const QPoly lap = laplacian(td);
  const Rational sign(d % 2 == 1 ? 1 : -1);
  const bool constant = !lap.degree() || *lap.degree() == 0;
  const Rational value = lap.coefficient(Exponents(d, 0U));
  out.push_back({"laplacian", d, "signed_laplacian_positive_constant", constant && sign * value > 0, true,
                 std::nullopt, "laplacian = " + to_string(value)});
  out.push_back({"laplacian", d, "laplacian_is_8d", constant && value == sign * Rational(8 * d), true, std::nullopt,
                 "each e_k is multilinear, only 4 e_1^2 contributes"});
  out.push_back({"laplacian", d, "printed_constant_8", constant && value == sign * Rational(8), false, std::nullopt,
                 "the printed constant (-1)^(d-1) 8; reported, not asserted"});
  if (d >= 4) {
    const QPoly prev = build_Td(d - 1).polynomial;
    bool faces = true;
    for (unsigned i = 0; i < d; ++i) faces = faces && restrict_face(td, Face::zero(i)) == -prev;
    out.push_back({"laplacian", d, "face_restriction_is_minus_T_d_minus_1", faces, true, std::nullopt, ""});
  }
  out.push_back({"laplacian", d, "one_at_centroid", td(ladder_point(d, d)) == Rational(1), true, std::nullopt, ""});
  return out;
}

inline std::vector<Check> cubature_checks() {
  std::vector<Check> out;
  const auto rep = cubature_check();
  out.push_back({"cubature", std::nullopt, "exact_through_degree_2", rep.exact_degree2, true, std::nullopt,
                 std::to_string(rep.rows.size()) + " monomials of degree <= 3"});
  std::string sep = "none";
  if (rep.separating) sep = "x^" + std::to_string(rep.separating->first) + " y^" + std::to_string(rep.separating->second);
  out.push_back({"cubature", std::nullopt, "rules_differ_at_degree_3", rep.separating.has_value(), true, std::nullopt,
                 "first separating monomial " + sep});
  return out;
}

inline std::vector<Check> determinant_checks(unsigned d, const VerifyOptions& opt = {}) {
  std::vector<Check> out;
  if (d > opt.max_determinant_d) {
    out.push_back({"determinant", d, "vandermonde_factor", false, false, std::nullopt,
                   "skipped: cofactor expansion above d = " + std::to_string(opt.max_determinant_d)});
    return out;
  }
  const auto f = dd_factorization(d);
  out.push_back({"determinant", d, "vandermonde_factor", f.vandermonde_divides && f.quotient_check, true,
                 std::nullopt, f.vandermonde_divides ? "quotient " + to_string(f.quotient) : "does not divide"});
  if (d == 5) {
    const QPoly claimed = Rational(-64) * vandermonde_product(4, 5) *
                          (QPoly::constant(5, -14) + Rational(225) * QPoly::variable(5, 4));
    out.push_back({"determinant", d, "d5_closed_form", f.determinant == claimed, true, std::nullopt,
                   "-64 prod(x_i - x_j) (-14 + 225 x_5)"});
  }
  return out;
}

inline std::vector<Check> combi_checks(unsigned d) {
  std::vector<Check> out;
  bool zeros = true;
  std::string bad;
  for (unsigned k = 1; k + 1 <= d; ++k) {
    if (combi_identity(d, k) != 0) {
      zeros = false;
      bad += std::to_string(k) + " ";
    }
  }
  out.push_back({"combi", d, "vanishes_below_d", zeros, true, std::nullopt, zeros ? "k = 1..d-1" : "fails at k = " + bad});
  const Integer top = combi_identity(d, d);
  const Integer expect = d % 2 == 0 ? factorial(d) : Integer(-factorial(d));
  out.push_back({"combi", d, "top_is_signed_factorial", top == expect, true, std::nullopt, "k = d: " + top.str()});
  return out;
}

/// d-range suites; cubature does not depend on d and runs once.
inline std::vector<Check> run_suite(const std::string& suite, unsigned d_lo, unsigned d_hi,
                                    const VerifyOptions& opt = {}) {
  if (d_lo < 3 || d_hi < d_lo) throw std::invalid_argument("d must be >= 3");
  std::vector<Check> out;
  auto append = [&](std::vector<Check> v) { out.insert(out.end(), v.begin(), v.end()); };
  const bool all = suite == "all";
  if (!all && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  for (unsigned d = d_lo; d <= d_hi; ++d) {
    if (all || suite == "signature") append(signature_checks(d, opt));
    if (all || suite == "supnorm") append(supnorm_checks(d, opt));
    if (all || suite == "laplacian") append(laplacian_checks(d));
    if (all || suite == "determinant") append(determinant_checks(d, opt));
    if (all || suite == "combi") append(combi_checks(d));
  }
  if (all || suite == "cubature") append(cubature_checks());
  return out;
}

}  // namespace chebydev
