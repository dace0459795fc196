#pragma once

// Canonical JSON form of a polynomial:
//   {"nvars": d, "field": "rational"|"float64",
//    "terms": [{"exp": [...], "coef": "p/q" | number}, ...]}
// Terms appear in graded-lex order.

#include "chebydev/poly.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace chebydev {

using json = nlohmann::ordered_json;

inline json coefficient_to_json(const Rational& c) { return to_string(c); }
inline json coefficient_to_json(double c) { return c; }

template <Field C>
json to_json(const Poly<C>& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back(json{{"exp", e}, {"coef", coefficient_to_json(c)}});
  }
  return json{{"nvars", p.nvars()}, {"field", std::string(FieldTraits<C>::name)}, {"terms", terms}};
}

/// Rational input may be read into either field; float64 input cannot become exact.
template <Field C>
Poly<C> poly_from_json(const json& j) {
  const auto nvars = j.at("nvars").get<std::size_t>();
  const auto field = j.at("field").get<std::string>();
  if (field != "rational" && field != "float64") {
    throw std::invalid_argument("unknown polynomial field '" + field + "'");
  }
  if constexpr (is_exact_v<C>) {
    if (field != "rational") {
      throw std::invalid_argument("float64 polynomial cannot be loaded as exact");
    }
  }
  Poly<C> p(nvars);
  for (const auto& t : j.at("terms")) {
    auto e = t.at("exp").get<Exponents>();
    const auto& coef = t.at("coef");
    if constexpr (is_exact_v<C>) {
      p.add_term(e, parse_rational(coef.get<std::string>()));
    } else {
      if (coef.is_string()) {
        p.add_term(e, to_double(parse_rational(coef.get<std::string>())));
      } else {
        p.add_term(e, coef.get<double>());
      }
    }
  }
  return p;
}

}  // namespace chebydev
