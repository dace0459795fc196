#pragma once

// chebydev command line: construct, verify, approx, rd-table, surface.
// Exit codes: 0 ok, 1 a check failed, 2 usage, 3 numerical trouble.

#include "chebydev/chebydev.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace chebydev::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 20240601;
};

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::pair<unsigned, unsigned> parse_d_range(const std::string& s) {
  auto num = [&](const std::string& t) -> unsigned {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("bad dimension range '" + s + "' (want N or A..B)");
    }
    return static_cast<unsigned>(std::stoul(t));
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const unsigned d = num(s);
    return {d, d};
  }
  const unsigned a = num(s.substr(0, dots)), b = num(s.substr(dots + 2));
  if (b < a) throw UsageError("empty dimension range '" + s + "'");
  return {a, b};
}

inline Exponents parse_monomial(const std::string& s) {
  Exponents e;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("bad --monomial '" + s + "' (want comma separated exponents)");
    }
    e.push_back(static_cast<unsigned>(std::stoul(tok)));
  }
  if (e.empty()) throw UsageError("empty --monomial");
  return e;
}

inline json header(const std::string& command, json config) {
  return json{{"tool", "chebydev"}, {"version", version()}, {"command", command}, {"config", std::move(config)}};
}

// ---------------------------------------------------------------------------

inline int cmd_construct(const std::string& family, unsigned d, const Common&, std::ostream& out) {
  json rep;
  if (family == "td" || family == "r3") {
    if (family == "r3") d = 3;
    if (d < 3) throw UsageError("d must be ≥ 3");
    const auto fam = build_Td(d);
    const Integer rd = compute_rd(d, RdMethod::closed_form);
    rep = header("construct", json{{"family", family}, {"d", d}});
    rep["dimension"] = d;
    rep["leading_coefficient"] = to_string(fam.r_value);
    rep["leading_factorization"] = factorization_string(prime_factorization(rd));
    rep["deviation_bound"] = "1/" + to_string(fam.r_value);
    rep["polynomial"] = to_json(fam.polynomial);
    rep["construction_log"] = fam.construction_log;
    if (family == "r3") rep["face_polynomial_U3"] = to_json(build_U3());
  } else if (family == "r5") {
    const auto k = derive_R5_constants();
    const auto fam = build_R5_family(k);
    const auto ext = r5_extremal_points(k);
    rep = header("construct", json{{"family", family}});
    rep["dimension"] = 3;
    rep["constants"] = json{{"d_root", k.d_root}, {"a", k.a}, {"b", k.b}, {"c", k.c}, {"leading", k.leading},
                            {"real_roots", k.real_roots}};
    rep["leading_coefficient"] = fam.r_value;
    rep["deviation"] = 1.0 / k.leading;
    rep["extremal_parameters"] = json{{"t1", ext.diagonal_minus}, {"t2", ext.diagonal_plus},
                                      {"edge_lo", (2.0 - std::sqrt(2.0)) / 4}, {"edge_hi", (2.0 + std::sqrt(2.0)) / 4}};
    rep["polynomial"] = to_json(fam.polynomial);
    rep["face_polynomial_U5"] = to_json(build_U5(k));
    rep["construction_log"] = fam.construction_log;
  } else {
    throw UsageError("unknown family '" + family + "' (want r3, r5 or td)");
  }
  out << rep.dump(2) << "\n";
  return kOk;
}

inline int cmd_verify(const std::string& suite, const std::string& range, const VerifyOptions& vo, const Common& c,
                      std::ostream& out) {
  const auto [lo, hi] = parse_d_range(range);
  if (lo < 3) throw UsageError("d must be ≥ 3");
  if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw UsageError("unknown suite '" + suite + "'");
  }
  const auto checks = run_suite(suite, lo, hi, vo);
  json rep = header("verify", json{{"suite", suite}, {"d", range}, {"seed", c.seed}, {"resolution", vo.resolution}});
  rep["tolerances"] = json{{"sup", vo.sup_tol}, {"conjecture", vo.conjecture_tol}, {"r5_certificate", vo.r5_tol},
                           {"r5_weights", vo.weight_tol}};
  json arr = json::array();
  std::size_t asserting = 0, failed = 0, reported = 0;
  for (const auto& ch : checks) {
    arr.push_back(to_json(ch));
    if (ch.asserting) {
      ++asserting;
      if (!ch.pass) ++failed;
    } else {
      ++reported;
    }
  }
  rep["checks"] = arr;
  rep["summary"] = json{{"asserting", asserting}, {"failed", failed}, {"reported_only", reported}};
  rep["pass"] = failed == 0;
  out << rep.dump(2) << "\n";
  return failed == 0 ? kOk : kCheckFailed;
}

struct ApproxFlags {
  std::string monomial;
  std::string domain = "simplex";
  unsigned degree = 0;
  unsigned grid = 16;
  std::string basis = "auto";
  bool discrete = false;
  RemezOptions remez;
};

inline int cmd_approx(const ApproxFlags& f, const Common& c, std::ostream& out) {
  const Exponents e = parse_monomial(f.monomial);
  const auto d = static_cast<unsigned>(e.size());
  Domain dom;
  try {
    dom = parse_domain(f.domain, d);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  if (f.grid == 0) throw UsageError("--grid must be positive");
  const FPoly target = FPoly::monomial(e);
  BasisKind kind;
  if (f.basis == "auto") {
    kind = auto_basis(target, dom);
  } else {
    try {
      kind = parse_basis_kind(f.basis);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
  }
  ApproxProblem prob{target, f.degree, dom, kind, f.grid};
  RemezOptions ro = f.remez;
  ro.search.seed = c.seed;
  const ApproxResult r = f.discrete ? discrete_minimax(prob) : remez_exchange(prob, ro);

  json rep = header("approx", json{{"monomial", f.monomial}, {"domain", f.domain}, {"degree", f.degree},
                                   {"grid", f.grid}, {"basis", f.basis}, {"discrete", f.discrete}, {"seed", c.seed}});
  rep["tolerances"] = json{{"gap_tol", ro.gap_tol}, {"change_tol", ro.change_tol}, {"max_iter", ro.max_iter},
                           {"patience", ro.patience}, {"refine_resolution", ro.refine_resolution}};
  rep["problem"] = json{{"target", to_string(target)}, {"domain", dom.name()}, {"degree", f.degree},
                        {"basis", to_string(r.basis)}, {"grid_points", r.grid_points}};
  rep["deviation"] = r.deviation;
  rep["deviation_lower"] = r.deviation;
  rep["deviation_upper"] = r.deviation_upper;
  rep["gap"] = r.deviation_upper - r.deviation;
  rep["continuum_checked"] = r.continuum_checked;
  rep["converged"] = r.converged;
  rep["warning"] = r.warning;
  rep["message"] = r.message;
  json coefs = json::array();
  for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
    coefs.push_back(json{{"name", r.basis_names[i]}, {"value", r.coefficients[i]}});
  }
  rep["coefficients"] = coefs;
  rep["approximant"] = to_json(r.approximant);
  json ext = json::array();
  for (const auto& x : r.residual_extrema) ext.push_back(json{{"x", x.x}, {"sign", x.sign}, {"weight", x.weight}});
  rep["extrema"] = ext;
  rep["lp_optimality"] = json{{"active_points", r.active_points}, {"slackness_violation", r.slackness_violation},
                              {"dual_annihilation", r.dual_annihilation}};
  rep["iterations"] = r.iterations;
  rep["lp_points"] = r.lp_points;
  json hist = json::array();
  for (const auto& [lo, hi] : r.history) hist.push_back(json::array({lo, hi}));
  rep["history"] = hist;
  rep["gap_monotone"] = r.gap_monotone;
  out << rep.dump(2) << "\n";
  return r.converged ? kOk : kNumerical;
}

inline int cmd_rdtable(unsigned max_d, const Common& c, std::ostream& out) {
  if (max_d < 3) throw UsageError("--max-d must be ≥ 3");
  struct Row {
    unsigned d;
    Integer r;
    std::string factors;
    bool agree;
  };
  std::vector<Row> rows;
  for (unsigned d = 3; d <= max_d; ++d) {
    const Integer r = compute_rd(d, RdMethod::closed_form);
    rows.push_back({d, r, factorization_string(prime_factorization(r)), r == compute_rd(d, RdMethod::recursive)});
  }
  if (c.format == "csv") {
    out << "# chebydev " << version() << " rd-table max_d=" << max_d << "\n";
    out << "d,r_d,factorization,methods_agree\n";
    for (const auto& r : rows) {
      out << r.d << "," << r.r.str() << "," << r.factors << "," << (r.agree ? "true" : "false") << "\n";
    }
  } else {
    json rep = header("rd-table", json{{"max_d", max_d}});
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back(json{{"d", r.d}, {"r_d", r.r.str()}, {"factorization", r.factors}, {"methods_agree", r.agree}});
    }
    rep["rows"] = arr;
    out << rep.dump(2) << "\n";
  }
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.agree;
  return ok ? kOk : kCheckFailed;
}

inline int cmd_surface(const std::string& which, unsigned grid, const Common& c, std::ostream& out) {
  FPoly p;
  if (which == "u3") {
    p = build_U3().to_float();
  } else if (which == "u5") {
    p = build_U5(derive_R5_constants());
  } else {
    throw UsageError("unknown --poly '" + which + "' (want u3 or u5)");
  }
  if (grid == 0) throw UsageError("--grid must be positive");
  const auto pts = sample_domain(Domain::simplex(2), grid);
  const CompiledPoly cp(p);
  if (c.format == "json") {
    json rep = header("surface", json{{"poly", which}, {"grid", grid}});
    json arr = json::array();
    for (const auto& x : pts) arr.push_back(json::array({x[0], x[1], cp.value(x)}));
    rep["points"] = arr;
    out << rep.dump(2) << "\n";
    return kOk;
  }
  out << "# chebydev " << version() << " surface poly=" << which << " grid=" << grid << "\n";
  out << "x,y,value\n";
  for (const auto& x : pts) out << fmt_double(x[0]) << "," << fmt_double(x[1]) << "," << fmt_double(cp.value(x)) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomials of least deviation from zero: constructions, certificates, best approximation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  Common common;
  auto add_common = [&](CLI::App* sub, const std::vector<std::string>& formats) {
    sub->add_option("--out", common.out_path, "write the report here instead of stdout");
    sub->add_option("--format", common.format, "report format")->check(CLI::IsMember(formats));
    sub->add_option("--seed", common.seed, "seed for randomized multistart searches");
  };

  std::string family;
  unsigned construct_d = 3;
  auto* construct = app.add_subcommand("construct", "build r3, r5 or the T_d family");
  construct->add_option("--family", family, "r3 | r5 | td")->required();
  construct->add_option("--d", construct_d, "dimension for td");
  add_common(construct, {"json"});

  std::string suite = "all", range = "3..5";
  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "run invariant suites over a dimension range");
  verify->add_option("--suite", suite, "signature | supnorm | laplacian | cubature | determinant | combi | all");
  verify->add_option("--d", range, "dimension N or range A..B");
  verify->add_option("--resolution", vo.resolution, "supnorm grid resolution");
  verify->add_option("--sup-tol", vo.sup_tol, "tolerance on max|T_d| = 1 in the proved cases");
  verify->add_option("--conjecture-tol", vo.conjecture_tol, "reported bound for d >= 6");
  verify->add_option("--r5-tol", vo.r5_tol, "R_5 certificate tolerance");
  verify->add_option("--weight-tol", vo.weight_tol, "R_5 weight recovery tolerance");
  add_common(verify, {"json"});

  ApproxFlags af;
  auto* approx = app.add_subcommand("approx", "best approximation of a monomial by LP + exchange");
  approx->add_option("--monomial", af.monomial, "exponents, e.g. 1,1,1")->required();
  approx->add_option("--domain", af.domain, "simplex | face | ball | sphere");
  approx->add_option("--degree", af.degree, "degree of the approximating polynomials")->required();
  approx->add_option("--grid", af.grid, "initial grid resolution");
  approx->add_option("--basis", af.basis, "auto | full | symmetric | even | even-symmetric");
  approx->add_flag("--discrete", af.discrete, "one LP on the grid, no exchange");
  approx->add_option("--max-iter", af.remez.max_iter, "exchange iterations");
  approx->add_option("--gap-tol", af.remez.gap_tol, "stop when sup - LP <= gap_tol * LP");
  approx->add_option("--change-tol", af.remez.change_tol, "stall threshold on both bounds (relative)");
  approx->add_option("--patience", af.remez.patience, "iterations without gap progress before stopping");
  approx->add_option("--refine", af.remez.refine_resolution, "grid resolution of the continuum sup search");
  add_common(approx, {"json"});

  unsigned max_d = 11;
  auto* rdtable = app.add_subcommand("rd-table", "leading coefficients r_d with factorizations");
  rdtable->add_option("--max-d", max_d, "last dimension");
  add_common(rdtable, {"csv", "json"});

  std::string which;
  unsigned sgrid = 20;
  auto* surface = app.add_subcommand("surface", "values of u3 or u5 on a triangular grid");
  surface->add_option("--poly", which, "u3 | u5")->required();
  surface->add_option("--grid", sgrid, "lattice resolution");
  add_common(surface, {"csv", "json"});

  // CSV is the natural default for the tabular commands.
  rdtable->preparse_callback([&](std::size_t) { common.format = "csv"; });
  surface->preparse_callback([&](std::size_t) { common.format = "csv"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "chebydev: " << e.what() << "\n";
    return kUsage;
  }

  std::ostringstream buf;
  int code = kOk;
  try {
    if (*construct) code = cmd_construct(family, construct_d, common, buf);
    if (*verify) code = cmd_verify(suite, range, vo, common, buf);
    if (*approx) code = cmd_approx(af, common, buf);
    if (*rdtable) code = cmd_rdtable(max_d, common, buf);
    if (*surface) code = cmd_surface(which, sgrid, common, buf);
  } catch (const UsageError& e) {
    err << "chebydev: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "chebydev: " << e.what() << "\n";
    return kNumerical;
  }
  if (common.out_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(common.out_path, std::ios::binary);
    if (!f) {
      err << "chebydev: cannot write " << common.out_path << "\n";
      return kUsage;
    }
    f << buf.str();
  }
  if (code == kNumerical) err << "chebydev: solver did not converge, report written\n";
  if (code == kCheckFailed) err << "chebydev: some checks failed, report written\n";
  return code;
}

}  // namespace chebydev::cli
