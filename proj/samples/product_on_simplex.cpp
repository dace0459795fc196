// Least deviation of x1 x2 ... xd on the simplex, both ways: an exact lower
// bound from the T_d signature and a numerical upper bound from Remez.
//
//   ./product_on_simplex [d]     (d = 3 or 4 runs in well under a second)

#include "chebydev/chebydev.hpp"

#include <cstdio>
#include <cstdlib>

using namespace chebydev;

int main(int argc, char** argv) {
  const unsigned d = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 3;
  if (d < 3 || d > 5) {
    std::fprintf(stderr, "usage: %s [d]   with 3 <= d <= 5\n", argv[0]);
    return 2;
  }

  const auto td = build_Td(d);
  const Integer r = compute_rd(d, RdMethod::closed_form);
  std::printf("T_%u has leading coefficient r = %s = %s\n", d, r.str().c_str(),
              factorization_string(prime_factorization(r)).c_str());

  const auto cert = certify_lower_bound(td_certificate(d));
  std::printf("signature certificate: %s, so E >= 1/%s\n", cert.certified ? "certified" : "REJECTED",
              r.str().c_str());

  const unsigned grid = d == 3 ? 32 : d == 4 ? 14 : 8;
  ApproxProblem p{FPoly::monomial(Exponents(d, 1U)), d - 1, Domain::simplex(d), BasisKind::symmetric, grid};
  const auto res = remez_exchange(p);
  std::printf("remez: %.15g <= E <= %.15g after %u iterations%s\n", res.deviation, res.deviation_upper,
              res.iterations, res.converged ? "" : " (not converged)");
  std::printf("1/r  = %.15g\n", 1.0 / r.convert_to<double>());
  return cert.certified ? 0 : 1;
}
