#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spreadlab/ffield.hpp"

namespace spreadlab {

// Polynomials over a Field, coefficients low to high, no trailing zeros.
using Poly = std::vector<Fq>;

void poly_trim(Poly& a);
int poly_deg(const Poly& a);
Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
Poly poly_scale(const Field& F, const Poly& a, Fq c);
std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b);
Poly poly_mod(const Field& F, const Poly& a, const Poly& m);
Poly poly_monic(const Field& F, const Poly& a);
Poly poly_gcd(const Field& F, Poly a, Poly b);
Poly poly_powmod(const Field& F, const Poly& base, std::uint64_t e, const Poly& m);
Fq poly_eval(const Field& F, const Poly& a, Fq x);
bool poly_is_irreducible(const Field& F, const Poly& a);
// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
std::vector<std::pair<Poly, int>> poly_factor(const Field& F, const Poly& a);

}  // namespace spreadlab
