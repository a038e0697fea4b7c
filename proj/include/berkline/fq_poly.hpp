#ifndef BERKLINE_FQ_POLY_HPP
#define BERKLINE_FQ_POLY_HPP

#include <gmpxx.h>
#include <vector>

#include "berkline/poly.hpp"

namespace berkline {

// Factorization machinery over F_q. All inputs must have field-tagged
// coefficients; outputs are monic. Randomized splits use a fixed-seed
// generator, so results are deterministic.

FqPoly fq_powmod(FqPoly base, mpz_class e, const FqPoly& m);

// Monic irreducible factors with multiplicities; f nonzero.
std::vector<std::pair<FqPoly, int>> fq_factor(const FqPoly& f);

bool fq_is_irreducible(const FqPoly& f);

// Distinct roots in the coefficient field, sorted.
std::vector<FqElem> fq_roots(const FqPoly& f);

} // namespace berkline

#endif
