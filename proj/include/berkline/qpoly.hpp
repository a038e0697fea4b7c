#ifndef BERKLINE_QPOLY_HPP
#define BERKLINE_QPOLY_HPP

#include "berkline/poly.hpp"

namespace berkline {

// Q[x] specifics: integer normalization and factorization into monic
// irreducibles over Q (squarefree split + Zassenhaus recombination).

// Primitive integer polynomial with positive leading coefficient equal to f
// up to a rational scalar.
Poly<mpz_class> primitive_part(const QPoly& f);

// Squarefree decomposition over Q (Yun): list of (monic squarefree, mult).
std::vector<std::pair<QPoly, int>> squarefree_decompose_q(const QPoly& f);

// Monic irreducible factors over Q with multiplicities, sorted by (degree,
// coefficient lex). The rational scalar is dropped.
std::vector<std::pair<QPoly, int>> factor_over_q(const QPoly& f);

bool is_irreducible_over_q(const QPoly& f);

// f with integer coefficients reduced mod p.
FqPoly reduce_mod_p(const Poly<mpz_class>& f, const FqField* Fp);

template <>
struct Ring<mpz_class> {
    static bool is_zero(const mpz_class& a) { return sgn(a) == 0; }
    static mpz_class zero(const mpz_class&) { return mpz_class(0); }
    static mpz_class one(const mpz_class&) { return mpz_class(1); }
    static mpz_class from_int(const mpz_class&, long n) { return mpz_class(n); }
    static mpz_class invert(const mpz_class& a) {
        if (a == 1) return a;
        if (a == -1) return a;
        throw Error("mpz invert: not a unit");
    }
    static std::string str(const mpz_class& a) { return a.get_str(); }
};

} // namespace berkline

#endif
