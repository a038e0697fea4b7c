#include "berkline/extended_rational.hpp"

#include <ostream>

namespace berkline {

std::ostream& operator<<(std::ostream& os, const ExtendedRational& x) {
    return os << x.str();
}

bool in_fractional_group(const Rat& q, unsigned long N) {
    Rat scaled = q * Rat(static_cast<long>(N));
    return scaled.get_den() == 1;
}

Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

} // namespace berkline
