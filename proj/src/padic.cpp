#include "berkline/padic.hpp"

#include "berkline/finite_field.hpp"

namespace berkline {

PAdicValuation::PAdicValuation(const Int& p) : p_(p) {
    if (p_ < 2 || mpz_probab_prime_p(p_.get_mpz_t(), 30) == 0)
        throw Error("PAdicValuation: p must be prime, got " + p_.get_str());
}

ExtendedRational PAdicValuation::val(const Int& z) const {
    if (z == 0) return ExtendedRational::pos_inf();
    Int tmp;
    unsigned long v = mpz_remove(tmp.get_mpz_t(), z.get_mpz_t(), p_.get_mpz_t());
    return ExtendedRational(Int(v));
}

ExtendedRational PAdicValuation::val(const Rat& q) const {
    if (sgn(q) == 0) return ExtendedRational::pos_inf();
    Int tmp;
    long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q.get_num().get_mpz_t(), p_.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q.get_den().get_mpz_t(), p_.get_mpz_t()));
    return ExtendedRational(vn - vd);
}

ResidueContext::ResidueContext(const PAdicValuation& v, unsigned long N, const FqField* field)
    : v_(v), N_(N), field_(field) {
    if (N_ == 0) throw Error("ResidueContext: N must be positive");
    if (field_ == nullptr) field_ = FqField::get(v.prime().get_si(), 1);
    if (Int(field_->p()) != v.prime()) throw Error("ResidueContext: field characteristic mismatch");
}

FqElem ResidueContext::residue_unit(const Rat& q, const ExtendedRational& shift) const {
    if (shift.is_finite() && !in_fractional_group(shift.finite(), N_))
        throw FractionalShiftUnsupportedError("shift " + shift.str() + " not in (1/" +
                                              std::to_string(N_) + ")Z");
    if (v_.val(q) != shift)
        throw ShiftMismatchError("val(q) = " + v_.val(q).str() + " != shift = " + shift.str());
    // val(q) is an integer for rational q, so shift is too.
    const Rat& s = shift.finite();
    Int e = s.get_num(); // den == 1 here
    Rat unit = q;
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), v_.prime().get_mpz_t(), static_cast<unsigned long>(abs(e.get_si())));
    if (e >= 0) unit /= Rat(pe);
    else unit *= Rat(pe);
    // unit = a/b with p dividing neither; residue = a * b^{-1} mod p.
    Int p = v_.prime();
    Int a = unit.get_num() % p, b = unit.get_den() % p, binv;
    if (a < 0) a += p;
    mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), p.get_mpz_t());
    Int r = (a * binv) % p;
    return field_->from_int(r.get_si());
}

} // namespace berkline
