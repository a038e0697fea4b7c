#ifndef BERKLINE_PADIC_HPP
#define BERKLINE_PADIC_HPP

#include "berkline/extended_rational.hpp"

namespace berkline {

class FqField;
class FqElem;

// The p-adic valuation on Q, normalized so that val(p) = 1; val(0) = +inf.
class PAdicValuation {
  public:
    explicit PAdicValuation(const Int& p);
    explicit PAdicValuation(long p) : PAdicValuation(Int(p)) {}

    const Int& prime() const { return p_; }

    ExtendedRational val(const Rat& q) const;
    ExtendedRational val(const Int& z) const;

    bool operator==(const PAdicValuation& o) const { return p_ == o.p_; }

  private:
    Int p_;
};

// Residue arithmetic relative to the multiplicative section s -> p^s of the
// value group (1/N)Z; fractional exponents are formal N-th roots of p.
class ResidueContext {
  public:
    ResidueContext(const PAdicValuation& v, unsigned long N, const FqField* field);

    const PAdicValuation& valuation() const { return v_; }
    unsigned long denominator_bound() const { return N_; }
    const FqField* field() const { return field_; }

    // Residue of q * p^{-shift}, defined when val(q) == shift and the shift
    // lies in (1/N)Z. For rational q a matching shift is necessarily an
    // integer; the result lives in F_p embedded in the context's field.
    FqElem residue_unit(const Rat& q, const ExtendedRational& shift) const;

  private:
    PAdicValuation v_;
    unsigned long N_;
    const FqField* field_;
};

} // namespace berkline

#endif
