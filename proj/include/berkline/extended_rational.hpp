#ifndef BERKLINE_EXTENDED_RATIONAL_HPP
#define BERKLINE_EXTENDED_RATIONAL_HPP

#include <gmpxx.h>
#include <compare>
#include <iosfwd>
#include <string>

#include "berkline/errors.hpp"

namespace berkline {

using Int = mpz_class;
using Rat = mpq_class;

// Q together with +inf/-inf. Total order; arithmetic raises on inf + (-inf)
// and 0 * inf instead of producing a silent junk value.
class ExtendedRational {
  public:
    ExtendedRational() : kind_(Kind::Finite), q_(0) {}
    ExtendedRational(const Rat& q) : kind_(Kind::Finite), q_(q) { q_.canonicalize(); }
    ExtendedRational(const Int& z) : kind_(Kind::Finite), q_(z) {}
    ExtendedRational(long n) : kind_(Kind::Finite), q_(n) {}
    ExtendedRational(long num, long den) : kind_(Kind::Finite), q_(num, den) { q_.canonicalize(); }

    static ExtendedRational pos_inf() { return ExtendedRational(Kind::PosInf); }
    static ExtendedRational neg_inf() { return ExtendedRational(Kind::NegInf); }

    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    bool is_infinite() const { return kind_ != Kind::Finite; }

    // Finite value; throws on +-inf.
    const Rat& finite() const {
        if (!is_finite()) throw Error("ExtendedRational: not finite");
        return q_;
    }

    int sign() const {
        switch (kind_) {
            case Kind::PosInf: return 1;
            case Kind::NegInf: return -1;
            default: return sgn(q_);
        }
    }

    ExtendedRational operator-() const {
        switch (kind_) {
            case Kind::PosInf: return neg_inf();
            case Kind::NegInf: return pos_inf();
            default: return ExtendedRational(Rat(-q_));
        }
    }

    ExtendedRational operator+(const ExtendedRational& o) const {
        if (is_finite() && o.is_finite()) return ExtendedRational(Rat(q_ + o.q_));
        if ((is_pos_inf() && o.is_neg_inf()) || (is_neg_inf() && o.is_pos_inf()))
            throw IndeterminateFormError("inf + (-inf)");
        return is_infinite() ? *this : o;
    }

    ExtendedRational operator-(const ExtendedRational& o) const { return *this + (-o); }

    ExtendedRational operator*(const ExtendedRational& o) const {
        if (is_finite() && o.is_finite()) return ExtendedRational(Rat(q_ * o.q_));
        int s = sign() * o.sign();
        if (s == 0) throw IndeterminateFormError("0 * inf");
        return s > 0 ? pos_inf() : neg_inf();
    }

    // Scale by a finite rational; c = 0 with an infinite operand raises.
    ExtendedRational scaled(const Rat& c) const { return *this * ExtendedRational(c); }

    std::strong_ordering operator<=>(const ExtendedRational& o) const {
        if (kind_ == o.kind_) {
            if (kind_ != Kind::Finite) return std::strong_ordering::equal;
            int c = cmp(q_, o.q_);
            return c < 0   ? std::strong_ordering::less
                   : c > 0 ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
        }
        auto rank = [](Kind k) { return k == Kind::NegInf ? 0 : k == Kind::Finite ? 1 : 2; };
        return rank(kind_) <=> rank(o.kind_);
    }
    bool operator==(const ExtendedRational& o) const { return (*this <=> o) == 0; }

    std::string str() const {
        if (is_pos_inf()) return "+inf";
        if (is_neg_inf()) return "-inf";
        return q_.get_str();
    }

  private:
    enum class Kind { Finite, PosInf, NegInf };
    explicit ExtendedRational(Kind k) : kind_(k), q_(0) {}
    Kind kind_;
    Rat q_;
};

inline ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b) {
    return a < b ? a : b;
}
inline ExtendedRational max(const ExtendedRational& a, const ExtendedRational& b) {
    return a > b ? a : b;
}

std::ostream& operator<<(std::ostream& os, const ExtendedRational& x);

// True iff q is an integer multiple of 1/N.
bool in_fractional_group(const Rat& q, unsigned long N);

// Exact floor/ceil of a rational.
Int rat_floor(const Rat& q);
Int rat_ceil(const Rat& q);

} // namespace berkline

#endif
