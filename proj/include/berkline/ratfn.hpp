#ifndef BERKLINE_RATFN_HPP
#define BERKLINE_RATFN_HPP

#include "berkline/poly.hpp"

namespace berkline {

// Fraction field of a polynomial ring over a field; normalized so the
// denominator is monic and coprime to the numerator.
template <class P>
class Frac {
  public:
    using Coeff = typename std::decay_t<decltype(std::declval<P>().coeffs())>::value_type;

    Frac() : num_(), den_(one_poly()) {}
    explicit Frac(P num) : num_(std::move(num)), den_(one_poly()) {}
    Frac(P num, P den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const P& num() const { return num_; }
    const P& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    Frac operator+(const Frac& o) const {
        return Frac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Frac operator-() const {
        Frac r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Frac operator-(const Frac& o) const { return *this + (-o); }
    Frac operator*(const Frac& o) const { return Frac(num_ * o.num_, den_ * o.den_); }
    Frac inverse() const {
        if (num_.is_zero()) throw Error("Frac: division by zero");
        return Frac(den_, num_);
    }
    Frac operator/(const Frac& o) const { return *this * o.inverse(); }
    bool operator==(const Frac& o) const { return (*this - o).is_zero(); }
    bool operator!=(const Frac& o) const { return !(*this == o); }

    std::string str(const std::string& var = "x") const {
        if (den_.degree() == 0 && !den_.is_zero() && den_.is_monic()) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

  private:
    static P one_poly() { return P(Ring<Coeff>::one(Coeff())); }
    void normalize() {
        if (den_.is_zero()) throw Error("Frac: zero denominator");
        if (num_.is_zero()) {
            den_ = one_poly();
            return;
        }
        P g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        Coeff lc = den_.lc();
        if (!Ring<Coeff>::is_zero(lc - Ring<Coeff>::one(lc))) {
            Coeff inv = Ring<Coeff>::invert(lc);
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }
    P num_;
    P den_{};
};

using RatFn = Frac<QPoly>;
using FqRatFn = Frac<FqPoly>;

template <>
struct Ring<RatFn> {
    static bool is_zero(const RatFn& a) { return a.is_zero(); }
    static RatFn zero(const RatFn&) { return RatFn(); }
    static RatFn one(const RatFn&) { return RatFn(QPoly(mpq_class(1))); }
    static RatFn from_int(const RatFn&, long n) { return RatFn(QPoly(mpq_class(n))); }
    static RatFn invert(const RatFn& a) { return a.inverse(); }
    static std::string str(const RatFn& a) { return a.str(); }
};

template <>
struct Ring<FqRatFn> {
    static bool is_zero(const FqRatFn& a) { return a.is_zero(); }
    static FqRatFn zero(const FqRatFn&) { return FqRatFn(); }
    static FqRatFn one(const FqRatFn& like) {
        if (!like.is_zero())
            return FqRatFn(FqPoly(Ring<FqElem>::one(like.num().coeffs().front())));
        return FqRatFn(FqPoly(FqElem(1)));
    }
    static FqRatFn from_int(const FqRatFn& like, long n) {
        if (!like.is_zero())
            return FqRatFn(FqPoly(Ring<FqElem>::from_int(like.num().coeffs().front(), n)));
        return FqRatFn(FqPoly(FqElem(n)));
    }
    static FqRatFn invert(const FqRatFn& a) { return a.inverse(); }
    static std::string str(const FqRatFn& a) { return a.str(); }
};

} // namespace berkline

#endif
