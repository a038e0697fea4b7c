#ifndef BERKLINE_POLY_HPP
#define BERKLINE_POLY_HPP

#include <gmpxx.h>
#include <functional>
#include <string>
#include <vector>

#include "berkline/errors.hpp"
#include "berkline/finite_field.hpp"

namespace berkline {

// Coefficient hooks. Specialized for mpq_class, FqElem, TowerElem, RatFn<..>.
// 'like' arguments give a prototype so context-tagged types (field/ring
// pointers) can be produced compatibly.
template <class T>
struct Ring;

template <>
struct Ring<mpq_class> {
    static bool is_zero(const mpq_class& a) { return sgn(a) == 0; }
    static mpq_class zero(const mpq_class&) { return mpq_class(0); }
    static mpq_class one(const mpq_class&) { return mpq_class(1); }
    static mpq_class from_int(const mpq_class&, long n) { return mpq_class(n); }
    static mpq_class invert(const mpq_class& a) {
        if (sgn(a) == 0) throw Error("division by zero");
        return mpq_class(1) / a;
    }
    static std::string str(const mpq_class& a) { return a.get_str(); }
};

template <>
struct Ring<FqElem> {
    static bool is_zero(const FqElem& a) { return a.is_zero(); }
    static FqElem zero(const FqElem& like) {
        return like.field() ? like.field()->zero() : FqElem(0);
    }
    static FqElem one(const FqElem& like) {
        return like.field() ? like.field()->one() : FqElem(1);
    }
    static FqElem from_int(const FqElem& like, long n) {
        return like.field() ? like.field()->from_int(n) : FqElem(n);
    }
    static FqElem invert(const FqElem& a) { return a.inverse(); }
    static std::string str(const FqElem& a) { return a.str(); }
};

// Dense univariate polynomial; index = degree. Always trimmed: the leading
// stored coefficient is nonzero unless the polynomial is zero (empty vector).
template <class T>
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
    explicit Poly(const T& c0) : c_{c0} { trim(); }

    static Poly x(const T& like) {
        return Poly(std::vector<T>{Ring<T>::zero(like), Ring<T>::one(like)});
    }
    static Poly monomial(const T& coeff, int deg) {
        std::vector<T> c(deg + 1, Ring<T>::zero(coeff));
        c[deg] = coeff;
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero poly
    const std::vector<T>& coeffs() const { return c_; }

    // Coefficient of x^i (zero beyond degree). 'like' needed only on empty.
    T coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size()))
            return c_.empty() ? T() : Ring<T>::zero(c_.front());
        return c_[i];
    }
    const T& lc() const {
        if (c_.empty()) throw Error("lc of zero polynomial");
        return c_.back();
    }
    bool is_monic() const {
        return !c_.empty() && Ring<T>::is_zero(c_.back() - Ring<T>::one(c_.back()));
    }

    Poly operator+(const Poly& o) const {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), proto());
        if (r.empty()) return Poly();
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < c_.size() && i < o.c_.size()) r[i] = c_[i] + o.c_[i];
            else if (i < c_.size()) r[i] = c_[i];
            else r[i] = o.c_[i];
        }
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<T> r(c_);
        for (auto& a : r) a = -a;
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<T> r(c_.size() + o.c_.size() - 1, Ring<T>::zero(c_.front()));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
        return Poly(std::move(r));
    }
    Poly operator*(const T& s) const {
        std::vector<T> r(c_);
        for (auto& a : r) a = a * s;
        return Poly(std::move(r));
    }
    bool operator==(const Poly& o) const { return (*this - o).is_zero(); }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Division with remainder; divisor's leading coefficient must be
    // invertible (monic in all tower-internal uses).
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw Error("polynomial division by zero");
        Poly r = *this;
        if (r.degree() < d.degree()) return {Poly(), r};
        T lcinv = Ring<T>::invert(d.lc());
        std::vector<T> q(r.degree() - d.degree() + 1, Ring<T>::zero(d.lc()));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            T f = r.lc() * lcinv;
            q[k] = f;
            std::vector<T> rc = r.c_;
            for (int i = 0; i <= d.degree(); ++i) rc[i + k] = rc[i + k] - f * d.c_[i];
            rc.pop_back(); // leading term cancels exactly
            r = Poly(std::move(rc));
        }
        return {Poly(std::move(q)), r};
    }
    Poly operator%(const Poly& d) const { return divmod(d).second; }
    Poly operator/(const Poly& d) const { return divmod(d).first; }

    Poly derivative() const {
        if (degree() < 1) return Poly();
        std::vector<T> r(c_.size() - 1, proto());
        for (size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = c_[i] * Ring<T>::from_int(c_[i], static_cast<long>(i));
        return Poly(std::move(r));
    }

    T evaluate(const T& a) const {
        if (is_zero()) return Ring<T>::zero(a);
        T acc = c_.back();
        for (int i = degree() - 1; i >= 0; --i) acc = acc * a + c_[i];
        return acc;
    }

    // Coefficients of f(x + a), i.e. f^{(l)}(a)/l! in slot l.
    Poly taylor_shift(const T& a) const {
        if (is_zero() || Ring<T>::is_zero(a)) return *this;
        std::vector<T> r(c_);
        int n = degree();
        for (int i = 0; i < n; ++i)
            for (int j = n - 1; j >= i; --j) r[j] = r[j] + a * r[j + 1];
        return Poly(std::move(r));
    }

    // f(g(x)) by Horner.
    Poly compose(const Poly& g) const {
        if (is_zero()) return Poly();
        Poly acc(c_.back());
        for (int i = degree() - 1; i >= 0; --i) acc = acc * g + Poly(c_[i]);
        return acc;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * Ring<T>::invert(lc());
    }

    template <class U, class Fn>
    Poly<U> map(Fn&& fn) const {
        std::vector<U> r;
        r.reserve(c_.size());
        for (const auto& a : c_) r.push_back(fn(a));
        return Poly<U>(std::move(r));
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            if (Ring<T>::is_zero(c_[i])) continue;
            std::string cs = Ring<T>::str(c_[i]);
            bool neg = !cs.empty() && cs[0] == '-';
            if (out.empty()) {
                if (neg) { out += "-"; cs = cs.substr(1); }
            } else {
                out += neg ? " - " : " + ";
                if (neg) cs = cs.substr(1);
            }
            bool unit_coeff = (cs == "1") && i > 0;
            if (!unit_coeff) out += cs;
            if (i > 0) {
                if (!unit_coeff) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

  private:
    T proto() const { return c_.empty() ? T() : Ring<T>::zero(c_.front()); }
    void trim() {
        while (!c_.empty() && Ring<T>::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

// Euclidean gcd over a field, normalized monic (gcd(0,0) = 0).
template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        Poly<T> r = a % b;
        a = b;
        b = r;
    }
    return a.is_zero() ? a : a.monic();
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
template <class T>
std::tuple<Poly<T>, Poly<T>, Poly<T>> poly_xgcd(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> r0 = a, r1 = b;
    T one = a.is_zero() ? (b.is_zero() ? T() : Ring<T>::one(b.coeffs().front()))
                        : Ring<T>::one(a.coeffs().front());
    Poly<T> s0(one), s1, t0, t1(one);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = r1; r1 = r;
        Poly<T> s = s0 - q * s1; s0 = s1; s1 = s;
        Poly<T> t = t0 - q * t1; t0 = t1; t1 = t;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    T inv = Ring<T>::invert(r0.lc());
    return {r0 * inv, s0 * inv, t0 * inv};
}

// Resultant over a field via the Euclidean recursion.
template <class T>
T resultant(const Poly<T>& f, const Poly<T>& g) {
    T one = !f.is_zero() ? Ring<T>::one(f.coeffs().front())
            : !g.is_zero() ? Ring<T>::one(g.coeffs().front())
                           : T();
    if (f.is_zero() || g.is_zero()) {
        if (f.degree() <= 0 && g.degree() <= 0) return one; // res of constants
        return Ring<T>::zero(one);
    }
    int m = f.degree(), n = g.degree();
    if (n == 0) {
        T acc = one;
        for (int i = 0; i < m; ++i) acc = acc * g.lc();
        return acc;
    }
    Poly<T> r = f % g;
    int dr = r.degree();
    T lead = one;
    for (int i = 0; i < m - std::max(dr, 0); ++i) lead = lead * g.lc();
    if (r.is_zero()) return (m == 0) ? lead : Ring<T>::zero(one);
    T rec = resultant(g, r);
    if ((static_cast<long>(m) * n) % 2 != 0) rec = -rec;
    return lead * rec;
}

template <class T>
T discriminant(const Poly<T>& f) {
    // disc = (-1)^{m(m-1)/2} res(f, f') / lc(f)
    int m = f.degree();
    if (m < 1) throw Error("discriminant needs degree >= 1");
    T r = resultant(f, f.derivative());
    r = r * Ring<T>::invert(f.lc());
    if ((static_cast<long>(m) * (m - 1) / 2) % 2 != 0) r = -r;
    return r;
}

using QPoly = Poly<mpq_class>;
using FqPoly = Poly<FqElem>;

} // namespace berkline

#endif
