#include "berkline/finite_field.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

namespace berkline {

namespace {

// Plain F_p[z] arithmetic on coefficient vectors (index = degree, trimmed).
using Vec = std::vector<long>;

long mod(long a, long p) {
    long r = a % p;
    return r < 0 ? r + p : r;
}

void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec add(const Vec& a, const Vec& b, long p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        long s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = mod(s, p);
    }
    trim(r);
    return r;
}

Vec sub(const Vec& a, const Vec& b, long p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        long s = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
        r[i] = mod(s, p);
    }
    trim(r);
    return r;
}

Vec mul(const Vec& a, const Vec& b, long p) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j], p);
    trim(r);
    return r;
}

long inv_mod(long a, long p) {
    long t = 0, new_t = 1, r = p, new_r = mod(a, p);
    while (new_r != 0) {
        long q = r / new_r;
        std::swap(t -= q * new_t, new_t);
        std::swap(r -= q * new_r, new_r);
    }
    if (r != 1) throw Error("inv_mod: not invertible");
    return mod(t, p);
}

Vec rem(Vec a, const Vec& b, long p) {
    long lcinv = inv_mod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        long f = mod(a.back() * lcinv, p);
        size_t k = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[i + k] = mod(a[i + k] - f * b[i], p);
        trim(a);
    }
    return a;
}

Vec gcd(Vec a, Vec b, long p) {
    while (!b.empty()) {
        Vec r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        long inv = inv_mod(a.back(), p);
        for (auto& c : a) c = mod(c * inv, p);
    }
    return a;
}

Vec powmod(Vec base, mpz_class e, const Vec& m, long p) {
    Vec r{1};
    base = rem(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base, p), m, p);
        base = rem(mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

bool is_irreducible_fp(const Vec& f, long p) {
    int n = static_cast<int>(f.size()) - 1;
    if (n < 1) return false;
    Vec x{0, 1};
    mpz_class q(p);
    // x^{p^n} == x mod f
    mpz_class pn;
    mpz_pow_ui(pn.get_mpz_t(), q.get_mpz_t(), n);
    if (rem(sub(powmod(x, pn, f, p), x, p), f, p) != Vec{}) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) prime = false;
        if (!prime) continue;
        mpz_class pm;
        mpz_pow_ui(pm.get_mpz_t(), q.get_mpz_t(), n / l);
        Vec g = gcd(f, sub(powmod(x, pm, f, p), x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::mutex registry_mutex;

} // namespace

FqField::FqField(long p, int k) : p_(p), k_(k) {
    q_ = 1;
    for (int i = 0; i < k; ++i) q_ *= static_cast<unsigned long>(p);
    if (k == 1) {
        modulus_ = {0, 1}; // z
        return;
    }
    // Lexicographically first monic irreducible of degree k: scan constant-
    // first digit tuples.
    unsigned long total = 1;
    for (int i = 0; i < k; ++i) total *= static_cast<unsigned long>(p);
    for (unsigned long code = 0; code < total; ++code) {
        Vec f(k + 1, 0);
        unsigned long c = code;
        for (int i = 0; i < k; ++i) {
            f[i] = static_cast<long>(c % p);
            c /= p;
        }
        f[k] = 1;
        if (is_irreducible_fp(f, p)) {
            modulus_ = f;
            return;
        }
    }
    throw Error("FqField: no irreducible modulus found");
}

const FqField* FqField::get(long p, int k) {
    if (p < 2 || k < 1) throw Error("FqField::get: bad parameters");
    std::lock_guard<std::mutex> lock(registry_mutex);
    static std::map<std::pair<long, int>, std::unique_ptr<FqField>> registry;
    auto key = std::make_pair(p, k);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::unique_ptr<FqField>(new FqField(p, k))).first;
    return it->second.get();
}

FqElem FqField::zero() const { return FqElem(this, Vec(k_, 0)); }
FqElem FqField::one() const { return from_int(1); }

FqElem FqField::from_int(long n) const {
    Vec c(k_, 0);
    c[0] = mod(n, p_);
    return FqElem(this, std::move(c));
}

FqElem FqField::gen() const {
    if (k_ == 1) return one();
    Vec c(k_, 0);
    c[1] = 1;
    return FqElem(this, std::move(c));
}

FqElem FqField::element(Vec coeffs) const {
    coeffs = rem(std::move(coeffs), modulus_, p_);
    coeffs.resize(k_, 0);
    return FqElem(this, std::move(coeffs));
}

std::vector<FqElem> FqField::all_elements() const {
    std::vector<FqElem> out;
    out.reserve(q_);
    for (unsigned long code = 0; code < q_; ++code) {
        Vec c(k_, 0);
        unsigned long v = code;
        for (int i = 0; i < k_; ++i) {
            c[i] = static_cast<long>(v % p_);
            v /= static_cast<unsigned long>(p_);
        }
        out.emplace_back(this, std::move(c));
    }
    return out;
}

std::string FqField::name() const { return "F" + std::to_string(q_); }

FqElem::FqElem(const FqField* F, Vec c) : field_(F), c_(std::move(c)) {
    if (!F) throw Error("FqElem: null field");
    c_ = rem(std::move(c_), F->modulus(), F->p());
    c_.resize(F->k(), 0);
}

FqElem FqElem::in(const FqField* F) const {
    if (is_bare()) return F->from_int(bare_);
    if (field_ == F) return *this;
    return embed(*this, F);
}

bool FqElem::is_zero() const {
    if (is_bare()) return bare_ == 0;
    return std::all_of(c_.begin(), c_.end(), [](long a) { return a == 0; });
}

bool FqElem::is_one() const {
    if (is_bare()) return bare_ == 1;
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

namespace {
const FqField* common_field(const FqElem& a, const FqElem& b) {
    const FqField* F = a.field();
    const FqField* G = b.field();
    if (F && G) {
        if (F == G) return F;
        if (G->k() % F->k() == 0 && F->p() == G->p()) return G;
        if (F->k() % G->k() == 0 && F->p() == G->p()) return F;
        throw Error("FqElem: incompatible fields " + F->name() + " / " + G->name());
    }
    return F ? F : G;
}
} // namespace

FqElem FqElem::operator+(const FqElem& o) const {
    const FqField* F = common_field(*this, o);
    if (!F) return FqElem(bare_ + o.bare_);
    FqElem a = in(F), b = o.in(F);
    return FqElem(F, add(a.c_, b.c_, F->p()));
}

FqElem FqElem::operator-(const FqElem& o) const {
    const FqField* F = common_field(*this, o);
    if (!F) return FqElem(bare_ - o.bare_);
    FqElem a = in(F), b = o.in(F);
    return FqElem(F, sub(a.c_, b.c_, F->p()));
}

FqElem FqElem::operator-() const {
    if (is_bare()) return FqElem(-bare_);
    return FqElem(field_, sub(Vec{}, c_, field_->p()));
}

FqElem FqElem::operator*(const FqElem& o) const {
    const FqField* F = common_field(*this, o);
    if (!F) return FqElem(bare_ * o.bare_);
    FqElem a = in(F), b = o.in(F);
    return FqElem(F, mul(a.c_, b.c_, F->p()));
}

FqElem FqElem::inverse() const {
    if (is_bare()) throw Error("FqElem: inverse of bare constant needs field context");
    // Extended Euclid in F_p[z] against the modulus.
    long p = field_->p();
    Vec r0 = field_->modulus(), r1 = c_;
    trim(r1);
    if (r1.empty()) throw Error("FqElem: division by zero");
    Vec t0, t1{1};
    while (!r1.empty()) {
        // quotient of r0 by r1
        Vec q;
        Vec a = r0;
        long lcinv = inv_mod(r1.back(), p);
        while (a.size() >= r1.size() && !a.empty()) {
            long f = mod(a.back() * lcinv, p);
            size_t k = a.size() - r1.size();
            if (q.size() < k + 1) q.resize(k + 1, 0);
            q[k] = f;
            for (size_t i = 0; i < r1.size(); ++i) a[i + k] = mod(a[i + k] - f * r1[i], p);
            trim(a);
        }
        r0 = r1;
        r1 = a;
        Vec t = sub(t0, mul(q, t1, p), p);
        t0 = t1;
        t1 = t;
    }
    if (r0.size() != 1) throw Error("FqElem: not invertible");
    long inv = inv_mod(r0[0], p);
    for (auto& x : t0) x = mod(x * inv, p);
    t0.resize(field_->k(), 0);
    return FqElem(field_, std::move(t0));
}

FqElem FqElem::operator/(const FqElem& o) const {
    const FqField* F = common_field(*this, o);
    if (!F) throw Error("FqElem: bare division");
    return in(F) * o.in(F).inverse();
}

FqElem FqElem::pow(unsigned long e) const {
    if (is_bare()) throw Error("FqElem: pow of bare constant");
    FqElem r = field_->one(), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FqElem FqElem::frobenius() const { return pow(static_cast<unsigned long>(field_->p())); }

FqElem FqElem::pth_root() const {
    // x -> x^{p^{k-1}} inverts Frobenius in F_{p^k}.
    FqElem r = *this;
    for (int i = 0; i < field_->k() - 1; ++i) r = r.frobenius();
    return r;
}

bool FqElem::operator==(const FqElem& o) const { return (*this - o).is_zero(); }

bool FqElem::operator<(const FqElem& o) const {
    const FqField* F = common_field(*this, o);
    if (!F) return bare_ < o.bare_;
    FqElem a = in(F), b = o.in(F);
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

std::string FqElem::str() const {
    if (is_bare()) return std::to_string(bare_);
    std::ostringstream os;
    bool first = true;
    for (int i = field_->k() - 1; i >= 0; --i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i > 0) {
            if (c_[i] != 1) os << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const FqElem& e) { return os << e.str(); }

// embed_generator / embed live in fq_poly.cpp (they use root-finding).

} // namespace berkline
