#include "berkline/qpoly.hpp"

#include <algorithm>

#include "berkline/fq_poly.hpp"

namespace berkline {

namespace {

using ZPoly = Poly<mpz_class>;

mpz_class sym_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly zmod(const ZPoly& f, const mpz_class& m) {
    return f.map<mpz_class>([&](const mpz_class& c) { return sym_mod(c, m); });
}

// divmod of monic divisor over Z/m (coefficients kept symmetric).
std::pair<ZPoly, ZPoly> zdivmod_monic(const ZPoly& f, const ZPoly& d, const mpz_class& m) {
    ZPoly r = zmod(f, m);
    if (r.degree() < d.degree()) return {ZPoly(), r};
    std::vector<mpz_class> q(r.degree() - d.degree() + 1, mpz_class(0));
    std::vector<mpz_class> rc(r.coeffs());
    rc.resize(r.degree() + 1);
    for (int k = static_cast<int>(rc.size()) - 1 - d.degree(); k >= 0; --k) {
        mpz_class f0 = sym_mod(rc[k + d.degree()], m);
        q[k] = f0;
        if (f0 != 0)
            for (int i = 0; i <= d.degree(); ++i) rc[i + k] = sym_mod(rc[i + k] - f0 * d.coeff(i), m);
    }
    std::vector<mpz_class> rem(rc.begin(), rc.begin() + d.degree());
    return {zmod(ZPoly(std::move(q)), m), zmod(ZPoly(std::move(rem)), m)};
}

ZPoly to_zpoly(const FqPoly& f, long /*p*/) {
    std::vector<mpz_class> c;
    for (int i = 0; i <= f.degree(); ++i) {
        long v = f.coeff(i).is_bare() ? 0 : f.coeff(i).coeffs()[0];
        c.emplace_back(v);
    }
    return ZPoly(std::move(c));
}

// Hensel lift of a pairwise-coprime monic factorization f = prod(ws) mod p to
// mod p^e (simple linear lifting on a factor tree).
struct Lifter {
    mpz_class p;

    // One quadratic Hensel step for f = g*h with s*g + t*h = 1, all mod m,
    // f and h monic; returns data valid mod m^2.
    void step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const mpz_class& m) const {
        mpz_class m2 = m * m;
        ZPoly e = zmod(f - g * h, m2);
        auto [q, r] = zdivmod_monic(zmod(s * e, m2), h, m2);
        g = zmod(g + t * e + q * g, m2);
        h = zmod(h + r, m2);
        ZPoly b = zmod(s * g + t * h - ZPoly(mpz_class(1)), m2);
        auto [c, d] = zdivmod_monic(zmod(s * b, m2), h, m2);
        s = zmod(s - d, m2);
        t = zmod(t - t * b - c * g, m2);
    }

    // Lift the list ws (monic, coprime mod p, product = f mod p) to mod p^e.
    std::vector<ZPoly> lift(const ZPoly& f, std::vector<ZPoly> ws, unsigned long e,
                            const FqField* Fp) const {
        if (ws.size() == 1) {
            mpz_class pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
            return {zmod(f, pe)};
        }
        size_t half = ws.size() / 2;
        ZPoly g(mpz_class(1)), h(mpz_class(1));
        for (size_t i = 0; i < half; ++i) g = g * ws[i];
        for (size_t i = half; i < ws.size(); ++i) h = h * ws[i];
        g = zmod(g, p);
        h = zmod(h, p);
        // Bezout mod p via Fq machinery.
        auto [gg, ss, tt] = poly_xgcd(reduce_mod_p(g, Fp), reduce_mod_p(h, Fp));
        if (gg.degree() != 0) throw Error("hensel: factors not coprime");
        FqElem lead = gg.coeff(0);
        ZPoly s = to_zpoly(ss * lead.inverse(), p.get_si());
        ZPoly t = to_zpoly(tt * lead.inverse(), p.get_si());
        mpz_class m = p;
        unsigned long prec = 1;
        ZPoly G = g, H = h, S = s, T = t;
        while (prec < e) {
            step(f, G, H, S, T, m);
            m = m * m;
            prec *= 2;
        }
        std::vector<ZPoly> left(ws.begin(), ws.begin() + half);
        std::vector<ZPoly> right(ws.begin() + half, ws.end());
        auto a = lift(G, std::move(left), e, Fp);
        auto b = lift(H, std::move(right), e, Fp);
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }
};

// Exact division test over Z; returns quotient if divisible.
bool try_divide(const ZPoly& f, const ZPoly& g, ZPoly& quot) {
    if (g.is_zero()) return false;
    std::vector<mpz_class> r(f.coeffs());
    if (f.degree() < g.degree()) return false;
    std::vector<mpz_class> q(f.degree() - g.degree() + 1, mpz_class(0));
    for (int k = f.degree() - g.degree(); k >= 0; --k) {
        mpz_class& lead = r[k + g.degree()];
        if (lead % g.lc() != 0) return false;
        mpz_class f0 = lead / g.lc();
        q[k] = f0;
        for (int i = 0; i <= g.degree(); ++i) r[i + k] -= f0 * g.coeff(i);
    }
    for (const auto& c : r)
        if (c != 0) return false;
    quot = ZPoly(std::move(q));
    return true;
}

// Factor a monic squarefree integer polynomial (irreducible pieces, monic
// over Q after mapping back).
std::vector<ZPoly> factor_monic_squarefree(ZPoly f) {
    std::vector<ZPoly> out;
    if (f.degree() == 1) {
        out.push_back(f);
        return out;
    }
    // Choose p with f squarefree mod p.
    long p = 0;
    static const long primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                  41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    const FqField* Fp = nullptr;
    for (long cand : primes) {
        Fp = FqField::get(cand, 1);
        FqPoly fp = reduce_mod_p(f, Fp);
        if (fp.degree() != f.degree()) continue;
        if (poly_gcd(fp, fp.derivative()).degree() == 0) {
            p = cand;
            break;
        }
    }
    if (p == 0) throw Error("factor: no good prime found");
    FqPoly fp = reduce_mod_p(f, Fp).monic();
    auto modular = fq_factor(fp);
    std::vector<ZPoly> ws;
    for (const auto& [g, m] : modular) {
        (void)m; // squarefree
        ws.push_back(to_zpoly(g, p));
    }
    if (ws.size() == 1) {
        out.push_back(f);
        return out;
    }
    // Landau-Mignotte bound for coefficients of monic factors.
    mpz_class norm2 = 0;
    for (const auto& c : f.coeffs()) norm2 += c * c;
    mpz_class b = sqrt(norm2) + 1;
    mpz_class bound = b;
    for (int i = 0; i < f.degree(); ++i) bound *= 2;
    mpz_class target = 2 * bound + 1;
    unsigned long e = 1;
    mpz_class pe(p);
    while (pe < target) {
        pe = pe * pe;
        e *= 2;
    }
    Lifter lifter{mpz_class(p)};
    std::vector<ZPoly> lifted = lifter.lift(zmod(f, pe), std::move(ws), e, Fp);
    mpz_pow_ui(pe.get_mpz_t(), mpz_class(p).get_mpz_t(), e);

    // Subset recombination.
    std::vector<bool> used(lifted.size(), false);
    ZPoly rest = f;
    size_t remaining = lifted.size();
    for (size_t take = 1; take <= lifted.size(); ++take) {
        if (take > remaining / 2) break;
        bool progress = true;
        while (progress && take <= remaining / 2) {
            progress = false;
            std::vector<size_t> avail;
            for (size_t i = 0; i < lifted.size(); ++i)
                if (!used[i]) avail.push_back(i);
            std::vector<size_t> idx(take);
            std::function<bool(size_t, size_t)> rec = [&](size_t pos, size_t start) -> bool {
                if (pos == take) {
                    ZPoly cand(mpz_class(1));
                    for (size_t j : idx) cand = cand * lifted[j];
                    cand = zmod(cand, pe);
                    ZPoly quot;
                    if (try_divide(rest, cand, quot)) {
                        out.push_back(cand);
                        for (size_t j : idx) used[j] = true;
                        rest = quot;
                        remaining -= take;
                        return true;
                    }
                    return false;
                }
                for (size_t s = start; s < avail.size(); ++s) {
                    idx[pos] = avail[s];
                    if (rec(pos + 1, s + 1)) return true;
                }
                return false;
            };
            progress = rec(0, 0);
        }
    }
    if (rest.degree() > 0) out.push_back(rest);
    return out;
}

} // namespace

Poly<mpz_class> primitive_part(const QPoly& f) {
    if (f.is_zero()) return ZPoly();
    mpz_class den(1);
    for (const auto& c : f.coeffs()) den = den / gcd(den, c.get_den()) * c.get_den();
    std::vector<mpz_class> z;
    for (const auto& c : f.coeffs()) z.emplace_back(c.get_num() * (den / c.get_den()));
    mpz_class content(0);
    for (const auto& c : z) content = gcd(content, c);
    if (sgn(z.back()) < 0) content = -content;
    for (auto& c : z) c /= content;
    return ZPoly(std::move(z));
}

FqPoly reduce_mod_p(const Poly<mpz_class>& f, const FqField* Fp) {
    std::vector<FqElem> c;
    for (int i = 0; i <= f.degree(); ++i) {
        mpz_class r = f.coeff(i) % Fp->p();
        c.push_back(Fp->from_int(r.get_si()));
    }
    return FqPoly(std::move(c));
}

std::vector<std::pair<QPoly, int>> squarefree_decompose_q(const QPoly& f) {
    // s_m = squarefree part of the m-th gcd-peel; a prime of multiplicity k
    // divides s_1..s_k, so the part with multiplicity exactly m is s_m/s_{m+1}.
    std::vector<std::pair<QPoly, int>> out;
    if (f.degree() < 1) return out;
    std::vector<QPoly> s;
    QPoly rest = f.monic();
    while (rest.degree() > 0) {
        QPoly g = poly_gcd(rest, rest.derivative());
        s.push_back((rest / g).monic());
        rest = g.monic();
    }
    for (size_t m = 0; m < s.size(); ++m) {
        QPoly exact = (m + 1 < s.size()) ? (s[m] / s[m + 1]).monic() : s[m];
        if (exact.degree() > 0) out.emplace_back(exact, static_cast<int>(m + 1));
    }
    return out;
}

std::vector<std::pair<QPoly, int>> factor_over_q(const QPoly& f) {
    std::vector<std::pair<QPoly, int>> out;
    if (f.degree() < 1) return out;
    for (const auto& [sq, mult] : squarefree_decompose_q(f)) {
        // Make monic integer: y = lc * x substitution on the primitive part.
        ZPoly zf = primitive_part(sq);
        mpz_class lc = zf.lc();
        ZPoly monic_int;
        if (lc == 1) {
            monic_int = zf;
        } else {
            // g(x) = lc^{n-1} f(x/lc) is monic integer: g_i = f_i lc^{n-1-i}.
            int n = zf.degree();
            std::vector<mpz_class> c(n + 1);
            c[n] = 1;
            mpz_class pw(1);
            for (int i = n - 1; i >= 0; --i) {
                c[i] = zf.coeff(i) * pw;
                pw *= lc;
            }
            monic_int = ZPoly(std::move(c));
        }
        for (const auto& g : factor_monic_squarefree(monic_int)) {
            QPoly back;
            if (lc == 1) {
                back = g.map<mpq_class>([](const mpz_class& c) { return mpq_class(c); });
            } else {
                // g approximates f(x/lc) scaled; undo with x -> lc*x, monic.
                int n = g.degree();
                std::vector<mpq_class> c(n + 1);
                mpq_class pw(1);
                for (int i = 0; i <= n; ++i) {
                    c[i] = mpq_class(g.coeff(i)) * pw;
                    pw *= lc;
                }
                back = QPoly(std::move(c)).monic();
            }
            out.emplace_back(back.monic(), mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i) {
            int c = cmp(a.first.coeff(i), b.first.coeff(i));
            if (c != 0) return c < 0;
        }
        return a.second < b.second;
    });
    return out;
}

bool is_irreducible_over_q(const QPoly& f) {
    if (f.degree() < 1) return false;
    auto fac = factor_over_q(f);
    return fac.size() == 1 && fac[0].second == 1;
}

} // namespace berkline
