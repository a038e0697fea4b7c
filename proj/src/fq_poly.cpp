#include "berkline/fq_poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace berkline {

namespace {

const FqField* field_of(const FqPoly& f) {
    for (const auto& c : f.coeffs())
        if (c.field()) return c.field();
    throw Error("fq_poly: polynomial without field-tagged coefficients");
}

mpz_class q_pow(const FqField* F, int d) {
    mpz_class q(F->q());
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), d);
    return r;
}

// Deterministic source of "random" polynomials of degree < n.
struct DetRand {
    unsigned long state;
    explicit DetRand(unsigned long seed) : state(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
    unsigned long next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 11;
    }
    FqPoly poly(const FqField* F, int n) {
        std::vector<FqElem> c;
        c.reserve(n);
        for (int i = 0; i < n; ++i) {
            std::vector<long> cc(F->k(), 0);
            for (int j = 0; j < F->k(); ++j) cc[j] = static_cast<long>(next() % F->p());
            c.push_back(F->element(std::move(cc)));
        }
        return FqPoly(std::move(c));
    }
};

// f = g(x^p) -> g, with p-th roots of the coefficients.
FqPoly pth_root_poly(const FqPoly& f) {
    const FqField* F = field_of(f);
    long p = F->p();
    std::vector<FqElem> g;
    for (int i = 0; i <= f.degree(); i += p) g.push_back(f.coeff(i).in(F).pth_root());
    return FqPoly(std::move(g));
}

void merge_factor(std::vector<std::pair<FqPoly, int>>& out, const FqPoly& g, int m) {
    for (auto& [h, e] : out)
        if (h == g) {
            e += m;
            return;
        }
    out.emplace_back(g, m);
}

// Squarefree decomposition in characteristic p.
std::vector<std::pair<FqPoly, int>> squarefree_decompose(const FqPoly& f0) {
    std::vector<std::pair<FqPoly, int>> out;
    FqPoly f = f0.monic();
    if (f.degree() < 1) return out;
    long p = field_of(f)->p();
    FqPoly d = f.derivative();
    if (d.is_zero()) {
        for (auto& [g, m] : squarefree_decompose(pth_root_poly(f))) merge_factor(out, g, m * static_cast<int>(p));
        return out;
    }
    FqPoly c = poly_gcd(f, d);
    FqPoly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        FqPoly y = poly_gcd(w, c);
        FqPoly z = w / y;
        if (z.degree() > 0) merge_factor(out, z, i);
        w = y;
        c = c / y;
        ++i;
    }
    if (c.degree() > 0)
        for (auto& [g, m] : squarefree_decompose(pth_root_poly(c))) merge_factor(out, g, m * static_cast<int>(p));
    return out;
}

// Equal-degree splitting of a squarefree product of degree-d irreducibles.
void equal_degree(const FqPoly& f, int d, std::vector<FqPoly>& out, DetRand& rng) {
    const FqField* F = field_of(f);
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    FqPoly one(F->one());
    FqPoly split;
    while (true) {
        FqPoly a = rng.poly(F, f.degree());
        if (a.degree() < 1) continue;
        FqPoly g = poly_gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            split = g;
            break;
        }
        FqPoly b;
        if (F->p() == 2) {
            // Trace map over F_2: sum of a^{2^i}, i < k*d.
            FqPoly t, ai = a % f;
            for (int i = 0; i < F->k() * d; ++i) {
                t = t + ai;
                ai = (ai * ai) % f;
            }
            b = t;
        } else {
            mpz_class e = (q_pow(F, d) - 1) / 2;
            b = fq_powmod(a, e, f) - one;
        }
        FqPoly g2 = poly_gcd(b, f);
        if (g2.degree() > 0 && g2.degree() < f.degree()) {
            split = g2;
            break;
        }
    }
    equal_degree(split, d, out, rng);
    equal_degree(f / split, d, out, rng);
}

} // namespace

FqPoly fq_powmod(FqPoly base, mpz_class e, const FqPoly& m) {
    const FqField* F = field_of(m);
    FqPoly r(F->one());
    base = base % m;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

std::vector<std::pair<FqPoly, int>> fq_factor(const FqPoly& f) {
    if (f.is_zero()) throw Error("fq_factor: zero polynomial");
    std::vector<std::pair<FqPoly, int>> out;
    if (f.degree() < 1) return out;
    const FqField* F = field_of(f);
    DetRand rng(0x9e3779b97f4a7c15ULL ^ (static_cast<unsigned long>(f.degree()) << 32) ^ F->q());
    for (const auto& [sf, mult] : squarefree_decompose(f)) {
        // Distinct-degree split of the squarefree part.
        FqPoly g = sf;
        FqPoly x = FqPoly::x(F->one());
        FqPoly h = x;
        int d = 0;
        while (g.degree() > 0) {
            ++d;
            if (2 * d > g.degree()) {
                std::vector<FqPoly> irr;
                equal_degree(g, g.degree(), irr, rng);
                for (auto& t : irr) out.emplace_back(t, mult);
                break;
            }
            h = fq_powmod(h, mpz_class(F->q()), g);
            FqPoly gd = poly_gcd(h - x, g);
            if (gd.degree() > 0) {
                std::vector<FqPoly> irr;
                equal_degree(gd, d, irr, rng);
                for (auto& t : irr) out.emplace_back(t, mult);
                g = g / gd;
                h = h % g;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = 0; i <= a.first.degree(); ++i) {
            if (a.first.coeff(i) == b.first.coeff(i)) continue;
            return a.first.coeff(i) < b.first.coeff(i);
        }
        return a.second < b.second;
    });
    return out;
}

bool fq_is_irreducible(const FqPoly& f) {
    int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    const FqField* F = field_of(f);
    FqPoly fm = f.monic();
    FqPoly x = FqPoly::x(F->one());
    if (!(fq_powmod(x, q_pow(F, n), fm) - x).is_zero()) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool prime = true;
        for (int d2 = 2; d2 * d2 <= l; ++d2)
            if (l % d2 == 0) prime = false;
        if (!prime) continue;
        FqPoly g = poly_gcd(fq_powmod(x, q_pow(F, n / l), fm) - x, fm);
        if (g.degree() != 0) return false;
    }
    return true;
}

std::vector<FqElem> fq_roots(const FqPoly& f) {
    std::vector<FqElem> roots;
    for (const auto& [g, m] : fq_factor(f))
        if (g.degree() == 1) roots.push_back(-g.coeff(0));
    std::sort(roots.begin(), roots.end());
    return roots;
}

FqElem embed_generator(const FqField* src, const FqField* dst) {
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    static std::map<std::pair<const FqField*, const FqField*>, FqElem> cache;
    auto key = std::make_pair(src, dst);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (src->p() != dst->p() || dst->k() % src->k() != 0)
        throw Error("embed_generator: " + src->name() + " does not embed in " + dst->name());
    std::vector<FqElem> mod_coeffs;
    for (int i = 0; i <= src->k(); ++i) mod_coeffs.push_back(dst->from_int(src->modulus()[i]));
    auto roots = fq_roots(FqPoly(std::move(mod_coeffs)));
    if (roots.empty()) throw Error("embed_generator: no root found (internal)");
    cache.emplace(key, roots.front());
    return roots.front();
}

FqElem embed(const FqElem& e, const FqField* dst) {
    if (e.is_bare()) return e.in(dst);
    if (e.field() == dst) return e;
    FqElem g = embed_generator(e.field(), dst);
    FqElem acc = dst->zero();
    const auto& c = e.coeffs();
    for (int i = e.field()->k() - 1; i >= 0; --i) acc = acc * g + dst->from_int(c[i]);
    return acc;
}

} // namespace berkline
