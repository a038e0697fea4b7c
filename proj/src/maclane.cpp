#include "berkline/maclane.hpp"

#include "berkline/qpoly.hpp"

#include <algorithm>
#include <sstream>

namespace berkline {

namespace {

// gcd of two positive rationals a, b: the generator of aZ + bZ.
Rat rat_group_gcd(const Rat& a, const Rat& b) {
    // gcd(p/q, r/s) = gcd(p*s, r*q)/(q*s)
    Int num = gcd(Int(a.get_num() * b.get_den()), Int(b.get_num() * a.get_den()));
    Rat g(num, a.get_den() * b.get_den());
    g.canonicalize();
    return g;
}

// Solve x*a + y*b = g for integers, g = gcd of the rational group.
void rat_group_bezout(const Rat& a, const Rat& b, const Rat& g, Int& x, Int& y) {
    // scale by lcm of denominators -> integer Bezout
    Int den = lcm(lcm(a.get_den(), b.get_den()), g.get_den());
    Int A = a.get_num() * (den / a.get_den());
    Int B = b.get_num() * (den / b.get_den());
    Int G = g.get_num() * (den / g.get_den());
    Int gg, s, t;
    mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
    if (G % gg != 0) throw Error("rat_group_bezout: not representable");
    Int q = G / gg;
    x = s * q;
    y = t * q;
}

// Write c in F_{p^{kf}} as sum_m c_m theta^m with c_m in the subfield given
// by gen_img (image of the subfield generator); f terms.
std::vector<FqElem> decompose_over_subfield(const FqElem& c, const FqField* sub,
                                            const FqElem& gen_img, const FqElem& theta, long f) {
    const FqField* big = c.field();
    if (f == 1) {
        // c itself must lie in the embedded subfield; convert via basis solve below anyway
    }
    long p = big->p();
    int K = big->k();
    int ks = sub->k();
    // Basis of big over F_p: products gen_img^a * theta^m, a < ks, m < f.
    std::vector<std::vector<long>> cols;
    std::vector<std::pair<int, int>> tags;
    FqElem tp = big->one();
    for (long m = 0; m < f; ++m) {
        FqElem ga = big->one();
        for (int a = 0; a < ks; ++a) {
            FqElem prod = ga * tp;
            cols.push_back(prod.coeffs());
            tags.emplace_back(a, static_cast<int>(m));
            ga = ga * gen_img;
        }
        tp = tp * theta;
    }
    if (static_cast<int>(cols.size()) != K)
        throw Error("decompose_over_subfield: dimension mismatch");
    // Solve cols * x = c over F_p.
    int n = K;
    std::vector<std::vector<long>> M(n, std::vector<long>(n + 1, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M[i][j] = cols[j][i];
        M[i][n] = c.coeffs()[i];
    }
    auto modp = [p](long v) {
        long r = v % p;
        return r < 0 ? r + p : r;
    };
    std::vector<int> piv(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int sel = -1;
        for (int i = row; i < n; ++i)
            if (M[i][col] % p != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(M[sel], M[row]);
        long inv = 1;
        {
            long a = modp(M[row][col]);
            long t0 = 0, t1 = 1, r0 = p, r1 = a;
            while (r1) {
                long q = r0 / r1;
                std::swap(t0 -= q * t1, t1);
                std::swap(r0 -= q * r1, r1);
            }
            inv = modp(t0);
        }
        for (int j = col; j <= n; ++j) M[row][j] = modp(M[row][j] * inv);
        for (int i = 0; i < n; ++i) {
            if (i == row || M[i][col] % p == 0) continue;
            long fct = modp(M[i][col]);
            for (int j = col; j <= n; ++j) M[i][j] = modp(M[i][j] - fct * M[row][j]);
        }
        piv[col] = row;
        ++row;
    }
    std::vector<long> x(n, 0);
    for (int col = 0; col < n; ++col)
        if (piv[col] >= 0) x[col] = modp(M[piv[col]][n]);
    std::vector<FqElem> out;
    for (long m = 0; m < f; ++m) {
        std::vector<long> coeffs(ks, 0);
        for (int a = 0; a < ks; ++a)
            for (int j = 0; j < n; ++j)
                if (tags[j] == std::make_pair(a, static_cast<int>(m))) coeffs[a] = x[j];
        out.push_back(sub->element(std::move(coeffs)));
    }
    return out;
}

} // namespace

// All branches of one MacLane step of psi over v (defined with the
// extensions machinery below).
static std::vector<MacLaneChain> detail_mac_lane_step(const MacLaneChain& v, const TPoly& psi);

// ---------------------------------------------------------------------------
// MacLaneChain
// ---------------------------------------------------------------------------

MacLaneChain MacLaneChain::gauss(ValuedFieldPtr base, const Rat& lambda0) {
    MacLaneChain c;
    c.base_ = std::move(base);
    Stage s;
    TowerElem one(Rat(1)), zero(Rat(0));
    s.phi = TPoly(std::vector<TowerElem>{zero, one}); // x
    s.lambda = ExtendedRational(lambda0);
    long Dbase = c.base_->D();
    Rat g = (sgn(lambda0) == 0) ? Rat(1, Dbase) : rat_group_gcd(abs(lambda0), Rat(1, Dbase));
    s.D = static_cast<long>(Rat(1 / g).get_num().get_si());
    s.e = s.D / Dbase;
    s.kappa = c.base_->residue_field();
    s.prev_gen_img = s.kappa->gen();
    s.theta = s.kappa->one();
    s.f = 1;
    // u-mono: a*lambda0 + b/Dbase = 1/D
    if (sgn(lambda0) == 0) {
        s.u.base_exp = 1;
        s.u.key_exps = {0};
    } else {
        Int a, b;
        rat_group_bezout(lambda0, Rat(1, Dbase), Rat(1, s.D), a, b);
        // canonicalize a into [0, e)
        long e = s.e;
        long am = Int(((a % e) + e) % e).get_si();
        Int shift = (a - am) / e;
        // a -> am costs shift*e*lambda0 which moves to the base exponent:
        // e*lambda0 in (1/Dbase)Z
        Rat el = Rat(e) * lambda0 * Rat(Dbase);
        Int badj = b + shift * el.get_num(); // el is integral here
        s.u.key_exps = {am};
        s.u.base_exp = static_cast<long>(badj.get_si());
    }
    c.st_.push_back(std::move(s));
    return c;
}

std::vector<TPoly> MacLaneChain::digits(const TPoly& f) const {
    const TPoly& phi = st_.back().phi;
    std::vector<TPoly> out;
    TPoly r = f;
    if (r.is_zero()) return out;
    while (!r.is_zero()) {
        auto [q, rem] = r.divmod(phi);
        out.push_back(rem);
        r = q;
    }
    return out;
}

ExtendedRational MacLaneChain::eval_stage(int k, const TPoly& f) const {
    if (f.is_zero()) return ExtendedRational::pos_inf();
    if (k < 0) {
        if (f.degree() > 0) throw Error("maclane eval: nonconstant at base");
        return base_->val(f.coeff(0));
    }
    const Stage& s = st_[static_cast<size_t>(k)];
    ExtendedRational best = ExtendedRational::pos_inf();
    TPoly r = f;
    long j = 0;
    while (!r.is_zero()) {
        auto [q, rem] = r.divmod(s.phi);
        if (!rem.is_zero()) {
            ExtendedRational term = eval_stage(k - 1, rem);
            if (s.lambda.is_pos_inf()) {
                if (j == 0) best = min(best, term);
            } else {
                best = min(best, term + s.lambda.scaled(Rat(j)));
            }
        }
        r = q;
        ++j;
    }
    return best;
}

ExtendedRational MacLaneChain::eval(const TPoly& f) const {
    return eval_stage(static_cast<int>(st_.size()) - 1, f);
}

long MacLaneChain::ram_index() const { return st_.back().D / base_->D(); }

long MacLaneChain::res_degree() const {
    long f = 1;
    for (const auto& s : st_) f *= s.f;
    return f;
}

Mono MacLaneChain::scaled_u(int k, long times) const {
    Mono m = st_[static_cast<size_t>(k)].u;
    m.base_exp *= times;
    for (auto& e : m.key_exps) e *= times;
    return m;
}

Rat MacLaneChain::mono_value(const Mono& m) const {
    Rat v(m.base_exp, base_->D());
    v.canonicalize();
    for (size_t k = 0; k < m.key_exps.size(); ++k) {
        if (m.key_exps[k] == 0) continue;
        const auto& lam = st_[k].lambda;
        if (!lam.is_finite()) throw Error("mono_value: exponent on pseudo stage");
        v += Rat(m.key_exps[k]) * lam.finite();
    }
    return v;
}

void MacLaneChain::canonicalize_mono(Mono& m) const {
    m.key_exps.resize(st_.size(), 0);
    for (int k = static_cast<int>(st_.size()) - 1; k >= 0; --k) {
        const Stage& s = st_[static_cast<size_t>(k)];
        long e = s.e;
        long n = m.key_exps[static_cast<size_t>(k)];
        long r = ((n % e) + e) % e;
        long delta = (n - r) / e;
        if (delta == 0) {
            m.key_exps[static_cast<size_t>(k)] = r;
            continue;
        }
        m.key_exps[static_cast<size_t>(k)] = r;
        // phi_k^{e*delta} has value delta*e*lambda_k realized by u_{k-1}^{delta*E_k}
        Rat el = Rat(e) * s.lambda.finite();
        long Dprev = (k == 0) ? base_->D() : st_[static_cast<size_t>(k - 1)].D;
        Rat Ek = el * Rat(Dprev);
        if (Ek.get_den() != 1) throw Error("canonicalize_mono: E not integral");
        long E = static_cast<long>(Ek.get_num().get_si());
        if (k == 0) {
            m.base_exp += delta * E;
        } else {
            Mono add = scaled_u(k - 1, delta * E);
            m.base_exp += add.base_exp;
            for (size_t j = 0; j < add.key_exps.size(); ++j) m.key_exps[j] += add.key_exps[j];
        }
    }
}

Mono MacLaneChain::mono_with_valuation(const Rat& s) const {
    Mono m;
    m.key_exps.assign(st_.size(), 0);
    Rat rem = s;
    for (int k = static_cast<int>(st_.size()) - 1; k >= 0; --k) {
        const Stage& stg = st_[static_cast<size_t>(k)];
        if (stg.lambda.is_pos_inf()) continue;
        long Dprev = (k == 0) ? base_->D() : st_[static_cast<size_t>(k - 1)].D;
        long found = -1;
        for (long n = 0; n < stg.e; ++n) {
            Rat r = (rem - Rat(n) * stg.lambda.finite()) * Rat(Dprev);
            r.canonicalize();
            if (r.get_den() == 1) {
                found = n;
                break;
            }
        }
        if (found < 0) throw Error("mono_with_valuation: value not in group");
        m.key_exps[static_cast<size_t>(k)] = found;
        rem -= Rat(found) * stg.lambda.finite();
    }
    Rat b = rem * Rat(base_->D());
    b.canonicalize();
    if (b.get_den() != 1) throw Error("mono_with_valuation: value not in value group");
    m.base_exp = static_cast<long>(b.get_num().get_si());
    return m;
}

TPoly MacLaneChain::mono_element(const Mono& m0) const {
    Mono m = m0;
    canonicalize_mono(m);
    TPoly out(base_->pow_uniformizer(m.base_exp));
    for (size_t k = 0; k < m.key_exps.size(); ++k) {
        if (m.key_exps[k] < 0) throw Error("mono_element: negative key exponent (internal)");
        TPoly b = st_[k].phi;
        long e = m.key_exps[k];
        while (e > 0) {
            if (e & 1) out = out * b;
            b = b * b;
            e >>= 1;
        }
    }
    return out;
}

TPoly MacLaneChain::element_with_valuation(const Rat& s) const {
    return mono_element(mono_with_valuation(s));
}

std::map<long, FqElem> MacLaneChain::reduce_stage(int k, const TPoly& f, Mono M) const {
    std::map<long, FqElem> out;
    if (f.is_zero()) return out;
    if (k < 0) {
        if (f.degree() > 0) throw Error("reduce: nonconstant at base");
        TowerElem c = f.coeff(0) * base_->pow_uniformizer(M.base_exp);
        ExtendedRational v = base_->val(c);
        if (v == ExtendedRational(0)) out[0] = base_->residue(c);
        else if (v < ExtendedRational(0))
            throw Error("reduce: negative value at base (internal)");
        return out;
    }
    const Stage& s = st_[static_cast<size_t>(k)];
    long a = M.key(static_cast<size_t>(k));
    if (M.key_exps.size() > static_cast<size_t>(k)) M.key_exps[static_cast<size_t>(k)] = 0;
    Rat mrest = Rat(M.base_exp, base_->D());
    for (size_t j = 0; j < M.key_exps.size() && j < static_cast<size_t>(k); ++j)
        if (M.key_exps[j] != 0) mrest += Rat(M.key_exps[j]) * st_[j].lambda.finite();

    long Dprev = (k == 0) ? base_->D() : st_[static_cast<size_t>(k - 1)].D;
    TPoly r = f;
    long j = 0;
    while (!r.is_zero()) {
        auto [q, rem] = r.divmod(s.phi);
        if (!rem.is_zero()) {
            long tot = j + a;
            ExtendedRational vj = eval_stage(k - 1, rem);
            ExtendedRational term;
            bool zero_term = false;
            if (s.lambda.is_pos_inf()) {
                if (tot == 0) term = vj + ExtendedRational(mrest);
                else { r = q; ++j; continue; }
            } else {
                term = vj + s.lambda.scaled(Rat(tot)) + ExtendedRational(mrest);
            }
            if (term == ExtendedRational(0)) zero_term = true;
            else if (term < ExtendedRational(0))
                throw Error("reduce: negative graded value (internal)");
            if (zero_term) {
                if (tot % s.e != 0) throw Error("reduce: support not e-divisible (internal)");
                long iy = tot / s.e;
                Mono lower = M;
                if (lower.key_exps.size() > static_cast<size_t>(k))
                    lower.key_exps.resize(static_cast<size_t>(k));
                if (!s.lambda.is_pos_inf() && iy != 0) {
                    Rat Ek = Rat(s.e) * s.lambda.finite() * Rat(Dprev);
                    if (Ek.get_den() != 1) throw Error("reduce: E not integral");
                    if (k == 0) {
                        lower.base_exp += iy * Ek.get_num().get_si();
                    } else {
                        Mono add = scaled_u(k - 1, iy * Ek.get_num().get_si());
                        lower.base_exp += add.base_exp;
                        for (size_t t = 0; t < add.key_exps.size(); ++t)
                            lower.add_key(t, add.key_exps[t]);
                    }
                }
                auto sub = reduce_stage(k - 1, rem, lower);
                // evaluate previous variable at theta (stage k >= 1), embed
                FqElem c = s.kappa->zero();
                if (k == 0) {
                    for (const auto& [mth, ce] : sub) {
                        if (mth != 0) throw Error("reduce: base Laurent unexpected");
                        c = c + ce.in(s.kappa);
                    }
                } else {
                    FqElem thinv;
                    bool havinv = false;
                    for (const auto& [mth, ce] : sub) {
                        FqElem cc = embed(ce, s.kappa);
                        if (mth >= 0) {
                            c = c + cc * s.theta.pow(static_cast<unsigned long>(mth));
                        } else {
                            if (!havinv) {
                                thinv = s.theta.inverse();
                                havinv = true;
                            }
                            c = c + cc * thinv.pow(static_cast<unsigned long>(-mth));
                        }
                    }
                }
                if (!c.is_zero()) {
                    auto it = out.find(iy);
                    if (it == out.end()) out[iy] = c;
                    else {
                        it->second = it->second + c;
                        if (it->second.is_zero()) out.erase(it);
                    }
                }
            }
        }
        r = q;
        ++j;
    }
    return out;
}

std::map<long, FqElem> MacLaneChain::reduce0(const TPoly& f, const Mono& M) const {
    return reduce_stage(static_cast<int>(st_.size()) - 1, f, M);
}

std::pair<long, FqPoly> MacLaneChain::residual(const TPoly& G) const {
    ExtendedRational nu = eval(G);
    if (!nu.is_finite()) throw Error("residual: value not finite");
    Mono M = mono_with_valuation(-nu.finite());
    auto red = reduce0(G, M);
    if (red.empty()) throw Error("residual: empty reduction (internal)");
    long j0 = red.begin()->first;
    long top = red.rbegin()->first;
    const FqField* kap = st_.back().kappa;
    std::vector<FqElem> coeffs(static_cast<size_t>(top - j0 + 1), kap->zero());
    for (const auto& [i, c] : red) coeffs[static_cast<size_t>(i - j0)] = c;
    return {j0, FqPoly(std::move(coeffs))};
}

bool MacLaneChain::is_key(const TPoly& phi, std::string* why) const {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (phi.degree() < 1 || !phi.is_monic()) return fail("not monic of positive degree");
    const Stage& s = st_.back();
    long dn = s.phi.degree();
    if (phi.degree() % dn != 0) return fail("degree not a multiple of current key degree");
    if (phi == s.phi) return true;
    if (phi.degree() == dn) {
        // same-degree candidate: needs the phi-digit to matter
        auto [off, R] = residual(phi);
        if (off == 1) return true;
        if (off == 0 && R.degree() == 1) return true;
        return fail("same-degree polynomial is not minimal");
    }
    auto [off, R] = residual(phi);
    if (off != 0) return fail("residual has a variable factor");
    if (!fq_is_irreducible(R)) return fail("residual not irreducible");
    if (phi.degree() != s.e * R.degree() * dn) return fail("degree/residual mismatch");
    return true;
}

MacLaneChain MacLaneChain::augmented(const TPoly& phi, const ExtendedRational& lambda) const {
    // A chain like [v0(x)=0, v(x^2+3)=3/2] is written with the intermediate
    // stage [v(x)=1/2] left implicit; insert such stages when they are
    // forced, and reject genuinely non-key polynomials.
    MacLaneChain v = *this;
    for (int guard = 0; guard < 64; ++guard) {
        std::string why;
        if (v.is_key(phi, &why)) {
            ExtendedRational cur = v.eval(phi);
            if (!(lambda > cur))
                throw ValueNotIncreasedError("augment: lambda " + lambda.str() +
                                             " <= v(phi) = " + cur.str());
            return v.augmented_unchecked(phi, lambda);
        }
        auto steps = detail_mac_lane_step(v, phi);
        if (steps.size() != 1)
            throw NotKeyPolynomialError("augment: " + why + " (and no unique completion)");
        v = steps.front();
        if (lambda.is_finite() && !(v.eval(phi) < lambda))
            throw ValueNotIncreasedError("augment: lambda " + lambda.str() +
                                         " not above the forced chain value " +
                                         v.eval(phi).str());
    }
    throw NotKeyPolynomialError("augment: completion did not terminate");
}

MacLaneChain MacLaneChain::augmented_unchecked(TPoly phi, ExtendedRational lambda) const {
    MacLaneChain out = *this;
    if (phi.degree() == out.st_.back().phi.degree() && out.st_.size() >= 1) {
        if (out.st_.size() == 1) {
            // stage-0 replacement: new linear key, new lambda
            if (phi.degree() != 1) throw Error("augment: stage-0 key must be linear");
            MacLaneChain fresh = gauss(base_, Rat(0));
            fresh.st_[0].phi = std::move(phi);
            // recompute group data for new lambda
            if (!lambda.is_finite()) {
                fresh.st_[0].lambda = lambda;
                fresh.st_[0].e = 1;
                fresh.st_[0].D = base_->D();
                fresh.st_[0].u.base_exp = 1;
                fresh.st_[0].u.key_exps = {0};
                return fresh;
            }
            MacLaneChain g2 = gauss(base_, lambda.finite());
            g2.st_[0].phi = fresh.st_[0].phi;
            return g2;
        }
        out.st_.pop_back();
    }
    // append new stage over out
    Stage s;
    s.phi = std::move(phi);
    s.lambda = lambda;
    const Stage& prev = out.st_.back();
    auto [off, R] = out.residual(s.phi);
    (void)off;
    s.residual_of_phi = R;
    s.f = std::max(1, R.degree());
    if (R.degree() >= 1) {
        s.kappa = FqField::get(prev.kappa->p(), prev.kappa->k() * static_cast<int>(s.f));
        s.prev_gen_img = (s.kappa == prev.kappa) ? prev.kappa->gen()
                                                 : embed_generator(prev.kappa, s.kappa);
        std::vector<FqElem> rc;
        for (int i = 0; i <= R.degree(); ++i) rc.push_back(embed(R.coeff(i).in(prev.kappa), s.kappa));
        auto roots = fq_roots(FqPoly(std::move(rc)).monic());
        if (roots.empty()) throw Error("augment: residual has no root in extension (internal)");
        s.theta = roots.front();
    } else {
        s.kappa = prev.kappa;
        s.prev_gen_img = prev.kappa->gen();
        s.theta = prev.kappa->one();
        s.f = 1;
    }
    if (lambda.is_finite()) {
        Rat g = rat_group_gcd(abs(lambda.finite()) == 0 ? Rat(1, prev.D) : abs(lambda.finite()),
                              Rat(1, prev.D));
        s.D = static_cast<long>(Rat(1 / g).get_num().get_si());
        s.e = s.D / prev.D;
        // u-mono: a*lambda + b/Dprev = 1/D
        Int a, b;
        rat_group_bezout(lambda.finite(), Rat(1, prev.D), Rat(1, s.D), a, b);
        long am = Int(((a % s.e) + s.e) % s.e).get_si();
        Int shift = (a - am) / s.e;
        Rat el = Rat(s.e) * lambda.finite() * Rat(prev.D);
        Int badj = b + shift * el.get_num();
        Mono m = out.scaled_u(static_cast<int>(out.st_.size()) - 1,
                              static_cast<long>(badj.get_si()));
        m.add_key(out.st_.size(), am);
        s.u = m;
    } else {
        s.D = prev.D;
        s.e = 1;
        s.u = prev.u;
        s.u.key_exps.resize(out.st_.size() + 1, 0);
    }
    out.st_.push_back(std::move(s));
    return out;
}

TPoly MacLaneChain::lift_const0(const FqElem& c0) const {
    int n = static_cast<int>(st_.size()) - 1;
    const Stage& s = st_[static_cast<size_t>(n)];
    FqElem c = c0.in(s.kappa);
    if (c.is_zero()) return TPoly();
    if (n == 0) {
        return TPoly(base_->lift_residue(c));
    }
    MacLaneChain prefix = *this;
    prefix.st_.pop_back();
    const Stage& ps = st_[static_cast<size_t>(n - 1)];
    auto comps = decompose_over_subfield(c, ps.kappa, s.prev_gen_img, s.theta, s.f);
    // realization of the previous residual variable y_{n-1}:
    // Y = phi_{n-1}^{e_{n-1}} * element_with_valuation(-e_{n-1} * lambda_{n-1})
    TPoly Y;
    if (s.f > 1) {
        Rat el = Rat(ps.e) * ps.lambda.finite();
        TPoly unitpart = prefix.element_with_valuation(-el);
        TPoly ppow(TowerElem(Rat(1)));
        for (long i = 0; i < ps.e; ++i) ppow = ppow * ps.phi;
        Y = ppow * unitpart;
    }
    TPoly acc;
    TPoly Ym(TowerElem(Rat(1)));
    for (long m = 0; m < s.f; ++m) {
        if (!comps[static_cast<size_t>(m)].is_zero()) {
            TPoly part = prefix.lift_const0(comps[static_cast<size_t>(m)]);
            acc = acc + part * Ym;
        }
        if (m + 1 < s.f) Ym = Ym * Y;
    }
    if (acc.is_zero()) throw Error("lift_const0: zero accumulation (internal)");
    // compactify mod phi_n, preserving the y^0-graded part
    return acc % s.phi;
}

TPoly MacLaneChain::lift_to_key(const FqPoly& gbar) const {
    const Stage& s = st_.back();
    if (gbar.degree() < 1) throw Error("lift_to_key: constant residual");
    if (gbar.coeff(0).is_zero()) throw Error("lift_to_key: residual divisible by z");
    long t = gbar.degree();
    long e = s.e;
    if (!s.lambda.is_finite()) throw Error("lift_to_key: pseudo stage");
    Rat lam = s.lambda.finite();
    TPoly phiE(TowerElem(Rat(1)));
    for (long i = 0; i < e; ++i) phiE = phiE * s.phi;
    // phi^(e*t) as the monic head
    TPoly head(TowerElem(Rat(1)));
    for (long i = 0; i < t; ++i) head = head * phiE;
    TPoly mod_cap = head; // phi^{e t}

    FqPoly target = gbar.monic();
    TPoly cand = head;
    for (int pass = 0; pass < 2 * static_cast<int>(t) + 4; ++pass) {
        auto [off, R] = residual(cand);
        // full residual z^off * R(z); must have degree exactly t
        if (off < 0 || off + R.degree() > t)
            throw Error("lift_to_key: residual out of range (internal)");
        std::vector<FqElem> full(static_cast<size_t>(t) + 1, s.kappa->zero());
        for (int i = 0; i <= R.degree(); ++i)
            full[static_cast<size_t>(off + i)] = R.coeff(i).in(s.kappa);
        FqElem lead = full[static_cast<size_t>(t)];
        if (lead.is_zero()) throw Error("lift_to_key: lost leading term (internal)");
        FqElem leadinv = lead.inverse();
        FqPoly Rm = FqPoly(std::move(full)) * leadinv;
        FqPoly diff = Rm - target;
        if (diff.is_zero()) return cand;
        // subtract lifts of the offending coefficients; each probe's graded
        // unit is measured and divided out, so one pass fixes one level
        Mono norm = mono_with_valuation(-Rat(t) * Rat(e) * lam);
        TPoly corr;
        for (int i = 0; i <= diff.degree(); ++i) {
            FqElem d = diff.coeff(i).in(s.kappa);
            if (d.is_zero()) continue;
            Rat si = Rat(t - i) * Rat(e) * lam;
            TPoly probe = element_with_valuation(si);
            TPoly phipow(TowerElem(Rat(1)));
            for (long j2 = 0; j2 < e * i; ++j2) phipow = phipow * s.phi;
            probe = probe * phipow;
            auto w = reduce0(probe, norm);
            auto it = w.find(i);
            if (it == w.end() || it->second.is_zero())
                throw Error("lift_to_key: probe has no graded contribution (internal)");
            FqElem eps = it->second;
            corr = corr + lift_const0(d * lead * eps.inverse()) * probe;
        }
        cand = cand - corr;
        cand = head + ((cand - head) % mod_cap);
    }
    throw Error("lift_to_key: correction loop failed to converge");
}

int MacLaneChain::cmp(const MacLaneChain& o) const {
    if (st_.size() != o.st_.size()) return st_.size() < o.st_.size() ? -1 : 1;
    for (size_t k = 0; k < st_.size(); ++k) {
        const auto& a = st_[k];
        const auto& b = o.st_[k];
        if (a.phi.degree() != b.phi.degree()) return a.phi.degree() < b.phi.degree() ? -1 : 1;
        auto c = a.lambda <=> b.lambda;
        if (c != 0) return c < 0 ? -1 : 1;
        for (int i = 0; i <= a.phi.degree(); ++i) {
            int cc = a.phi.coeff(i).cmp(b.phi.coeff(i));
            if (cc != 0) return cc;
        }
    }
    return 0;
}

std::string MacLaneChain::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t k = 0; k < st_.size(); ++k) {
        if (k) os << ", ";
        os << "v(" << st_[k].phi.str() << ") = " << st_[k].lambda.str();
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Extensions (MacLane approximation)
// ---------------------------------------------------------------------------

namespace {

struct StepResult {
    std::vector<MacLaneChain> open;      // still splitting
    std::vector<MacLaneChain> finished;  // certified or pseudo
};

// One MacLane step: decompose psi over v and branch.
StepResult mac_lane_step(const MacLaneChain& v, const TPoly& psi) {
    StepResult out;
    auto [off, R] = v.residual(psi);
    std::vector<TPoly> keys;
    if (off > 0) keys.push_back(v.last_key());
    for (const auto& [g, mult] : fq_factor(R)) {
        (void)mult;
        if (g.degree() < 1) continue;
        keys.push_back(v.lift_to_key(g));
    }
    if (keys.empty()) throw Error("mac_lane_step: no branch keys (internal)");
    for (const TPoly& phi : keys) {
        // Newton polygon of psi in phi-digits, slopes below -v(phi).
        ExtendedRational vphi = v.eval(phi);
        TPoly r = psi;
        std::vector<std::pair<long, ExtendedRational>> pts;
        long j = 0;
        while (!r.is_zero()) {
            auto [q, rem] = r.divmod(phi);
            pts.emplace_back(j, rem.is_zero() ? ExtendedRational::pos_inf() : v.eval(rem));
            r = q;
            ++j;
        }
        if (pts.size() < 2) continue;
        if (!pts.front().second.is_finite() && pts.front().first == 0) {
            // digit 0 vanishes identically: phi divides psi
            out.finished.push_back(v.augmented_unchecked(phi, ExtendedRational::pos_inf()));
            // continue with the cofactor part via remaining slopes
        }
        // lower hull over finite points
        std::vector<std::pair<long, Rat>> fin;
        for (const auto& [i, val] : pts)
            if (val.is_finite()) fin.emplace_back(i, val.finite());
        std::vector<std::pair<long, Rat>> hull;
        for (const auto& pt : fin) {
            while (hull.size() >= 2) {
                const auto& A = hull[hull.size() - 2];
                const auto& B = hull[hull.size() - 1];
                if ((B.second - A.second) * Rat(pt.first - A.first) >=
                    (pt.second - A.second) * Rat(B.first - A.first))
                    hull.pop_back();
                else
                    break;
            }
            hull.push_back(pt);
        }
        for (size_t si = 0; si + 1 < hull.size(); ++si) {
            Rat slope = (hull[si + 1].second - hull[si].second) /
                        Rat(hull[si + 1].first - hull[si].first);
            Rat lambda = -slope;
            if (!(ExtendedRational(lambda) > vphi)) continue; // not principal
            MacLaneChain w = v.augmented_unchecked(phi, ExtendedRational(lambda));
            // Final iff the equivalence decomposition of psi at w is a single
            // prime to the first power (MacLane's irreducibility certificate).
            auto [off2, R2] = w.residual(psi);
            if (off2 == 0 && R2.degree() >= 1 && fq_is_irreducible(R2))
                out.finished.push_back(std::move(w));
            else
                out.open.push_back(std::move(w));
        }
    }
    return out;
}

// Two chains approximate the same extension iff they dominate each other on
// their last keys.
static bool same_extension(const MacLaneChain& a, const MacLaneChain& b) {
    return a.eval(b.last_key()) >= b.last_value() && b.eval(a.last_key()) >= a.last_value();
}

} // namespace

static std::vector<MacLaneChain> detail_mac_lane_step(const MacLaneChain& v, const TPoly& psi) {
    auto res = mac_lane_step(v, psi);
    std::vector<MacLaneChain> out = std::move(res.open);
    for (auto& w : res.finished) out.push_back(std::move(w));
    return out;
}

std::vector<ExtensionData> maclane_extensions(const ValuedFieldPtr& base, const TPoly& psi,
                                              bool check_irreducible) {
    if (psi.degree() < 1 || !psi.is_monic())
        throw Error("extensions: psi must be monic of positive degree");
    if (check_irreducible) {
        QPoly q = psi.map<mpq_class>([](const TowerElem& c) {
            if (!c.is_rational()) throw Error("extensions: irreducibility check needs Q coefficients");
            return c.rational();
        });
        if (!is_irreducible_over_q(q))
            throw ReducibleMinimalPolynomialError("extensions: psi reducible over Q");
    }
    MacLaneChain v0 = MacLaneChain::gauss(base, Rat(0));
    for (int i = 0; i <= psi.degree(); ++i) {
        ExtendedRational vi = base->val(psi.coeff(i));
        if (vi < ExtendedRational(0))
            throw NonIntegralError("extensions: psi not integral; rescale first");
    }
    std::vector<MacLaneChain> open{v0}, finished;
    int guard = 0;
    auto absorb = [&](std::vector<MacLaneChain>& list, MacLaneChain w) {
        // Sibling slope-branches of one key can rediscover each other's
        // roots; keep only one approximant per extension (the deeper one).
        for (auto& existing : list) {
            if (!same_extension(existing, w)) continue;
            if (w.eval(psi) > existing.eval(psi)) existing = std::move(w);
            return;
        }
        for (const auto& other : (&list == &open ? finished : open))
            if (same_extension(other, w)) return;
        list.push_back(std::move(w));
    };
    while (!open.empty()) {
        if (++guard > 1000) throw Error("extensions: iteration guard tripped");
        MacLaneChain v = open.back();
        open.pop_back();
        auto res = mac_lane_step(v, psi);
        for (auto& w : res.finished) absorb(finished, std::move(w));
        for (auto& w : res.open) absorb(open, std::move(w));
    }
    std::vector<ExtensionData> out;
    out.reserve(finished.size());
    for (auto& w : finished) out.emplace_back(std::move(w), psi);
    std::sort(out.begin(), out.end(), [](const ExtensionData& a, const ExtensionData& b) {
        return a.cmp(b) < 0;
    });
    long total = 0;
    for (const auto& e : out) total += e.e() * e.f();
    if (total != psi.degree()) throw Error("extensions: sum e*f != deg psi (internal)");
    return out;
}

// ---------------------------------------------------------------------------
// ExtensionData
// ---------------------------------------------------------------------------

ExtensionData::ExtensionData(MacLaneChain chain, TPoly psi)
    : chain_(std::move(chain)), psi_(std::move(psi)) {
    e_ = chain_.ram_index();
    f_ = chain_.res_degree();
}

const MacLaneChain& ExtensionData::probe() {
    if (!probe_) {
        auto res = mac_lane_step(chain_, psi_);
        if (res.open.size() + res.finished.size() != 1)
            throw Error("refine: certified chain split (internal)");
        probe_ = res.open.empty() ? std::move(res.finished.front()) : std::move(res.open.front());
    }
    return *probe_;
}

void ExtensionData::refine() {
    if (chain_.is_pseudo()) return;
    probe();
    chain_ = std::move(*probe_);
    probe_.reset();
}

ExtendedRational ExtensionData::value_of(const TPoly& g, int budget) {
    if (g.is_zero()) return ExtendedRational::pos_inf();
    if (g.degree() >= psi_.degree())
        throw Error("value_of: representative not reduced");
    if (g.degree() < chain_.last_key().degree()) return chain_.eval(g);
    // A MacLane approximant strictly increases on every element it
    // undervalues, so agreement across one refinement is stability.
    for (int i = 0; i <= budget; ++i) {
        ExtendedRational cur = chain_.eval(g);
        if (chain_.is_pseudo()) return cur;
        if (probe().eval(g) == cur) return cur;
        refine();
    }
    throw StabilizationBudgetExceededError("value_of: no stabilization within budget");
}

FqElem ExtensionData::residue_of(const TPoly& g, int budget) {
    ExtendedRational v = value_of(g, budget);
    if (!(v == ExtendedRational(0)))
        throw Error("residue_of: element does not have value 0");
    // Refine until g agrees with its digit-0 part up to positive value; the
    // residue is then the y^0 coefficient of that digit's reduction.
    for (int i = 0; i < budget; ++i) {
        const TPoly& phi = chain_.last_key();
        TPoly digit0 = (g.degree() < phi.degree()) ? g : g % phi;
        ExtendedRational rest =
            (g - digit0).is_zero() ? ExtendedRational::pos_inf() : chain_.eval(g - digit0);
        if (!digit0.is_zero() && chain_.eval(digit0) == ExtendedRational(0) &&
            rest > ExtendedRational(0)) {
            auto red = chain_.reduce0(digit0, Mono{});
            auto it = red.find(0);
            if (it == red.end())
                throw Error("residue_of: vanishing reduction at value 0 (internal)");
            return it->second;
        }
        refine();
    }
    throw StabilizationBudgetExceededError("residue_of: no stabilization within budget");
}

int ExtensionData::cmp(const ExtensionData& o) const {
    if (e_ != o.e_) return e_ < o.e_ ? -1 : 1;
    if (f_ != o.f_) return f_ < o.f_ ? -1 : 1;
    return chain_.cmp(o.chain_);
}

// ---------------------------------------------------------------------------
// ValuedField
// ---------------------------------------------------------------------------

ValuedFieldPtr ValuedField::rationals(long p) {
    auto f = std::shared_ptr<ValuedField>(new ValuedField());
    f->vp_ = PAdicValuation(p);
    f->D_ = 1;
    f->e_ = f->f_ = 1;
    f->kappa_ = FqField::get(p, 1);
    f->uniformizer_ = TowerElem(Rat(p));
    return f;
}

ValuedFieldPtr ValuedField::extension(const ValuedFieldPtr& parent, const ExtensionData& ext,
                                      std::string var) {
    auto f = std::shared_ptr<ValuedField>(new ValuedField());
    f->parent_ = parent;
    f->vp_ = parent->vp_;
    f->ext_ = ext;
    f->ring_ = TowerRing::create(parent->ring_, ext.psi(), std::move(var));
    f->D_ = ext.chain().D();
    f->e_ = ext.e();
    f->f_ = ext.f();
    f->kappa_ = ext.chain().residue_const_field();
    TPoly u = ext.chain().element_with_valuation(Rat(1, f->D_));
    f->uniformizer_ = u.evaluate(f->ring_->gen());
    return f;
}

long ValuedField::abs_e() const {
    long e = e_;
    for (ValuedFieldPtr p = parent_; p; p = p->parent_) e *= p->e_;
    return e;
}

long ValuedField::abs_f() const {
    long f = f_;
    for (ValuedFieldPtr p = parent_; p; p = p->parent_) f *= p->f_;
    return f;
}

ExtendedRational ValuedField::val(const TowerElem& a) const {
    if (a.is_rational()) {
        return vp_.val(a.rational());
    }
    if (!ring_) throw Error("val: element of deeper level than field");
    if (a.ring() != ring_) {
        if (!parent_) throw Error("val: element of unrelated ring");
        return parent_->val(a);
    }
    TPoly g(a.coeffs());
    std::lock_guard<std::mutex> lock(mu_);
    return ext_->value_of(g);
}

FqElem ValuedField::residue(const TowerElem& a) const {
    if (a.is_rational()) {
        if (!(vp_.val(a.rational()) == ExtendedRational(0)))
            throw Error("residue: value not 0");
        ResidueContext ctx(vp_, 1, FqField::get(vp_.prime().get_si(), 1));
        FqElem r = ctx.residue_unit(a.rational(), ExtendedRational(0));
        return embed(r, kappa_);
    }
    if (!ring_) throw Error("residue: element of deeper level than field");
    if (a.ring() != ring_) {
        FqElem r = parent_->residue(a);
        return embed(r, kappa_);
    }
    TPoly g(a.coeffs());
    std::lock_guard<std::mutex> lock(mu_);
    return ext_->residue_of(g);
}

TowerElem ValuedField::lift_residue(const FqElem& c) const {
    if (!ring_) {
        // prime field constant
        FqElem cc = c.in(kappa_);
        return TowerElem(Rat(cc.coeffs()[0]));
    }
    std::lock_guard<std::mutex> lock(mu_);
    TPoly l = ext_->chain().lift_const0(c.in(kappa_));
    return l.evaluate(ring_->gen());
}

TowerElem ValuedField::with_valuation(const Rat& s) const {
    if (!ring_) {
        // power of p
        ExtendedRational v(s);
        if (s.get_den() != 1) throw Error("with_valuation: fractional value over Q");
        Int e = s.get_num();
        Rat out = 1;
        Int pz = vp_.prime();
        for (Int i = 0; i < abs(e); ++i) out *= pz;
        if (e < 0) out = 1 / out;
        return TowerElem(out);
    }
    std::lock_guard<std::mutex> lock(mu_);
    TPoly l = ext_->chain().element_with_valuation(s);
    return l.evaluate(ring_->gen());
}

TowerElem ValuedField::pow_uniformizer(long e) const {
    if (e == 0) return TowerElem(Rat(1));
    if (e > 0) return tower_pow(uniformizer_, static_cast<unsigned long>(e));
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (!uinv_) uinv_ = uniformizer_.inverse();
    }
    return tower_pow(*uinv_, static_cast<unsigned long>(-e));
}

MacLaneChain ValuedField::approximant() const {
    if (!ext_) throw Error("approximant: base field has no chain");
    std::lock_guard<std::mutex> lock(mu_);
    return ext_->chain();
}

MacLaneChain gauss_valuation(long p, const Rat& rho) {
    return MacLaneChain::gauss(ValuedField::rationals(p), rho);
}

} // namespace berkline
