#include "berkline/cubic.hpp"

#include "berkline/qpoly.hpp"

#include <algorithm>

namespace berkline {

Poly<RatFn> CubicForm::as_y_poly() const {
    return Poly<RatFn>(std::vector<RatFn>{RatFn(C), RatFn(B), RatFn(A), RatFn(QPoly(mpq_class(1)))});
}

bool CubicForm::is_irreducible() const {
    // A monic cubic over Q(x) is reducible iff it has a root in Q[x]. One
    // irreducible specialization certifies irreducibility; otherwise any
    // polynomial root interpolates through rational roots of enough good
    // specializations.
    if (C.is_zero()) return false;
    int dr = std::max({A.degree(), (B.degree() + 1) / 2, (C.degree() + 2) / 3, 0});
    int pts = dr + 1;
    QPoly delta = discriminant_cubic(*this);
    std::vector<mpq_class> xs;
    std::vector<std::vector<mpq_class>> root_sets;
    for (long x0 = 0; static_cast<int>(xs.size()) < pts && x0 < 100; ++x0) {
        mpq_class xv(x0);
        if (sgn(delta.evaluate(xv)) == 0) continue;
        QPoly spec(std::vector<mpq_class>{C.evaluate(xv), B.evaluate(xv), A.evaluate(xv),
                                          mpq_class(1)});
        std::vector<mpq_class> roots;
        for (const auto& [g, m] : factor_over_q(spec)) {
            (void)m;
            if (g.degree() == 1) roots.push_back(-g.coeff(0));
        }
        if (roots.empty()) return true;
        xs.push_back(xv);
        root_sets.push_back(std::move(roots));
    }
    if (static_cast<int>(xs.size()) < pts) throw Error("is_irreducible: no good sample points");
    std::vector<size_t> idx(xs.size(), 0);
    while (true) {
        std::vector<mpq_class> ys;
        for (size_t i = 0; i < xs.size(); ++i) ys.push_back(root_sets[i][idx[i]]);
        QPoly r;
        for (size_t i = 0; i < xs.size(); ++i) {
            QPoly li(mpq_class(1));
            mpq_class denom(1);
            for (size_t j = 0; j < xs.size(); ++j) {
                if (i == j) continue;
                li = li * QPoly(std::vector<mpq_class>{-xs[j], mpq_class(1)});
                denom *= xs[i] - xs[j];
            }
            r = r + li * mpq_class(ys[i] / denom);
        }
        QPoly val = r * r * r + A * r * r + B * r + C;
        if (val.is_zero()) return false;
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == root_sets[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return true;
}

QPoly discriminant_cubic(const CubicForm& c) {
    const QPoly &A = c.A, &B = c.B, &C = c.C;
    QPoly t1 = A * A * B * B;
    QPoly t2 = (B * B * B) * mpq_class(4);
    QPoly t3 = (A * A * A * C) * mpq_class(4);
    QPoly t4 = (C * C) * mpq_class(27);
    QPoly t5 = (A * B * C) * mpq_class(18);
    return t1 - t2 - t3 - t4 + t5;
}

FunctionFieldElement::FunctionFieldElement(std::shared_ptr<const CubicForm> modulus,
                                           Poly<RatFn> rep)
    : mod_(std::move(modulus)), rep_(std::move(rep)) {
    if (rep_.degree() >= 3) rep_ = rep_ % mod_->as_y_poly();
}

FunctionFieldElement FunctionFieldElement::from_base(std::shared_ptr<const CubicForm> modulus,
                                                     RatFn c) {
    return FunctionFieldElement(std::move(modulus), Poly<RatFn>(std::move(c)));
}

FunctionFieldElement FunctionFieldElement::y(std::shared_ptr<const CubicForm> modulus) {
    return FunctionFieldElement(std::move(modulus),
                                Poly<RatFn>(std::vector<RatFn>{RatFn(), Ring<RatFn>::one(RatFn())}));
}

FunctionFieldElement FunctionFieldElement::operator+(const FunctionFieldElement& o) const {
    return FunctionFieldElement(mod_, rep_ + o.rep_);
}
FunctionFieldElement FunctionFieldElement::operator-(const FunctionFieldElement& o) const {
    return FunctionFieldElement(mod_, rep_ - o.rep_);
}
FunctionFieldElement FunctionFieldElement::operator-() const {
    return FunctionFieldElement(mod_, -rep_);
}
FunctionFieldElement FunctionFieldElement::operator*(const FunctionFieldElement& o) const {
    return FunctionFieldElement(mod_, rep_ * o.rep_);
}

FunctionFieldElement FunctionFieldElement::inverse() const {
    if (rep_.is_zero()) throw Error("FunctionFieldElement: division by zero");
    auto [g, s, t] = poly_xgcd(rep_, mod_->as_y_poly());
    (void)t;
    if (g.degree() != 0)
        throw ZeroModulusError("FunctionFieldElement: modulus reducible, inversion failed");
    return FunctionFieldElement(mod_, s * Ring<RatFn>::invert(g.coeff(0)));
}

FunctionFieldElement FunctionFieldElement::operator/(const FunctionFieldElement& o) const {
    return *this * o.inverse();
}

RatFn FunctionFieldElement::norm() const {
    return resultant(mod_->as_y_poly(), rep_);
}

std::string FunctionFieldElement::str() const { return rep_.str("y"); }

} // namespace berkline
