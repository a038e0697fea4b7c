#include "berkline/tower.hpp"

#include <sstream>

namespace berkline {

TowerRingPtr TowerRing::create(TowerRingPtr parent, Poly<TowerElem> modulus, std::string var) {
    if (modulus.degree() < 1 || !modulus.is_monic())
        throw Error("TowerRing: modulus must be monic of degree >= 1");
    auto r = std::shared_ptr<TowerRing>(new TowerRing());
    r->parent_ = std::move(parent);
    r->modulus_ = std::move(modulus);
    r->var_ = std::move(var);
    r->level_ = (r->parent_ ? r->parent_->level() : 0) + 1;
    return r;
}

TowerElem TowerRing::zero() const {
    return TowerElem(shared_from_this(), std::vector<TowerElem>(degree(), TowerElem(Rat(0))));
}

TowerElem TowerRing::one() const {
    std::vector<TowerElem> c(degree(), TowerElem(Rat(0)));
    c[0] = TowerElem(Rat(1));
    return TowerElem(shared_from_this(), std::move(c));
}

TowerElem TowerRing::gen() const {
    if (degree() == 1) {
        // x = -constant term of the modulus
        return TowerElem(Rat(0)) - modulus_.coeff(0);
    }
    std::vector<TowerElem> c(degree(), TowerElem(Rat(0)));
    c[1] = TowerElem(Rat(1));
    return TowerElem(shared_from_this(), std::move(c));
}

TowerElem TowerRing::from_parent_coeffs(std::vector<TowerElem> coeffs) const {
    TPoly f(std::move(coeffs));
    f = f % modulus_;
    std::vector<TowerElem> c(degree(), TowerElem(Rat(0)));
    for (int i = 0; i <= f.degree(); ++i) c[static_cast<size_t>(i)] = f.coeff(i);
    return TowerElem(shared_from_this(), std::move(c));
}

TowerElem::TowerElem(TowerRingPtr ring, std::vector<TowerElem> coeffs)
    : ring_(std::move(ring)), rat_(0), coeffs_(std::move(coeffs)) {
    if (!ring_) throw Error("TowerElem: null ring in tagged constructor");
    if (static_cast<int>(coeffs_.size()) != ring_->degree())
        throw Error("TowerElem: coefficient count mismatch");
}

bool TowerElem::is_zero() const {
    if (!ring_) return sgn(rat_) == 0;
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

bool TowerElem::is_one() const { return (*this - TowerElem(Rat(1))).is_zero(); }

TowerRingPtr TowerElem::common_ring(const TowerElem& a, const TowerElem& b) {
    if (!a.ring_) return b.ring_;
    if (!b.ring_) return a.ring_;
    if (a.ring_ == b.ring_) return a.ring_;
    // One must be an ancestor level of the other.
    for (TowerRingPtr r = a.ring_; r; r = r->parent())
        if (r == b.ring_) return a.ring_;
    for (TowerRingPtr r = b.ring_; r; r = r->parent())
        if (r == a.ring_) return b.ring_;
    throw Error("TowerElem: elements of unrelated rings");
}

TowerElem TowerElem::lifted_to(const TowerRingPtr& ring) const {
    if (ring_ == ring) return *this;
    if (!ring) throw Error("TowerElem: cannot lower to Q");
    // *this lives at an ancestor level; wrap as a constant.
    std::vector<TowerElem> c(ring->degree(), TowerElem(Rat(0)));
    c[0] = *this;
    return TowerElem(ring, std::move(c));
}

TowerElem TowerElem::operator+(const TowerElem& o) const {
    TowerRingPtr r = common_ring(*this, o);
    if (!r) return TowerElem(Rat(rat_ + o.rat_));
    TowerElem a = lifted_to(r), b = o.lifted_to(r);
    std::vector<TowerElem> c(r->degree(), TowerElem(Rat(0)));
    for (int i = 0; i < r->degree(); ++i) c[i] = a.coeffs_[i] + b.coeffs_[i];
    return TowerElem(r, std::move(c));
}

TowerElem TowerElem::operator-(const TowerElem& o) const { return *this + (-o); }

TowerElem TowerElem::operator-() const {
    if (!ring_) return TowerElem(Rat(-rat_));
    std::vector<TowerElem> c(coeffs_);
    for (auto& x : c) x = -x;
    return TowerElem(ring_, std::move(c));
}

TowerElem TowerElem::operator*(const TowerElem& o) const {
    TowerRingPtr r = common_ring(*this, o);
    if (!r) return TowerElem(Rat(rat_ * o.rat_));
    TowerElem a = lifted_to(r), b = o.lifted_to(r);
    TPoly prod = TPoly(a.coeffs_) * TPoly(b.coeffs_);
    return r->from_parent_coeffs(std::vector<TowerElem>(prod.coeffs()));
}

TowerElem TowerElem::inverse() const {
    if (!ring_) {
        if (sgn(rat_) == 0) throw Error("TowerElem: division by zero");
        return TowerElem(Rat(1 / rat_));
    }
    if (is_zero()) throw Error("TowerElem: division by zero");
    TPoly a(coeffs_);
    auto [g, s, t] = poly_xgcd(a, ring_->modulus());
    (void)t;
    if (g.degree() == 0) {
        // s * a = g (a unit constant after monic normalization handled by xgcd)
        TPoly inv = s * Ring<TowerElem>::invert(g.coeff(0));
        std::vector<TowerElem> c(inv.coeffs());
        return ring_->from_parent_coeffs(std::move(c));
    }
    throw RingSplit{ring_, g};
}

int TowerElem::cmp(const TowerElem& o) const {
    TowerRingPtr r = common_ring(*this, o);
    if (!r) return ::cmp(rat_, o.rat_);
    TowerElem a = lifted_to(r), b = o.lifted_to(r);
    for (int i = r->degree() - 1; i >= 0; --i) {
        int c = a.coeffs_[i].cmp(b.coeffs_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string TowerElem::str() const {
    if (!ring_) return rat_.get_str();
    TPoly f(coeffs_);
    std::ostringstream os;
    os << f.str(ring_->var());
    return os.str();
}

TowerElem tower_pow(const TowerElem& a, unsigned long e) {
    TowerElem r(Rat(1)), b = a;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

TPoly tpoly_from_q(const QPoly& f) {
    return f.map<TowerElem>([](const mpq_class& c) { return TowerElem(c); });
}

TowerElem q_eval(const QPoly& f, const TowerElem& a) { return tpoly_from_q(f).evaluate(a); }

} // namespace berkline
