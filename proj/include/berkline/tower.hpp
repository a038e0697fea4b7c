#ifndef BERKLINE_TOWER_HPP
#define BERKLINE_TOWER_HPP

#include <memory>
#include <string>
#include <vector>

#include "berkline/extended_rational.hpp"
#include "berkline/poly.hpp"

namespace berkline {

class TowerElem;

// Raised by try_invert when the quotient ring splits: carries a proper
// monic factor of the modulus so the caller can rebuild the level.
struct RingSplit {
    std::shared_ptr<const class TowerRing> ring;
    Poly<TowerElem> factor; // proper monic divisor of ring->modulus()
};

// One level of a chain Q[x1]/(m1)[x2]/(m2)...; moduli are monic but not
// required to be irreducible (the attached pseudovaluation singles out a
// completion component).
class TowerRing : public std::enable_shared_from_this<TowerRing> {
  public:
    static std::shared_ptr<const TowerRing> create(std::shared_ptr<const TowerRing> parent,
                                                   Poly<TowerElem> modulus, std::string var);

    const std::shared_ptr<const TowerRing>& parent() const { return parent_; }
    const Poly<TowerElem>& modulus() const { return modulus_; }
    int degree() const { return modulus_.degree(); }
    int level() const { return level_; } // 1-based; Q is level 0 (null ring)
    const std::string& var() const { return var_; }

    TowerElem zero() const;
    TowerElem one() const;
    TowerElem gen() const;
    TowerElem from_parent_coeffs(std::vector<TowerElem> coeffs) const; // reduced mod modulus

  private:
    TowerRing() = default;
    std::shared_ptr<const TowerRing> parent_;
    Poly<TowerElem> modulus_;
    std::string var_;
    int level_ = 0;
};

using TowerRingPtr = std::shared_ptr<const TowerRing>;

// Element of a tower level; null ring = plain rational.
class TowerElem {
  public:
    TowerElem() : rat_(0) {}
    TowerElem(const Rat& q) : rat_(q) {}
    TowerElem(long n) : rat_(n) {}
    TowerElem(TowerRingPtr ring, std::vector<TowerElem> coeffs);

    const TowerRingPtr& ring() const { return ring_; }
    int level() const { return ring_ ? ring_->level() : 0; }
    bool is_rational() const { return ring_ == nullptr; }
    const Rat& rational() const {
        if (ring_) throw Error("TowerElem: not rational");
        return rat_;
    }
    // Coefficients over the parent level (size = ring degree).
    const std::vector<TowerElem>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;

    TowerElem operator+(const TowerElem& o) const;
    TowerElem operator-(const TowerElem& o) const;
    TowerElem operator-() const;
    TowerElem operator*(const TowerElem& o) const;
    bool operator==(const TowerElem& o) const { return (*this - o).is_zero(); }
    bool operator!=(const TowerElem& o) const { return !(*this == o); }

    // Multiplicative inverse in the quotient ring; throws RingSplit if the
    // element is a zero divisor (carrying the discovered factor), Error if 0.
    TowerElem inverse() const;

    // Deterministic total order on representatives (for canonical sorting).
    int cmp(const TowerElem& o) const;

    TowerElem lifted_to(const TowerRingPtr& ring) const; // coerce up the chain

    std::string str() const;

  private:
    TowerRingPtr ring_;
    Rat rat_;
    std::vector<TowerElem> coeffs_;
    static TowerRingPtr common_ring(const TowerElem& a, const TowerElem& b);
};

template <>
struct Ring<TowerElem> {
    static bool is_zero(const TowerElem& a) { return a.is_zero(); }
    static TowerElem zero(const TowerElem& like) {
        return like.ring() ? like.ring()->zero() : TowerElem(Rat(0));
    }
    static TowerElem one(const TowerElem& like) {
        return like.ring() ? like.ring()->one() : TowerElem(Rat(1));
    }
    static TowerElem from_int(const TowerElem& like, long n) {
        (void)like;
        return TowerElem(Rat(n));
    }
    static TowerElem invert(const TowerElem& a) { return a.inverse(); }
    static std::string str(const TowerElem& a) { return a.str(); }
};

using TPoly = Poly<TowerElem>;

// a^e by binary powering (e >= 0).
TowerElem tower_pow(const TowerElem& a, unsigned long e);

// Lift a Q[x]-polynomial to tower coefficients.
TPoly tpoly_from_q(const QPoly& f);
// Evaluate a Q[x]-polynomial at a tower element.
TowerElem q_eval(const QPoly& f, const TowerElem& a);

} // namespace berkline

#endif
