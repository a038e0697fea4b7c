#ifndef BERKLINE_FINITE_FIELD_HPP
#define BERKLINE_FINITE_FIELD_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "berkline/errors.hpp"

namespace berkline {

class FqElem;

// F_{p^k} = F_p[z]/(modulus), modulus the lexicographically first monic
// irreducible of degree k. Instances are interned: get() returns a pointer
// that stays valid for the program lifetime, so elements can hold it raw.
class FqField {
  public:
    static const FqField* get(long p, int k);

    long p() const { return p_; }
    int k() const { return k_; }
    // q = p^k as a plain integer; callers keep k small enough for this.
    unsigned long q() const { return q_; }
    const std::vector<long>& modulus() const { return modulus_; }

    FqElem zero() const;
    FqElem one() const;
    FqElem from_int(long n) const;
    FqElem gen() const; // the class of z (k >= 2), else 1
    FqElem element(std::vector<long> coeffs) const;

    // All field elements in a deterministic order (constant-first).
    std::vector<FqElem> all_elements() const;

    std::string name() const; // "F3", "F9", ...

  private:
    FqField(long p, int k);
    long p_;
    int k_;
    unsigned long q_;
    std::vector<long> modulus_; // length k+1, monic
};

// An element of an interned FqField, or a "bare" integer constant that
// coerces into whatever field it first meets.
class FqElem {
  public:
    FqElem() : field_(nullptr), bare_(0) {}
    explicit FqElem(long n) : field_(nullptr), bare_(n) {}
    FqElem(const FqField* F, std::vector<long> c);

    const FqField* field() const { return field_; }
    bool is_bare() const { return field_ == nullptr; }
    FqElem in(const FqField* F) const; // coerce (bare -> F, or embed F_p^j -> F via subfield map)

    bool is_zero() const;
    bool is_one() const;
    const std::vector<long>& coeffs() const { return c_; }

    FqElem operator+(const FqElem& o) const;
    FqElem operator-(const FqElem& o) const;
    FqElem operator-() const;
    FqElem operator*(const FqElem& o) const;
    FqElem inverse() const;
    FqElem operator/(const FqElem& o) const;
    FqElem pow(unsigned long e) const;
    FqElem frobenius() const;      // x -> x^p
    FqElem pth_root() const;       // inverse of frobenius
    bool operator==(const FqElem& o) const;
    bool operator!=(const FqElem& o) const { return !(*this == o); }

    // Deterministic total order (for canonical choices).
    bool operator<(const FqElem& o) const;

    std::string str() const;

  private:
    const FqField* field_;
    long bare_ = 0;
    std::vector<long> c_; // size k when field_ set
    friend class FqField;
};

std::ostream& operator<<(std::ostream& os, const FqElem& e);

// Embedding F_{p^j} -> F_{p^k} for j | k: image of the source generator,
// deterministic (smallest root of the source modulus). Cached.
FqElem embed_generator(const FqField* src, const FqField* dst);
FqElem embed(const FqElem& e, const FqField* dst);

} // namespace berkline

#endif
