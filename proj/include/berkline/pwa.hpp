#ifndef BERKLINE_PWA_HPP
#define BERKLINE_PWA_HPP

#include <optional>
#include <string>
#include <vector>

#include "berkline/extended_rational.hpp"

namespace berkline {

// Exact piecewise-affine functions on [-inf, +inf] with rational slopes and
// breakpoints. Interior values are finite; values at +-inf are limits.
// Storage is canonical: values at the breakpoints plus the two end slopes,
// so continuity holds by construction and structural equality is pointwise
// equality. The constant +-inf functions get their own kind.
class Pwa {
  public:
    // Constant function.
    explicit Pwa(const Rat& c) : kind_(Kind::Finite), slope_left_(0), slope_right_(0), v0_(c) {}
    Pwa() : Pwa(Rat(0)) {}

    static Pwa affine(const Rat& slope, const Rat& value_at_0);
    static Pwa const_pos_inf();
    static Pwa const_neg_inf();

    // From breakpoint data: values at strictly increasing breakpoints plus
    // the slopes of the unbounded end pieces.
    static Pwa from_breakpoints(std::vector<Rat> breaks, std::vector<Rat> values, Rat slope_left,
                                Rat slope_right);

    bool is_const_inf() const { return kind_ != Kind::Finite; }
    bool is_const_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_const_neg_inf() const { return kind_ == Kind::NegInf; }

    Rat eval(const Rat& r) const;
    ExtendedRational eval_ext(const ExtendedRational& r) const; // limits at +-inf

    // Slope of the piece immediately right (left) of r.
    Rat right_slope(const Rat& r) const;
    Rat left_slope(const Rat& r) const;

    const std::vector<Rat>& breakpoints() const { return breaks_; }
    // Breakpoints where the slope genuinely changes (all of them, by
    // canonicality).
    std::vector<Rat> kinks() const { return breaks_; }

    Pwa operator+(const Pwa& o) const;
    Pwa operator-() const;
    Pwa operator-(const Pwa& o) const { return *this + (-o); }
    Pwa scaled(const Rat& c) const;

    bool operator==(const Pwa& o) const;
    bool operator!=(const Pwa& o) const { return !(*this == o); }

    friend Pwa pwa_min(const Pwa& a, const Pwa& b);
    friend Pwa pwa_max(const Pwa& a, const Pwa& b);

    // Maximal closed intervals where the function is zero, increasing.
    std::vector<std::pair<ExtendedRational, ExtendedRational>> zero_locus() const;

    // Smallest r >= lo with f(r) == 0, if any.
    std::optional<ExtendedRational> first_zero_at_or_after(const ExtendedRational& lo) const;

    // For strictly increasing functions: the unique r with f(r) == v.
    Rat invert_increasing(const Rat& v) const;

    bool is_strictly_increasing() const;
    bool is_concave() const;

    std::string str() const;

  private:
    enum class Kind { Finite, PosInf, NegInf };
    explicit Pwa(Kind k) : kind_(k), slope_left_(0), slope_right_(0), v0_(0) {}
    void canonicalize();

    Kind kind_;
    std::vector<Rat> breaks_; // strictly increasing
    std::vector<Rat> bvals_;  // values at breaks_
    Rat slope_left_, slope_right_;
    Rat v0_; // value at 0, used when breaks_ is empty (then slopes equal)
};

Pwa pwa_min(const Pwa& a, const Pwa& b);
Pwa pwa_max(const Pwa& a, const Pwa& b);

// r -> min_i (vals[i].second + vals[i].first * r) over finite entries;
// entries are (multiplier i >= 0, valuation). +inf entries are skipped;
// throws AllInfiniteError if nothing is finite.
Pwa valuation_profile(const std::vector<std::pair<long, ExtendedRational>>& entries);

// max(0, min(3/2, f)) — the delta clamp at p = 3.
Pwa clamp_delta(const Pwa& f);

} // namespace berkline

#endif
