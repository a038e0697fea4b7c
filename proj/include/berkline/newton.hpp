#ifndef BERKLINE_NEWTON_HPP
#define BERKLINE_NEWTON_HPP

#include <map>
#include <vector>

#include "berkline/extended_rational.hpp"

namespace berkline {

// Lower convex hull of (index, valuation) points. Collinear input points on
// the hull are kept as vertices (closed hull), which is what the
// inseparability test needs. A leading block of +inf values yields one
// vertical segment down to the first finite point.
class NewtonPolygon {
  public:
    // points: (i, value) with distinct indices; the rightmost must be finite.
    static NewtonPolygon build(const std::vector<std::pair<long, ExtendedRational>>& points);

    // All input points lying on the hull, by increasing index; the first may
    // be (i, +inf) marking a vertical segment.
    const std::vector<std::pair<long, ExtendedRational>>& vertices() const { return verts_; }

    // Multiset of root valuations: j-i copies of (v_i - v_j)/(j-i) per
    // segment; the vertical segment contributes +inf entries.
    std::vector<ExtendedRational> root_valuations() const;

    // max_{i>=1} (v(a_0) - v(a_i))/i; +inf when a_0 vanishes.
    ExtendedRational theta() const;

    // Only vertices are (0, v(a_0)) and (p, 0); DegreeMismatch unless the
    // rightmost vertex is (p, 0).
    bool is_inseparable(long p) const;

  private:
    std::vector<std::pair<long, ExtendedRational>> verts_;
    std::vector<std::pair<long, ExtendedRational>> points_; // finite inputs, sorted
};

// mu(x_0) = max_{i>=1} (v(f_0) - v(f_i))/i from Taylor-coefficient
// valuations; CenterIsRoot when v(f_0) = +inf.
ExtendedRational mu_from_taylor(const std::vector<std::pair<long, ExtendedRational>>& vals);

// Valuation table of a good equation: v(a_{i,l}) for the T^i-coefficient's
// t^l term, 0 <= i < p. +inf encodes a vanishing coefficient.
struct CoeffValTable {
    long p = 3;
    long m = 2;
    std::map<std::pair<long, long>, ExtendedRational> v; // (i, l) -> valuation

    ExtendedRational at(long i, long l) const {
        auto it = v.find({i, l});
        return it == v.end() ? ExtendedRational::pos_inf() : it->second;
    }
};

// Tail-case formula: max_{m<=k<mp} (p v(a_{1,0}) - (p-1) v(a_{0,k}))/((p-1)k).
ExtendedRational lambda_tail(const CoeffValTable& t);

// General-case formula; returns (lambda_tilde, max(mu, lambda_tilde)).
std::pair<ExtendedRational, ExtendedRational> lambda_general(const CoeffValTable& t,
                                                             const ExtendedRational& mu);

} // namespace berkline

#endif
