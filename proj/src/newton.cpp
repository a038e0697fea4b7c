#include "berkline/newton.hpp"

#include <algorithm>

namespace berkline {

NewtonPolygon NewtonPolygon::build(const std::vector<std::pair<long, ExtendedRational>>& points) {
    if (points.empty()) throw EmptyInputError("NewtonPolygon: no points");
    std::vector<std::pair<long, ExtendedRational>> pts = points;
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i - 1].first == pts[i].first) throw Error("NewtonPolygon: duplicate index");
    if (!pts.back().second.is_finite())
        throw Error("NewtonPolygon: rightmost value must be finite");

    NewtonPolygon np;
    std::vector<std::pair<long, Rat>> finite;
    long inf_index = -1;
    for (const auto& [i, v] : pts) {
        if (v.is_pos_inf()) {
            if (finite.empty()) inf_index = (inf_index < 0) ? i : std::min(inf_index, i);
            continue; // +inf points never lie below the hull
        }
        if (v.is_neg_inf()) throw Error("NewtonPolygon: -inf value");
        finite.emplace_back(i, v.finite());
        np.points_.emplace_back(i, v);
    }
    if (finite.empty()) throw Error("NewtonPolygon: no finite points");

    // Lower hull, strict left turns only (collinear points kept).
    std::vector<std::pair<long, Rat>> hull;
    for (const auto& pt : finite) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // remove b if it lies strictly above segment a-pt
            Rat lhs = (b.second - a.second) * Rat(pt.first - a.first);
            Rat rhs = (pt.second - a.second) * Rat(b.first - a.first);
            if (lhs > rhs) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    // Keep collinear points: re-scan finite points lying exactly on the hull.
    std::vector<std::pair<long, ExtendedRational>> verts;
    size_t seg = 0;
    for (const auto& pt : finite) {
        while (seg + 1 < hull.size() && hull[seg + 1].first < pt.first) ++seg;
        if (pt.first == hull[seg].first && pt.second == hull[seg].second) {
            verts.emplace_back(pt.first, ExtendedRational(pt.second));
            continue;
        }
        if (seg + 1 < hull.size()) {
            const auto& a = hull[seg];
            const auto& b = hull[seg + 1];
            if (a.first < pt.first && pt.first < b.first) {
                Rat on = a.second + (b.second - a.second) * Rat(pt.first - a.first) / Rat(b.first - a.first);
                if (on == pt.second) verts.emplace_back(pt.first, ExtendedRational(pt.second));
                continue;
            }
            if (pt.first == b.first && pt.second == b.second)
                verts.emplace_back(pt.first, ExtendedRational(pt.second));
        }
    }
    // de-dup (first finite point may be matched twice above)
    verts.erase(std::unique(verts.begin(), verts.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                verts.end());
    if (inf_index >= 0 && inf_index < verts.front().first)
        verts.insert(verts.begin(), {inf_index, ExtendedRational::pos_inf()});
    np.verts_ = std::move(verts);
    return np;
}

std::vector<ExtendedRational> NewtonPolygon::root_valuations() const {
    std::vector<ExtendedRational> out;
    for (size_t s = 0; s + 1 < verts_.size(); ++s) {
        const auto& [i, vi] = verts_[s];
        const auto& [j, vj] = verts_[s + 1];
        if (!vi.is_finite()) {
            for (long t = i; t < j; ++t) out.push_back(ExtendedRational::pos_inf());
            continue;
        }
        ExtendedRational slope((vi.finite() - vj.finite()) / Rat(j - i));
        // Collinear vertices split a segment; emitting per sub-segment gives
        // the same multiset.
        for (long t = i; t < j; ++t) out.push_back(slope);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return b < a; });
    return out;
}

ExtendedRational NewtonPolygon::theta() const {
    // max over i >= 1 of (v(a_0) - v(a_i))/i over the stored input points.
    ExtendedRational v0 = ExtendedRational::pos_inf();
    bool have0 = false;
    for (const auto& [i, v] : points_)
        if (i == 0) {
            v0 = v;
            have0 = true;
        }
    if (!have0) return ExtendedRational::pos_inf(); // a_0 = 0 convention
    ExtendedRational best = ExtendedRational::neg_inf();
    for (const auto& [i, v] : points_) {
        if (i < 1) continue;
        ExtendedRational cand((v0.finite() - v.finite()) / Rat(i));
        best = max(best, cand);
    }
    return best;
}

bool NewtonPolygon::is_inseparable(long p) const {
    if (verts_.empty() || verts_.back().first != p ||
        verts_.back().second != ExtendedRational(0))
        throw DegreeMismatchError("is_inseparable: polygon is not that of a monic degree-" +
                                  std::to_string(p) + " polynomial");
    if (verts_.size() != 2) return false;
    return verts_.front().first == 0 && verts_.front().second.is_finite();
}

ExtendedRational mu_from_taylor(const std::vector<std::pair<long, ExtendedRational>>& vals) {
    ExtendedRational v0 = ExtendedRational::pos_inf();
    for (const auto& [i, v] : vals)
        if (i == 0) v0 = v;
    if (!v0.is_finite()) throw CenterIsRootError("mu: center is a root (v(f_0) = +inf)");
    ExtendedRational best = ExtendedRational::neg_inf();
    for (const auto& [i, v] : vals) {
        if (i < 1 || !v.is_finite()) continue;
        best = max(best, ExtendedRational((v0.finite() - v.finite()) / Rat(i)));
    }
    return best;
}

ExtendedRational lambda_tail(const CoeffValTable& t) {
    ExtendedRational a10 = t.at(1, 0);
    if (t.v.find({1, 0}) == t.v.end())
        throw MissingEntryError("lambda_tail: missing v(a_{1,0})");
    ExtendedRational best = ExtendedRational::neg_inf();
    bool any = false;
    for (long k = t.m; k < t.m * t.p; ++k) {
        ExtendedRational a0k = t.at(0, k);
        if (!a0k.is_finite()) continue; // zero coefficient adds nothing
        any = true;
        Rat num = Rat(t.p) * a10.finite() - Rat(t.p - 1) * a0k.finite();
        best = max(best, ExtendedRational(num / (Rat(t.p - 1) * Rat(k))));
    }
    if (!any) throw MissingEntryError("lambda_tail: all v(a_{0,k}) infinite for m <= k < mp");
    return best;
}

std::pair<ExtendedRational, ExtendedRational> lambda_general(const CoeffValTable& t,
                                                             const ExtendedRational& mu) {
    ExtendedRational tilde = ExtendedRational::neg_inf();
    bool any_k = false;
    for (long k = t.m; k < t.m * t.p; ++k) {
        ExtendedRational a0k = t.at(0, k);
        ExtendedRational inner = ExtendedRational::pos_inf();
        bool any_pair = false;
        for (long i = 1; i < t.p; ++i) {
            for (long l = 0; t.p * l < (t.p - i) * k; ++l) {
                ExtendedRational ail = t.at(i, l);
                if (!ail.is_finite()) continue; // zero coefficients skipped
                any_pair = true;
                if (!a0k.is_finite()) {
                    inner = ExtendedRational::neg_inf(); // r(k,i,l) = -inf
                    continue;
                }
                Rat num = Rat(t.p) * ail.finite() - Rat(t.p - i) * a0k.finite();
                Rat den = Rat((t.p - i) * k - t.p * l);
                inner = min(inner, ExtendedRational(num / den));
            }
        }
        if (!any_pair) continue; // no admissible pair for this k
        any_k = true;
        tilde = max(tilde, inner);
    }
    if (!any_k)
        throw MissingEntryError("lambda_general: no admissible (i,l) pair for any k");
    return {tilde, max(mu, tilde)};
}

} // namespace berkline
