#include "berkline/pwa.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace berkline {

Pwa Pwa::affine(const Rat& slope, const Rat& value_at_0) {
    Pwa f;
    f.slope_left_ = f.slope_right_ = slope;
    f.v0_ = value_at_0;
    return f;
}

Pwa Pwa::const_pos_inf() { return Pwa(Kind::PosInf); }
Pwa Pwa::const_neg_inf() { return Pwa(Kind::NegInf); }

Pwa Pwa::from_breakpoints(std::vector<Rat> breaks, std::vector<Rat> values, Rat slope_left,
                          Rat slope_right) {
    if (breaks.size() != values.size()) throw Error("Pwa: breaks/values size mismatch");
    for (size_t i = 1; i < breaks.size(); ++i)
        if (!(breaks[i - 1] < breaks[i])) throw Error("Pwa: breakpoints not increasing");
    Pwa f;
    if (breaks.empty()) {
        if (slope_left != slope_right) throw Error("Pwa: no breakpoint but two slopes");
        return affine(slope_left, Rat(0));
    }
    f.breaks_ = std::move(breaks);
    f.bvals_ = std::move(values);
    f.slope_left_ = std::move(slope_left);
    f.slope_right_ = std::move(slope_right);
    f.canonicalize();
    return f;
}

void Pwa::canonicalize() {
    if (kind_ != Kind::Finite) return;
    Rat v_at_0 = breaks_.empty() ? v0_ : eval(Rat(0));
    // Drop breakpoints where incoming and outgoing slopes agree.
    while (!breaks_.empty()) {
        bool changed = false;
        for (size_t i = 0; i < breaks_.size(); ++i) {
            Rat sin = (i == 0) ? slope_left_
                               : (bvals_[i] - bvals_[i - 1]) / (breaks_[i] - breaks_[i - 1]);
            Rat sout = (i + 1 == breaks_.size())
                           ? slope_right_
                           : (bvals_[i + 1] - bvals_[i]) / (breaks_[i + 1] - breaks_[i]);
            if (sin == sout) {
                breaks_.erase(breaks_.begin() + static_cast<long>(i));
                bvals_.erase(bvals_.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
        if (!changed) break;
    }
    v0_ = v_at_0; // meaningful only when no breakpoints survive
}

Rat Pwa::eval(const Rat& r) const {
    if (kind_ != Kind::Finite) throw Error("Pwa: eval of constant-infinite function");
    if (breaks_.empty()) return v0_ + slope_left_ * r;
    if (r <= breaks_.front()) return bvals_.front() - slope_left_ * (breaks_.front() - r);
    if (r >= breaks_.back()) return bvals_.back() + slope_right_ * (r - breaks_.back());
    // find piece
    size_t hi = static_cast<size_t>(
        std::upper_bound(breaks_.begin(), breaks_.end(), r) - breaks_.begin());
    size_t lo = hi - 1;
    Rat t = (r - breaks_[lo]) / (breaks_[hi] - breaks_[lo]);
    return bvals_[lo] + t * (bvals_[hi] - bvals_[lo]);
}

ExtendedRational Pwa::eval_ext(const ExtendedRational& r) const {
    if (kind_ == Kind::PosInf) return ExtendedRational::pos_inf();
    if (kind_ == Kind::NegInf) return ExtendedRational::neg_inf();
    if (r.is_finite()) return ExtendedRational(eval(r.finite()));
    if (r.is_pos_inf()) {
        int s = sgn(slope_right_);
        if (s > 0) return ExtendedRational::pos_inf();
        if (s < 0) return ExtendedRational::neg_inf();
        return ExtendedRational(breaks_.empty() ? v0_ : bvals_.back());
    }
    int s = sgn(slope_left_);
    if (s > 0) return ExtendedRational::neg_inf();
    if (s < 0) return ExtendedRational::pos_inf();
    return ExtendedRational(breaks_.empty() ? v0_ : bvals_.front());
}

Rat Pwa::right_slope(const Rat& r) const {
    if (kind_ != Kind::Finite) throw Error("Pwa: slope of constant-infinite function");
    if (breaks_.empty() || r >= breaks_.back()) return slope_right_;
    if (r < breaks_.front()) return slope_left_;
    size_t hi = static_cast<size_t>(
        std::upper_bound(breaks_.begin(), breaks_.end(), r) - breaks_.begin());
    return (bvals_[hi] - bvals_[hi - 1]) / (breaks_[hi] - breaks_[hi - 1]);
}

Rat Pwa::left_slope(const Rat& r) const {
    if (kind_ != Kind::Finite) throw Error("Pwa: slope of constant-infinite function");
    if (breaks_.empty() || r <= breaks_.front()) return slope_left_;
    if (r > breaks_.back()) return slope_right_;
    size_t hi = static_cast<size_t>(
        std::lower_bound(breaks_.begin(), breaks_.end(), r) - breaks_.begin());
    return (bvals_[hi] - bvals_[hi - 1]) / (breaks_[hi] - breaks_[hi - 1]);
}

Pwa Pwa::operator+(const Pwa& o) const {
    if (kind_ != Kind::Finite || o.kind_ != Kind::Finite) {
        if ((is_const_pos_inf() && o.is_const_neg_inf()) ||
            (is_const_neg_inf() && o.is_const_pos_inf()))
            throw IndeterminateFormError("Pwa: inf + (-inf)");
        return is_const_inf() ? *this : o;
    }
    std::vector<Rat> pts;
    pts.reserve(breaks_.size() + o.breaks_.size());
    std::merge(breaks_.begin(), breaks_.end(), o.breaks_.begin(), o.breaks_.end(),
               std::back_inserter(pts));
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) return affine(slope_left_ + o.slope_left_, v0_ + o.v0_);
    std::vector<Rat> vals;
    vals.reserve(pts.size());
    for (const Rat& r : pts) vals.push_back(eval(r) + o.eval(r));
    return from_breakpoints(std::move(pts), std::move(vals), slope_left_ + o.slope_left_,
                            slope_right_ + o.slope_right_);
}

Pwa Pwa::operator-() const {
    if (is_const_pos_inf()) return const_neg_inf();
    if (is_const_neg_inf()) return const_pos_inf();
    Pwa f = *this;
    for (auto& v : f.bvals_) v = -v;
    f.slope_left_ = -f.slope_left_;
    f.slope_right_ = -f.slope_right_;
    f.v0_ = -f.v0_;
    return f;
}

Pwa Pwa::scaled(const Rat& c) const {
    if (is_const_inf()) {
        if (sgn(c) == 0) throw IndeterminateFormError("Pwa: 0 * inf");
        if (sgn(c) > 0) return *this;
        return is_const_pos_inf() ? const_neg_inf() : const_pos_inf();
    }
    if (sgn(c) == 0) return Pwa(Rat(0));
    Pwa f = *this;
    for (auto& v : f.bvals_) v = v * c;
    f.slope_left_ = f.slope_left_ * c;
    f.slope_right_ = f.slope_right_ * c;
    f.v0_ = f.v0_ * c;
    return f;
}

bool Pwa::operator==(const Pwa& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ != Kind::Finite) return true;
    if (breaks_ != o.breaks_ || bvals_ != o.bvals_) return false;
    if (slope_left_ != o.slope_left_ || slope_right_ != o.slope_right_) return false;
    if (breaks_.empty() && v0_ != o.v0_) return false;
    return true;
}

namespace {

Pwa combine(const Pwa& a, const Pwa& b, bool take_min) {
    if (a.is_const_inf() || b.is_const_inf()) {
        auto pick_a = [&](bool a_smaller) { return (a_smaller == take_min) ? a : b; };
        if (a.is_const_pos_inf()) return pick_a(false);
        if (a.is_const_neg_inf()) return pick_a(true);
        if (b.is_const_pos_inf()) return pick_a(true);
        return pick_a(false);
    }
    Pwa diff = a - b;
    std::vector<Rat> pts;
    for (const Rat& r : a.breakpoints()) pts.push_back(r);
    for (const Rat& r : b.breakpoints()) pts.push_back(r);
    for (const auto& [lo, hi] : diff.zero_locus()) {
        if (lo.is_finite()) pts.push_back(lo.finite());
        if (hi.is_finite()) pts.push_back(hi.finite());
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto choose = [&](const Rat& r) {
        Rat va = a.eval(r), vb = b.eval(r);
        if (take_min) return va <= vb ? va : vb;
        return va >= vb ? va : vb;
    };
    if (pts.empty()) {
        // Both affine with no crossing: compare anywhere (equal-at-0 with
        // different slopes would cross, so values differ or they coincide).
        Rat va = a.eval(Rat(0)), vb = b.eval(Rat(0));
        return va == vb ? a : (take_min ? (va < vb ? a : b) : (va > vb ? a : b));
    }
    std::vector<Rat> vals;
    vals.reserve(pts.size());
    for (const Rat& r : pts) vals.push_back(choose(r));
    // End slopes: beyond the extreme candidate points the winner is fixed.
    Rat left_probe = pts.front() - 1;
    Rat right_probe = pts.back() + 1;
    auto slope_of_winner = [&](const Rat& probe, bool left) {
        Rat va = a.eval(probe), vb = b.eval(probe);
        bool a_wins = take_min ? va <= vb : va >= vb;
        const Pwa& w = a_wins ? a : b;
        return left ? w.left_slope(probe) : w.right_slope(probe);
    };
    return Pwa::from_breakpoints(std::move(pts), std::move(vals), slope_of_winner(left_probe, true),
                                 slope_of_winner(right_probe, false));
}

} // namespace

Pwa pwa_min(const Pwa& a, const Pwa& b) { return combine(a, b, true); }
Pwa pwa_max(const Pwa& a, const Pwa& b) { return combine(a, b, false); }

std::vector<std::pair<ExtendedRational, ExtendedRational>> Pwa::zero_locus() const {
    std::vector<std::pair<ExtendedRational, ExtendedRational>> out;
    if (is_const_inf()) return out;
    if (breaks_.empty()) {
        if (sgn(slope_left_) == 0) {
            if (sgn(v0_) == 0)
                out.emplace_back(ExtendedRational::neg_inf(), ExtendedRational::pos_inf());
            return out;
        }
        out.emplace_back(ExtendedRational(Rat(-v0_ / slope_left_)),
                         ExtendedRational(Rat(-v0_ / slope_left_)));
        return out;
    }
    // Walk pieces left to right, collecting zero sets, then merge.
    std::vector<std::pair<ExtendedRational, ExtendedRational>> raw;
    // left ray
    if (sgn(slope_left_) == 0) {
        if (sgn(bvals_.front()) == 0)
            raw.emplace_back(ExtendedRational::neg_inf(), ExtendedRational(breaks_.front()));
    } else {
        Rat root = breaks_.front() - bvals_.front() / slope_left_;
        if (root <= breaks_.front() && sgn(bvals_.front() - slope_left_ * (breaks_.front() - root)) == 0)
            raw.emplace_back(ExtendedRational(root), ExtendedRational(root));
    }
    for (size_t i = 0; i + 1 < breaks_.size(); ++i) {
        const Rat &x0 = breaks_[i], &x1 = breaks_[i + 1];
        const Rat &y0 = bvals_[i], &y1 = bvals_[i + 1];
        if (sgn(y0) == 0 && sgn(y1) == 0) {
            raw.emplace_back(ExtendedRational(x0), ExtendedRational(x1));
        } else if (sgn(y0) * sgn(y1) <= 0) {
            Rat root = x0 + (x1 - x0) * (-y0) / (y1 - y0);
            if (sgn(y0) == 0) root = x0;
            else if (sgn(y1) == 0) root = x1;
            raw.emplace_back(ExtendedRational(root), ExtendedRational(root));
        }
    }
    // right ray
    if (sgn(slope_right_) == 0) {
        if (sgn(bvals_.back()) == 0)
            raw.emplace_back(ExtendedRational(breaks_.back()), ExtendedRational::pos_inf());
    } else {
        Rat root = breaks_.back() - bvals_.back() / slope_right_;
        if (root >= breaks_.back() && sgn(bvals_.back() + slope_right_ * (root - breaks_.back())) == 0)
            raw.emplace_back(ExtendedRational(root), ExtendedRational(root));
    }
    std::sort(raw.begin(), raw.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
    for (const auto& iv : raw) {
        if (!out.empty() && iv.first <= out.back().second) {
            if (iv.second > out.back().second) out.back().second = iv.second;
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

std::optional<ExtendedRational> Pwa::first_zero_at_or_after(const ExtendedRational& lo) const {
    for (const auto& [a, b] : zero_locus()) {
        if (b < lo) continue;
        return a >= lo ? a : lo;
    }
    return std::nullopt;
}

Rat Pwa::invert_increasing(const Rat& v) const {
    if (!is_strictly_increasing()) throw Error("Pwa: invert on non-increasing function");
    Pwa shifted = *this + Pwa(Rat(-v));
    auto z = shifted.zero_locus();
    if (z.size() != 1 || !z[0].first.is_finite() || z[0].first != z[0].second)
        throw Error("Pwa: value not attained");
    return z[0].first.finite();
}

bool Pwa::is_strictly_increasing() const {
    if (kind_ != Kind::Finite) return false;
    if (sgn(slope_left_) <= 0 || sgn(slope_right_) <= 0) return false;
    for (size_t i = 0; i + 1 < breaks_.size(); ++i)
        if (!(bvals_[i] < bvals_[i + 1])) return false;
    return true;
}

bool Pwa::is_concave() const {
    if (kind_ != Kind::Finite) return false;
    Rat prev = slope_left_;
    for (size_t i = 0; i < breaks_.size(); ++i) {
        Rat next = (i + 1 < breaks_.size())
                       ? (bvals_[i + 1] - bvals_[i]) / (breaks_[i + 1] - breaks_[i])
                       : slope_right_;
        if (next > prev) return false;
        prev = next;
    }
    return true;
}

std::string Pwa::str() const {
    if (is_const_pos_inf()) return "+inf";
    if (is_const_neg_inf()) return "-inf";
    std::ostringstream os;
    if (breaks_.empty()) {
        os << "affine(slope " << slope_left_.get_str() << ", f(0) = " << v0_.get_str() << ")";
        return os.str();
    }
    os << "pwa[slope " << slope_left_.get_str();
    for (size_t i = 0; i < breaks_.size(); ++i)
        os << " | (" << breaks_[i].get_str() << ", " << bvals_[i].get_str() << ")";
    os << " | slope " << slope_right_.get_str() << "]";
    return os.str();
}

Pwa valuation_profile(const std::vector<std::pair<long, ExtendedRational>>& entries) {
    std::optional<Pwa> acc;
    for (const auto& [i, v] : entries) {
        if (!v.is_finite()) continue;
        Pwa line = Pwa::affine(Rat(i), v.finite());
        acc = acc ? pwa_min(*acc, line) : line;
    }
    if (!acc) throw AllInfiniteError("valuation_profile: all entries infinite");
    return *acc;
}

Pwa clamp_delta(const Pwa& f) {
    return pwa_max(Pwa(Rat(0)), pwa_min(Pwa(Rat(3, 2)), f));
}

} // namespace berkline
