#include "berkline/berkline.hpp"

#include <algorithm>
#include <sstream>

namespace berkline {

namespace {

QPoly key_as_qpoly(const TPoly& key) {
    return key.map<mpq_class>([](const TowerElem& c) {
        if (!c.is_rational()) throw Error("berkline: key with non-rational coefficients");
        return c.rational();
    });
}

QPoly xpoly() { return QPoly(std::vector<mpq_class>{mpq_class(0), mpq_class(1)}); }

} // namespace

// ---------------------------------------------------------------------------
// BerkPoint
// ---------------------------------------------------------------------------

BerkPoint BerkPoint::gauss_point(long p) {
    BerkPoint pt(Kind::TypeII, p);
    pt.chain_ = MacLaneChain::gauss(ValuedField::rationals(p), Rat(0));
    return pt;
}

BerkPoint BerkPoint::infinity(long p) { return BerkPoint(Kind::Infinity, p); }

BerkPoint BerkPoint::closed_rational(long p, const Rat& a) {
    BerkPoint pt(Kind::TypeI, p);
    auto g = MacLaneChain::gauss(ValuedField::rationals(p), Rat(0));
    TPoly key(std::vector<TowerElem>{TowerElem(Rat(-a)), TowerElem(Rat(1))});
    pt.chain_ = g.augmented_unchecked(key, ExtendedRational::pos_inf());
    return pt;
}

BerkPoint BerkPoint::closed_algebraic(long p, const QPoly& psi, int ext_index) {
    if (psi.degree() == 1) return closed_rational(p, Rat(-psi.coeff(0) / psi.lc()));
    BerkPoint pt(Kind::TypeI, p);
    auto exts = maclane_extensions(ValuedField::rationals(p), tpoly_from_q(psi.monic()), true);
    if (ext_index < 0 || ext_index >= static_cast<int>(exts.size()))
        throw Error("closed_algebraic: extension index out of range");
    pt.ext_ = std::make_shared<ExtensionData>(exts[static_cast<size_t>(ext_index)]);
    return pt;
}

BerkPoint BerkPoint::from_chain(long p, MacLaneChain chain) {
    BerkPoint pt(chain.is_pseudo() ? Kind::TypeI : Kind::TypeII, p);
    pt.chain_ = std::move(chain);
    return pt;
}

ExtendedRational BerkPoint::v(const QPoly& f) const {
    if (f.is_zero()) return ExtendedRational::pos_inf();
    if (kind_ == Kind::Infinity) {
        if (f.degree() == 0) return PAdicValuation(p_).val(f.coeff(0));
        return ExtendedRational::neg_inf();
    }
    if (ext_) {
        QPoly psi = ext_->psi().map<mpq_class>(
            [](const TowerElem& c) { return c.rational(); });
        QPoly rem = f % psi;
        if (rem.is_zero()) return ExtendedRational::pos_inf();
        return ext_->value_of(tpoly_from_q(rem));
    }
    return chain_->eval_q(f);
}

QPoly BerkPoint::rep_psi() const {
    if (kind_ == Kind::Infinity) throw Error("rep_psi of infinity");
    if (ext_) return ext_->psi().map<mpq_class>([](const TowerElem& c) { return c.rational(); });
    return key_as_qpoly(chain_->last_key());
}

ExtendedRational BerkPoint::rep_rho() const {
    if (kind_ == Kind::Infinity) throw Error("rep_rho of infinity");
    if (ext_) return ExtendedRational::pos_inf();
    return chain_->last_value();
}

const MacLaneChain& BerkPoint::chain() const {
    if (ext_) return ext_->chain();
    if (!chain_) throw Error("chain of infinity point");
    return *chain_;
}

bool BerkPoint::same_point(const BerkPoint& o) const {
    if (kind_ != o.kind_) {
        // TypeI with exact pseudo chain vs algebraic cannot coincide with TypeII
        if (kind_ == Kind::Infinity || o.kind_ == Kind::Infinity) return false;
        if ((kind_ == Kind::TypeI) != (o.kind_ == Kind::TypeI)) return false;
    }
    if (kind_ == Kind::Infinity) return o.kind_ == Kind::Infinity;
    if (kind_ == Kind::TypeI && o.kind_ == Kind::TypeI) {
        if (ext_ && o.ext_) {
            QPoly pa = rep_psi(), pb = o.rep_psi();
            if (pa != pb) return false;
            return ext_->chain().cmp(o.ext_->chain()) == 0 ||
                   (ext_->chain().eval(o.ext_->chain().last_key()) >=
                        o.ext_->chain().last_value() &&
                    o.ext_->chain().eval(ext_->chain().last_key()) >=
                        ext_->chain().last_value());
        }
        if (!ext_ && !o.ext_) return rep_psi() == o.rep_psi();
        return false; // rational vs algebraic of degree > 1
    }
    // Type II: mutual containment
    return v(o.rep_psi()) >= o.rep_rho() && o.v(rep_psi()) >= rep_rho();
}

bool BerkPoint::contains(const BerkPoint& o) const {
    if (kind_ != Kind::TypeII) return same_point(o);
    if (o.kind_ == Kind::Infinity) return false;
    return o.v(rep_psi()) >= rep_rho();
}

std::string BerkPoint::str() const {
    if (kind_ == Kind::Infinity) return "infinity";
    std::ostringstream os;
    os << "v(" << rep_psi().str() << ") >= " << rep_rho().str();
    return os.str();
}

// ---------------------------------------------------------------------------
// theta / distances / discoid splitting
// ---------------------------------------------------------------------------

std::vector<Rat> root_distances(long p, const QPoly& psi0) {
    QPoly psi = psi0.monic();
    if (psi.degree() <= 1) return {};
    auto exts = maclane_extensions(ValuedField::rationals(p), tpoly_from_q(psi), false);
    auto L = ValuedField::extension(ValuedField::rationals(p), exts[0], "r");
    TowerElem alpha = L->gen();
    TPoly shifted = tpoly_from_q(psi).taylor_shift(alpha);
    // shifted(0) = psi(alpha) = 0 exactly; drop it and take the polygon.
    std::vector<std::pair<long, ExtendedRational>> pts;
    for (int i = 1; i <= shifted.degree(); ++i) {
        TowerElem c = shifted.coeff(i);
        pts.emplace_back(i - 1, c.is_zero() ? ExtendedRational::pos_inf() : L->val(c));
    }
    auto rv = NewtonPolygon::build(pts).root_valuations();
    std::vector<Rat> out;
    for (const auto& d : rv) {
        if (!d.is_finite()) throw Error("root_distances: repeated root");
        out.push_back(d.finite());
    }
    std::sort(out.begin(), out.end());
    return out;
}

Pwa theta_psi(long p, const QPoly& psi) {
    Pwa id = Pwa::affine(Rat(1), Rat(0));
    Pwa theta = id; // the root itself contributes min(r, inf) = r
    for (const Rat& d : root_distances(p, psi)) theta = theta + pwa_min(id, Pwa(d));
    return theta;
}

std::pair<long, ExtendedRational> split_discoid(long p, const Discoid& d) {
    QPoly psi = d.psi.monic();
    long n = psi.degree();
    if (n < 1) throw Error("split_discoid: constant psi");
    if (d.rho.is_pos_inf()) return {n, ExtendedRational::pos_inf()};
    auto dists = root_distances(p, psi);
    Pwa theta = theta_psi(p, psi);
    Rat rho_up = theta.invert_increasing(d.rho.finite());
    long cluster = 1;
    for (const Rat& di : dists)
        if (di >= rho_up) ++cluster;
    if (n % cluster != 0)
        throw OverlappingDisksError("split_discoid: inhomogeneous clusters at radius " +
                                    rho_up.get_str());
    return {n / cluster, ExtendedRational(rho_up)};
}

// ---------------------------------------------------------------------------
// BerkTree
// ---------------------------------------------------------------------------

BerkTree::BerkTree(long p) : p_(p) {
    pts_.push_back(BerkPoint::gauss_point(p));
    edges_.push_back(Edge{});
    pts_.push_back(BerkPoint::infinity(p));
    Edge e;
    e.parent = 0;
    e.psi = xpoly();
    e.lo = ExtendedRational(0);          // v(1/x) at the Gauss point
    e.hi = ExtendedRational::pos_inf();  // at infinity
    edges_.push_back(e);
}

std::vector<int> BerkTree::children(int id) const {
    std::vector<int> out;
    for (int i = 1; i < size(); ++i)
        if (edges_[static_cast<size_t>(i)].parent == id) out.push_back(i);
    return out;
}

namespace {

bool is_inv_edge_of(const BerkTree& t, int child) {
    // the branch toward infinity: exactly the subpath whose deepest point is
    // the infinity vertex; its edges use the v(1/x) coordinate
    while (true) {
        if (child == t.infinity_vertex()) return true;
        auto kids = t.children(child);
        bool found = false;
        for (int k : kids) {
            // inv-direction children continue in the v(1/x) coordinate: the
            // edge's psi is x and its point has negative v(x)
            (void)k;
        }
        (void)found;
        return false;
    }
}

} // namespace

ExtendedRational edge_coordinate(const BerkTree& t, int child, const BerkPoint& pt, bool inv) {
    if (inv) return -pt.v(QPoly(std::vector<mpq_class>{mpq_class(0), mpq_class(1)}));
    return pt.v(t.edge(child).psi);
}

int BerkTree::add_vertex(const BerkPoint& pt, int parent, QPoly dir, ExtendedRational lo,
                         ExtendedRational hi) {
    pts_.push_back(pt);
    Edge e;
    e.parent = parent;
    e.psi = std::move(dir);
    e.lo = std::move(lo);
    e.hi = std::move(hi);
    edges_.push_back(e);
    return size() - 1;
}

BerkPoint BerkTree::point_at(const Loc& loc) const {
    if (loc.is_vertex()) return pts_[static_cast<size_t>(loc.vertex)];
    int c = loc.edge_child;
    const Edge& e = edges_[static_cast<size_t>(c)];
    if (c == infinity_vertex() ||
        (e.psi == xpoly() && point(c).is_infinity())) {
        // v(1/x) = rho => gauss radius -rho
        return BerkPoint::from_chain(
            p_, MacLaneChain::gauss(ValuedField::rationals(p_), -loc.rho.finite()));
    }
    // position within a psi-directed edge: replace the child's last value
    const BerkPoint& cp = pts_[static_cast<size_t>(c)];
    const MacLaneChain& ch = cp.chain();
    if (!loc.rho.is_finite()) return cp;
    // the chain's last key equals the direction poly on this edge
    MacLaneChain pos =
        ch.augmented_unchecked(ch.last_key(), loc.rho);
    return BerkPoint::from_chain(p_, std::move(pos));
}

BerkTree::Loc BerkTree::locate(const BerkPoint& pt) const {
    if (pt.is_infinity()) return Loc{infinity_vertex(), -1, ExtendedRational::pos_inf()};
    QPoly x = xpoly();
    // walk from the root
    int u = root();
    while (true) {
        if (pts_[static_cast<size_t>(u)].same_point(pt)) return Loc{u, -1, ExtendedRational(0)};
        int next = -1;
        ExtendedRational jr(0);
        for (int c : children(u)) {
            const Edge& e = edges_[static_cast<size_t>(c)];
            bool inv = (c == infinity_vertex()) || pts_[static_cast<size_t>(c)].is_infinity() ||
                       on_infinity_branch(c);
            ExtendedRational co = inv ? -pt.v(x) : pt.v(e.psi);
            if (co > e.lo) {
                jr = min(co, e.hi);
                next = c;
                break;
            }
        }
        if (next < 0) return Loc{u, -1, ExtendedRational(0)};
        const Edge& e = edges_[static_cast<size_t>(next)];
        if (jr < e.hi) {
            // retracts inside the edge (or exactly at its interior position)
            return Loc{-1, next, jr};
        }
        u = next;
    }
}

bool BerkTree::on_infinity_branch(int id) const {
    int v = infinity_vertex();
    while (v > 0) {
        if (v == id) return true;
        v = edges_[static_cast<size_t>(v)].parent;
    }
    return false;
}

int BerkTree::split_edge(int child, const ExtendedRational& rho) {
    Edge& e = edges_[static_cast<size_t>(child)];
    if (!(rho > e.lo) || !(rho < e.hi)) throw Error("split_edge: radius outside edge");
    Loc mid{-1, child, rho};
    BerkPoint jp = point_at(mid);
    int parent = e.parent;
    QPoly dir = e.psi;
    ExtendedRational lo = e.lo;
    int j = add_vertex(jp, parent, dir, lo, rho);
    Edge& e2 = edges_[static_cast<size_t>(child)];
    e2.parent = j;
    e2.lo = rho;
    return j;
}

int BerkTree::insert(const BerkPoint& pt) {
    if (pt.is_infinity()) return infinity_vertex();
    QPoly x = xpoly();
    int u = root();
    while (true) {
        if (pts_[static_cast<size_t>(u)].same_point(pt)) return u;
        int enter = -1;
        ExtendedRational co(0);
        for (int c : children(u)) {
            const Edge& e = edges_[static_cast<size_t>(c)];
            bool inv = on_infinity_branch(c) && !on_infinity_branch_point(pt);
            ExtendedRational cc = on_infinity_branch(c) ? -pt.v(x) : pt.v(e.psi);
            (void)inv;
            if (cc > e.lo) {
                enter = c;
                co = cc;
                break;
            }
        }
        if (enter < 0) {
            // fresh direction off u
            ExtendedRational lo = pts_[static_cast<size_t>(u)].v(pt.rep_psi());
            return add_vertex(pt, u, pt.rep_psi(), lo, pt.rep_rho());
        }
        const Edge& e = edges_[static_cast<size_t>(enter)];
        ExtendedRational jr = min(co, e.hi);
        if (jr >= e.hi) {
            u = enter;
            continue;
        }
        int j = split_edge(enter, jr);
        if (pts_[static_cast<size_t>(j)].same_point(pt)) return j;
        ExtendedRational lo = pts_[static_cast<size_t>(j)].v(pt.rep_psi());
        return add_vertex(pt, j, pt.rep_psi(), lo, pt.rep_rho());
    }
}

bool BerkTree::on_infinity_branch_point(const BerkPoint& pt) const {
    (void)pt;
    return false;
}

ExtendedRational BerkTree::value_at_vertex(int id, const QPoly& f) const {
    return pts_[static_cast<size_t>(id)].v(f);
}

void BerkTree::permanent_complete() {
    for (int guard = 0; guard < 16; ++guard) {
        bool changed = false;
        int n = size();
        for (int i = 0; i < n; ++i) {
            const BerkPoint& pt = pts_[static_cast<size_t>(i)];
            if (pt.is_infinity()) continue;
            QPoly psi = pt.rep_psi();
            if (psi.degree() <= 1) continue;
            Pwa theta = theta_psi(p_, psi);
            std::vector<Rat> ds = root_distances(p_, psi);
            ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
            for (const Rat& d : ds) {
                ExtendedRational rr(theta.eval(d));
                if (pt.kind() == BerkPoint::Kind::TypeII && !(rr < pt.rep_rho())) continue;
                // the junction of the fiber at distance d, on this branch
                Loc loc = locate_on_ray(i, rr);
                BerkPoint jp = point_at(loc);
                bool known = false;
                for (int k = 0; k < size(); ++k)
                    if (pts_[static_cast<size_t>(k)].same_point(jp)) known = true;
                if (!known) {
                    insert(jp);
                    changed = true;
                }
            }
        }
        if (!changed) return;
    }
    throw Error("permanent_complete: did not stabilize");
}

BerkTree::Loc BerkTree::locate_on_ray(int id, const ExtendedRational& rho) const {
    // position with v(rep_psi(id)) = rho on the path from vertex id to the root
    const BerkPoint& pt = pts_[static_cast<size_t>(id)];
    QPoly psi = pt.rep_psi();
    int v = id;
    while (v > 0) {
        const Edge& e = edges_[static_cast<size_t>(v)];
        ExtendedRational chi = value_at_vertex(v, psi);
        ExtendedRational plo = value_at_vertex(e.parent, psi);
        if (rho == chi) return Loc{v, -1, ExtendedRational(0)};
        if (rho > plo && rho < chi) {
            // convert: on this edge, v(psi) is affine in the edge coordinate
            if (on_infinity_branch(v)) throw Error("locate_on_ray: on infinity branch");
            // sample a midpoint to get the affine map rho_edge -> v(psi)
            ExtendedRational clo = e.lo, cc = e.hi;
            if (!cc.is_finite()) {
                // child is a closed point; v(psi) -> infinity linearly: use
                // one interior sample
                Rat m1 = clo.finite() + 1;
                Loc s{-1, v, ExtendedRational(m1)};
                ExtendedRational vm = point_at(s).v(psi);
                // line through (clo, plo) and (m1, vm)
                Rat slope = (vm.finite() - plo.finite()) / (m1 - clo.finite());
                Rat target = clo.finite() + (rho.finite() - plo.finite()) / slope;
                return Loc{-1, v, ExtendedRational(target)};
            }
            if (chi == plo) throw Error("locate_on_ray: degenerate edge");
            Rat slope = (chi.finite() - plo.finite()) / (cc.finite() - clo.finite());
            Rat target = clo.finite() + (rho.finite() - plo.finite()) / slope;
            return Loc{-1, v, ExtendedRational(target)};
        }
        v = e.parent;
    }
    // on the root or beyond: the gauss-ray in x-direction
    // v(psi) at gauss points of radius s: affine; solve via two samples
    Rat s0 = 0, s1 = -1;
    auto at = [&](const Rat& s) {
        return MacLaneChain::gauss(ValuedField::rationals(p_), s).eval_q(psi);
    };
    ExtendedRational v0 = at(s0), v1 = at(s1);
    Rat slope = (v0.finite() - v1.finite()) / (s0 - s1);
    Rat target = s0 + (rho.finite() - v0.finite()) / slope;
    // that's the gauss radius; on the infinity branch coordinate = -radius
    return Loc{-1, infinity_vertex(), ExtendedRational(-target)};
}

std::string BerkTree::str() const {
    std::ostringstream os;
    for (int i = 0; i < size(); ++i) {
        os << i << ": "
           << (pts_[static_cast<size_t>(i)].is_infinity() ? std::string("infinity")
                                                          : pts_[static_cast<size_t>(i)].str());
        if (i > 0) {
            const Edge& e = edges_[static_cast<size_t>(i)];
            os << "  [parent " << e.parent << ", dir " << e.psi.str() << ", (" << e.lo.str()
               << ", " << e.hi.str() << ")]";
        }
        os << "\n";
    }
    return os.str();
}

std::shared_ptr<BerkTree> span_tree(long p, const std::vector<BerkPoint>& points) {
    auto t = std::make_shared<BerkTree>(p);
    for (const auto& pt : points) t->insert(pt);
    return t;
}

} // namespace berkline
