#ifndef BERKLINE_BERKLINE_HPP
#define BERKLINE_BERKLINE_HPP

#include <memory>
#include <optional>
#include <set>
#include <variant>

#include "berkline/maclane.hpp"
#include "berkline/pwa.hpp"
#include "berkline/qpoly.hpp"

namespace berkline {

// Closed discoid D[psi, rho] = {v(psi) >= rho}; psi monic (irreducibility
// over Q_p is what makes it connected, not checked here). rho = +inf is the
// closed point.
struct Discoid {
    QPoly psi;
    ExtendedRational rho;
};

// A point of (P^1_{Q_p})^an of Type I or II, plus the point at infinity.
// Type II points carry a MacLane chain (finite last value); rational Type I
// points a pseudo chain; algebraic Type I points a refinable extension.
class BerkPoint {
  public:
    enum class Kind { TypeII, TypeI, Infinity };

    static BerkPoint gauss_point(long p);
    static BerkPoint infinity(long p);
    static BerkPoint closed_rational(long p, const Rat& a);
    // Closed point of the ext_index-th extension attached to irreducible psi.
    static BerkPoint closed_algebraic(long p, const QPoly& psi, int ext_index = 0);
    static BerkPoint from_chain(long p, MacLaneChain chain);

    Kind kind() const { return kind_; }
    long p() const { return p_; }
    bool is_type2() const { return kind_ == Kind::TypeII; }
    bool is_infinity() const { return kind_ == Kind::Infinity; }

    // v_xi(f); +inf at a zero, -inf at infinity for nonconstant f.
    ExtendedRational v(const QPoly& f) const;

    // Minimal-degree discoid description (TypeII/TypeI only).
    QPoly rep_psi() const;
    ExtendedRational rep_rho() const;
    const MacLaneChain& chain() const;

    bool same_point(const BerkPoint& o) const;
    // this point's discoid contains o
    bool contains(const BerkPoint& o) const;

    std::string str() const;

  private:
    BerkPoint(Kind k, long p) : kind_(k), p_(p) {}
    Kind kind_;
    long p_;
    std::optional<MacLaneChain> chain_;
    std::shared_ptr<ExtensionData> ext_; // algebraic Type I only
};

// Boundary point(s) of {v(f) >= rho} for monic f: one per connected
// component, each as a Type II point (or the closed points for rho beyond
// every boundary). f may be any nonconstant monic polynomial.
std::vector<BerkPoint> points_from_discoid(long p, const QPoly& f, const ExtendedRational& rho);

// theta_psi as an exact piecewise-affine function: r |I_r| + sum_{J_r} d_i.
Pwa theta_psi(long p, const QPoly& psi);

// Inverts theta at rho and reports the number of disjoint disks upstairs.
std::pair<long, ExtendedRational> split_discoid(long p, const Discoid& d);

// Finite pairwise root distances v(alpha_1 - alpha_i) of psi, sorted.
std::vector<Rat> root_distances(long p, const QPoly& psi);

// Rooted tree of Berkovich points. The Gauss point and the infinity point
// are always vertices; every edge carries a direction polynomial and a
// closed radius interval in that direction.
class BerkTree {
  public:
    explicit BerkTree(long p);

    struct Edge {
        int parent = -1;
        QPoly psi;                // direction: v(psi) grows toward the child
        ExtendedRational lo, hi;  // radii at parent resp. child side
    };

    long p() const { return p_; }
    int size() const { return static_cast<int>(pts_.size()); }
    const BerkPoint& point(int id) const { return pts_[static_cast<size_t>(id)]; }
    const Edge& edge(int id) const { return edges_[static_cast<size_t>(id)]; } // edge to parent
    int root() const { return 0; }
    int infinity_vertex() const { return 1; }
    std::vector<int> children(int id) const;

    // Insert a point (and the junctions it forces); returns its vertex id.
    int insert(const BerkPoint& pt);

    // Position of the retraction of pt onto the tree.
    struct Loc {
        int vertex = -1;               // set when the retraction is a vertex
        int edge_child = -1;           // else on edge(parent -> edge_child)
        ExtendedRational rho;          // radius in the edge direction
        bool is_vertex() const { return vertex >= 0; }
    };
    Loc locate(const BerkPoint& pt) const;
    BerkPoint point_at(const Loc& loc) const;

    // True when the edge into `id` runs toward infinity (its coordinate is
    // v(1/x) rather than v(psi)).
    bool on_infinity_branch(int id) const;

    // Position with v(rep_psi(id)) = rho on the path from vertex id toward
    // the root (and onto the infinity branch if needed).
    Loc locate_on_ray(int id, const ExtendedRational& rho) const;

    // Insert the cluster-junction points of every multi-degree vertex, so
    // that the geometric inverse image of the tree is again a tree and all
    // valuative functions are affine on edges.
    void permanent_complete();

    // v(f) at a vertex / along an edge (affine after permanent completion).
    ExtendedRational value_at_vertex(int id, const QPoly& f) const;

    std::string str() const;

  private:
    int attach(const BerkPoint& pt);
    int split_edge(int child, const ExtendedRational& rho);
    int add_vertex(const BerkPoint& pt, int parent, QPoly dir, ExtendedRational lo,
                   ExtendedRational hi);

    long p_;
    std::vector<BerkPoint> pts_;
    std::vector<Edge> edges_;
};

// Closed subset of a tree (marked vertices and closed edge intervals),
// understood as its retraction preimage: an affinoid subdomain of the line
// (or the whole line).
class AffinoidDomain {
  public:
    explicit AffinoidDomain(std::shared_ptr<BerkTree> tree);

    const std::shared_ptr<BerkTree>& tree() const { return tree_; }

    void mark_vertex(int id);
    // closed interval [lo, hi] in the direction coordinates of edge(->child)
    void mark_edge_interval(int child, const ExtendedRational& lo, const ExtendedRational& hi);

    bool vertex_marked(int id) const;
    const std::map<int, std::vector<std::pair<ExtendedRational, ExtendedRational>>>& edge_marks()
        const {
        return marks_;
    }

    bool contains(const BerkPoint& pt) const;
    bool is_empty() const;
    bool is_whole_line() const;

    // Set algebra; operands are rebased onto a common refinement tree.
    static AffinoidDomain union_of(const AffinoidDomain& a, const AffinoidDomain& b);
    static AffinoidDomain difference(const AffinoidDomain& a, const AffinoidDomain& b);

    AffinoidDomain rebased(std::shared_ptr<BerkTree> tree) const;

    struct Inequality {
        QPoly psi;          // or x for the 1/x-forms
        ExtendedRational rho;
        bool complement;    // false: v(psi) >= rho; true: v(1/psi) >= -rho
    };
    struct Component {
        std::vector<Inequality> ineqs;
        bool contains_infinity = false;
    };
    std::vector<Component> components() const;

    std::string str() const;  // MCLF-style transcript
    std::string json() const; // [{psi, radius, sense}]

  private:
    std::shared_ptr<BerkTree> tree_;
    std::set<int> vmarks_;
    std::map<int, std::vector<std::pair<ExtendedRational, ExtendedRational>>> marks_;
    void normalize_edge(int child);
};

// {sum_i alpha_i * v(f_i) >= c} as an affinoid over the permanent completion
// of the tree spanned by all zeros of the f_i, the Gauss point and infinity.
AffinoidDomain valuative_region(long p, const std::vector<std::pair<QPoly, Rat>>& terms,
                                const Rat& bound,
                                std::shared_ptr<BerkTree> tree = nullptr);

// Tree spanned by the given points (plus Gauss point and infinity).
std::shared_ptr<BerkTree> span_tree(long p, const std::vector<BerkPoint>& points);

} // namespace berkline

#endif
