#ifndef BERKLINE_MACLANE_HPP
#define BERKLINE_MACLANE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "berkline/fq_poly.hpp"
#include "berkline/padic.hpp"
#include "berkline/tower.hpp"

namespace berkline {

class ValuedField;
using ValuedFieldPtr = std::shared_ptr<const ValuedField>;

// Monomial U^{base_exp} * prod_k phi_k^{key_exps[k]} used to normalize
// values during graded reduction and lifting.
struct Mono {
    long base_exp = 0;
    std::vector<long> key_exps; // indexed by stage

    long key(size_t k) const { return k < key_exps.size() ? key_exps[k] : 0; }
    void add_key(size_t k, long n) {
        if (key_exps.size() <= k) key_exps.resize(k + 1, 0);
        key_exps[k] += n;
    }
};

// MacLane inductive (pseudo)valuation on K[x] for a valued tower field K:
// stage 0 is (x, lambda_0) [a Gauss valuation of radius lambda_0], later
// stages augment by key polynomials with strictly increasing values. A last
// value of +inf makes it a pseudovaluation.
class MacLaneChain {
  public:
    struct Stage {
        TPoly phi;               // monic key over K
        ExtendedRational lambda; // assigned value
        long e = 1;              // [Gamma_k : Gamma_{k-1}]
        long D = 1;              // Gamma_k = (1/D) Z
        const FqField* kappa = nullptr; // constant residue field at this stage
        FqElem prev_gen_img;     // image of previous kappa's generator
        FqElem theta;            // root of residual_of_phi (stage >= 1)
        FqPoly residual_of_phi;  // over previous kappa (stage >= 1)
        Mono u;                  // canonical monomial of value 1/D
        long f = 1;              // residue degree added at this stage
    };

    static MacLaneChain gauss(ValuedFieldPtr base, const Rat& lambda0);

    const ValuedFieldPtr& base() const { return base_; }
    int stages() const { return static_cast<int>(st_.size()); }
    const Stage& stage(int k) const { return st_[static_cast<size_t>(k)]; }
    const TPoly& key(int k) const { return st_[static_cast<size_t>(k)].phi; }
    const ExtendedRational& value_of_key(int k) const { return st_[static_cast<size_t>(k)].lambda; }
    const TPoly& last_key() const { return st_.back().phi; }
    const ExtendedRational& last_value() const { return st_.back().lambda; }
    bool is_pseudo() const { return st_.back().lambda.is_pos_inf(); }

    ExtendedRational eval(const TPoly& f) const; // f over K
    ExtendedRational eval_q(const QPoly& f) const { return eval(tpoly_from_q(f)); }

    long ram_index() const;  // [Gamma_chain : Gamma_K]
    long res_degree() const; // prod f_k
    long D() const { return st_.back().D; }
    const FqField* residue_const_field() const { return st_.back().kappa; }

    // Value-0 graded reduction of f * M as a Laurent polynomial in the last
    // residual variable (coefficients in residue_const_field()).
    std::map<long, FqElem> reduce0(const TPoly& f, const Mono& M) const;

    // Residual data of G: Laurent reduction of G normalized to value 0.
    // first = offset (phi-multiplicity), second = polynomial part R(z) with
    // R(0) != 0.
    std::pair<long, FqPoly> residual(const TPoly& G) const;

    // Key polynomial test per the residual criterion.
    bool is_key(const TPoly& phi, std::string* why = nullptr) const;

    // Validated augmentation (public operation).
    MacLaneChain augmented(const TPoly& phi, const ExtendedRational& lambda) const;

    // Internal: replace-last when degrees match, else append. No key check.
    MacLaneChain augmented_unchecked(TPoly phi, ExtendedRational lambda) const;

    // Lift an irreducible gbar over residue_const_field() (gbar(0) != 0) to a
    // key polynomial of degree e * deg(gbar) * deg(last key).
    TPoly lift_to_key(const FqPoly& gbar) const;

    // Canonical monomial (as element of K[x]) with exact value s.
    TPoly element_with_valuation(const Rat& s) const;
    Mono mono_with_valuation(const Rat& s) const;
    Rat mono_value(const Mono& m) const;
    TPoly mono_element(const Mono& m) const;

    // Value-0 lift of a constant c in residue_const_field(); degree < deg phi_n.
    TPoly lift_const0(const FqElem& c) const;

    int cmp(const MacLaneChain& o) const; // deterministic order
    std::string str() const;

    // phi-adic digits of f wrt the last key (index = power).
    std::vector<TPoly> digits(const TPoly& f) const;

  private:
    MacLaneChain() = default;
    ExtendedRational eval_stage(int k, const TPoly& f) const;
    std::map<long, FqElem> reduce_stage(int k, const TPoly& f, Mono M) const;
    void canonicalize_mono(Mono& m) const;
    Mono scaled_u(int k, long times) const; // u_k-mono ^ times, expanded

    ValuedFieldPtr base_;
    std::vector<Stage> st_;
};

// One extension of the base valuation to K[x]/(psi): a certified chain plus
// invariants. The chain is refinable; psi is stored for refinement. A probe
// chain (one refinement ahead) is kept so that stabilization checks on
// already-stable elements cost no new MacLane steps.
class ExtensionData {
  public:
    ExtensionData(MacLaneChain chain, TPoly psi);

    const MacLaneChain& chain() const { return chain_; }
    const TPoly& psi() const { return psi_; }
    long e() const { return e_; }
    long f() const { return f_; }

    // One MacLane refinement step (increases the chain's value on psi).
    void refine();

    // Stabilized value of g(alpha), deg g < deg psi.
    ExtendedRational value_of(const TPoly& g, int budget = 64);

    // Residue of g(alpha) for value 0, in chain().residue_const_field().
    FqElem residue_of(const TPoly& g, int budget = 64);

    int cmp(const ExtensionData& o) const;

  private:
    const MacLaneChain& probe();

    MacLaneChain chain_;
    std::optional<MacLaneChain> probe_;
    TPoly psi_;
    long e_, f_;
};

// All extensions of the valuation of `base` to base[x]/(psi); psi monic,
// squarefree, integral (NonIntegral otherwise). If check_irreducible, psi
// must be irreducible over Q (only meaningful at level 0).
std::vector<ExtensionData> maclane_extensions(const ValuedFieldPtr& base, const TPoly& psi,
                                              bool check_irreducible = false);

// A tower level (or Q itself) carrying a p-adic (pseudo)valuation. Levels
// above Q are built from one ExtensionData. The stored approximant refines
// lazily behind a mutex; all observable values are stable.
class ValuedField : public std::enable_shared_from_this<ValuedField> {
  public:
    static ValuedFieldPtr rationals(long p);
    static ValuedFieldPtr extension(const ValuedFieldPtr& parent, const ExtensionData& ext,
                                    std::string var);

    long p() const { return vp_.prime().get_si(); }
    const PAdicValuation& base_valuation() const { return vp_; }
    const ValuedFieldPtr& parent() const { return parent_; }
    const TowerRingPtr& ring() const { return ring_; } // null at level 0
    int level() const { return ring_ ? ring_->level() : 0; }
    TowerElem gen() const { return ring_ ? ring_->gen() : TowerElem(Rat(0)); }

    long D() const { return D_; }                      // value group (1/D)Z
    long ram_index() const { return e_; }              // over parent
    long res_degree() const { return f_; }             // over parent
    long abs_e() const;                                // over Q
    long abs_f() const;                                // over Q
    const FqField* residue_field() const { return kappa_; }

    ExtendedRational val(const TowerElem& a) const;
    FqElem residue(const TowerElem& a) const; // val(a) == 0
    TowerElem lift_residue(const FqElem& c) const;
    const TowerElem& uniformizer() const { return uniformizer_; } // value 1/D
    TowerElem pow_uniformizer(long e) const;            // u^e, e any sign
    TowerElem with_valuation(const Rat& s) const;      // element of exact value s

    // Chain access for diagnostics.
    MacLaneChain approximant() const;

  private:
    ValuedField() : vp_(2) {}
    ValuedFieldPtr parent_;
    TowerRingPtr ring_;
    PAdicValuation vp_;
    long D_ = 1, e_ = 1, f_ = 1;
    const FqField* kappa_ = nullptr;
    TowerElem uniformizer_;
    mutable std::optional<TowerElem> uinv_;
    mutable std::mutex mu_;
    mutable std::optional<ExtensionData> ext_;
};

// Spec surface: gauss(rho) over Q.
MacLaneChain gauss_valuation(long p, const Rat& rho);

} // namespace berkline

#endif
