#pragma once

// Concrete pointed categories with weak equivalences: F_q-vector spaces and
// pointed finite sets up to isomorphism, bounded chain complexes up to
// quasi-isomorphism, and the category with only a zero object.

#include <string>
#include <utility>
#include <vector>

#include "kderiv/linalg.hpp"

namespace kderiv {

enum class BaseKind { VectIso, PtSetIso, ChainQis, Trivial };

/// vect: dims = {d}. ptset: dims = {non-basepoint count}. chain: dims[k] is
/// the dimension in degree lo+k and diffs[k-1] : C_{lo+k} -> C_{lo+k-1}.
struct BaseObject {
    std::vector<int> dims;
    std::vector<MatFq> diffs;

    int total_dim() const;
    std::string key() const;
    bool operator==(const BaseObject&) const = default;
};

/// vect/chain: one matrix per degree. ptset: table of size n+1 with t[0] = 0.
/// Endpoints are carried by the enclosing diagram, not by the morphism.
struct BaseMorphism {
    std::vector<MatFq> mats;
    std::vector<int> table;

    std::string key() const;
    bool operator==(const BaseMorphism&) const = default;
};

/// Result of a colimit: the object, one leg per diagram object, and the data
/// needed to build mediating maps.
struct Colimit {
    BaseObject object;
    std::vector<BaseMorphism> legs;
    // linear kinds: per degree, offsets of each summand and a section of the
    // projection onto the colimit
    std::vector<std::vector<int>> offsets;
    std::vector<MatFq> sections;
    // ptset: representative (diagram index, element) of each class
    std::vector<std::pair<int, int>> reps;
};

/// A diagram given as objects plus edges (src, tgt, map); identities may be
/// omitted.
struct Edge {
    int src;
    int tgt;
    BaseMorphism map;
};

class HomotopicalBase {
public:
    static HomotopicalBase vect(int q);
    static HomotopicalBase ptset();
    static HomotopicalBase chain(int q, int lo, int hi);
    static HomotopicalBase trivial();
    /// Parses "vect-iso", "ptset-iso", "chain-qis", "trivial".
    static HomotopicalBase from_tag(const std::string& tag, int q, int lo, int hi);

    BaseKind kind() const { return kind_; }
    int q() const { return q_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    int length() const { return kind_ == BaseKind::ChainQis ? hi_ - lo_ + 1 : 1; }
    std::string tag() const;
    /// W = isomorphisms, so Ho(C^X) = C^X and hom-sets are enumerable.
    bool exact_ho() const { return kind_ != BaseKind::ChainQis; }
    bool linear() const { return kind_ != BaseKind::PtSetIso; }

    BaseObject zero() const;
    bool is_zero_object(const BaseObject& a) const { return a.total_dim() == 0; }
    bool is_object(const BaseObject& a) const;
    bool is_morphism(const BaseObject& a, const BaseObject& b, const BaseMorphism& f) const;

    BaseMorphism identity(const BaseObject& a) const;
    BaseMorphism zero_map(const BaseObject& a, const BaseObject& b) const;
    BaseMorphism compose(const BaseMorphism& g, const BaseMorphism& f) const;  // g∘f

    bool is_iso(const BaseObject& a, const BaseObject& b, const BaseMorphism& f) const;
    BaseMorphism inverse(const BaseObject& a, const BaseObject& b, const BaseMorphism& f) const;
    bool is_weq(const BaseObject& a, const BaseObject& b, const BaseMorphism& f) const;
    bool is_ho_zero(const BaseObject& a) const;

    /// Homology dimensions (chain), or dims for the other kinds.
    std::vector<int> homology(const BaseObject& a) const;

    Colimit colimit(const std::vector<BaseObject>& objects, const std::vector<Edge>& edges) const;
    /// The map colim -> t whose composite with leg j is cocone[j].
    BaseMorphism mediate(const Colimit& c, const std::vector<BaseMorphism>& cocone,
                         const BaseObject& t) const;

    /// Square with corners x00 (top left), x10 (top right), x01 (bottom
    /// left), x11 and maps f: x00->x10, k: x00->x01, h: x10->x11, l: x01->x11.
    struct Square {
        BaseObject x00, x10, x01, x11;
        BaseMorphism f, k, h, l;
    };
    bool square_commutes(const Square& s) const;
    /// Homotopy pushout test; throws CheckFailure if the square does not commute.
    bool ho_cocartesian(const Square& s) const;
    /// The comparison from the ordinary pushout is an isomorphism.
    bool is_strict_pushout(const Square& s) const;
    /// Pushout of x10 <- x00 -> x01 completed to a square.
    Square pushout(const BaseObject& a, const BaseObject& b, const BaseObject& c,
                   const BaseMorphism& f, const BaseMorphism& k) const;

    std::vector<BaseObject> enumerate_objects(int bound) const;
    std::vector<BaseMorphism> enumerate_morphisms(const BaseObject& a, const BaseObject& b) const;
    std::vector<BaseMorphism> enumerate_isos(const BaseObject& a, const BaseObject& b) const;

    /// Mapping cone of f: A -> B in the window [lo, hi+1] (chain only).
    BaseObject cone(const BaseObject& a, const BaseObject& b, const BaseMorphism& f) const;

    bool operator==(const HomotopicalBase& o) const {
        return kind_ == o.kind_ && q_ == o.q_ && lo_ == o.lo_ && hi_ == o.hi_;
    }

private:
    BaseKind kind_ = BaseKind::VectIso;
    int q_ = 2;
    int lo_ = 0;
    int hi_ = 0;
};

enum class CofClass { Monos, AllMaps, SplitMonos };
CofClass cof_from_tag(const std::string& tag);
std::string cof_tag(CofClass c);

struct WaldhausenStructure {
    HomotopicalBase base;
    CofClass cof = CofClass::Monos;

    bool is_cofibration(const BaseObject& a, const BaseObject& b, const BaseMorphism& f) const;
    /// Every sampled morphism factors as a cofibration followed by a weak
    /// equivalence inside the configured window. Returns a diagnostic, or
    /// the empty string on success.
    std::string check_derivable(int bound) const;
};

// -- functors between bases -----------------------------------------------------

/// Endofunctors used for strict morphisms: identity, V ↦ V⊕V (wedge for
/// pointed sets), and a constant functor.
struct BaseFunctor {
    enum class Kind { Identity, Doubling, Constant } kind = Kind::Identity;
    BaseObject constant;

    static BaseFunctor identity() { return {}; }
    static BaseFunctor doubling() { return {Kind::Doubling, {}}; }
    static BaseFunctor constant_at(BaseObject c) { return {Kind::Constant, std::move(c)}; }

    std::string name() const;
    BaseObject on_object(const HomotopicalBase& b, const BaseObject& a) const;
    BaseMorphism on_morphism(const HomotopicalBase& b, const BaseObject& src, const BaseObject& tgt,
                             const BaseMorphism& f) const;
    bool operator==(const BaseFunctor& o) const { return kind == o.kind && constant == o.constant; }
};

/// Natural transformations between base functors: identities and the
/// swap of the two summands of the doubling functor.
struct BaseNatTrans {
    enum class Kind { Identity, Swap } kind = Kind::Identity;
    BaseFunctor src;
    BaseFunctor tgt;

    static BaseNatTrans identity(const BaseFunctor& f) { return {Kind::Identity, f, f}; }
    static BaseNatTrans swap() { return {Kind::Swap, BaseFunctor::doubling(), BaseFunctor::doubling()}; }

    std::string name() const;
    BaseMorphism component(const HomotopicalBase& b, const BaseObject& a) const;
    /// Componentwise inverse (identities and swaps are involutions).
    BaseNatTrans inverse() const { return *this; }
};

}  // namespace kderiv
