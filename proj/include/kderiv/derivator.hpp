#pragma once

// Diagrams in a base, prederivators built from them, pointwise left Kan
// extensions and the derivator axioms checked on bounded samples.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kderiv/basecat.hpp"
#include "kderiv/fincat.hpp"

namespace kderiv {

struct DiagramObject {
    CatPtr shape;
    std::vector<BaseObject> objects;      // per shape object
    std::vector<BaseMorphism> morphisms;  // per shape morphism, identities included

    /// Objects and non-identity morphisms; equal keys on equal shapes mean
    /// equal diagrams.
    std::string key() const;
    bool operator==(const DiagramObject& o) const;
};

struct DiagramMorphism {
    std::vector<BaseMorphism> components;  // per shape object

    std::string key() const;
    bool operator==(const DiagramMorphism&) const = default;
};

// -- diagram calculus over a base ------------------------------------------------

/// u*F for u: X' -> X with X the shape of F.
DiagramObject pull(const DiagramObject& f, const FinFunctor& u);
DiagramMorphism pull(const DiagramMorphism& m, const FinFunctor& u);
/// α*: f*F -> g*F for α: f ⇒ g, components F(α_x).
DiagramMorphism two_cell(const DiagramObject& f, const FinNatTrans& a);

std::vector<std::string> validate_diagram(const HomotopicalBase& b, const DiagramObject& f);
bool is_diagram_morphism(const HomotopicalBase& b, const DiagramObject& f, const DiagramObject& g,
                         const DiagramMorphism& m);
DiagramMorphism identity(const HomotopicalBase& b, const DiagramObject& f);
DiagramMorphism compose(const HomotopicalBase& b, const DiagramMorphism& g, const DiagramMorphism& f);
bool is_pointwise_iso(const HomotopicalBase& b, const DiagramObject& f, const DiagramObject& g,
                      const DiagramMorphism& m);
bool is_pointwise_weq(const HomotopicalBase& b, const DiagramObject& f, const DiagramObject& g,
                      const DiagramMorphism& m);

DiagramObject constant_diagram(const HomotopicalBase& b, const CatPtr& shape, const BaseObject& a);
/// Extends values on the indecomposable morphisms of a finite direct shape;
/// empty if the relations of the shape are violated.
std::optional<DiagramObject> diagram_from_generators(const HomotopicalBase& b, const CatPtr& shape,
                                                     const std::vector<BaseObject>& objects,
                                                     const std::map<int, BaseMorphism>& generators);
/// Every diagram with objects from enumerate_objects(bound), deterministic order.
std::vector<DiagramObject> enumerate_diagrams(const HomotopicalBase& b, const CatPtr& shape, int bound);
enum class MorphismFilter { All, Isos, Weqs };
std::vector<DiagramMorphism> enumerate_diagram_morphisms(const HomotopicalBase& b, const DiagramObject& f,
                                                         const DiagramObject& g,
                                                         MorphismFilter filter = MorphismFilter::All);
/// Postcomposition with a base functor.
DiagramObject apply_functor(const HomotopicalBase& b, const BaseFunctor& phi, const DiagramObject& f);
DiagramMorphism apply_functor(const HomotopicalBase& b, const BaseFunctor& phi, const DiagramObject& src,
                              const DiagramObject& tgt, const DiagramMorphism& m);

/// The □-diagram as a square of base maps.
HomotopicalBase::Square square_of(const DiagramObject& f);

// -- left Kan extensions ------------------------------------------------------------

/// Comma categories and lookup tables for f_!, reusable across inputs.
struct KanPlan {
    FinFunctor f;
    std::vector<CommaData> commas;                          // per object y of the target
    std::vector<std::map<std::pair<int, int>, int>> index;  // (x, a) -> comma object
};
KanPlan make_kan_plan(const FinFunctor& f);

struct KanResult {
    DiagramObject value;          // f_!F
    std::vector<Colimit> colims;  // per object y
};
KanResult left_kan(const HomotopicalBase& b, const KanPlan& plan, const DiagramObject& f);
/// η: F -> f*f_!F.
DiagramMorphism kan_unit(const KanPlan& plan, const KanResult& k);
/// ε: f_!f*G -> G, where `k` is the Kan extension of f*G.
DiagramMorphism kan_counit(const HomotopicalBase& b, const KanPlan& plan, const KanResult& k,
                           const DiagramObject& g);
/// f_!(m) for m: F -> F'.
DiagramMorphism kan_on_morphism(const HomotopicalBase& b, const KanPlan& plan, const KanResult& src,
                                const KanResult& tgt, const DiagramMorphism& m);

// -- prederivators --------------------------------------------------------------------

class Prederivator {
public:
    enum class Kind { Represented, Shift, Opposite };

    static Prederivator represent(const HomotopicalBase& b);
    /// D(Y×−), or its eq part D(Y×−)_eq when `eq`.
    static Prederivator shift(const Prederivator& d, const CatPtr& y, bool eq = false);
    static Prederivator opposite(const Prederivator& d);

    Kind kind() const;
    const HomotopicalBase& base() const;
    bool exact_ho() const { return base().exact_ho(); }
    std::string name() const;
    const Prederivator& inner() const;
    const CatPtr& shift_shape() const;
    bool eq() const;

    /// Shape of the underlying base diagrams representing objects of D(X).
    CatPtr shape(const CatPtr& x) const;
    /// Underlying functor whose pullback realizes f*.
    FinFunctor functor(const FinFunctor& f) const;
    /// Underlying 2-cell realizing α*. For the opposite construction the
    /// returned transformation runs g^op ⇒ f^op.
    FinNatTrans cell(const FinNatTrans& a) const;

    DiagramObject inverse_image(const FinFunctor& f, const DiagramObject& x) const;
    DiagramMorphism two_cell(const FinNatTrans& a, const DiagramObject& x) const;

    /// Membership in D(X) (eq conditions of shifted prederivators).
    bool is_member(const CatPtr& x, const DiagramObject& f) const;
    std::vector<DiagramObject> enumerate(const CatPtr& x, int bound) const;
    std::vector<DiagramMorphism> hom(const DiagramObject& f, const DiagramObject& g) const;
    /// Invertibility in D(X): an inverse exists among the enumerated maps.
    bool is_iso(const DiagramObject& f, const DiagramObject& g, const DiagramMorphism& m) const;

    /// f_! (pointwise for shifts; capability error for the opposite and for
    /// bases without exact homotopy categories).
    DiagramObject left_kan(const FinFunctor& f, const DiagramObject& x) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// dia_{X,Y}: the underlying X-diagram of Y-indexed diagrams.
struct DiaFunctor {
    std::vector<DiagramObject> objects;       // per object of X
    std::vector<DiagramMorphism> morphisms;   // per morphism of X
};
DiaFunctor dia(const Prederivator& d, const CatPtr& x, const CatPtr& y, const DiagramObject& f);
/// The transformation (i_{X,u} × Y): X-point functors, as a cell on Y -> X×Y.
FinNatTrans point_times(const CatPtr& x, const CatPtr& y, int u);

// -- axioms ------------------------------------------------------------------------------

struct AxiomReport {
    std::string axiom;
    std::vector<std::string> shapes;
    int bound = 0;
    bool pass = true;
    std::string counterexample;
    std::string note;
    long long checked = 0;
};

AxiomReport check_der1(const Prederivator& d, const CatPtr& x, const CatPtr& y, int bound);
AxiomReport check_der2(const Prederivator& d, const CatPtr& x, int bound);
AxiomReport check_der3_der4(const Prederivator& d, const FinFunctor& f, int y, int bound);
/// I is the free category on `graph` (edges between named vertices).
AxiomReport check_der5(const Prederivator& d, const std::string& label, const std::vector<std::string>& vertices,
                       const std::vector<Arrow>& graph, const CatPtr& x, int bound);

bool is_cocartesian_kan(const Prederivator& d, const DiagramObject& f);
bool is_cocartesian_pointwise(const Prederivator& d, const DiagramObject& f);
/// Kan path when available, pointwise otherwise.
bool is_cocartesian(const Prederivator& d, const DiagramObject& f);

/// The mate f_!φ ⇒ φf_! for postcomposition with φ is invertible on all
/// samples of D(X) at the bound.
bool check_cocontinuous(const HomotopicalBase& b, const BaseFunctor& phi, const FinFunctor& f, int bound,
                        std::string* counterexample = nullptr);

}  // namespace kderiv
