#pragma once

// Strict morphisms given by pointwise rules, simplices of the mapping
// simplicial sets, homotopies and the eq part of shifted prederivators.

#include <functional>
#include <string>
#include <vector>

#include "kderiv/derivator.hpp"

namespace kderiv {

/// (X, F ∈ src(X)) -> an object of the target evaluated at X.
using ObjectRule = std::function<DiagramObject(const CatPtr&, const DiagramObject&)>;

struct StrictMorphism {
    Prederivator src;
    Prederivator tgt;
    std::string name;
    ObjectRule apply;
};

StrictMorphism identity_morphism(const Prederivator& d);
/// Postcomposition with a base endofunctor (represented prederivators).
StrictMorphism postcompose(const Prederivator& d, const BaseFunctor& phi);
/// F ↦ pull(F, u(X)) for underlying shape functors u(X): tgt.shape(X) -> src.shape(X).
StrictMorphism inverse_image_morphism(const Prederivator& src, const Prederivator& tgt, std::string name,
                                      std::function<FinFunctor(const CatPtr&)> u);
StrictMorphism compose(const StrictMorphism& g, const StrictMorphism& f);

/// An n-simplex: a strict morphism src -> tgt([n]×−), optionally eq-valued.
struct EnrichedSimplex {
    int level = 0;
    Prederivator src;
    Prederivator tgt;
    bool eq = false;
    std::string name;
    ObjectRule apply;  // values are diagrams on tgt.shape([level]×X)

    Prederivator target() const { return Prederivator::shift(tgt, ordinal(level), eq); }
};

EnrichedSimplex as_simplex(const StrictMorphism& f);
/// The strict morphism underlying a 0-simplex.
StrictMorphism vertex(const EnrichedSimplex& s);
/// θ*: (θ×−)* for θ: [m] -> [n].
EnrichedSimplex simplicial_operator(const EnrichedSimplex& s, const FinFunctor& theta);
EnrichedSimplex face(const EnrichedSimplex& s, int i);
EnrichedSimplex degeneracy(const EnrichedSimplex& s, int i);
/// (△×−)* ∘ ψ([n]×−) ∘ φ.
EnrichedSimplex compose_simplices(const EnrichedSimplex& psi, const EnrichedSimplex& phi);

/// The 1-simplex α_* of a natural transformation of base endofunctors.
EnrichedSimplex alpha_star(const Prederivator& d, const BaseNatTrans& alpha);

/// dia_{Y,X}(F) sends every morphism of Y to an isomorphism of D(X).
bool eq_membership(const Prederivator& d, const CatPtr& y, const CatPtr& x, const DiagramObject& f);

/// Shapes and test functors used to sample strictness and membership.
std::vector<CatPtr> shape_battery();
std::vector<FinFunctor> functor_battery();

struct Verification {
    bool pass = true;
    long long checked = 0;
    std::string failure;
};

Verification check_strict(const StrictMorphism& f, int bound);
Verification check_strict(const EnrichedSimplex& s, int bound);
/// Every value lies in tgt([n]×X)_eq when the simplex claims eq.
Verification check_eq(const EnrichedSimplex& s, int bound);
/// Literal equality of two morphisms (or simplices) on the battery.
Verification check_equal(const StrictMorphism& a, const StrictMorphism& b, int bound);
Verification check_equal(const EnrichedSimplex& a, const EnrichedSimplex& b, int bound);

struct Homotopy {
    StrictMorphism phi0;
    StrictMorphism phi1;
    /// dia_{[1],X}(Ψ(F))(0 -> 1): φ0(F) -> φ1(F).
    std::function<DiagramMorphism(const CatPtr&, const DiagramObject&)> transformation;
};
/// Throws InvalidArgument for a simplex that is not an eq 1-simplex.
Homotopy homotopy_boundaries(const EnrichedSimplex& psi);
/// The transformation is componentwise invertible on the battery.
Verification check_homotopy(const Homotopy& h, int bound);

struct PathObject {
    StrictMorphism s0;  // D -> D([1]×−)_eq
    StrictMorphism d1;  // D([1]×−)_eq -> D
    StrictMorphism d0;
};
PathObject path_object(const Prederivator& d);
/// (∂1, ∂0)∘s0 is the diagonal, literally.
Verification check_path_object(const PathObject& p, int bound);

struct StrongEquivalence {
    Prederivator dx;          // D(X×−)_eq
    StrictMorphism p_star;    // D -> D(X×−)_eq, with D read as D(e×−)
    StrictMorphism i_star;    // D(X×−)_eq -> D(e×−)
    FinFunctor h;             // H: [1]×X -> X
    EnrichedSimplex homotopy; // (H×−)*
    Verification identity_composite;  // i*p* = id, literally
    Verification boundaries;          // ∂1 = p*i*, ∂0 = id
    Verification eq;                  // H* lands in the eq part
    bool pass() const { return identity_composite.pass && boundaries.pass && eq.pass; }
};
StrongEquivalence strong_equivalence_from_initial(const Prederivator& d, const CatPtr& x, int x0, int bound);

/// iso_n D = D([n]×−)_eq; needs exact homotopy categories.
Prederivator iso_prederivator(const Prederivator& d, int n);
/// The inclusion of identity strings D -> iso_n D.
StrictMorphism iso_degeneracy(const Prederivator& d, int n);
/// θ*: iso_n D -> iso_m D for θ: [m] -> [n].
StrictMorphism iso_operator(const Prederivator& d, const FinFunctor& theta);

/// ρ: the n vertices of an eq n-simplex and the n connecting isomorphisms.
struct NerveChain {
    std::vector<StrictMorphism> vertices;
    std::vector<std::function<DiagramMorphism(const CatPtr&, const DiagramObject&)>> edges;
};
NerveChain rho(const EnrichedSimplex& s);
/// Consecutive edges compose, endpoints match the vertices, all invertible.
Verification check_nerve_chain(const NerveChain& c, int bound);

/// Strict cocontinuous morphisms ψ0..ψk (postcompositions) and invertible
/// modifications β_r: ψ_{r-1} ⇒ ψ_r.
struct ModificationChain {
    std::vector<BaseFunctor> psi;
    std::vector<BaseNatTrans> beta;
};
std::string validate(const ModificationChain& c);

}  // namespace kderiv
