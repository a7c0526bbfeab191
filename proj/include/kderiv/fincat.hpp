#pragma once

// Finite categories presented by total composition tables, together with
// functors, natural transformations and the standard diagram shapes used
// throughout the library ([n], Ar[n], the commutative square, the span).

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace kderiv {

struct Arrow {
    std::string id;
    int src = -1;
    int tgt = -1;

    bool operator==(const Arrow&) const = default;
};

class FinCat {
public:
    FinCat() = default;

    /// `composition` is a dense table with entry `[g * M + f]` holding the
    /// index of g∘f (f first), or -1 when tgt(f) != src(g). `identities[o]`
    /// may be -1 for malformed input; `validate` reports it.
    FinCat(std::string name, std::vector<std::string> objects, std::vector<Arrow> morphisms,
           std::vector<int> identities, std::vector<int> composition);

    const std::string& name() const { return name_; }
    int num_objects() const { return static_cast<int>(objects_.size()); }
    int num_morphisms() const { return static_cast<int>(morphisms_.size()); }

    const std::string& object(int o) const { return objects_.at(o); }
    const std::vector<std::string>& objects() const { return objects_; }
    const Arrow& morphism(int m) const { return morphisms_.at(m); }
    const std::vector<Arrow>& morphisms() const { return morphisms_; }
    const std::vector<int>& identities() const { return identities_; }
    const std::vector<int>& composition() const { return composition_; }

    int src(int m) const { return morphisms_[m].src; }
    int tgt(int m) const { return morphisms_[m].tgt; }

    /// Throws InvalidArgument for unknown ids.
    int object_index(const std::string& id) const;
    int morphism_index(const std::string& id) const;

    int identity(int o) const { return identities_.at(o); }
    bool is_identity(int m) const;

    /// Index of g∘f, or -1 if the pair is not composable.
    int compose(int g, int f) const {
        return composition_[static_cast<std::size_t>(g) * morphisms_.size() + f];
    }

    /// Morphisms a -> b in index order.
    const std::vector<int>& hom(int a, int b) const {
        return hom_[static_cast<std::size_t>(a) * objects_.size() + b];
    }

    std::uint64_t fingerprint() const { return fingerprint_; }

    /// Structural equality; the display name is not compared.
    bool operator==(const FinCat& other) const;

private:
    std::string name_;
    std::vector<std::string> objects_;
    std::vector<Arrow> morphisms_;
    std::vector<int> identities_;
    std::vector<int> composition_;
    std::vector<std::vector<int>> hom_;
    std::unordered_map<std::string, int> object_lookup_;
    std::unordered_map<std::string, int> morphism_lookup_;
    std::uint64_t fingerprint_ = 0;
};

using CatPtr = std::shared_ptr<const FinCat>;

bool same_category(const CatPtr& a, const CatPtr& b);

struct FinFunctor {
    CatPtr src;
    CatPtr tgt;
    std::vector<int> object_map;
    std::vector<int> morphism_map;

    int operator()(int object) const { return object_map[object]; }
    int on_morphism(int m) const { return morphism_map[m]; }
    bool operator==(const FinFunctor& other) const;
};

struct FinNatTrans {
    FinFunctor src;
    FinFunctor tgt;
    std::vector<int> components;  // object of the domain -> morphism of the codomain
};

struct CommaData {
    CatPtr comma;       // f↓y
    FinFunctor j;       // source projection f↓y -> X
    FinFunctor p;       // f↓y -> e
    FinNatTrans alpha;  // f∘j ⇒ i_y∘p, component at (x, a) is a
    /// For each comma object: (x, a) with a: f(x) -> y.
    std::vector<std::pair<int, int>> entries;
};

// -- validation --------------------------------------------------------------

std::vector<std::string> validate(const FinCat& c);
std::vector<std::string> validate(const FinFunctor& f);
std::vector<std::string> validate(const FinNatTrans& a);

/// True iff the graph of non-identity morphisms has no cycles.
bool is_finite_direct(const FinCat& c);

/// Non-identity morphisms that are not composites of two non-identity
/// morphisms. For a finite direct category they generate everything.
std::vector<int> indecomposables(const FinCat& c);

// -- standard shapes -----------------------------------------------------------

/// Builds a poset category from objects and a reflexive, transitive order.
CatPtr make_poset(std::string name, std::vector<std::string> objects,
                  const std::vector<std::vector<bool>>& leq);

CatPtr ordinal(int n);      // [n]
CatPtr terminal();          // e = [0]
CatPtr empty_category();
CatPtr arrow_cat(int n);    // Ar[n]
CatPtr square();            // [1]×[1]
CatPtr ulcorner();          // full subcategory of □ on (0,0), (1,0), (0,1)
FinFunctor inclusion_ulcorner();
FinFunctor diagonal(int n);  // [n] -> [n]×[n]

/// i_{X,x}: e -> X.
FinFunctor point_functor(const CatPtr& x_cat, int x);
/// i_{X,g}: i_{X,src g} ⇒ i_{X,tgt g}.
FinNatTrans point_nat(const CatPtr& x_cat, int g);
/// The unique functor X -> e.
FinFunctor to_terminal(const CatPtr& x_cat);

/// Category freely generated by a finite acyclic graph; paths are named by
/// their edge ids joined with '*' in traversal order.
CatPtr free_category(std::string name, std::vector<std::string> vertices,
                     const std::vector<Arrow>& edges);

/// Monotone map [m] -> [n] given by its values.
FinFunctor ordinal_map(int m, int n, const std::vector<int>& values);
FinFunctor coface(int n, int i);       // δ_i: [n-1] -> [n]
FinFunctor codegeneracy(int n, int i); // σ_i: [n+1] -> [n]

/// Ar(θ): Ar[m] -> Ar[n] for a monotone θ: [m] -> [n].
FinFunctor arrow_map(const FinFunctor& theta);

/// Inclusion □ -> Ar[n] of the square (i,j),(i,k),(j,j),(j,k).
FinFunctor ar_square(int n, int i, int j, int k);

/// p: Ar[n] -> [n], (i,j) |-> j.
FinFunctor arrow_target(int n);

// -- constructions ---------------------------------------------------------------

CatPtr product(const CatPtr& a, const CatPtr& b);
CatPtr coproduct(const CatPtr& a, const CatPtr& b);
CatPtr opposite(const CatPtr& c);
CatPtr full_subcategory(const CatPtr& c, const std::vector<int>& objects, std::string name);

FinFunctor identity_functor(const CatPtr& c);
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);  // g∘f
FinFunctor projection1(const CatPtr& a, const CatPtr& b);       // a×b -> a
FinFunctor projection2(const CatPtr& a, const CatPtr& b);       // a×b -> b
/// ⟨f, g⟩: A -> B×C.
FinFunctor pairing(const FinFunctor& f, const FinFunctor& g);
FinFunctor product_functor(const FinFunctor& f, const FinFunctor& g);  // f×g
FinFunctor coproduct_inclusion(const CatPtr& a, const CatPtr& b, bool left);
FinFunctor opposite_functor(const FinFunctor& f);
/// (a×b)×c -> a×(b×c).
FinFunctor associator(const CatPtr& a, const CatPtr& b, const CatPtr& c);
/// Functor Y×X -> Y×X' given a functor X -> X' (Y unchanged).
FinFunctor left_times(const CatPtr& y, const FinFunctor& f);

FinNatTrans identity_nat(const FinFunctor& f);
/// Y×α: Y×f ⇒ Y×g.
FinNatTrans left_times(const CatPtr& y, const FinNatTrans& a);
/// α^op: g^op ⇒ f^op.
FinNatTrans opposite_nat(const FinNatTrans& a);

/// Comma category f↓y for f: X -> Y and an object y of Y.
CommaData comma(const FinFunctor& f, int y);

}  // namespace kderiv
