#pragma once

// The S-construction of a pointed prederivator, its bisimplicial version,
// the nerve of isomorphisms, and the classical S-construction of a
// Waldhausen category, all truncated and enumerated within a bound.

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "kderiv/enrichment.hpp"
#include "kderiv/simplicial.hpp"

namespace kderiv {

/// A string X_0 -> X_1 -> ... -> X_m of maps between diagrams of one shape.
struct Chain {
    std::vector<DiagramObject> objects;
    std::vector<DiagramMorphism> maps;

    int length() const { return static_cast<int>(maps.size()); }
    std::string key() const;
};

/// The [m]×X diagram of a chain of X-diagrams.
DiagramObject assemble(const HomotopicalBase& b, const Chain& c);
/// The columns of a [m]×X diagram and its transitions j -> j+1.
Chain disassemble(const DiagramObject& f, int m, const CatPtr& x);

/// Nerve operators on chains: d_i drops (or composes at) position i,
/// s_i inserts an identity.
Chain chain_face(const HomotopicalBase& b, const Chain& c, int i);
Chain chain_degeneracy(const HomotopicalBase& b, const Chain& c, int i);
/// Pulls every object and map along u.
Chain pull(const Chain& c, const FinFunctor& u);

enum class CocartesianTest { Auto, Kan, Direct };

/// F on Ar[n] in D(Ar[n]): ho-zero on the diagonal, cocartesian (i,j,k) squares.
bool is_sn(const Prederivator& d, int n, const DiagramObject& f, CocartesianTest test = CocartesianTest::Auto);
/// F on [m]×Ar[n] in D([m]×Ar[n])_eq with column 0 in S_n.
bool is_snm(const Prederivator& d, int n, int m, const DiagramObject& f);
/// Zero diagonal, cofibrations along rows, literal pushout squares.
bool is_wald_sn(const WaldhausenStructure& w, int n, const DiagramObject& f);

/// Elements of s_n D in deterministic order, zero diagonal filled with the
/// canonical zero object. D is represented or an eq-shift of one.
std::vector<DiagramObject> enumerate_sn(const Prederivator& d, int n, int bound);
std::vector<DiagramObject> enumerate_wald_sn(const WaldhausenStructure& w, int n, int bound);

/// Elements of one level with lookup by key.
template <class T>
struct ElementTable {
    std::vector<T> items;
    std::unordered_map<std::string, int> index;

    int add(T t, std::string key) {
        auto [it, fresh] = index.emplace(std::move(key), static_cast<int>(items.size()));
        if (fresh) items.push_back(std::move(t));
        return it->second;
    }
    int find(const std::string& key) const {
        auto it = index.find(key);
        return it == index.end() ? -1 : it->second;
    }
    int size() const { return static_cast<int>(items.size()); }
};

/// Columns of one level (elements of s_n or of the Waldhausen S_n) and the
/// weak equivalences between them, computed once.
struct ColumnSet {
    ElementTable<DiagramObject> columns;
    std::map<std::pair<int, int>, ElementTable<DiagramMorphism>> maps;

    ColumnSet() = default;
    ColumnSet(const HomotopicalBase& b, std::vector<DiagramObject> cols, bool isos, bool with_maps);
    int size() const { return columns.size(); }
};

/// A chain encoded as column indices c_0..c_m followed by map indices.
using ChainCode = std::vector<int>;
std::string code_key(const ChainCode& c);
Chain decode(const ColumnSet& cols, const ChainCode& code);
/// Empty when a column or a map is not in the set.
ChainCode encode(const ColumnSet& cols, const Chain& c);
/// All m-chains, in deterministic order.
std::vector<ChainCode> enumerate_codes(const ColumnSet& cols, int m);

struct SBuild {
    Prederivator d;
    int bound = 0;
    TruncSSet set;
    std::vector<ElementTable<DiagramObject>> levels;
};
SBuild build_s(const Prederivator& d, int N, int bound);

/// S_{n,m}: elements are [m]×Ar[n] diagrams, stored as chains of columns;
/// operators are inverse images along [m]×Ar(θ) and θ×Ar[n].
struct SBisBuild {
    Prederivator d;
    int bound = 0;
    TruncBiSSet set;
    std::vector<ColumnSet> columns;                         // [n]
    std::vector<std::vector<ElementTable<ChainCode>>> levels;  // [n][m]

    DiagramObject element(int n, int m, int e) const;
    /// Index of an [m]×Ar[n] diagram, or -1.
    int find(int n, int m, const DiagramObject& f) const;
};
SBisBuild build_Sbis(const Prederivator& d, int N, int M, int bound);

/// [k] ↦ N_k iso S_k D, elements stored as chains of isomorphisms.
struct NisoSBuild {
    Prederivator d;
    int bound = 0;
    TruncSSet set;
    std::vector<ColumnSet> columns;  // [k]
    std::vector<ElementTable<ChainCode>> levels;

    Chain element(int k, int e) const;
    int find(int k, const Chain& c) const;
};
NisoSBuild build_NisoS(const Prederivator& d, int N, int bound);

/// N_m w S_n C, elements stored as chains of Ar[n]-diagrams.
struct WaldBuild {
    WaldhausenStructure w;
    int bound = 0;
    TruncBiSSet set;
    std::vector<ColumnSet> columns;
    std::vector<std::vector<ElementTable<ChainCode>>> levels;

    Chain element(int n, int m, int e) const;
    int find(int n, int m, const Chain& c) const;
};
WaldBuild build_wald(const WaldhausenStructure& w, int N, int M, int bound);

/// Element of S_{k,k}D' from one of S_{k,k}D: (△×Ar[k])* (σ×[k]×Ar[k])* φ([k]×Ar[k]).
DiagramObject phi_star(const EnrichedSimplex& phi, const FinFunctor& sigma, const DiagramObject& f);

/// s_k D -> s_k D': (Ar(σ), id)* (p×Ar[k])* Ψ(Ar[k]) for σ: [k] -> [1].
DiagramObject lemma_homotopy(const EnrichedSimplex& psi, const FinFunctor& sigma, const DiagramObject& f);
/// The homotopy between the maps s•D -> s•D' induced by ∂1Ψ and ∂0Ψ,
/// assembled over all σ and looked up in the target build. `f` and `g`
/// receive the boundary maps.
SimplicialHomotopy lemma_homotopy_data(const EnrichedSimplex& psi, const SBuild& src, const SBuild& tgt,
                                       SimplicialMap* f, SimplicialMap* g);

/// The diagonal of the grid of squares ψ_{σ(r)}(f_s) against the
/// composite modifications; throws CheckFailure if the two composites differ.
Chain grid_diagonal(const Prederivator& d, const ModificationChain& c, const FinFunctor& sigma, const Chain& simplex);

}  // namespace kderiv
