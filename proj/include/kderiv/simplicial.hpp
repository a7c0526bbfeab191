#pragma once

// Truncated simplicial and bisimplicial sets, nerves, the diagonal, edge-path
// presentations of π1 and simplicial homology.

#include <string>
#include <utility>
#include <vector>

#include "kderiv/fincat.hpp"
#include "kderiv/linalg.hpp"

namespace kderiv {

/// Levels 0..N. faces[k][i][s] is d_i of simplex s at level k (k >= 1);
/// degens[k][i][s] is s_i of simplex s at level k (k+1 <= N).
struct TruncSSet {
    int N = 0;
    std::vector<std::vector<std::string>> ids;
    std::vector<std::vector<bool>> degenerate;
    std::vector<std::vector<std::vector<int>>> faces;
    std::vector<std::vector<std::vector<int>>> degens;

    explicit TruncSSet(int n = 0);
    int size(int k) const { return static_cast<int>(ids[k].size()); }
    int add(int k, std::string id);
    /// Allocates operator tables sized to the current levels.
    void allocate();
    /// Flags every simplex in the image of a degeneracy.
    void mark_degenerate();
};

/// Simplices S_{n,m} for n <= N, m <= M. Horizontal operators act on n,
/// vertical ones on m.
struct TruncBiSSet {
    int N = 0;
    int M = 0;
    std::vector<std::vector<std::vector<std::string>>> ids;  // [n][m]
    std::vector<std::vector<std::vector<std::vector<int>>>> hface, hdeg, vface, vdeg;  // [n][m][i][s]

    TruncBiSSet(int n = 0, int m = 0);
    int size(int n, int m) const { return static_cast<int>(ids[n][m].size()); }
    void allocate();
    /// The simplicial set in the m-direction at fixed n.
    TruncSSet column(int n) const;
    /// The simplicial set in the n-direction at fixed m.
    TruncSSet row(int m) const;
};

std::vector<std::string> verify(const TruncSSet& s);
std::vector<std::string> verify(const TruncBiSSet& b);

TruncSSet nerve(const CatPtr& c, int n);
/// The one-object category of the cyclic group of the given order.
CatPtr cyclic_group_category(int order);
/// Δ[1]/∂Δ[1] truncated at level 2: one vertex, one non-degenerate edge.
TruncSSet circle_model();
TruncSSet diagonal(const TruncBiSSet& b);

/// Level maps; verify_map checks commutation with every defined operator.
struct SimplicialMap {
    std::vector<std::vector<int>> levels;
};
std::vector<std::string> verify_map(const TruncSSet& x, const TruncSSet& y, const SimplicialMap& f);

struct BiSimplicialMap {
    std::vector<std::vector<std::vector<int>>> levels;  // [n][m][s]
};
std::vector<std::string> verify_map(const TruncBiSSet& x, const TruncBiSSet& y, const BiSimplicialMap& f);
SimplicialMap diagonal(const BiSimplicialMap& f, int n);

// -- presentations -----------------------------------------------------------------

using Word = std::vector<std::pair<int, int>>;  // (generator, ±1)

struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
};
std::vector<std::string> validate(const GroupPresentation& p);

struct AbelianInvariants {
    std::vector<BigInt> torsion;  // divisibility chain, factors > 1
    int free_rank = 0;
    /// Image of each generator in Z/t_1 ⊕ ... ⊕ Z^free_rank.
    std::vector<std::vector<BigInt>> certificate;

    bool trivial() const { return torsion.empty() && free_rank == 0; }
    std::string describe() const;
    bool same_group(const AbelianInvariants& o) const { return torsion == o.torsion && free_rank == o.free_rank; }
};
AbelianInvariants abelianize(const GroupPresentation& p);

/// π1 of the basepoint component via a BFS spanning tree.
struct EdgePath {
    GroupPresentation presentation;
    int basepoint = 0;
    std::vector<int> component;             // vertices, BFS order
    std::vector<int> generator_edge;        // generator -> 1-simplex
    std::vector<int> edge_generator;        // 1-simplex -> generator or -1
    std::vector<Word> tree_path;            // per vertex (empty outside the component)
    std::vector<bool> in_component;
};
EdgePath edge_path(const TruncSSet& s, int basepoint = 0);

/// The homomorphism induced on abelianizations by a simplicial map,
/// with a verdict decided via the Hopfian property.
struct InducedMap {
    std::vector<std::vector<BigInt>> matrix;  // source generator -> target certificate coordinates
    bool well_defined = false;
    bool surjective = false;
    bool iso = false;
    std::string verdict;  // "iso", "epi" or "other"
};
InducedMap induced_map(const TruncSSet& x, const EdgePath& px, const TruncSSet& y, const EdgePath& py,
                       const SimplicialMap& f);

/// Simplicial homology H_k via normalized chains, k+1 <= N.
AbelianInvariants homology(const TruncSSet& s, int k);

// -- homotopies ----------------------------------------------------------------------

/// components[k][z][s]: value at level k for σ: [k] -> [1] with z zeros.
struct SimplicialHomotopy {
    std::vector<std::vector<std::vector<int>>> components;
};
/// Empty iff H is simplicial, H(σ ≡ 0) = f and H(σ ≡ 1) = g.
std::vector<std::string> check_simplicial_homotopy(const TruncSSet& x, const TruncSSet& y,
                                                   const SimplicialHomotopy& h, const SimplicialMap& f,
                                                   const SimplicialMap& g);

}  // namespace kderiv
