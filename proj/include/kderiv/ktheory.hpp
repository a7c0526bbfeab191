#pragma once

// K0 as π1 of the delooped truncated models, brute-force oracles, and the
// comparison maps between the models.

#include <string>
#include <vector>

#include "kderiv/sconstruction.hpp"

namespace kderiv {

enum class Model { S, Bisimplicial, Derivator, Waldhausen, Oracle };
std::string model_tag(Model m);
/// Parses "s", "bisimplicial", "derivator", "waldhausen", "oracle".
Model model_from_tag(const std::string& tag);

struct K0Result {
    std::string model;
    std::string base;
    std::string cof;  // Waldhausen and oracle runs over a Waldhausen structure
    int bound = 0;
    int truncation = 2;
    std::vector<int> level_sizes;
    GroupPresentation presentation;
    AbelianInvariants invariants;
    /// Per generator: the object of C it stands for (the (0,1) entry of
    /// the first column).
    std::vector<BaseObject> generator_objects;
    std::string note;
};

/// `w` selects the Waldhausen model and the cofibration-only oracle.
K0Result k0(Model model, const HomotopicalBase& b, int bound, const WaldhausenStructure* w = nullptr);
/// Generators: the nonzero enumerated objects. Relators [B] - [A] - [cofiber]
/// over every map A -> B (every cofibration when `w` is given).
K0Result k0_oracle(const HomotopicalBase& b, int bound, const WaldhausenStructure* w = nullptr);
/// K0 of a truncated simplicial set at vertex 0; `edge_objects` holds the
/// object each 1-simplex stands for.
K0Result k0_of(const TruncSSet& s, std::string model, const HomotopicalBase& b, int bound,
               const std::vector<BaseObject>& edge_objects);

/// Same invariants, and for Z or 0 a common sign relating the certificates
/// of generators standing for the same object.
bool certificates_compatible(const K0Result& a, const K0Result& b, std::string* why = nullptr);

struct ComparisonReport {
    std::string name;
    K0Result source;
    K0Result target;
    SimplicialMap map;
    std::vector<std::string> violations;  // operator commutation failures
    InducedMap induced;
    std::string note;

    bool pass() const { return violations.empty() && induced.well_defined && induced.iso; }
};

/// s• -> diag S•• by vertical degeneracies.
ComparisonReport iota(const HomotopicalBase& b, int bound);
/// s• -> N iso S: identity chains.
ComparisonReport mu_ob(const HomotopicalBase& b, int bound);
/// diag S•• -> N iso S: dia_{[k], Ar[k]}.
ComparisonReport mu(const HomotopicalBase& b, int bound);
/// μ^ob = μ∘ι levelwise, literally.
bool mu_ob_factors(const ComparisonReport& mu_ob, const ComparisonReport& mu, const ComparisonReport& iota);

struct AgreementReport {
    ComparisonReport diagonal;       // on the diagonals
    BiSimplicialMap map;             // N w S C -> S D(C)
    std::vector<std::string> violations;
    bool injective = true;
    bool bijective = true;

    bool pass() const { return violations.empty() && injective && diagonal.pass(); }
};
/// Throws InvalidArgument when w fails the derivability check at the bound.
AgreementReport agreement(const WaldhausenStructure& w, int bound);

struct OperatorVerdict {
    std::string name;  // e.g. "d0: iso_1 -> iso_0"
    std::vector<std::string> violations;
    InducedMap induced;
};

struct LConstructionReport {
    std::vector<K0Result> levels;  // K0 of s•(iso_k D)
    std::vector<OperatorVerdict> operators;
    ComparisonReport iota_f;

    bool pass() const;
};
LConstructionReport L_construction(const HomotopicalBase& b, int n_max, int bound);

}  // namespace kderiv
