#include <doctest.h>

#include "kderiv/fincat.hpp"
#include "kderiv/simplicial.hpp"

using namespace kderiv;

namespace {

SimplicialMap identity_map(const TruncSSet& s) {
    SimplicialMap f;
    for (int k = 0; k <= s.N; ++k) {
        std::vector<int> v(s.size(k));
        for (int i = 0; i < s.size(k); ++i) v[i] = i;
        f.levels.push_back(v);
    }
    return f;
}

// H(σ) = f for every σ.
SimplicialHomotopy constant_homotopy(const SimplicialMap& f, int n) {
    SimplicialHomotopy h;
    for (int k = 0; k <= n; ++k) h.components.push_back(std::vector<std::vector<int>>(k + 2, f.levels[k]));
    return h;
}

TruncBiSSet constant_in_m(const TruncSSet& s, int m_max) {
    TruncBiSSet b(s.N, m_max);
    for (int n = 0; n <= s.N; ++n)
        for (int m = 0; m <= m_max; ++m) b.ids[n][m] = s.ids[n];
    b.allocate();
    for (int n = 0; n <= s.N; ++n)
        for (int m = 0; m <= m_max; ++m) {
            if (n >= 1) b.hface[n][m] = s.faces[n];
            if (n + 1 <= s.N) b.hdeg[n][m] = s.degens[n];
            std::vector<int> id(s.size(n));
            for (int i = 0; i < s.size(n); ++i) id[i] = i;
            if (m >= 1) b.vface[n][m].assign(m + 1, id);
            if (m + 1 <= m_max) b.vdeg[n][m].assign(m + 1, id);
        }
    return b;
}

std::string pi1(const TruncSSet& s, int base = 0) { return abelianize(edge_path(s, base).presentation).describe(); }

}  // namespace

TEST_CASE("nerves") {
    const auto n1 = nerve(ordinal(1), 2);
    CHECK(verify(n1).empty());
    CHECK(n1.size(0) == 2);
    CHECK(n1.size(1) == 3);
    int deg = 0;
    for (bool b : n1.degenerate[1]) deg += b;
    CHECK(deg == 2);
    const auto z2 = nerve(cyclic_group_category(2), 2);
    CHECK(z2.size(0) == 1);
    CHECK(z2.size(1) == 2);
    CHECK(z2.size(2) == 4);
    CHECK(nerve(arrow_cat(2), 1).size(0) == 6);
    // k-simplices of the nerve of a poset: weakly increasing chains
    for (int n = 1; n <= 3; ++n) {
        const auto s = nerve(ordinal(n), 3);
        CHECK(verify(s).empty());
        for (int k = 0; k <= 3; ++k) {
            long long chains = 1;  // C(n+1+k, k+1)
            for (int i = 1; i <= k + 1; ++i) chains = chains * (n + k + 1 - (k + 1) + i) / i;
            CHECK(s.size(k) == chains);
        }
    }
}

TEST_CASE("verify names violations") {
    auto s = nerve(ordinal(2), 2);
    // corrupt d0 of some non-degenerate 2-simplex
    for (int t = 0; t < s.size(2); ++t)
        if (!s.degenerate[2][t]) {
            s.faces[2][0][t] = (s.faces[2][0][t] + 1) % s.size(1);
            break;
        }
    const auto v = verify(s);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].find("d") != std::string::npos);
}

TEST_CASE("diagonal") {
    const auto s = nerve(ordinal(1), 2);
    const auto b = constant_in_m(s, 2);
    CHECK(verify(b).empty());
    const auto d = diagonal(b);
    CHECK(verify(d).empty());
    for (int k = 0; k <= 2; ++k) {
        CHECK(d.size(k) == b.size(k, k));
        CHECK(d.ids[k] == s.ids[k]);
        if (k >= 1) CHECK(d.faces[k] == s.faces[k]);
    }
}

TEST_CASE("edge path fixtures") {
    CHECK(pi1(nerve(ordinal(1), 2)) == "0");
    CHECK(pi1(nerve(cyclic_group_category(2), 2)) == "Z/2");
    CHECK(pi1(nerve(cyclic_group_category(3), 2)) == "Z/3");
    CHECK(pi1(circle_model()) == "Z");
    const auto c = edge_path(circle_model()).presentation;
    CHECK(c.generators.size() == 1);
    CHECK(validate(c).empty());
}

TEST_CASE("abelianize") {
    CHECK(abelianize(GroupPresentation{{"g"}, {}}).free_rank == 1);
    const auto t = abelianize(GroupPresentation{{"g"}, {{{0, 1}, {0, 1}}}});
    CHECK(t.torsion.size() == 1);
    CHECK(t.torsion[0] == 2);
    const auto c = abelianize(GroupPresentation{{"a", "b"}, {{{0, 1}, {1, 1}, {0, -1}, {1, -1}}}});
    CHECK(c.free_rank == 2);
    CHECK(c.torsion.empty());
}

TEST_CASE("homology") {
    const auto n1 = nerve(ordinal(1), 2);
    CHECK(homology(n1, 0).free_rank == 1);
    CHECK(homology(n1, 1).trivial());
    CHECK(homology(circle_model(), 1).free_rank == 1);
}

TEST_CASE("Hurewicz on fixtures") {
    for (const auto& s : {nerve(ordinal(1), 2), nerve(ordinal(2), 2), circle_model(), nerve(cyclic_group_category(2), 2),
                          nerve(cyclic_group_category(3), 2), nerve(square(), 2), nerve(arrow_cat(2), 2),
                          nerve(product(cyclic_group_category(2), cyclic_group_category(2)), 2)})
        CHECK(abelianize(edge_path(s).presentation).same_group(homology(s, 1)));
}

TEST_CASE("basepoint independence") {
    const auto s = nerve(product(cyclic_group_category(3), ordinal(1)), 2);
    REQUIRE(s.size(0) == 2);
    CHECK(pi1(s, 0) == "Z/3");
    CHECK(pi1(s, 1) == "Z/3");
}

TEST_CASE("induced maps") {
    const auto z2 = nerve(cyclic_group_category(2), 2);
    const auto e = edge_path(z2);
    const auto im = induced_map(z2, e, z2, e, identity_map(z2));
    CHECK(im.well_defined);
    CHECK(im.iso);
    CHECK(im.verdict == "iso");
    // Z/2 -> point collapses
    const auto pt = nerve(terminal(), 2);
    SimplicialMap c;
    for (int k = 0; k <= 2; ++k) c.levels.push_back(std::vector<int>(z2.size(k), 0));
    CHECK(verify_map(z2, pt, c).empty());
    const auto m = induced_map(z2, e, pt, edge_path(pt), c);
    CHECK(m.well_defined);
    CHECK(m.surjective);
    CHECK_FALSE(m.iso);
}

TEST_CASE("simplicial homotopies") {
    const auto s = nerve(ordinal(2), 2);
    const auto f = identity_map(s);
    auto h = constant_homotopy(f, 2);
    CHECK(check_simplicial_homotopy(s, s, h, f, f).empty());
    h.components[1][1][0] = (h.components[1][1][0] + 1) % s.size(1);
    CHECK_FALSE(check_simplicial_homotopy(s, s, h, f, f).empty());
}
