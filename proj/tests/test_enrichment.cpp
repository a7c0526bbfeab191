#include <doctest.h>

#include "kderiv/enrichment.hpp"
#include "kderiv/errors.hpp"

using namespace kderiv;

namespace {

const HomotopicalBase V = HomotopicalBase::vect(2);

BaseObject vec(int d) { return BaseObject{{d}, {}}; }

}  // namespace

TEST_CASE("eq membership") {
    const auto d = Prederivator::represent(V);
    const auto shape = product(ordinal(1), terminal());
    CHECK(eq_membership(d, ordinal(1), terminal(), constant_diagram(V, shape, vec(2))));
    int zero_line = 0;
    for (const auto& f : enumerate_diagrams(V, shape, 1)) {
        if (f.objects[0].dims[0] != 1 || f.objects[1].dims[0] != 1) continue;
        const bool iso = V.is_iso(f.objects[0], f.objects[1], f.morphisms[shape->hom(0, 1)[0]]);
        CHECK(eq_membership(d, ordinal(1), terminal(), f) == iso);
        zero_line += !iso;
    }
    CHECK(zero_line == 1);
    // acyclic F_2 -id-> F_2 mapping to 0: a quasi-isomorphism, not an isomorphism
    const auto ch = HomotopicalBase::chain(2, 0, 1);
    const auto dc = Prederivator::represent(ch);
    int found = 0;
    for (const auto& f : enumerate_diagrams(ch, shape, 2)) {
        if (f.objects[0].dims != std::vector<int>{1, 1} || f.objects[0].diffs[0].at(0, 0) != 1) continue;
        if (f.objects[1].total_dim() != 0) continue;
        CHECK(eq_membership(dc, ordinal(1), terminal(), f));
        ++found;
    }
    CHECK(found == 1);
}

TEST_CASE("composition of simplices") {
    const auto d = Prederivator::represent(V);
    const auto dbl = postcompose(d, BaseFunctor::doubling());
    const auto id = identity_morphism(d);
    CHECK(check_equal(vertex(compose_simplices(as_simplex(dbl), as_simplex(dbl))), compose(dbl, dbl), 1).pass);
    CHECK(check_equal(vertex(compose_simplices(as_simplex(id), as_simplex(dbl))), dbl, 1).pass);
    const auto s0 = compose_simplices(degeneracy(as_simplex(dbl), 0), degeneracy(as_simplex(dbl), 0));
    CHECK(check_equal(s0, degeneracy(as_simplex(compose(dbl, dbl)), 0), 1).pass);
    const auto sw = alpha_star(d, BaseNatTrans::swap());
    const auto c = compose_simplices(sw, sw);
    CHECK(check_strict(c, 1).pass);
    CHECK(check_eq(c, 1).pass);
}

TEST_CASE("associativity on a concrete triple") {
    const auto d = Prederivator::represent(V);
    const auto sw = alpha_star(d, BaseNatTrans::swap());
    const auto id2 = alpha_star(d, BaseNatTrans::identity(BaseFunctor::doubling()));
    const auto id1 = alpha_star(d, BaseNatTrans::identity(BaseFunctor::identity()));
    for (const auto* x : {&sw, &id2})
        for (const auto* y : {&sw, &id2}) {
            const auto left = compose_simplices(*x, compose_simplices(*y, sw));
            const auto right = compose_simplices(compose_simplices(*x, *y), sw);
            CHECK(check_equal(left, right, 1).pass);
        }
    CHECK(check_equal(compose_simplices(id1, compose_simplices(id1, id1)),
                      compose_simplices(compose_simplices(id1, id1), id1), 1)
              .pass);
}

TEST_CASE("homotopy boundaries") {
    const auto d = Prederivator::represent(V);
    const auto dbl = postcompose(d, BaseFunctor::doubling());
    const auto h0 = homotopy_boundaries(degeneracy(as_simplex(dbl), 0));
    CHECK(check_homotopy(h0, 1).pass);
    CHECK(check_equal(h0.phi0, dbl, 1).pass);
    CHECK(check_equal(h0.phi1, dbl, 1).pass);
    for (const auto& f : d.enumerate(terminal(), 2)) {
        const auto g = apply_functor(V, BaseFunctor::doubling(), f);
        CHECK(h0.transformation(terminal(), f) == identity(V, g));
    }
    const auto h = homotopy_boundaries(alpha_star(d, BaseNatTrans::swap()));
    CHECK(check_homotopy(h, 1).pass);
    for (const auto& f : d.enumerate(terminal(), 2))
        CHECK(h.transformation(terminal(), f).components[0] == BaseNatTrans::swap().component(V, f.objects[0]));
    CHECK_THROWS_AS(homotopy_boundaries(as_simplex(dbl)), InvalidArgument);
}

TEST_CASE("path object") {
    const auto d = Prederivator::represent(V);
    const auto p = path_object(d);
    const auto f = d.enumerate(terminal(), 1)[1];
    const auto s = p.s0.apply(terminal(), f);
    CHECK(s == constant_diagram(V, s.shape, vec(1)));
    CHECK(check_path_object(p, 1).pass);
    CHECK(check_equal(compose(p.d1, p.s0), identity_morphism(d), 1).pass);
    CHECK(check_equal(compose(p.d0, p.s0), identity_morphism(d), 1).pass);
    const auto deq = Prederivator::shift(d, ordinal(1), true);
    for (const auto& x : {terminal(), ordinal(1)})
        for (const auto& g : d.enumerate(x, 1)) CHECK(deq.is_member(x, p.s0.apply(x, g)));
}

TEST_CASE("eq part is closed under inverse images") {
    const auto d = Prederivator::represent(V);
    const auto deq = Prederivator::shift(d, ordinal(1), true);
    for (const auto& u : functor_battery())
        for (const auto& f : deq.enumerate(u.tgt, 1)) CHECK(deq.is_member(u.src, deq.inverse_image(u, f)));
}

TEST_CASE("strong equivalence from an initial object") {
    const auto d = Prederivator::represent(V);
    const auto x = ordinal(1);
    const auto se = strong_equivalence_from_initial(d, x, 0, 1);
    CHECK(se.pass());
    // H(0,-) constant at 0, H(1,-) the identity
    const auto& hx = se.h;
    const int n = x->num_objects();
    for (int a = 0; a < n; ++a) {
        CHECK(hx(0 * n + a) == 0);
        CHECK(hx(1 * n + a) == a);
    }
    CHECK(strong_equivalence_from_initial(d, terminal(), 0, 1).pass());
    CHECK(strong_equivalence_from_initial(d, ulcorner(), 0, 1).pass());
}

TEST_CASE("iso prederivators") {
    const auto d = Prederivator::represent(V);
    CHECK(iso_prederivator(d, 0).enumerate(terminal(), 2).size() == d.enumerate(terminal(), 2).size());
    const auto iso1 = iso_prederivator(d, 1);
    // |GL_0| + |GL_1(F_2)| strings of length one
    CHECK(iso1.enumerate(terminal(), 1).size() == 2);
    // bound 2 adds |GL_2(F_2)| = 6 automorphisms
    CHECK(iso1.enumerate(terminal(), 2).size() == 8);
    const auto deg = iso_degeneracy(d, 1);
    const auto f = d.enumerate(terminal(), 1)[1];
    const auto s = deg.apply(terminal(), f);
    CHECK(s == constant_diagram(V, s.shape, vec(1)));
    CHECK_THROWS_AS(iso_prederivator(Prederivator::represent(HomotopicalBase::chain(2, 0, 1)), 1).enumerate(terminal(), 1),
                    CapabilityError);
}

TEST_CASE("rho") {
    const auto d = Prederivator::represent(V);
    const auto dbl = postcompose(d, BaseFunctor::doubling());
    const auto r0 = rho(as_simplex(dbl));
    REQUIRE(r0.vertices.size() == 1);
    CHECK(check_equal(r0.vertices[0], dbl, 1).pass);
    const auto sw = alpha_star(d, BaseNatTrans::swap());
    const auto r1 = rho(sw);
    CHECK(r1.vertices.size() == 2);
    CHECK(r1.edges.size() == 1);
    const auto c = compose_simplices(sw, sw);
    const auto r2 = rho(degeneracy(c, 0));
    CHECK(r2.vertices.size() == 3);
    CHECK(r2.edges.size() == 2);
    CHECK(check_nerve_chain(r2, 1).pass);
    for (const auto& f : d.enumerate(terminal(), 2)) {
        CHECK(r2.edges[0](terminal(), f) == identity(V, r2.vertices[0].apply(terminal(), f)));
    }
    const auto h = homotopy_boundaries(sw);
    CHECK(check_equal(r1.vertices[0], h.phi0, 1).pass);
    CHECK(check_equal(r1.vertices[1], h.phi1, 1).pass);
    for (const auto& f : d.enumerate(terminal(), 2))
        CHECK(r1.edges[0](terminal(), f) == h.transformation(terminal(), f));
}
