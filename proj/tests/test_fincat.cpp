#include <doctest.h>

#include "kderiv/errors.hpp"
#include "kderiv/fincat.hpp"

using namespace kderiv;

namespace {

// Direct check of the category axioms, independent of validate().
bool axioms_hold(const FinCat& c) {
    const int m = c.num_morphisms();
    for (int o = 0; o < c.num_objects(); ++o) {
        const int i = c.identity(o);
        if (i < 0 || c.src(i) != o || c.tgt(i) != o) return false;
    }
    for (int f = 0; f < m; ++f) {
        if (c.compose(f, c.identity(c.src(f))) != f) return false;
        if (c.compose(c.identity(c.tgt(f)), f) != f) return false;
        for (int g = 0; g < m; ++g) {
            const int gf = c.compose(g, f);
            if ((c.src(g) == c.tgt(f)) != (gf >= 0)) return false;
            if (gf < 0) continue;
            if (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g)) return false;
            for (int h = 0; h < m; ++h)
                if (c.src(h) == c.tgt(g) && c.compose(h, gf) != c.compose(c.compose(h, g), f)) return false;
        }
    }
    return true;
}

bool functor_ok(const FinFunctor& f) {
    const auto& a = *f.src;
    const auto& b = *f.tgt;
    for (int o = 0; o < a.num_objects(); ++o)
        if (f.on_morphism(a.identity(o)) != b.identity(f(o))) return false;
    for (int x = 0; x < a.num_morphisms(); ++x) {
        if (b.src(f.on_morphism(x)) != f(a.src(x)) || b.tgt(f.on_morphism(x)) != f(a.tgt(x))) return false;
        for (int y = 0; y < a.num_morphisms(); ++y)
            if (a.compose(y, x) >= 0 &&
                f.on_morphism(a.compose(y, x)) != b.compose(f.on_morphism(y), f.on_morphism(x)))
                return false;
    }
    return true;
}

// One-object category with an idempotent e: e∘e = e.
FinCat idempotent(bool break_identity) {
    std::vector<int> comp{0, 1, 1, 1};
    return FinCat("idem", {"*"}, {{"id", 0, 0}, {"e", 0, 0}}, {break_identity ? -1 : 0}, comp);
}

}  // namespace

TEST_CASE("validate: square is valid") {
    CHECK(validate(*square()).empty());
    CHECK(axioms_hold(*square()));
}

TEST_CASE("validate: broken associativity names the triple") {
    // Three composable arrows a: 0->1, b: 1->2, c: 2->3 in [3], then
    // redirect c∘(b∘a) away from (c∘b)∘a.
    auto base = ordinal(3);
    std::vector<int> comp = base->composition();
    const int m = base->num_morphisms();
    const int a = base->hom(0, 1)[0], b = base->hom(1, 2)[0], c = base->hom(2, 3)[0];
    const int ba = base->compose(b, a);
    // Replace c∘(b∘a) with a fresh copy of 0->3 so only one triple breaks.
    std::vector<Arrow> ms = base->morphisms();
    ms.push_back({"x03", 0, 3});
    const int x = m;
    std::vector<int> big(static_cast<std::size_t>(m + 1) * (m + 1), -1);
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) big[g * (m + 1) + f] = comp[g * m + f];
    big[c * (m + 1) + ba] = x;
    big[base->identity(3) * (m + 1) + x] = x;
    big[x * (m + 1) + base->identity(0)] = x;
    FinCat broken("broken", base->objects(), ms, base->identities(), big);
    const auto diag = validate(broken);
    REQUIRE(diag.size() == 1);
    CHECK(diag[0].find("associativ") != std::string::npos);
}

TEST_CASE("validate: missing identity") {
    const auto diag = validate(idempotent(true));
    REQUIRE(!diag.empty());
    CHECK(diag[0] == "no identity for object *");
    CHECK(validate(idempotent(false)).empty());
}

TEST_CASE("finite direct") {
    CHECK(is_finite_direct(*square()));
    CHECK_FALSE(is_finite_direct(idempotent(false)));
    CHECK(is_finite_direct(*arrow_cat(2)));
    CHECK(arrow_cat(2)->num_objects() == 6);
}

TEST_CASE("standard shapes") {
    auto a1 = arrow_cat(1);
    CHECK(a1->objects() == std::vector<std::string>{"(0,0)", "(0,1)", "(1,1)"});
    auto i = inclusion_ulcorner();
    CHECK(functor_ok(i));
    std::vector<std::string> hit;
    for (int o = 0; o < i.src->num_objects(); ++o) hit.push_back(i.tgt->objects()[i(o)]);
    CHECK(hit == std::vector<std::string>{"(0,0)", "(1,0)", "(0,1)"});
    auto d = diagonal(1);
    CHECK(d.tgt->objects()[d(0)] == "(0,0)");
    CHECK(d.tgt->objects()[d(1)] == "(1,1)");
    CHECK(functor_ok(d));
}

TEST_CASE("arrow_cat object count") {
    for (int n = 0; n <= 6; ++n) {
        auto a = arrow_cat(n);
        CHECK(a->num_objects() == (n + 1) * (n + 2) / 2);
        // Morphisms: pairs (i,j) <= (k,l) componentwise with k <= l.
        int count = 0;
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j)
                for (int k = i; k <= n; ++k)
                    for (int l = std::max(j, k); l <= n; ++l) ++count;
        CHECK(a->num_morphisms() == count);
        if (n <= 3) CHECK(axioms_hold(*a));
    }
}

TEST_CASE("product, coproduct, opposite") {
    auto p = product(ordinal(1), ordinal(1));
    CHECK(p->num_objects() == 4);
    CHECK(p->num_morphisms() == 9);
    CHECK(*p == *square());
    auto c = coproduct(terminal(), terminal());
    CHECK(c->num_objects() == 2);
    CHECK(c->num_morphisms() == 2);
    auto op = opposite(ulcorner());
    CHECK(validate(*op).empty());
    // cospan: the single object with two incoming non-identity arrows
    int sinks = 0;
    for (int o = 0; o < op->num_objects(); ++o) {
        int in = 0;
        for (int m = 0; m < op->num_morphisms(); ++m)
            if (!op->is_identity(m) && op->tgt(m) == o) ++in;
        sinks += in == 2;
    }
    CHECK(sinks == 1);
    for (auto x : {ordinal(2), arrow_cat(2), ulcorner(), square()}) {
        CHECK(*opposite(opposite(x)) == *x);
        CHECK(validate(*product(x, ordinal(1))).empty());
        CHECK(validate(*coproduct(x, terminal())).empty());
    }
}

TEST_CASE("comma categories") {
    // Oracle: pairs (x, a: f(x) -> y) enumerated directly.
    auto pairs = [](const FinFunctor& f, int y) {
        int n = 0;
        for (int x = 0; x < f.src->num_objects(); ++x) n += static_cast<int>(f.tgt->hom(f(x), y).size());
        return n;
    };
    auto i = inclusion_ulcorner();
    auto c = comma(i, 3);
    CHECK(c.comma->num_objects() == pairs(i, 3));
    CHECK(c.comma->num_objects() == 3);
    CHECK(c.comma->num_morphisms() == ulcorner()->num_morphisms());
    auto idc = comma(identity_functor(ordinal(1)), 1);
    CHECK(idc.comma->num_objects() == 2);
    CHECK(idc.comma->num_morphisms() == 3);
    auto pt = comma(point_functor(ordinal(1), 0), 0);
    CHECK(pt.comma->num_objects() == 1);
    for (const auto& f : {i, identity_functor(arrow_cat(2)), to_terminal(square()), diagonal(2)})
        for (int y = 0; y < f.tgt->num_objects(); ++y) {
            auto cd = comma(f, y);
            CHECK(validate(*cd.comma).empty());
            CHECK(is_finite_direct(*cd.comma));
            CHECK(cd.comma->num_objects() == pairs(f, y));
            for (int o = 0; o < cd.comma->num_objects(); ++o) {
                auto [x, a] = cd.entries[o];
                CHECK(cd.j(o) == x);
                CHECK(cd.alpha.components[o] == a);
            }
        }
}

TEST_CASE("functor constructions are functors") {
    auto a = arrow_cat(2);
    for (const auto& f : {projection1(a, ordinal(1)), projection2(a, ordinal(1)), arrow_target(2),
                          arrow_map(coface(2, 1)), arrow_map(codegeneracy(1, 0)), ar_square(2, 0, 1, 2),
                          associator(ordinal(1), ordinal(1), ordinal(1)), left_times(ordinal(1), inclusion_ulcorner())})
        CHECK(functor_ok(f));
    CHECK(validate(compose(arrow_target(2), arrow_map(coface(2, 0)))).empty());
}

TEST_CASE("unknown ids") {
    CHECK_THROWS_AS(square()->object_index("nope"), InvalidArgument);
}
