#include <doctest.h>

#include <set>

#include "kderiv/errors.hpp"
#include "kderiv/ktheory.hpp"

using namespace kderiv;

namespace {

const HomotopicalBase V = HomotopicalBase::vect(2);

// Sign s with image(g) = s * f(object(g)) for every generator, if any.
int common_sign(const K0Result& r, const std::function<long long(const BaseObject&)>& f) {
    int sign = 0;
    for (std::size_t g = 0; g < r.generator_objects.size(); ++g) {
        const auto& img = r.invariants.certificate[g];
        if (img.size() != 1) return 0;
        const long long want = f(r.generator_objects[g]);
        const BigInt& got = img[0];
        int s = 0;
        if (want == 0 && got == 0) continue;
        if (got == BigInt(want)) s = 1;
        else if (got == BigInt(-want)) s = -1;
        else return 0;
        if (sign != 0 && s != sign) return 0;
        sign = s;
    }
    return sign;
}

long long euler(const BaseObject& o) {
    long long x = 0;
    for (std::size_t i = 0; i < o.dims.size(); ++i) x += (i % 2 ? -1 : 1) * o.dims[i];
    return x;
}

}  // namespace

TEST_CASE("tags") {
    for (auto m : {Model::S, Model::Bisimplicial, Model::Derivator, Model::Waldhausen, Model::Oracle})
        CHECK(model_from_tag(model_tag(m)) == m);
    CHECK_THROWS_AS(model_from_tag("q"), InvalidArgument);
}

TEST_CASE("representable collapse") {
    for (int bound : {1, 2}) {
        const auto s = k0(Model::S, V, bound);
        CHECK(s.invariants.trivial());
        CHECK(s.level_sizes.at(1) == bound + 1);
        const auto o = k0_oracle(V, bound);
        CHECK(o.invariants.trivial());
        CHECK(certificates_compatible(s, o));
    }
    CHECK(k0(Model::Bisimplicial, V, 1).invariants.trivial());
    CHECK(k0(Model::Derivator, V, 1).invariants.trivial());
    CHECK(k0(Model::S, HomotopicalBase::ptset(), 1).invariants.trivial());
    CHECK(k0(Model::S, HomotopicalBase::trivial(), 2).invariants.trivial());
}

TEST_CASE("Waldhausen rank") {
    const WaldhausenStructure w{V, CofClass::Monos};
    const auto r = k0(Model::Waldhausen, V, 2, &w);
    CHECK(r.invariants.describe() == "Z");
    CHECK(r.cof == "monos");
    CHECK(common_sign(r, [](const BaseObject& o) { return (long long)o.dims[0]; }) != 0);
    const auto o = k0_oracle(V, 2, &w);
    CHECK(o.invariants.describe() == "Z");
    CHECK(certificates_compatible(r, o));
    // every map a cofibration: zero maps kill everything again
    const WaldhausenStructure all{V, CofClass::AllMaps};
    CHECK(k0(Model::Waldhausen, V, 1, &all).invariants.trivial());
}

TEST_CASE("chain complexes: Euler characteristic") {
    const auto c = HomotopicalBase::chain(2, 0, 1);
    const auto s = k0(Model::S, c, 2);
    REQUIRE(s.invariants.describe() == "Z");
    CHECK(common_sign(s, euler) != 0);
    const auto o = k0_oracle(c, 2);
    CHECK(o.invariants.describe() == "Z");
    CHECK(common_sign(o, euler) != 0);
    CHECK(certificates_compatible(s, o));
    // the cone X -> CX -> ΣX needs dimension 2
    const auto s1 = k0(Model::S, c, 1);
    CHECK(s1.invariants.free_rank == 2);
    CHECK_FALSE(certificates_compatible(s1, k0_oracle(c, 1)));
}

TEST_CASE("certificate comparison") {
    const WaldhausenStructure w{V, CofClass::Monos};
    auto r = k0(Model::Waldhausen, V, 1, &w);
    auto flipped = r;
    for (auto& img : flipped.invariants.certificate)
        for (auto& x : img) x = -x;
    CHECK(certificates_compatible(r, flipped));
    auto broken = r;
    broken.invariants.certificate.back()[0] *= 3;
    std::string why;
    CHECK_FALSE(certificates_compatible(r, broken, &why));
    CHECK_FALSE(why.empty());
    CHECK_FALSE(certificates_compatible(r, k0(Model::S, V, 1)));
}

TEST_CASE("comparison maps") {
    const auto i = iota(V, 1);
    CHECK(i.pass());
    CHECK(i.induced.iso);
    const auto mo = mu_ob(V, 1);
    const auto m = mu(V, 1);
    CHECK(mo.pass());
    CHECK(m.pass());
    CHECK(mu_ob_factors(mo, m, i));
    auto bad = i;
    auto& lv = bad.map.levels.at(1);
    REQUIRE(lv.size() == 2);
    std::swap(lv[0], lv[1]);
    CHECK_FALSE(mu_ob_factors(mo, m, bad));
    CHECK_THROWS_AS(mu(HomotopicalBase::chain(2, 0, 1), 1), CapabilityError);
}

TEST_CASE("agreement at dimension 1") {
    const WaldhausenStructure w{V, CofClass::AllMaps};
    const auto r = agreement(w, 1);
    CHECK(r.violations.empty());
    CHECK(r.injective);
    CHECK(r.bijective);
    CHECK(r.pass());
    CHECK(r.diagonal.induced.iso);
    const WaldhausenStructure monos{V, CofClass::Monos};
    CHECK_THROWS_AS(agreement(monos, 1), InvalidArgument);
}

TEST_CASE("L-construction") {
    const auto l = L_construction(V, 1, 1);
    CHECK(l.pass());
    REQUIRE(l.levels.size() == 2);
    for (const auto& lv : l.levels) CHECK(lv.invariants.trivial());
    CHECK_FALSE(l.operators.empty());
    for (const auto& o : l.operators) {
        CHECK(o.violations.empty());
        CHECK(o.induced.iso);
    }
    CHECK(l.iota_f.pass());
}

TEST_CASE("k0_of on a circle") {
    const auto c = circle_model();
    const auto r = k0_of(c, "circle", V, 0, std::vector<BaseObject>(c.size(1), BaseObject{{1}, {}}));
    CHECK(r.invariants.describe() == "Z");
}
