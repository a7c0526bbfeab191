// Acceptance battery: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>

#include "kderiv/enrichment.hpp"
#include "kderiv/errors.hpp"
#include "kderiv/ktheory.hpp"
#include "kderiv/parallel.hpp"
#include "kderiv/sconstruction.hpp"
#include "kderiv/simplicial.hpp"

using namespace kderiv;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

Verdict ok(const std::string& d = {}) { return {true, d}; }
Verdict fail(const std::string& d) { return {false, d}; }

#define EXPECT(cond, what) \
    if (!(cond)) return fail(what)

int failures = 0;

void criterion(int n, const std::string& name, double budget_s, const std::function<Verdict()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = fn();
    } catch (const std::exception& e) {
        v = fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (v.pass && budget_s > 0 && s > budget_s) v = fail("over time budget of " + std::to_string((int)budget_s) + " s");
    if (!v.pass) ++failures;
    std::printf("%s %2d %s (%.1f s)%s%s\n", v.pass ? "PASS" : "FAIL", n, name.c_str(), s, v.detail.empty() ? "" : ": ",
                v.detail.c_str());
    std::fflush(stdout);
}

Verdict from(const Verification& v, const std::string& what) {
    return v.pass ? ok() : fail(what + ": " + v.failure);
}

Verdict from(const std::vector<std::string>& violations, const std::string& what) {
    return violations.empty() ? ok() : fail(what + ": " + violations.front());
}

Verdict from(const AxiomReport& a) { return a.pass ? ok() : fail(a.axiom + ": " + a.counterexample); }

long long euler(const BaseObject& o) {
    long long x = 0;
    for (std::size_t i = 0; i < o.dims.size(); ++i) x += (i % 2 ? -1 : 1) * o.dims[i];
    return x;
}

// Certificate equals ±f on every generator, with one sign throughout.
bool certificate_is(const K0Result& r, long long (*f)(const BaseObject&)) {
    int sign = 0;
    for (std::size_t g = 0; g < r.generator_objects.size(); ++g) {
        const auto& img = r.invariants.certificate[g];
        if (img.size() != 1) return false;
        const long long want = f(r.generator_objects[g]);
        if (want == 0) {
            if (img[0] != 0) return false;
            continue;
        }
        const int s = img[0] == BigInt(want) ? 1 : img[0] == BigInt(-want) ? -1 : 0;
        if (s == 0 || (sign != 0 && s != sign)) return false;
        sign = s;
    }
    return sign != 0;
}

long long dim0(const BaseObject& o) { return o.dims[0]; }

}  // namespace

int main() {
    set_worker_count(std::max(1u, std::thread::hardware_concurrency()));
    const HomotopicalBase V = HomotopicalBase::vect(2);
    const auto dv = Prederivator::represent(V);

    criterion(1, "simplicial and bisimplicial identities", 60, [&]() -> Verdict {
        if (auto r = from(verify(nerve(arrow_cat(2), 2)), "nerve(Ar[2])"); !r.pass) return r;
        if (auto r = from(verify(build_s(dv, 2, 2).set), "s"); !r.pass) return r;
        if (auto r = from(verify(build_Sbis(dv, 2, 2, 1).set), "S"); !r.pass) return r;
        return from(verify(build_wald(WaldhausenStructure{V, CofClass::Monos}, 2, 2, 2).set), "w S");
    });

    criterion(2, "derivator axioms for vect-iso and ptset-iso", 60, [&]() -> Verdict {
        for (const auto& b : {V, HomotopicalBase::ptset()}) {
            const auto d = Prederivator::represent(b);
            for (const auto& a : {check_der1(d, terminal(), terminal(), 1), check_der2(d, ordinal(1), 1),
                                  check_der2(d, ulcorner(), 1),
                                  check_der3_der4(d, to_terminal(ordinal(1)), 0, 1),
                                  check_der3_der4(d, inclusion_ulcorner(), 3, 1),
                                  check_der3_der4(d, to_terminal(coproduct(terminal(), terminal())), 0, 1),
                                  check_der5(d, "[1]", {"0", "1"}, {Arrow{"a", 0, 1}}, terminal(), 1)})
                if (auto r = from(a); !r.pass) return fail(b.tag() + " " + r.detail);
        }
        return ok();
    });

    criterion(3, "Kan counit test = pushout test on all squares, dim <= 2", 0, [&]() -> Verdict {
        long long n = 0;
        for (const auto& f : enumerate_diagrams(V, square(), 2)) {
            ++n;
            EXPECT(is_cocartesian_kan(dv, f) == V.ho_cocartesian(square_of(f)), "disagree at " + f.key());
        }
        return ok(std::to_string(n) + " squares");
    });

    criterion(4, "K0 of s(vect-iso), dim <= 2, is trivial", 60, [&]() -> Verdict {
        const auto s = k0(Model::S, V, 2);
        const auto o = k0_oracle(V, 2);
        EXPECT(s.invariants.trivial(), "s gives " + s.invariants.describe());
        EXPECT(o.invariants.trivial(), "oracle gives " + o.invariants.describe());
        std::string why;
        EXPECT(certificates_compatible(s, o, &why), why);
        return ok();
    });

    criterion(5, "K0 of s(chain-qis), degrees 0:1, dim <= 3, is Z via Euler characteristic", 600, [&]() -> Verdict {
        const auto c = HomotopicalBase::chain(2, 0, 1);
        const auto s = k0(Model::S, c, 3);
        EXPECT(s.invariants.describe() == "Z", "s gives " + s.invariants.describe());
        EXPECT(certificate_is(s, euler), "certificate is not the Euler characteristic");
        const auto o = k0_oracle(c, 3);
        EXPECT(o.invariants.describe() == "Z", "oracle gives " + o.invariants.describe());
        std::string why;
        EXPECT(certificates_compatible(s, o, &why), why);
        return ok();
    });

    criterion(6, "Waldhausen K0 of (Vect, monos, isos), dim <= 2, is Z via dimension", 300, [&]() -> Verdict {
        const WaldhausenStructure w{V, CofClass::Monos};
        const auto r = k0(Model::Waldhausen, V, 2, &w);
        EXPECT(r.invariants.describe() == "Z", "got " + r.invariants.describe());
        EXPECT(certificate_is(r, dim0), "certificate is not the dimension");
        const auto o = k0_oracle(V, 2, &w);
        std::string why;
        EXPECT(certificates_compatible(r, o, &why), why);
        return ok();
    });

    criterion(7, "iota: s -> diag S on vect-iso, dim <= 1", 0, [&]() -> Verdict {
        const auto i = iota(V, 1);
        EXPECT(i.violations.empty(), i.violations.front());
        EXPECT(i.induced.well_defined && i.induced.iso, i.induced.verdict);
        EXPECT(i.source.invariants.trivial() && i.target.invariants.trivial(), "groups not trivial");
        return ok();
    });

    criterion(8, "mu_ob and mu on vect-iso, mu_ob = mu iota", 0, [&]() -> Verdict {
        const auto i = iota(V, 1), mo = mu_ob(V, 1), m = mu(V, 1);
        EXPECT(mo.pass(), "mu_ob: " + mo.induced.verdict);
        EXPECT(m.pass(), "mu: " + m.induced.verdict);
        EXPECT(mu_ob_factors(mo, m, i), "mu_ob differs from mu iota");
        return ok();
    });

    criterion(9, "agreement N w S C -> S D(C), all maps, dim <= 2", 0, [&]() -> Verdict {
        const auto r = agreement(WaldhausenStructure{V, CofClass::AllMaps}, 2);
        EXPECT(r.violations.empty(), r.violations.front());
        EXPECT(r.injective && r.bijective, "not a levelwise bijection");
        EXPECT(r.diagonal.pass(), "K0 verdict " + r.diagonal.induced.verdict);
        return ok();
    });

    criterion(10, "enrichment: path object, strong equivalence, associativity, homotopy", 60, [&]() -> Verdict {
        if (auto r = from(check_path_object(path_object(dv), 1), "path object"); !r.pass) return r;
        const auto se = strong_equivalence_from_initial(dv, ordinal(1), 0, 1);
        for (const auto* v : {&se.identity_composite, &se.boundaries, &se.eq})
            if (auto r = from(*v, "strong equivalence"); !r.pass) return r;
        const auto sw = alpha_star(dv, BaseNatTrans::swap());
        const auto id2 = alpha_star(dv, BaseNatTrans::identity(BaseFunctor::doubling()));
        if (auto r = from(check_equal(compose_simplices(id2, compose_simplices(sw, sw)),
                                      compose_simplices(compose_simplices(id2, sw), sw), 1),
                          "associativity");
            !r.pass)
            return r;
        const auto src = build_s(dv, 2, 1), tgt = build_s(dv, 2, 2);
        SimplicialMap f, g;
        const auto h = lemma_homotopy_data(sw, src, tgt, &f, &g);
        const auto v = check_simplicial_homotopy(src.set, tgt.set, h, f, g);
        EXPECT(v.empty(), "homotopy: " + v.front());
        return ok();
    });

    criterion(11, "edge-path fixtures", 0, [&]() -> Verdict {
        const std::vector<std::pair<TruncSSet, std::string>> fx{{nerve(ordinal(1), 2), "0"},
                                                                {circle_model(), "Z"},
                                                                {nerve(cyclic_group_category(2), 2), "Z/2"}};
        for (const auto& [s, want] : fx) {
            const auto pi = abelianize(edge_path(s).presentation);
            EXPECT(pi.describe() == want, "expected " + want + ", got " + pi.describe());
            EXPECT(pi.same_group(homology(s, 1)), "H1 differs for " + want);
        }
        return ok();
    });

    criterion(12, "L-construction on vect-iso, dim <= 1, n_max = 1", 0, [&]() -> Verdict {
        const auto l = L_construction(V, 1, 1);
        for (const auto& o : l.operators) {
            EXPECT(o.violations.empty(), o.name + ": " + o.violations.front());
            EXPECT(o.induced.iso, o.name + ": " + o.induced.verdict);
        }
        EXPECT(l.iota_f.pass(), "iota_F: " + l.iota_f.induced.verdict);
        return ok();
    });

    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
