#include "kderiv/ktheory.hpp"

#include <map>
#include <set>

#include "kderiv/errors.hpp"

namespace kderiv {

namespace {

constexpr int kTrunc = 2;

// The (0,1) entry of column 0 of an element on [m]×Ar[1] (m = 0 for s•).
BaseObject edge_object(const DiagramObject& f) { return f.objects.at(1); }

std::vector<BaseObject> edge_objects(const std::vector<DiagramObject>& items) {
    std::vector<BaseObject> out;
    for (const auto& e : items) out.push_back(edge_object(e));
    return out;
}
std::vector<BaseObject> edge_objects(const ColumnSet& cols, const ElementTable<ChainCode>& level) {
    std::vector<BaseObject> out;
    for (const auto& c : level.items) out.push_back(cols.columns.items.at(c.at(0)).objects.at(1));
    return out;
}

ComparisonReport compare(std::string name, const TruncSSet& x, K0Result kx, const TruncSSet& y, K0Result ky,
                         SimplicialMap f) {
    ComparisonReport r;
    r.name = std::move(name);
    r.violations = verify_map(x, y, f);
    if (r.violations.empty()) r.induced = induced_map(x, edge_path(x), y, edge_path(y), f);
    r.source = std::move(kx);
    r.target = std::move(ky);
    r.map = std::move(f);
    return r;
}

// s_k element ↦ S_{k,k} element by k vertical degeneracies.
SimplicialMap vertical_inclusion(const std::vector<ElementTable<DiagramObject>>& s, const SBisBuild& big,
                                 bool already_shifted) {
    SimplicialMap f;
    for (int k = 0; k <= big.set.N; ++k) {
        std::vector<int> level;
        for (const auto& e : s[k].items) {
            const DiagramObject col = already_shifted ? e : pull(e, projection2(ordinal(0), arrow_cat(k)));
            int t = big.find(k, 0, col);
            if (t < 0) throw CheckFailure("ι: an s_" + std::to_string(k) + " element is missing from S_{k,0}");
            for (int m = 0; m < k; ++m) t = big.set.vdeg[k][m][0][t];
            level.push_back(t);
        }
        f.levels.push_back(std::move(level));
    }
    return f;
}

Chain identity_chain(const HomotopicalBase& b, const DiagramObject& f, int k) {
    Chain c;
    for (int j = 0; j <= k; ++j) c.objects.push_back(f);
    for (int j = 0; j < k; ++j) c.maps.push_back(identity(b, f));
    return c;
}

BaseObject zero_diff_object(const HomotopicalBase& b, const std::vector<int>& dims) {
    BaseObject o;
    o.dims = dims;
    for (std::size_t k = 1; k < dims.size(); ++k) o.diffs.emplace_back(b.q(), dims[k - 1], dims[k]);
    return o;
}

}  // namespace

std::string model_tag(Model m) {
    switch (m) {
        case Model::S: return "s";
        case Model::Bisimplicial: return "bisimplicial";
        case Model::Derivator: return "derivator";
        case Model::Waldhausen: return "waldhausen";
        case Model::Oracle: return "oracle";
    }
    return "?";
}

Model model_from_tag(const std::string& tag) {
    for (Model m : {Model::S, Model::Bisimplicial, Model::Derivator, Model::Waldhausen, Model::Oracle})
        if (model_tag(m) == tag) return m;
    throw InvalidArgument("unknown model '" + tag + "'");
}

K0Result k0_of(const TruncSSet& s, std::string model, const HomotopicalBase& b, int bound,
               const std::vector<BaseObject>& edge_objects) {
    K0Result r;
    r.model = std::move(model);
    r.base = b.tag();
    r.bound = bound;
    r.truncation = s.N;
    for (int k = 0; k <= s.N; ++k) r.level_sizes.push_back(s.size(k));
    const EdgePath p = edge_path(s, 0);
    r.presentation = p.presentation;
    r.invariants = abelianize(p.presentation);
    for (int e : p.generator_edge) r.generator_objects.push_back(edge_objects.at(e));
    r.note = "canonical zero padding on the diagonal";
    return r;
}

K0Result k0(Model model, const HomotopicalBase& b, int bound, const WaldhausenStructure* w) {
    const Prederivator d = Prederivator::represent(b);
    switch (model) {
        case Model::S: {
            const SBuild s = build_s(d, kTrunc, bound);
            return k0_of(s.set, "s", b, bound, edge_objects(s.levels[1].items));
        }
        case Model::Bisimplicial: {
            const SBisBuild s = build_Sbis(d, kTrunc, kTrunc, bound);
            return k0_of(diagonal(s.set), "bisimplicial", b, bound, edge_objects(s.columns[1], s.levels[1][1]));
        }
        case Model::Derivator: {
            const NisoSBuild s = build_NisoS(d, kTrunc, bound);
            return k0_of(s.set, "derivator", b, bound, edge_objects(s.columns[1], s.levels[1]));
        }
        case Model::Waldhausen: {
            if (!w) throw InvalidArgument("the waldhausen model needs a cofibration class");
            const WaldBuild s = build_wald(*w, kTrunc, kTrunc, bound);
            K0Result r = k0_of(diagonal(s.set), "waldhausen", b, bound, edge_objects(s.columns[1], s.levels[1][1]));
            r.cof = cof_tag(w->cof);
            return r;
        }
        case Model::Oracle: return k0_oracle(b, bound, w);
    }
    throw InvalidArgument("unknown model");
}

K0Result k0_oracle(const HomotopicalBase& b, int bound, const WaldhausenStructure* w) {
    K0Result r;
    r.model = "oracle";
    r.base = b.tag();
    r.bound = bound;
    r.truncation = 0;
    if (w) r.cof = cof_tag(w->cof);
    const auto objects = b.enumerate_objects(bound);
    std::map<std::string, int> gen;
    for (const auto& o : objects) {
        if (b.is_zero_object(o)) continue;
        gen[o.key()] = static_cast<int>(r.generator_objects.size());
        r.presentation.generators.push_back(o.key());
        r.generator_objects.push_back(o);
    }
    // generator of an object, -1 for zero, -2 when outside the bound
    auto lookup = [&](const BaseObject& o) {
        if (b.is_zero_object(o)) return -1;
        auto it = gen.find(o.key());
        return it == gen.end() ? -2 : it->second;
    };
    auto cofiber = [&](const BaseObject& a, const BaseObject& c, const BaseMorphism& f) -> int {
        switch (b.kind()) {
            case BaseKind::Trivial: return -1;
            case BaseKind::VectIso: return lookup(BaseObject{{c.dims[0] - rank(f.mats[0])}, {}});
            case BaseKind::PtSetIso: {
                std::set<int> image;
                for (std::size_t x = 1; x < f.table.size(); ++x)
                    if (f.table[x] != 0) image.insert(f.table[x]);
                return lookup(BaseObject{{c.dims[0] - static_cast<int>(image.size())}, {}});
            }
            case BaseKind::ChainQis: {
                if (w) {
                    // the strict cokernel, up to isomorphism of complexes
                    const BaseObject q = b.pushout(a, c, b.zero(), f, b.zero_map(a, b.zero())).x11;
                    if (b.is_zero_object(q)) return -1;
                    for (const auto& o : objects)
                        if (o.dims == q.dims && !b.enumerate_isos(q, o).empty()) return lookup(o);
                    return -2;
                }
                auto h = b.homology(b.cone(a, c, f));
                if (h.back() != 0) return -2;
                h.pop_back();
                return lookup(zero_diff_object(b, h));
            }
        }
        return -2;
    };
    for (const auto& a : objects)
        for (const auto& c : objects)
            for (const auto& f : b.enumerate_morphisms(a, c)) {
                if (w && !w->is_cofibration(a, c, f)) continue;
                const int q = cofiber(a, c, f);
                if (q == -2) continue;
                Word rel;
                if (int g = lookup(c); g >= 0) rel.push_back({g, 1});
                if (int g = lookup(a); g >= 0) rel.push_back({g, -1});
                if (q >= 0) rel.push_back({q, -1});
                r.presentation.relators.push_back(std::move(rel));
                if (static_cast<long long>(r.presentation.relators.size()) > enumeration_cap())
                    throw CapExceeded("oracle relators exceed the enumeration cap", 1);
            }
    r.invariants = abelianize(r.presentation);
    r.note = w ? "relations over cofibrations" : "relations over all maps";
    return r;
}

bool certificates_compatible(const K0Result& a, const K0Result& b, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (!a.invariants.same_group(b.invariants))
        return fail(a.invariants.describe() + " vs " + b.invariants.describe());
    if (a.invariants.trivial()) return true;
    if (!a.invariants.torsion.empty() || a.invariants.free_rank != 1)
        return fail("certificates are only compared for Z");
    std::map<std::string, BigInt> ref;
    for (std::size_t g = 0; g < b.generator_objects.size(); ++g)
        ref[b.generator_objects[g].key()] = b.invariants.certificate[g][0];
    int sign = 0;
    for (std::size_t g = 0; g < a.generator_objects.size(); ++g) {
        auto it = ref.find(a.generator_objects[g].key());
        if (it == ref.end()) continue;
        const BigInt& x = a.invariants.certificate[g][0];
        int s = 0;
        if (x == it->second && x != 0) s = 1;
        else if (x == -it->second && x != 0) s = -1;
        else if (x == 0 && it->second == 0) continue;
        else return fail("certificate of " + a.generator_objects[g].key() + " differs");
        if (sign != 0 && s != sign) return fail("no common sign for the certificates");
        sign = s;
    }
    return true;
}

ComparisonReport iota(const HomotopicalBase& b, int bound) {
    const Prederivator d = Prederivator::represent(b);
    const SBuild s = build_s(d, kTrunc, bound);
    const SBisBuild big = build_Sbis(d, kTrunc, kTrunc, bound);
    const TruncSSet diag = diagonal(big.set);
    return compare("iota", s.set, k0_of(s.set, "s", b, bound, edge_objects(s.levels[1].items)), diag,
                   k0_of(diag, "bisimplicial", b, bound, edge_objects(big.columns[1], big.levels[1][1])),
                   vertical_inclusion(s.levels, big, false));
}

ComparisonReport mu_ob(const HomotopicalBase& b, int bound) {
    const Prederivator d = Prederivator::represent(b);
    const SBuild s = build_s(d, kTrunc, bound);
    const NisoSBuild n = build_NisoS(d, kTrunc, bound);
    SimplicialMap f;
    for (int k = 0; k <= kTrunc; ++k) {
        std::vector<int> level;
        for (const auto& e : s.levels[k].items) {
            const int t = n.find(k, identity_chain(b, e, k));
            if (t < 0) throw CheckFailure("μ^ob: identity chain missing at level " + std::to_string(k));
            level.push_back(t);
        }
        f.levels.push_back(std::move(level));
    }
    return compare("mu_ob", s.set, k0_of(s.set, "s", b, bound, edge_objects(s.levels[1].items)), n.set,
                   k0_of(n.set, "derivator", b, bound, edge_objects(n.columns[1], n.levels[1])), std::move(f));
}

ComparisonReport mu(const HomotopicalBase& b, int bound) {
    const Prederivator d = Prederivator::represent(b);
    const SBisBuild big = build_Sbis(d, kTrunc, kTrunc, bound);
    const NisoSBuild n = build_NisoS(d, kTrunc, bound);
    const TruncSSet diag = diagonal(big.set);
    SimplicialMap f;
    for (int k = 0; k <= kTrunc; ++k) {
        const CatPtr ok = ordinal(k);
        const CatPtr ark = arrow_cat(k);
        std::vector<int> level;
        for (int x = 0; x < big.levels[k][k].size(); ++x) {
            const DiaFunctor u = dia(d, ok, ark, big.element(k, k, x));
            Chain c;
            c.objects = u.objects;
            for (int j = 0; j < k; ++j) c.maps.push_back(u.morphisms[ok->hom(j, j + 1).at(0)]);
            const int t = n.find(k, c);
            if (t < 0) throw CheckFailure("μ: dia of an S_{k,k} element is missing at level " + std::to_string(k));
            level.push_back(t);
        }
        f.levels.push_back(std::move(level));
    }
    return compare("mu", diag, k0_of(diag, "bisimplicial", b, bound, edge_objects(big.columns[1], big.levels[1][1])), n.set,
                   k0_of(n.set, "derivator", b, bound, edge_objects(n.columns[1], n.levels[1])), std::move(f));
}

bool mu_ob_factors(const ComparisonReport& mo, const ComparisonReport& m, const ComparisonReport& i) {
    if (mo.map.levels.size() != i.map.levels.size()) return false;
    for (std::size_t k = 0; k < mo.map.levels.size(); ++k) {
        if (mo.map.levels[k].size() != i.map.levels[k].size()) return false;
        for (std::size_t e = 0; e < mo.map.levels[k].size(); ++e)
            if (mo.map.levels[k][e] != m.map.levels[k].at(i.map.levels[k][e])) return false;
    }
    return true;
}

AgreementReport agreement(const WaldhausenStructure& w, int bound) {
    if (auto err = w.check_derivable(bound); !err.empty()) throw InvalidArgument("not derivable: " + err);
    const auto& b = w.base;
    const WaldBuild wb = build_wald(w, kTrunc, kTrunc, bound);
    const SBisBuild sb = build_Sbis(Prederivator::represent(b), kTrunc, kTrunc, bound);
    AgreementReport r;
    r.map.levels.assign(kTrunc + 1, std::vector<std::vector<int>>(kTrunc + 1));
    for (int n = 0; n <= kTrunc; ++n)
        for (int m = 0; m <= kTrunc; ++m) {
            std::vector<bool> hit(sb.set.size(n, m), false);
            for (int x = 0; x < wb.levels[n][m].size(); ++x) {
                const int t = sb.find(n, m, assemble(b, wb.element(n, m, x)));
                if (t < 0) {
                    r.violations.push_back("element of N_" + std::to_string(m) + " w S_" + std::to_string(n) +
                                           " has no image");
                    r.map.levels[n][m].push_back(0);
                    continue;
                }
                if (hit[t]) r.injective = false;
                hit[t] = true;
                r.map.levels[n][m].push_back(t);
            }
            for (bool h : hit) r.bijective = r.bijective && h;
        }
    if (r.violations.empty())
        for (auto& v : verify_map(wb.set, sb.set, r.map)) r.violations.push_back(std::move(v));
    const TruncSSet dw = diagonal(wb.set), ds = diagonal(sb.set);
    K0Result kw = k0_of(dw, "waldhausen", b, bound, edge_objects(wb.columns[1], wb.levels[1][1]));
    kw.cof = cof_tag(w.cof);
    r.diagonal = compare("agreement", dw, std::move(kw), ds,
                         k0_of(ds, "bisimplicial", b, bound, edge_objects(sb.columns[1], sb.levels[1][1])),
                         diagonal(r.map, kTrunc));
    return r;
}

bool LConstructionReport::pass() const {
    for (const auto& o : operators)
        if (!o.violations.empty() || !o.induced.iso) return false;
    return iota_f.pass();
}

LConstructionReport L_construction(const HomotopicalBase& b, int n_max, int bound) {
    if (n_max < 0) throw InvalidArgument("L_construction: n_max must be >= 0");
    const Prederivator d = Prederivator::represent(b);
    std::vector<SBuild> builds;
    LConstructionReport r;
    for (int k = 0; k <= n_max; ++k) {
        builds.push_back(build_s(iso_prederivator(d, k), kTrunc, bound));
        r.levels.push_back(k0_of(builds.back().set, "s(iso_" + std::to_string(k) + ")", b, bound,
                                 edge_objects(builds.back().levels[1].items)));
    }
    auto apply = [&](const FinFunctor& theta, int from, int to, std::string name) {
        const StrictMorphism op = iso_operator(d, theta);
        SimplicialMap f;
        for (int j = 0; j <= kTrunc; ++j) {
            std::vector<int> level;
            for (const auto& e : builds[from].levels[j].items) {
                const int t = builds[to].levels[j].find(op.apply(arrow_cat(j), e).key());
                if (t < 0) throw CheckFailure(name + " leaves s•(iso_" + std::to_string(to) + ")");
                level.push_back(t);
            }
            f.levels.push_back(std::move(level));
        }
        OperatorVerdict v;
        v.name = std::move(name);
        v.violations = verify_map(builds[from].set, builds[to].set, f);
        if (v.violations.empty())
            v.induced = induced_map(builds[from].set, edge_path(builds[from].set), builds[to].set,
                                    edge_path(builds[to].set), f);
        r.operators.push_back(std::move(v));
    };
    for (int k = 1; k <= n_max; ++k) {
        const std::string ks = std::to_string(k), km = std::to_string(k - 1);
        for (int i = 0; i <= k; ++i) apply(coface(k, i), k, k - 1, "d" + std::to_string(i) + ": iso_" + ks + " -> iso_" + km);
        for (int i = 0; i < k; ++i)
            apply(codegeneracy(k - 1, i), k - 1, k, "s" + std::to_string(i) + ": iso_" + km + " -> iso_" + ks);
    }
    const SBisBuild big = build_Sbis(d, kTrunc, kTrunc, bound);
    const TruncSSet diag = diagonal(big.set);
    r.iota_f = compare("iota_F", builds[0].set, r.levels[0], diag,
                       k0_of(diag, "bisimplicial", b, bound, edge_objects(big.columns[1], big.levels[1][1])),
                       vertical_inclusion(builds[0].levels, big, true));
    return r;
}

}  // namespace kderiv
