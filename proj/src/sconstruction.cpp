#include "kderiv/sconstruction.hpp"

#include <functional>
#include <map>
#include <optional>

#include "kderiv/errors.hpp"
#include "kderiv/parallel.hpp"

namespace kderiv {

namespace {

int ar(int n, int i, int j) { return i * (n + 1) - i * (i - 1) / 2 + (j - i); }

int hom1(const CatPtr& c, int a, int b) { return c->hom(a, b).at(0); }

void check_cap(std::size_t size, const std::string& what, int level) {
    if (static_cast<long long>(size) > enumeration_cap()) throw CapExceeded(what + " exceeds the enumeration cap", level);
}

// j×X: X -> [m]×X
FinFunctor column_functor(int m, int j, const CatPtr& x) {
    return pairing(compose(point_functor(ordinal(m), j), to_terminal(x)), identity_functor(x));
}

DiagramObject zero_diagram(const HomotopicalBase& b, const CatPtr& shape) {
    return constant_diagram(b, shape, b.zero());
}

// Objects grouped by weak-equivalence type: dims for the exact kinds,
// homology for chain complexes.
std::vector<int> weq_type(const HomotopicalBase& b, const BaseObject& a) { return b.homology(a); }

// The weak-equivalence type of the cofiber of c: x -> y, or nullopt when it
// falls outside the configured window.
std::optional<std::vector<int>> cofiber_type(const HomotopicalBase& b, const BaseObject& x, const BaseObject& y,
                                            const BaseMorphism& c) {
    if (b.kind() == BaseKind::ChainQis) {
        auto h = b.homology(b.cone(x, y, c));
        if (h.back() != 0) return std::nullopt;
        h.pop_back();
        return h;
    }
    return b.pushout(x, y, b.zero(), c, b.zero_map(x, b.zero())).x11.dims;
}

// Extends an element of s_{n-1} by a last column (i, n), i = 0..n.
void extend(const HomotopicalBase& b, int n, const DiagramObject& g,
            const std::vector<BaseObject>& objects,
            const std::map<std::vector<int>, std::vector<BaseObject>>& by_type, std::vector<DiagramObject>& out) {
    const int np = n - 1;
    const CatPtr shape = arrow_cat(n);
    std::vector<BaseObject> x(n + 1);
    std::vector<BaseMorphism> a(n), bm(n + 1);  // a_i: G(i, n-1) -> X_i, b_i: X_{i-1} -> X_i
    x[n] = b.zero();
    auto gobj = [&](int i, int j) -> const BaseObject& { return g.objects[ar(np, i, j)]; };
    auto gmap = [&](int i, int j, int k, int l) -> const BaseMorphism& {
        return g.morphisms[hom1(g.shape, ar(np, i, j), ar(np, k, l))];
    };
    auto finish = [&] {
        std::vector<BaseObject> objs(shape->num_objects());
        std::map<int, BaseMorphism> gens;
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) objs[ar(n, i, j)] = j < n ? gobj(i, j) : x[i];
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) {
                const int p = ar(n, i, j);
                if (j + 1 <= n)
                    gens[hom1(shape, p, ar(n, i, j + 1))] =
                        j + 1 < n ? gmap(i, j, i, j + 1) : a[i];
                if (i + 1 <= j)
                    gens[hom1(shape, p, ar(n, i + 1, j))] = j < n ? gmap(i, j, i + 1, j) : bm[i + 1];
            }
        std::map<int, BaseMorphism> used;
        for (int m : indecomposables(*shape)) used[m] = gens.at(m);
        auto d = diagram_from_generators(b, shape, objs, used);
        if (!d) return;
        out.push_back(std::move(*d));
        check_cap(out.size(), "s_" + std::to_string(n), n);
    };
    // X_i for i >= 1, then the maps a_i and b_i
    std::function<void(int)> step = [&](int i) {
        if (i == n) {
            bm[n] = b.zero_map(x[n - 1], x[n]);
            finish();
            return;
        }
        // c_i: F(i-1, i) -> F(i-1, n) = X_{i-1}
        const BaseMorphism ci = b.compose(a[i - 1], gmap(i - 1, i, i - 1, np));
        const auto type = cofiber_type(b, gobj(i - 1, i), x[i - 1], ci);
        if (!type) return;
        auto it = by_type.find(*type);
        if (it == by_type.end()) return;
        for (const auto& xi : it->second) {
            x[i] = xi;
            for (const auto& bi : b.enumerate_morphisms(x[i - 1], xi)) {
                if (!(b.compose(bi, ci) == b.zero_map(gobj(i - 1, i), xi))) continue;
                HomotopicalBase::Square sq{gobj(i - 1, i), x[i - 1], gobj(i, i), xi, ci,
                                           gmap(i - 1, i, i, i), bi, b.zero_map(gobj(i, i), xi)};
                if (!b.ho_cocartesian(sq)) continue;
                bm[i] = bi;
                const BaseMorphism lhs = b.compose(bi, a[i - 1]);
                for (const auto& ai : b.enumerate_morphisms(gobj(i, np), xi)) {
                    if (!(b.compose(ai, gmap(i - 1, np, i, np)) == lhs)) continue;
                    a[i] = ai;
                    step(i + 1);
                }
            }
        }
    };
    for (const auto& x0 : objects) {
        x[0] = x0;
        for (const auto& a0 : b.enumerate_morphisms(gobj(0, np), x0)) {
            a[0] = a0;
            step(1);
        }
    }
}

std::vector<DiagramObject> enumerate_sn_represented(const HomotopicalBase& b, int n, int bound) {
    if (n == 0) return {zero_diagram(b, arrow_cat(0))};
    const auto objects = b.enumerate_objects(bound);
    std::map<std::vector<int>, std::vector<BaseObject>> by_type;
    for (const auto& o : objects) by_type[weq_type(b, o)].push_back(o);
    const Prederivator d = Prederivator::represent(b);
    std::vector<DiagramObject> out;
    for (const auto& g : enumerate_sn_represented(b, n - 1, bound)) {
        std::vector<DiagramObject> ext;
        extend(b, n, g, objects, by_type, ext);
        for (auto& e : ext)
            if (is_sn(d, n, e, CocartesianTest::Direct)) out.push_back(std::move(e));
        check_cap(out.size(), "s_" + std::to_string(n), n);
    }
    return out;
}

std::string level_id(const std::string& prefix, int k, int s) {
    return prefix + std::to_string(k) + "#" + std::to_string(s);
}

}  // namespace

// -- chains -------------------------------------------------------------------------

std::string Chain::key() const {
    std::string k;
    for (const auto& o : objects) k += o.key() + ";";
    k += "|";
    for (const auto& m : maps) k += m.key() + ";";
    return k;
}

DiagramObject assemble(const HomotopicalBase& b, const Chain& c) {
    const int m = c.length();
    const CatPtr x = c.objects.at(0).shape;
    const CatPtr om = ordinal(m);
    const int nx = x->num_objects(), mx = x->num_morphisms();
    // phi[j][j'][a]: the composite of the maps j .. j'-1 at a
    std::vector<std::vector<std::vector<BaseMorphism>>> phi(m + 1, std::vector<std::vector<BaseMorphism>>(m + 1));
    for (int j = 0; j <= m; ++j) {
        for (int a = 0; a < nx; ++a) phi[j][j].push_back(b.identity(c.objects[j].objects[a]));
        for (int k = j + 1; k <= m; ++k)
            for (int a = 0; a < nx; ++a) phi[j][k].push_back(b.compose(c.maps[k - 1].components[a], phi[j][k - 1][a]));
    }
    DiagramObject out;
    out.shape = product(om, x);
    out.objects.resize(out.shape->num_objects());
    out.morphisms.resize(out.shape->num_morphisms());
    for (int j = 0; j <= m; ++j)
        for (int a = 0; a < nx; ++a) out.objects[j * nx + a] = c.objects[j].objects[a];
    for (int v = 0; v < om->num_morphisms(); ++v) {
        const int j = om->src(v), k = om->tgt(v);
        for (int u = 0; u < mx; ++u)
            out.morphisms[v * mx + u] = b.compose(c.objects[k].morphisms[u], phi[j][k][x->src(u)]);
    }
    return out;
}

Chain disassemble(const DiagramObject& f, int m, const CatPtr& x) {
    const CatPtr om = ordinal(m);
    if (!same_category(f.shape, product(om, x))) throw InvalidArgument("disassemble: shape is not [m]×X");
    const int nx = x->num_objects(), mx = x->num_morphisms();
    Chain c;
    for (int j = 0; j <= m; ++j) {
        DiagramObject col;
        col.shape = x;
        col.objects.assign(f.objects.begin() + j * nx, f.objects.begin() + (j + 1) * nx);
        const int idj = om->identity(j);
        for (int u = 0; u < mx; ++u) col.morphisms.push_back(f.morphisms[idj * mx + u]);
        c.objects.push_back(std::move(col));
    }
    for (int j = 0; j < m; ++j) {
        DiagramMorphism t;
        const int v = hom1(om, j, j + 1);
        for (int a = 0; a < nx; ++a) t.components.push_back(f.morphisms[v * mx + x->identity(a)]);
        c.maps.push_back(std::move(t));
    }
    return c;
}

Chain chain_face(const HomotopicalBase& b, const Chain& c, int i) {
    const int m = c.length();
    if (m < 1 || i < 0 || i > m) throw InvalidArgument("chain_face: index out of range");
    Chain out = c;
    out.objects.erase(out.objects.begin() + i);
    if (i == 0) {
        out.maps.erase(out.maps.begin());
    } else if (i == m) {
        out.maps.pop_back();
    } else {
        out.maps[i - 1] = compose(b, c.maps[i], c.maps[i - 1]);
        out.maps.erase(out.maps.begin() + i);
    }
    return out;
}

Chain chain_degeneracy(const HomotopicalBase& b, const Chain& c, int i) {
    if (i < 0 || i > c.length()) throw InvalidArgument("chain_degeneracy: index out of range");
    Chain out = c;
    out.objects.insert(out.objects.begin() + i, c.objects[i]);
    out.maps.insert(out.maps.begin() + i, identity(b, c.objects[i]));
    return out;
}

Chain pull(const Chain& c, const FinFunctor& u) {
    Chain out;
    for (const auto& o : c.objects) out.objects.push_back(pull(o, u));
    for (const auto& m : c.maps) out.maps.push_back(pull(m, u));
    return out;
}

// -- membership ------------------------------------------------------------------------

bool is_sn(const Prederivator& d, int n, const DiagramObject& f, CocartesianTest test) {
    const CatPtr arn = arrow_cat(n);
    if (!same_category(f.shape, d.shape(arn))) throw InvalidArgument("is_sn: diagram is not shaped on Ar[" + std::to_string(n) + "]");
    if (!d.is_member(arn, f)) return false;
    for (int i = 0; i <= n; ++i)
        for (const auto& o : d.inverse_image(point_functor(arn, ar(n, i, i)), f).objects)
            if (!d.base().is_ho_zero(o)) return false;
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k) {
                const DiagramObject sq = d.inverse_image(ar_square(n, i, j, k), f);
                bool ok = false;
                switch (test) {
                    case CocartesianTest::Auto: ok = is_cocartesian(d, sq); break;
                    case CocartesianTest::Kan: ok = is_cocartesian_kan(d, sq); break;
                    case CocartesianTest::Direct: ok = is_cocartesian_pointwise(d, sq); break;
                }
                if (!ok) return false;
            }
    return true;
}

bool is_snm(const Prederivator& d, int n, int m, const DiagramObject& f) {
    const Prederivator p = Prederivator::shift(d, ordinal(m), true);
    const CatPtr arn = arrow_cat(n);
    if (!same_category(f.shape, p.shape(arn))) throw InvalidArgument("is_snm: diagram is not shaped on [m]×Ar[n]");
    if (!p.is_member(arn, f)) return false;
    return is_sn(d, n, d.inverse_image(column_functor(m, 0, arn), f), CocartesianTest::Direct);
}

bool is_wald_sn(const WaldhausenStructure& w, int n, const DiagramObject& f) {
    const auto& b = w.base;
    const CatPtr arn = arrow_cat(n);
    if (!same_category(f.shape, arn)) throw InvalidArgument("is_wald_sn: diagram is not shaped on Ar[n]");
    if (!validate_diagram(b, f).empty()) return false;
    for (int i = 0; i <= n; ++i)
        if (!b.is_zero_object(f.objects[ar(n, i, i)])) return false;
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                const int p = ar(n, i, j), q = ar(n, i, k);
                if (!w.is_cofibration(f.objects[p], f.objects[q], f.morphisms[hom1(arn, p, q)])) return false;
            }
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k)
                if (!b.is_strict_pushout(square_of(pull(f, ar_square(n, i, j, k))))) return false;
    return true;
}

// -- enumeration ----------------------------------------------------------------------

std::vector<DiagramObject> enumerate_sn(const Prederivator& d, int n, int bound) {
    if (n < 0) throw InvalidArgument("enumerate_sn: n must be >= 0");
    if (d.kind() == Prederivator::Kind::Represented) return enumerate_sn_represented(d.base(), n, bound);
    if (d.kind() == Prederivator::Kind::Shift && d.eq() && d.inner().kind() == Prederivator::Kind::Represented) {
        const int m = d.shift_shape()->num_objects() - 1;
        if (!same_category(d.shift_shape(), ordinal(m))) throw CapabilityError("enumerate_sn: shift shape must be an ordinal");
        const auto& b = d.base();
        const ColumnSet cols(b, enumerate_sn_represented(b, n, bound), b.exact_ho(), m >= 1);
        std::vector<DiagramObject> out;
        for (const auto& c : enumerate_codes(cols, m)) out.push_back(assemble(b, decode(cols, c)));
        return out;
    }
    throw CapabilityError("enumerate_sn: needs a represented prederivator or an eq-shift of one");
}

std::vector<DiagramObject> enumerate_wald_sn(const WaldhausenStructure& w, int n, int bound) {
    const auto& b = w.base;
    if (n < 0) throw InvalidArgument("enumerate_wald_sn: n must be >= 0");
    if (n == 0) return {zero_diagram(b, arrow_cat(0))};
    const auto objects = b.enumerate_objects(bound);
    std::map<std::vector<int>, std::vector<BaseObject>> by_type;
    for (const auto& o : objects) by_type[weq_type(b, o)].push_back(o);
    std::vector<DiagramObject> out;
    // strict pushouts along cofibrations are homotopy pushouts, so the
    // homotopical extension contains every strict element
    for (const auto& g : enumerate_wald_sn(w, n - 1, bound)) {
        std::vector<DiagramObject> ext;
        extend(b, n, g, objects, by_type, ext);
        for (auto& e : ext)
            if (is_wald_sn(w, n, e)) out.push_back(std::move(e));
        check_cap(out.size(), "wald s_" + std::to_string(n), n);
    }
    return out;
}

// -- chain codes ------------------------------------------------------------------------

ColumnSet::ColumnSet(const HomotopicalBase& b, std::vector<DiagramObject> cols, bool isos, bool with_maps) {
    for (auto& c : cols) {
        std::string k = c.key();
        columns.add(std::move(c), std::move(k));
    }
    if (!with_maps) return;
    const int n = columns.size();
    std::vector<ElementTable<DiagramMorphism>> tables(static_cast<std::size_t>(n) * n);
    parallel_for(n * n, [&](int p) {
        const int i = p / n, j = p % n;
        for (auto& f : enumerate_diagram_morphisms(b, columns.items[i], columns.items[j],
                                                   isos ? MorphismFilter::Isos : MorphismFilter::Weqs)) {
            std::string k = f.key();
            tables[p].add(std::move(f), std::move(k));
        }
    });
    for (int p = 0; p < n * n; ++p)
        if (tables[p].size() > 0) maps.emplace(std::make_pair(p / n, p % n), std::move(tables[p]));
}

std::string code_key(const ChainCode& c) {
    std::string k;
    for (int x : c) k += std::to_string(x) + ",";
    return k;
}

Chain decode(const ColumnSet& cols, const ChainCode& code) {
    const int m = static_cast<int>(code.size()) / 2;
    Chain c;
    for (int j = 0; j <= m; ++j) c.objects.push_back(cols.columns.items.at(code[j]));
    for (int j = 1; j <= m; ++j) c.maps.push_back(cols.maps.at({code[j - 1], code[j]}).items.at(code[m + j]));
    return c;
}

ChainCode encode(const ColumnSet& cols, const Chain& c) {
    ChainCode code;
    for (const auto& o : c.objects) {
        const int t = cols.columns.find(o.key());
        if (t < 0) return {};
        code.push_back(t);
    }
    for (int j = 0; j < c.length(); ++j) {
        auto it = cols.maps.find({code[j], code[j + 1]});
        if (it == cols.maps.end()) return {};
        const int t = it->second.find(c.maps[j].key());
        if (t < 0) return {};
        code.push_back(t);
    }
    return code;
}

std::vector<ChainCode> enumerate_codes(const ColumnSet& cols, int m) {
    // out-neighbours of each column
    std::vector<std::vector<std::pair<int, int>>> out(cols.size());  // (target, map count)
    for (const auto& [p, t] : cols.maps) out[p.first].push_back({p.second, t.size()});
    std::vector<ChainCode> res;
    // depth-first so that the order is lexicographic in (columns, maps)
    std::vector<int> path, maps;
    std::function<void(int)> walk = [&](int depth) {
        if (depth == m) {
            ChainCode c = path;
            c.insert(c.end(), maps.begin(), maps.end());
            res.push_back(std::move(c));
            check_cap(res.size(), "chains", m);
            return;
        }
        for (auto [t, count] : out[path.back()]) {
            path.push_back(t);
            for (int f = 0; f < count; ++f) {
                maps.push_back(f);
                walk(depth + 1);
                maps.pop_back();
            }
            path.pop_back();
        }
    };
    for (int i = 0; i < cols.size(); ++i) {
        path = {i};
        walk(0);
    }
    return res;
}

// -- builds ----------------------------------------------------------------------------

SBuild build_s(const Prederivator& d, int N, int bound) {
    SBuild s{d, bound, TruncSSet(N), {}};
    s.levels.resize(N + 1);
    for (int k = 0; k <= N; ++k) {
        for (auto& f : enumerate_sn(d, k, bound)) {
            const std::string key = f.key();
            const int before = s.levels[k].size();
            const int idx = s.levels[k].add(std::move(f), key);
            if (idx == before) s.set.add(k, level_id("s", k, idx));
        }
    }
    s.set.allocate();
    for (int k = 0; k <= N; ++k) {
        const auto& items = s.levels[k].items;
        parallel_for(static_cast<int>(items.size()), [&](int e) {
            for (int i = 0; k >= 1 && i <= k; ++i) {
                const DiagramObject f = d.inverse_image(arrow_map(coface(k, i)), items[e]);
                const int t = s.levels[k - 1].find(f.key());
                if (t < 0) throw CheckFailure("build_s: d" + std::to_string(i) + " left s_" + std::to_string(k - 1));
                s.set.faces[k][i][e] = t;
            }
            for (int i = 0; k + 1 <= N && i <= k; ++i) {
                const DiagramObject f = d.inverse_image(arrow_map(codegeneracy(k, i)), items[e]);
                const int t = s.levels[k + 1].find(f.key());
                if (t < 0) throw CheckFailure("build_s: s" + std::to_string(i) + " left s_" + std::to_string(k + 1));
                s.set.degens[k][i][e] = t;
            }
        });
    }
    s.set.mark_degenerate();
    return s;
}

namespace {

void fill_codes(ElementTable<ChainCode>& table, std::vector<std::string>& ids, const ColumnSet& cols, int m,
                const std::string& prefix) {
    for (auto& c : enumerate_codes(cols, m)) {
        std::string k = code_key(c);
        const int before = table.size();
        if (table.add(std::move(c), std::move(k)) == before) ids.push_back(prefix + std::to_string(before));
    }
}

std::string level_name(int n, int m) { return "(" + std::to_string(n) + "," + std::to_string(m) + ")"; }

}  // namespace

DiagramObject SBisBuild::element(int n, int m, int e) const {
    return assemble(d.base(), decode(columns[n], levels[n][m].items.at(e)));
}

int SBisBuild::find(int n, int m, const DiagramObject& f) const {
    const ChainCode c = encode(columns[n], disassemble(f, m, arrow_cat(n)));
    return c.empty() ? -1 : levels[n][m].find(code_key(c));
}

SBisBuild build_Sbis(const Prederivator& d, int N, int M, int bound) {
    if (d.kind() != Prederivator::Kind::Represented) throw CapabilityError("build_Sbis needs a represented prederivator");
    const auto& b = d.base();
    SBisBuild s{d, bound, TruncBiSSet(N, M), {}, {}};
    s.levels.assign(N + 1, std::vector<ElementTable<ChainCode>>(M + 1));
    for (int n = 0; n <= N; ++n) {
        s.columns.emplace_back(b, enumerate_sn(d, n, bound), b.exact_ho(), M >= 1);
        for (int m = 0; m <= M; ++m)
            fill_codes(s.levels[n][m], s.set.ids[n][m], s.columns[n], m, "S" + level_name(n, m) + "#");
    }
    s.set.allocate();
    auto lookup = [&](int n, int m, const DiagramObject& f, const char* what) {
        const int t = s.find(n, m, f);
        if (t < 0) throw CheckFailure(std::string("build_Sbis: ") + what + " left S" + level_name(n, m));
        return t;
    };
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= M; ++m) {
            const Prederivator p = Prederivator::shift(d, ordinal(m), true);
            const CatPtr arn = arrow_cat(n);
            parallel_for(s.levels[n][m].size(), [&](int e) {
                const DiagramObject f = s.element(n, m, e);
                for (int i = 0; n >= 1 && i <= n; ++i)
                    s.set.hface[n][m][i][e] = lookup(n - 1, m, p.inverse_image(arrow_map(coface(n, i)), f), "hd");
                for (int i = 0; n + 1 <= N && i <= n; ++i)
                    s.set.hdeg[n][m][i][e] = lookup(n + 1, m, p.inverse_image(arrow_map(codegeneracy(n, i)), f), "hs");
                for (int i = 0; m >= 1 && i <= m; ++i)
                    s.set.vface[n][m][i][e] =
                        lookup(n, m - 1, pull(f, product_functor(coface(m, i), identity_functor(arn))), "vd");
                for (int i = 0; m + 1 <= M && i <= m; ++i)
                    s.set.vdeg[n][m][i][e] =
                        lookup(n, m + 1, pull(f, product_functor(codegeneracy(m, i), identity_functor(arn))), "vs");
            });
        }
    return s;
}

Chain NisoSBuild::element(int k, int e) const { return decode(columns[k], levels[k].items.at(e)); }

int NisoSBuild::find(int k, const Chain& c) const {
    const ChainCode code = encode(columns[k], c);
    return code.empty() ? -1 : levels[k].find(code_key(code));
}

NisoSBuild build_NisoS(const Prederivator& d, int N, int bound) {
    if (!d.exact_ho()) throw CapabilityError("N iso S needs isomorphisms of the homotopy category (exact bases only)");
    if (d.kind() != Prederivator::Kind::Represented) throw CapabilityError("build_NisoS needs a represented prederivator");
    const auto& b = d.base();
    NisoSBuild s{d, bound, TruncSSet(N), {}, {}};
    s.levels.resize(N + 1);
    for (int k = 0; k <= N; ++k) {
        s.columns.emplace_back(b, enumerate_sn(d, k, bound), true, k >= 1);
        fill_codes(s.levels[k], s.set.ids[k], s.columns[k], k, "n" + std::to_string(k) + "#");
    }
    s.set.allocate();
    auto lookup = [&](int k, const Chain& c, const std::string& what) {
        const int t = s.find(k, c);
        if (t < 0) throw CheckFailure("build_NisoS: " + what + " left level " + std::to_string(k));
        return t;
    };
    for (int k = 0; k <= N; ++k)
        parallel_for(s.levels[k].size(), [&](int e) {
            const Chain c = s.element(k, e);
            for (int i = 0; k >= 1 && i <= k; ++i)
                s.set.faces[k][i][e] = lookup(k - 1, chain_face(b, pull(c, arrow_map(coface(k, i))), i), "d" + std::to_string(i));
            for (int i = 0; k + 1 <= N && i <= k; ++i)
                s.set.degens[k][i][e] =
                    lookup(k + 1, chain_degeneracy(b, pull(c, arrow_map(codegeneracy(k, i))), i), "s" + std::to_string(i));
        });
    s.set.mark_degenerate();
    return s;
}

Chain WaldBuild::element(int n, int m, int e) const { return decode(columns[n], levels[n][m].items.at(e)); }

int WaldBuild::find(int n, int m, const Chain& c) const {
    const ChainCode code = encode(columns[n], c);
    return code.empty() ? -1 : levels[n][m].find(code_key(code));
}

WaldBuild build_wald(const WaldhausenStructure& w, int N, int M, int bound) {
    const auto& b = w.base;
    WaldBuild s{w, bound, TruncBiSSet(N, M), {}, {}};
    s.levels.assign(N + 1, std::vector<ElementTable<ChainCode>>(M + 1));
    for (int n = 0; n <= N; ++n) {
        s.columns.emplace_back(b, enumerate_wald_sn(w, n, bound), b.exact_ho(), M >= 1);
        for (int m = 0; m <= M; ++m)
            fill_codes(s.levels[n][m], s.set.ids[n][m], s.columns[n], m, "w" + level_name(n, m) + "#");
    }
    s.set.allocate();
    auto lookup = [&](int n, int m, const Chain& c, const char* what) {
        const int t = s.find(n, m, c);
        if (t < 0) throw CheckFailure(std::string("build_wald: ") + what + " left level " + level_name(n, m));
        return t;
    };
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= M; ++m)
            parallel_for(s.levels[n][m].size(), [&](int e) {
                const Chain c = s.element(n, m, e);
                for (int i = 0; n >= 1 && i <= n; ++i)
                    s.set.hface[n][m][i][e] = lookup(n - 1, m, pull(c, arrow_map(coface(n, i))), "hd");
                for (int i = 0; n + 1 <= N && i <= n; ++i)
                    s.set.hdeg[n][m][i][e] = lookup(n + 1, m, pull(c, arrow_map(codegeneracy(n, i))), "hs");
                for (int i = 0; m >= 1 && i <= m; ++i) s.set.vface[n][m][i][e] = lookup(n, m - 1, chain_face(b, c, i), "vd");
                for (int i = 0; m + 1 <= M && i <= m; ++i)
                    s.set.vdeg[n][m][i][e] = lookup(n, m + 1, chain_degeneracy(b, c, i), "vs");
            });
    return s;
}

// -- simplicial actions -------------------------------------------------------------------

DiagramObject phi_star(const EnrichedSimplex& phi, const FinFunctor& sigma, const DiagramObject& f) {
    const int n = phi.level;
    const int k = sigma.src->num_objects() - 1;
    if (sigma.tgt->num_objects() != n + 1) throw InvalidArgument("phi_star: σ must land in [n]");
    const CatPtr ark = arrow_cat(k);
    const CatPtr kk = product(ordinal(k), ark);
    const DiagramObject g = phi.apply(kk, f);
    // (j, a) ↦ (σ(j), (j, a)): the composite (σ×[k]×Ar[k]) ∘ (△×Ar[k])
    const FinFunctor u = pairing(compose(sigma, projection1(ordinal(k), ark)), identity_functor(kk));
    return pull(g, phi.tgt.functor(u));
}

DiagramObject lemma_homotopy(const EnrichedSimplex& psi, const FinFunctor& sigma, const DiagramObject& f) {
    if (psi.level != 1) throw InvalidArgument("lemma_homotopy: Ψ must be a 1-simplex");
    if (sigma.tgt->num_objects() != 2) throw InvalidArgument("lemma_homotopy: σ must land in [1]");
    const int k = sigma.src->num_objects() - 1;
    const CatPtr ark = arrow_cat(k);
    const DiagramObject g = psi.apply(ark, f);
    // (i, j) ↦ (p(σ(i) -> σ(j)), (i, j)) = (σ(j), (i, j))
    const FinFunctor u = pairing(compose(sigma, arrow_target(k)), identity_functor(ark));
    return pull(g, psi.tgt.functor(u));
}

SimplicialHomotopy lemma_homotopy_data(const EnrichedSimplex& psi, const SBuild& src, const SBuild& tgt,
                                       SimplicialMap* f, SimplicialMap* g) {
    const int N = src.set.N;
    SimplicialHomotopy h;
    h.components.resize(N + 1);
    for (int k = 0; k <= N; ++k) {
        h.components[k].resize(k + 2);
        for (int z = 0; z <= k + 1; ++z) {
            std::vector<int> values(k + 1);
            for (int i = 0; i <= k; ++i) values[i] = i < z ? 0 : 1;
            const FinFunctor sigma = ordinal_map(k, 1, values);
            const auto& items = src.levels[k].items;
            auto& out = h.components[k][z];
            out.assign(items.size(), -1);
            parallel_for(static_cast<int>(items.size()), [&](int e) {
                const DiagramObject v = lemma_homotopy(psi, sigma, items[e]);
                const int t = tgt.levels[k].find(v.key());
                if (t < 0) throw CheckFailure("lemma_homotopy: value left s_" + std::to_string(k) + " of the target");
                out[e] = t;
            });
        }
    }
    if (f) {
        f->levels.clear();
        for (int k = 0; k <= N; ++k) f->levels.push_back(h.components[k][k + 1]);
    }
    if (g) {
        g->levels.clear();
        for (int k = 0; k <= N; ++k) g->levels.push_back(h.components[k][0]);
    }
    return h;
}

Chain grid_diagonal(const Prederivator& d, const ModificationChain& c, const FinFunctor& sigma, const Chain& simplex) {
    if (!d.exact_ho()) throw CapabilityError("grid_diagonal needs morphisms of the homotopy category (exact bases only)");
    if (auto err = validate(c); !err.empty()) throw InvalidArgument("grid_diagonal: " + err);
    const int n = static_cast<int>(c.psi.size()) - 1;
    const int k = simplex.length();
    if (sigma.tgt->num_objects() != n + 1 || sigma.src->num_objects() != k + 1)
        throw InvalidArgument("grid_diagonal: σ must be [k] -> [n]");
    const auto& b = d.base();
    // β from ψ_{s} to ψ_{t} at X, s <= t
    auto beta = [&](int s, int t, const DiagramObject& x) {
        DiagramMorphism out;
        for (const auto& o : x.objects) {
            BaseMorphism m = b.identity(c.psi[s].on_object(b, o));
            for (int r = s + 1; r <= t; ++r) m = b.compose(c.beta[r - 1].component(b, o), m);
            out.components.push_back(std::move(m));
        }
        return out;
    };
    Chain out;
    for (int r = 0; r <= k; ++r) out.objects.push_back(apply_functor(b, c.psi[sigma(r)], simplex.objects[r]));
    for (int r = 1; r <= k; ++r) {
        const int s = sigma(r - 1), t = sigma(r);
        const auto& x0 = simplex.objects[r - 1];
        const auto& x1 = simplex.objects[r];
        const auto& fr = simplex.maps[r - 1];
        const DiagramMorphism lhs =
            compose(b, beta(s, t, x1), apply_functor(b, c.psi[s], x0, x1, fr));
        const DiagramMorphism rhs =
            compose(b, apply_functor(b, c.psi[t], x0, x1, fr), beta(s, t, x0));
        if (!(lhs == rhs)) throw CheckFailure("grid_diagonal: the square at position " + std::to_string(r) + " does not commute");
        out.maps.push_back(lhs);
    }
    return out;
}

}  // namespace kderiv
