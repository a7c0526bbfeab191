#include "kderiv/derivator.hpp"

#include <functional>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "kderiv/errors.hpp"

namespace kderiv {

std::string DiagramObject::key() const {
    std::string s;
    for (const auto& o : objects) s += o.key() + "|";
    s += "#";
    for (int m = 0; m < static_cast<int>(morphisms.size()); ++m) {
        if (shape->is_identity(m)) continue;
        s += morphisms[m].key() + "|";
    }
    return s;
}

bool DiagramObject::operator==(const DiagramObject& o) const {
    return same_category(shape, o.shape) && objects == o.objects && morphisms == o.morphisms;
}

std::string DiagramMorphism::key() const {
    std::string s;
    for (const auto& c : components) s += c.key() + "|";
    return s;
}

// -- shape metadata ---------------------------------------------------------------

namespace {

/// Generators, a factorization for every other non-identity morphism (factors
/// listed before their composite), and the non-identity composable pairs.
struct ShapeInfo {
    std::vector<int> generators;
    std::vector<bool> is_generator;
    std::vector<int> order;                       // non-identity non-generators
    std::vector<std::pair<int, int>> factor;      // per morphism (g, f), or (-1,-1)
    std::vector<std::pair<int, int>> composable;  // (g, f), both non-identity
};

std::shared_ptr<const ShapeInfo> shape_info(const CatPtr& c) {
    static std::mutex mu;
    static std::unordered_map<std::uint64_t, std::vector<std::pair<CatPtr, std::shared_ptr<const ShapeInfo>>>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(c->fingerprint());
        if (it != cache.end())
            for (auto& [cat, info] : it->second)
                if (*cat == *c) return info;
    }
    if (!is_finite_direct(*c)) throw InvalidArgument("shape " + c->name() + " is not finite direct");
    auto info = std::make_shared<ShapeInfo>();
    const int m = c->num_morphisms();
    info->generators = indecomposables(*c);
    info->is_generator.assign(m, false);
    for (int g : info->generators) info->is_generator[g] = true;
    info->factor.assign(m, {-1, -1});
    std::vector<bool> done(m, false);
    for (int i = 0; i < m; ++i)
        if (c->is_identity(i) || info->is_generator[i]) done[i] = true;
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (!c->is_identity(g) && !c->is_identity(f) && c->compose(g, f) >= 0) info->composable.emplace_back(g, f);
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto [g, f] : info->composable) {
            const int gf = c->compose(g, f);
            if (done[gf] || !done[g] || !done[f]) continue;
            done[gf] = true;
            info->factor[gf] = {g, f};
            info->order.push_back(gf);
            progress = true;
        }
    }
    for (int i = 0; i < m; ++i)
        if (!done[i]) throw InvalidArgument("shape " + c->name() + " is not generated by its indecomposables");
    std::lock_guard<std::mutex> lock(mu);
    cache[c->fingerprint()].emplace_back(c, info);
    return info;
}

}  // namespace

// -- diagram calculus -------------------------------------------------------------

DiagramObject pull(const DiagramObject& f, const FinFunctor& u) {
    if (!same_category(u.tgt, f.shape)) throw InvalidArgument("pull: functor target is not the diagram shape");
    DiagramObject out;
    out.shape = u.src;
    out.objects.reserve(u.object_map.size());
    for (int x : u.object_map) out.objects.push_back(f.objects[x]);
    out.morphisms.reserve(u.morphism_map.size());
    for (int m : u.morphism_map) out.morphisms.push_back(f.morphisms[m]);
    return out;
}

DiagramMorphism pull(const DiagramMorphism& m, const FinFunctor& u) {
    DiagramMorphism out;
    for (int x : u.object_map) out.components.push_back(m.components[x]);
    return out;
}

DiagramMorphism two_cell(const DiagramObject& f, const FinNatTrans& a) {
    if (!same_category(a.src.tgt, f.shape)) throw InvalidArgument("two_cell: shape mismatch");
    DiagramMorphism out;
    for (int c : a.components) out.components.push_back(f.morphisms[c]);
    return out;
}

std::vector<std::string> validate_diagram(const HomotopicalBase& b, const DiagramObject& f) {
    std::vector<std::string> out;
    const auto& c = *f.shape;
    if (static_cast<int>(f.objects.size()) != c.num_objects() ||
        static_cast<int>(f.morphisms.size()) != c.num_morphisms()) {
        out.push_back("diagram tables do not match the shape");
        return out;
    }
    for (int x = 0; x < c.num_objects(); ++x)
        if (!b.is_object(f.objects[x])) out.push_back("invalid object at " + c.object(x));
    for (int m = 0; m < c.num_morphisms(); ++m) {
        if (!b.is_morphism(f.objects[c.src(m)], f.objects[c.tgt(m)], f.morphisms[m])) {
            out.push_back("invalid morphism at " + c.morphism(m).id);
            continue;
        }
        if (c.is_identity(m) && !(f.morphisms[m] == b.identity(f.objects[c.src(m)])))
            out.push_back("identity not preserved at " + c.object(c.src(m)));
    }
    if (!out.empty()) return out;
    for (int g = 0; g < c.num_morphisms(); ++g)
        for (int h = 0; h < c.num_morphisms(); ++h) {
            const int gh = c.compose(g, h);
            if (gh < 0) continue;
            if (!(f.morphisms[gh] == b.compose(f.morphisms[g], f.morphisms[h])))
                out.push_back("composition not preserved at (" + c.morphism(g).id + ", " + c.morphism(h).id + ")");
        }
    return out;
}

bool is_diagram_morphism(const HomotopicalBase& b, const DiagramObject& f, const DiagramObject& g,
                         const DiagramMorphism& m) {
    const auto& c = *f.shape;
    if (static_cast<int>(m.components.size()) != c.num_objects()) return false;
    for (int x = 0; x < c.num_objects(); ++x)
        if (!b.is_morphism(f.objects[x], g.objects[x], m.components[x])) return false;
    for (int u = 0; u < c.num_morphisms(); ++u) {
        if (c.is_identity(u)) continue;
        if (!(b.compose(g.morphisms[u], m.components[c.src(u)]) == b.compose(m.components[c.tgt(u)], f.morphisms[u])))
            return false;
    }
    return true;
}

DiagramMorphism identity(const HomotopicalBase& b, const DiagramObject& f) {
    DiagramMorphism m;
    for (const auto& o : f.objects) m.components.push_back(b.identity(o));
    return m;
}

DiagramMorphism compose(const HomotopicalBase& b, const DiagramMorphism& g, const DiagramMorphism& f) {
    DiagramMorphism m;
    for (std::size_t i = 0; i < f.components.size(); ++i) m.components.push_back(b.compose(g.components[i], f.components[i]));
    return m;
}

bool is_pointwise_iso(const HomotopicalBase& b, const DiagramObject& f, const DiagramObject& g,
                      const DiagramMorphism& m) {
    for (std::size_t i = 0; i < m.components.size(); ++i)
        if (!b.is_iso(f.objects[i], g.objects[i], m.components[i])) return false;
    return true;
}

bool is_pointwise_weq(const HomotopicalBase& b, const DiagramObject& f, const DiagramObject& g,
                      const DiagramMorphism& m) {
    for (std::size_t i = 0; i < m.components.size(); ++i)
        if (!b.is_weq(f.objects[i], g.objects[i], m.components[i])) return false;
    return true;
}

DiagramObject constant_diagram(const HomotopicalBase& b, const CatPtr& shape, const BaseObject& a) {
    DiagramObject d;
    d.shape = shape;
    d.objects.assign(shape->num_objects(), a);
    d.morphisms.assign(shape->num_morphisms(), b.identity(a));
    return d;
}

std::optional<DiagramObject> diagram_from_generators(const HomotopicalBase& b, const CatPtr& shape,
                                                     const std::vector<BaseObject>& objects,
                                                     const std::map<int, BaseMorphism>& generators) {
    const auto info = shape_info(shape);
    const auto& c = *shape;
    DiagramObject d;
    d.shape = shape;
    d.objects = objects;
    d.morphisms.resize(c.num_morphisms());
    for (int x = 0; x < c.num_objects(); ++x) d.morphisms[c.identity(x)] = b.identity(objects[x]);
    for (int g : info->generators) {
        auto it = generators.find(g);
        if (it == generators.end()) throw InvalidArgument("missing value for generator " + c.morphism(g).id);
        d.morphisms[g] = it->second;
    }
    for (int m : info->order) {
        const auto [g, f] = info->factor[m];
        d.morphisms[m] = b.compose(d.morphisms[g], d.morphisms[f]);
    }
    for (auto [g, f] : info->composable)
        if (!(d.morphisms[c.compose(g, f)] == b.compose(d.morphisms[g], d.morphisms[f]))) return std::nullopt;
    return d;
}

std::vector<DiagramObject> enumerate_diagrams(const HomotopicalBase& b, const CatPtr& shape, int bound) {
    const auto info = shape_info(shape);
    const auto& c = *shape;
    const auto objs = b.enumerate_objects(bound);
    const int n = c.num_objects();
    std::vector<DiagramObject> out;
    std::vector<int> pick(n, 0);
    const long long cap = enumeration_cap();
    if (objs.empty()) return out;
    for (;;) {
        std::vector<BaseObject> chosen;
        for (int i = 0; i < n; ++i) chosen.push_back(objs[pick[i]]);
        std::vector<std::vector<BaseMorphism>> cand;
        for (int g : info->generators) cand.push_back(b.enumerate_morphisms(chosen[c.src(g)], chosen[c.tgt(g)]));
        std::vector<std::size_t> gi(cand.size(), 0);
        bool empty = false;
        for (const auto& v : cand)
            if (v.empty()) empty = true;
        while (!empty) {
            std::map<int, BaseMorphism> gens;
            for (std::size_t k = 0; k < cand.size(); ++k) gens[info->generators[k]] = cand[k][gi[k]];
            if (auto d = diagram_from_generators(b, shape, chosen, gens)) {
                out.push_back(std::move(*d));
                if (static_cast<long long>(out.size()) > cap)
                    throw CapExceeded("diagram enumeration over " + c.name() + " exceeds the cap", 0);
            }
            std::size_t k = cand.size();
            while (k > 0) {
                --k;
                if (++gi[k] < cand[k].size()) break;
                gi[k] = 0;
                if (k == 0) {
                    empty = true;
                    break;
                }
            }
            if (cand.empty()) empty = true;
        }
        int i = n - 1;
        while (i >= 0 && ++pick[i] == static_cast<int>(objs.size())) pick[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

std::vector<DiagramMorphism> enumerate_diagram_morphisms(const HomotopicalBase& b, const DiagramObject& f,
                                                         const DiagramObject& g, MorphismFilter filter) {
    const auto info = shape_info(f.shape);
    const auto& c = *f.shape;
    const int n = c.num_objects();
    std::vector<std::vector<BaseMorphism>> cand(n);
    for (int x = 0; x < n; ++x) {
        if (filter == MorphismFilter::Isos || (filter == MorphismFilter::Weqs && b.exact_ho())) {
            cand[x] = b.enumerate_isos(f.objects[x], g.objects[x]);
        } else {
            cand[x] = b.enumerate_morphisms(f.objects[x], g.objects[x]);
            if (filter == MorphismFilter::Weqs)
                std::erase_if(cand[x], [&](const BaseMorphism& m) { return !b.is_weq(f.objects[x], g.objects[x], m); });
        }
        if (cand[x].empty()) return {};
    }
    // generators checked as soon as both endpoints have a component
    std::vector<std::vector<int>> checks(n);
    for (int u : info->generators) checks[std::max(c.src(u), c.tgt(u))].push_back(u);
    std::vector<DiagramMorphism> out;
    DiagramMorphism cur;
    cur.components.resize(n);
    std::function<void(int)> rec = [&](int x) {
        if (x == n) {
            out.push_back(cur);
            if (static_cast<long long>(out.size()) > enumeration_cap())
                throw CapExceeded("diagram morphism enumeration exceeds the cap", 0);
            return;
        }
        for (const auto& m : cand[x]) {
            cur.components[x] = m;
            bool ok = true;
            for (int u : checks[x])
                if (!(b.compose(g.morphisms[u], cur.components[c.src(u)]) ==
                      b.compose(cur.components[c.tgt(u)], f.morphisms[u]))) {
                    ok = false;
                    break;
                }
            if (ok) rec(x + 1);
        }
    };
    rec(0);
    return out;
}

DiagramObject apply_functor(const HomotopicalBase& b, const BaseFunctor& phi, const DiagramObject& f) {
    DiagramObject d;
    d.shape = f.shape;
    for (const auto& o : f.objects) d.objects.push_back(phi.on_object(b, o));
    for (int m = 0; m < f.shape->num_morphisms(); ++m)
        d.morphisms.push_back(phi.on_morphism(b, f.objects[f.shape->src(m)], f.objects[f.shape->tgt(m)], f.morphisms[m]));
    return d;
}

DiagramMorphism apply_functor(const HomotopicalBase& b, const BaseFunctor& phi, const DiagramObject& src,
                              const DiagramObject& tgt, const DiagramMorphism& m) {
    DiagramMorphism out;
    for (std::size_t x = 0; x < m.components.size(); ++x)
        out.components.push_back(phi.on_morphism(b, src.objects[x], tgt.objects[x], m.components[x]));
    return out;
}

HomotopicalBase::Square square_of(const DiagramObject& f) {
    const auto& c = *f.shape;
    const int o00 = c.object_index("(0,0)"), o10 = c.object_index("(1,0)");
    const int o01 = c.object_index("(0,1)"), o11 = c.object_index("(1,1)");
    auto mor = [&](int a, int b) { return f.morphisms[c.hom(a, b).at(0)]; };
    return {f.objects[o00], f.objects[o10], f.objects[o01], f.objects[o11],
            mor(o00, o10),  mor(o00, o01),  mor(o10, o11),  mor(o01, o11)};
}

// -- Kan extensions ------------------------------------------------------------------

KanPlan make_kan_plan(const FinFunctor& f) {
    KanPlan p;
    p.f = f;
    for (int y = 0; y < f.tgt->num_objects(); ++y) {
        p.commas.push_back(comma(f, y));
        std::map<std::pair<int, int>, int> idx;
        const auto& e = p.commas.back().entries;
        for (int i = 0; i < static_cast<int>(e.size()); ++i) idx[e[i]] = i;
        p.index.push_back(std::move(idx));
    }
    return p;
}

KanResult left_kan(const HomotopicalBase& b, const KanPlan& plan, const DiagramObject& f) {
    if (!same_category(plan.f.src, f.shape)) throw InvalidArgument("left_kan: diagram is not on the source shape");
    KanResult r;
    const auto& y_cat = *plan.f.tgt;
    r.value.shape = plan.f.tgt;
    for (int y = 0; y < y_cat.num_objects(); ++y) {
        const auto& cd = plan.commas[y];
        std::vector<BaseObject> objs;
        for (const auto& [x, a] : cd.entries) objs.push_back(f.objects[x]);
        std::vector<Edge> edges;
        const auto& cc = *cd.comma;
        for (int m = 0; m < cc.num_morphisms(); ++m) {
            if (cc.is_identity(m)) continue;
            edges.push_back({cc.src(m), cc.tgt(m), f.morphisms[cd.j.on_morphism(m)]});
        }
        r.colims.push_back(b.colimit(objs, edges));
        r.value.objects.push_back(r.colims.back().object);
    }
    for (int n = 0; n < y_cat.num_morphisms(); ++n) {
        const int y = y_cat.src(n), y2 = y_cat.tgt(n);
        std::vector<BaseMorphism> cocone;
        for (const auto& [x, a] : plan.commas[y].entries)
            cocone.push_back(r.colims[y2].legs[plan.index[y2].at({x, y_cat.compose(n, a)})]);
        r.value.morphisms.push_back(b.mediate(r.colims[y], cocone, r.value.objects[y2]));
    }
    return r;
}

DiagramMorphism kan_unit(const KanPlan& plan, const KanResult& k) {
    DiagramMorphism m;
    const auto& y_cat = *plan.f.tgt;
    for (int x = 0; x < plan.f.src->num_objects(); ++x) {
        const int y = plan.f(x);
        m.components.push_back(k.colims[y].legs[plan.index[y].at({x, y_cat.identity(y)})]);
    }
    return m;
}

DiagramMorphism kan_counit(const HomotopicalBase& b, const KanPlan& plan, const KanResult& k,
                           const DiagramObject& g) {
    DiagramMorphism m;
    for (int y = 0; y < plan.f.tgt->num_objects(); ++y) {
        std::vector<BaseMorphism> cocone;
        for (const auto& [x, a] : plan.commas[y].entries) cocone.push_back(g.morphisms[a]);
        m.components.push_back(b.mediate(k.colims[y], cocone, g.objects[y]));
    }
    return m;
}

DiagramMorphism kan_on_morphism(const HomotopicalBase& b, const KanPlan& plan, const KanResult& src,
                                const KanResult& tgt, const DiagramMorphism& m) {
    DiagramMorphism out;
    for (int y = 0; y < plan.f.tgt->num_objects(); ++y) {
        std::vector<BaseMorphism> cocone;
        const auto& e = plan.commas[y].entries;
        for (int i = 0; i < static_cast<int>(e.size()); ++i)
            cocone.push_back(b.compose(tgt.colims[y].legs[i], m.components[e[i].first]));
        out.components.push_back(b.mediate(src.colims[y], cocone, tgt.value.objects[y]));
    }
    return out;
}

// -- prederivators ----------------------------------------------------------------

struct Prederivator::Impl {
    Kind kind = Kind::Represented;
    HomotopicalBase base;
    std::shared_ptr<const Prederivator> inner;
    CatPtr y;
    bool eq = false;
};

Prederivator Prederivator::represent(const HomotopicalBase& b) {
    Prederivator d;
    auto impl = std::make_shared<Impl>();
    impl->base = b;
    d.impl_ = impl;
    return d;
}

Prederivator Prederivator::shift(const Prederivator& inner, const CatPtr& y, bool eq) {
    if (!is_finite_direct(*y)) throw InvalidArgument("shift: shape must be finite direct");
    Prederivator d;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Shift;
    impl->base = inner.base();
    impl->inner = std::make_shared<const Prederivator>(inner);
    impl->y = y;
    impl->eq = eq;
    d.impl_ = impl;
    return d;
}

Prederivator Prederivator::opposite(const Prederivator& inner) {
    Prederivator d;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Opposite;
    impl->base = inner.base();
    impl->inner = std::make_shared<const Prederivator>(inner);
    d.impl_ = impl;
    return d;
}

Prederivator::Kind Prederivator::kind() const { return impl_->kind; }
const HomotopicalBase& Prederivator::base() const { return impl_->base; }
const Prederivator& Prederivator::inner() const {
    if (!impl_->inner) throw InvalidArgument("represented prederivator has no inner prederivator");
    return *impl_->inner;
}
const CatPtr& Prederivator::shift_shape() const { return impl_->y; }
bool Prederivator::eq() const { return impl_->eq; }

std::string Prederivator::name() const {
    switch (impl_->kind) {
        case Kind::Represented: return "D(" + impl_->base.tag() + ")";
        case Kind::Shift: return inner().name() + "(" + impl_->y->name() + "×-)" + (impl_->eq ? "_eq" : "");
        case Kind::Opposite: return inner().name() + "^op";
    }
    return "?";
}

CatPtr Prederivator::shape(const CatPtr& x) const {
    switch (impl_->kind) {
        case Kind::Represented: return x;
        case Kind::Shift: return inner().shape(product(impl_->y, x));
        case Kind::Opposite: return inner().shape(kderiv::opposite(x));
    }
    return x;
}

FinFunctor Prederivator::functor(const FinFunctor& f) const {
    switch (impl_->kind) {
        case Kind::Represented: return f;
        case Kind::Shift: return inner().functor(left_times(impl_->y, f));
        case Kind::Opposite: return inner().functor(opposite_functor(f));
    }
    return f;
}

FinNatTrans Prederivator::cell(const FinNatTrans& a) const {
    switch (impl_->kind) {
        case Kind::Represented: return a;
        case Kind::Shift: return inner().cell(left_times(impl_->y, a));
        case Kind::Opposite: return inner().cell(opposite_nat(a));
    }
    return a;
}

DiagramObject Prederivator::inverse_image(const FinFunctor& f, const DiagramObject& x) const {
    return pull(x, functor(f));
}

DiagramMorphism Prederivator::two_cell(const FinNatTrans& a, const DiagramObject& x) const {
    return kderiv::two_cell(x, cell(a));
}

FinNatTrans point_times(const CatPtr& x, const CatPtr& y, int u) {
    auto xy = product(x, y);
    const int ny = y->num_objects(), my = y->num_morphisms();
    auto at = [&](int obj) {
        FinFunctor f{y, xy, {}, {}};
        for (int b = 0; b < ny; ++b) f.object_map.push_back(obj * ny + b);
        for (int n = 0; n < my; ++n) f.morphism_map.push_back(x->identity(obj) * my + n);
        return f;
    };
    FinNatTrans a{at(x->src(u)), at(x->tgt(u)), {}};
    for (int b = 0; b < ny; ++b) a.components.push_back(u * my + y->identity(b));
    return a;
}

bool Prederivator::is_member(const CatPtr& x, const DiagramObject& f) const {
    switch (impl_->kind) {
        case Kind::Represented:
            return same_category(f.shape, x) && static_cast<int>(f.objects.size()) == x->num_objects();
        case Kind::Opposite: return inner().is_member(kderiv::opposite(x), f);
        case Kind::Shift: break;
    }
    const auto& y = impl_->y;
    if (!inner().is_member(product(y, x), f)) return false;
    if (!impl_->eq) return true;
    // dia_{Y,X}(F) must send each morphism of Y to an isomorphism of D(X);
    // by strong saturation this is a pointwise weak-equivalence test.
    for (int u = 0; u < y->num_morphisms(); ++u) {
        if (y->is_identity(u)) continue;
        const FinNatTrans c = inner().cell(point_times(y, x, u));
        for (int m : c.components)
            if (!impl_->base.is_weq(f.objects[f.shape->src(m)], f.objects[f.shape->tgt(m)], f.morphisms[m]))
                return false;
    }
    return true;
}

std::vector<DiagramObject> Prederivator::enumerate(const CatPtr& x, int bound) const {
    switch (impl_->kind) {
        case Kind::Represented: return enumerate_diagrams(impl_->base, x, bound);
        case Kind::Opposite: return inner().enumerate(kderiv::opposite(x), bound);
        case Kind::Shift: break;
    }
    std::vector<DiagramObject> out;
    for (auto& f : inner().enumerate(product(impl_->y, x), bound))
        if (is_member(x, f)) out.push_back(std::move(f));
    return out;
}

std::vector<DiagramMorphism> Prederivator::hom(const DiagramObject& f, const DiagramObject& g) const {
    if (!exact_ho()) throw CapabilityError("hom-sets of " + name() + " need an exact homotopy category");
    if (impl_->kind == Kind::Opposite) return inner().hom(g, f);
    return enumerate_diagram_morphisms(impl_->base, f, g);
}

bool Prederivator::is_iso(const DiagramObject& f, const DiagramObject& g, const DiagramMorphism& m) const {
    if (impl_->kind == Kind::Opposite) return inner().is_iso(g, f, m);
    const auto& b = impl_->base;
    for (const auto& inv : hom(g, f))
        if (compose(b, inv, m) == identity(b, f) && compose(b, m, inv) == identity(b, g)) return true;
    return false;
}

DiagramObject Prederivator::left_kan(const FinFunctor& f, const DiagramObject& x) const {
    switch (impl_->kind) {
        case Kind::Opposite: throw CapabilityError("left Kan extensions of an opposite prederivator are right Kan extensions");
        case Kind::Shift: return inner().left_kan(left_times(impl_->y, f), x);
        case Kind::Represented: break;
    }
    if (!exact_ho()) throw CapabilityError("left_kan needs an exact homotopy category");
    return kderiv::left_kan(impl_->base, make_kan_plan(f), x).value;
}

DiaFunctor dia(const Prederivator& d, const CatPtr& x, const CatPtr& y, const DiagramObject& f) {
    if (!same_category(f.shape, d.shape(product(x, y)))) throw InvalidArgument("dia: shape mismatch");
    DiaFunctor out;
    for (int o = 0; o < x->num_objects(); ++o) {
        const FinNatTrans c = point_times(x, y, x->identity(o));
        out.objects.push_back(d.inverse_image(c.src, f));
    }
    for (int u = 0; u < x->num_morphisms(); ++u) out.morphisms.push_back(d.two_cell(point_times(x, y, u), f));
    return out;
}

// -- axioms ------------------------------------------------------------------------

namespace {
const std::size_t kSamples = 48;

AxiomReport report(std::string axiom, std::vector<std::string> shapes, int bound) {
    AxiomReport r;
    r.axiom = std::move(axiom);
    r.shapes = std::move(shapes);
    r.bound = bound;
    return r;
}

template <class T>
std::vector<T> head(std::vector<T> v, std::size_t n) {
    if (v.size() > n) v.resize(n);
    return v;
}
}  // namespace

AxiomReport check_der1(const Prederivator& d, const CatPtr& x, const CatPtr& y, int bound) {
    AxiomReport r = report("Der1", {x->name(), y->name()}, bound);
    const auto xy = coproduct(x, y);
    const FinFunctor inl = coproduct_inclusion(x, y, true), inr = coproduct_inclusion(x, y, false);
    const auto both = d.enumerate(xy, bound);
    const auto lx = d.enumerate(x, bound), ly = d.enumerate(y, bound);
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& f : both) {
        const auto p = std::make_pair(d.inverse_image(inl, f).key(), d.inverse_image(inr, f).key());
        if (!seen.insert(p).second) {
            r.pass = false;
            r.counterexample = "two objects of D(X⊔Y) with the same restrictions";
            return r;
        }
    }
    if (seen.size() != lx.size() * ly.size()) {
        r.pass = false;
        r.counterexample = "D(X⊔Y) -> D(X)×D(Y) is not onto at the bound";
        return r;
    }
    const auto sample = head(both, 12);
    for (const auto& f : sample)
        for (const auto& g : sample) {
            const auto h = d.hom(f, g);
            const auto fx = d.inverse_image(inl, f), gx = d.inverse_image(inl, g);
            const auto fy = d.inverse_image(inr, f), gy = d.inverse_image(inr, g);
            std::set<std::string> images;
            for (const auto& m : h) images.insert(pull(m, d.functor(inl)).key() + "/" + pull(m, d.functor(inr)).key());
            ++r.checked;
            if (images.size() != h.size() || h.size() != d.hom(fx, gx).size() * d.hom(fy, gy).size()) {
                r.pass = false;
                r.counterexample = "hom-set comparison fails for " + f.key() + " -> " + g.key();
                return r;
            }
        }
    const auto empty = d.enumerate(empty_category(), bound);
    if (empty.size() != 1) {
        r.pass = false;
        r.counterexample = "D(∅) is not the terminal category";
    }
    r.checked += static_cast<long long>(both.size());
    return r;
}

AxiomReport check_der2(const Prederivator& d, const CatPtr& x, int bound) {
    AxiomReport r = report("Der2", {x->name()}, bound);
    const auto objs = head(d.enumerate(x, bound), kSamples);
    const auto& b = d.base();
    for (const auto& f : objs)
        for (const auto& g : objs) {
            if (f.objects.size() != g.objects.size()) continue;
            for (const auto& m : d.hom(f, g)) {
                ++r.checked;
                const bool global = d.is_iso(f, g, m);
                const bool pointwise = is_pointwise_iso(b, f, g, m);
                if (global != pointwise) {
                    r.pass = false;
                    r.counterexample = "morphism " + m.key() + " from " + f.key() + " to " + g.key();
                    return r;
                }
            }
        }
    return r;
}

AxiomReport check_der3_der4(const Prederivator& d, const FinFunctor& f, int y, int bound) {
    AxiomReport r = report("Der3/Der4", {f.src->name(), f.tgt->name(), f.tgt->object(y)}, bound);
    if (d.kind() != Prederivator::Kind::Represented || !d.exact_ho())
        throw CapabilityError("Der3/Der4 checks need a represented prederivator with exact homotopy category");
    const auto& b = d.base();
    const KanPlan plan = make_kan_plan(f);
    const CommaData& cd = plan.commas[y];
    const KanPlan pplan = make_kan_plan(cd.p);
    const auto samples = head(d.enumerate(f.src, bound), kSamples);
    const auto targets = head(d.enumerate(f.tgt, bound), 10);
    for (const auto& F : samples) {
        const KanResult k = left_kan(b, plan, F);
        const DiagramObject& G = k.value;
        // c_{f,y}: p_! j*F -> p_! j*f*f_!F -> p_! p*i_y*f_!F -> i_y*f_!F
        const DiagramObject jF = pull(F, cd.j);
        const KanResult lhs = left_kan(b, pplan, jF);
        const DiagramMorphism eta = kan_unit(plan, k);
        DiagramMorphism psi;
        for (const auto& [x, a] : cd.entries) psi.components.push_back(b.compose(G.morphisms[a], eta.components[x]));
        const DiagramObject gy = constant_diagram(b, terminal(), G.objects[y]);
        const DiagramObject pgy = pull(gy, cd.p);
        const KanResult mid = left_kan(b, pplan, pgy);
        const DiagramMorphism p_psi = kan_on_morphism(b, pplan, lhs, mid, psi);
        const DiagramMorphism eps = kan_counit(b, pplan, mid, gy);
        const BaseMorphism c = b.compose(eps.components[0], p_psi.components[0]);
        ++r.checked;
        if (!b.is_iso(lhs.value.objects[0], G.objects[y], c)) {
            r.pass = false;
            r.counterexample = "c_{f,y} not invertible on " + F.key();
            return r;
        }
        // adjunction f_! ⊣ f*: φ ↦ f*φ ∘ η is a bijection
        for (const auto& T : targets) {
            const auto left = d.hom(G, T);
            const DiagramObject fT = pull(T, f);
            const auto right = d.hom(F, fT);
            std::set<std::string> images;
            for (const auto& phi : left) images.insert(compose(b, pull(phi, f), eta).key());
            ++r.checked;
            if (left.size() != right.size() || images.size() != left.size()) {
                r.pass = false;
                r.counterexample = "adjunction bijection fails for " + F.key() + " and " + T.key();
                return r;
            }
        }
    }
    return r;
}

AxiomReport check_der5(const Prederivator& d, const std::string& label, const std::vector<std::string>& vertices,
                       const std::vector<Arrow>& graph, const CatPtr& x, int bound) {
    AxiomReport r = report("Der5", {label, x->name()}, bound);
    std::string g = "graph{";
    for (const auto& e : graph) g += e.id + ":" + vertices[e.src] + "->" + vertices[e.tgt] + ";";
    r.note = g + "} verified at bound " + std::to_string(bound);
    const auto& b = d.base();
    const CatPtr i_cat = free_category(label, vertices, graph);
    const CatPtr ix = product(i_cat, x);
    const auto dx = d.enumerate(x, bound);
    // essential surjectivity: every functor I -> D(X) (free on the graph) is
    // literally dia(G) for the assembled G
    std::vector<int> pick(vertices.size(), 0);
    std::vector<std::vector<int>> edge_idx(graph.size());
    for (std::size_t e = 0; e < graph.size(); ++e) edge_idx[e] = {i_cat->morphism_index(graph[e].id)};
    for (;;) {
        std::vector<std::vector<DiagramMorphism>> cand;
        for (const auto& e : graph) cand.push_back(d.hom(dx[pick[e.src]], dx[pick[e.tgt]]));
        std::vector<std::size_t> ci(graph.size(), 0);
        bool done = false;
        for (const auto& c : cand)
            if (c.empty()) done = true;
        while (!done) {
            // assemble G on I×X
            const int nx = x->num_objects(), mx = x->num_morphisms();
            std::vector<BaseObject> objs(ix->num_objects());
            for (int i = 0; i < i_cat->num_objects(); ++i)
                for (int o = 0; o < nx; ++o) objs[i * nx + o] = dx[pick[i]].objects[o];
            std::map<int, BaseMorphism> gens;
            // value of a path u: i -> i' at x is the composite of edge components
            std::function<BaseMorphism(int, int)> path_at = [&](int u, int o) -> BaseMorphism {
                const int s = i_cat->src(u);
                if (i_cat->is_identity(u)) return b.identity(dx[pick[s]].objects[o]);
                for (std::size_t e = 0; e < graph.size(); ++e) {
                    const int em = edge_idx[e][0];
                    if (em == u) return cand[e][ci[e]].components[o];
                    for (int rest = 0; rest < i_cat->num_morphisms(); ++rest)
                        if (!i_cat->is_identity(rest) && i_cat->compose(rest, em) == u)
                            return b.compose(path_at(rest, o), cand[e][ci[e]].components[o]);
                }
                throw CheckFailure("path decomposition failed");
            };
            DiagramObject G;
            G.shape = ix;
            G.objects = objs;
            G.morphisms.resize(ix->num_morphisms());
            for (int u = 0; u < i_cat->num_morphisms(); ++u)
                for (int m = 0; m < mx; ++m) {
                    const int tgt_x = x->tgt(m);
                    const DiagramObject& src_d = dx[pick[i_cat->src(u)]];
                    G.morphisms[u * mx + m] = b.compose(path_at(u, tgt_x), src_d.morphisms[m]);
                }
            ++r.checked;
            const auto problems = validate_diagram(b, G);
            const DiaFunctor df = dia(d, i_cat, x, G);
            bool same = problems.empty();
            for (int i = 0; same && i < i_cat->num_objects(); ++i)
                same = df.objects[i].objects == dx[pick[i]].objects && df.objects[i].morphisms == dx[pick[i]].morphisms;
            for (std::size_t e = 0; same && e < graph.size(); ++e)
                same = df.morphisms[edge_idx[e][0]] == cand[e][ci[e]];
            if (!same) {
                r.pass = false;
                r.counterexample = "functor I -> D(X) not in the image of dia";
                return r;
            }
            std::size_t k = graph.size();
            while (true) {
                if (k == 0) {
                    done = true;
                    break;
                }
                --k;
                if (++ci[k] < cand[k].size()) break;
                ci[k] = 0;
            }
            if (graph.empty()) done = true;
        }
        int v = static_cast<int>(vertices.size()) - 1;
        while (v >= 0 && ++pick[v] == static_cast<int>(dx.size())) pick[v--] = 0;
        if (v < 0) break;
    }
    // fullness: every transformation dia(F) => dia(G) lifts
    const auto samples = head(d.enumerate(ix, bound), 24);
    for (const auto& F : samples)
        for (const auto& G : samples) {
            const DiaFunctor a = dia(d, i_cat, x, F), c = dia(d, i_cat, x, G);
            std::vector<std::vector<DiagramMorphism>> cand;
            for (int i = 0; i < i_cat->num_objects(); ++i) cand.push_back(d.hom(a.objects[i], c.objects[i]));
            std::vector<std::size_t> ci(cand.size(), 0);
            bool done = false;
            for (const auto& v : cand)
                if (v.empty()) done = true;
            while (!done) {
                bool natural = true;
                for (const auto& e : graph) {
                    const int u = i_cat->morphism_index(e.id);
                    if (!(compose(b, c.morphisms[u], cand[e.src][ci[e.src]]) ==
                          compose(b, cand[e.tgt][ci[e.tgt]], a.morphisms[u])))
                        natural = false;
                }
                if (natural) {
                    DiagramMorphism lift;
                    const int nx = x->num_objects();
                    lift.components.resize(ix->num_objects());
                    for (int i = 0; i < i_cat->num_objects(); ++i)
                        for (int o = 0; o < nx; ++o) lift.components[i * nx + o] = cand[i][ci[i]].components[o];
                    ++r.checked;
                    if (!is_diagram_morphism(b, F, G, lift)) {
                        r.pass = false;
                        r.counterexample = "transformation does not lift: " + F.key() + " -> " + G.key();
                        return r;
                    }
                }
                std::size_t k = cand.size();
                while (true) {
                    if (k == 0) {
                        done = true;
                        break;
                    }
                    --k;
                    if (++ci[k] < cand[k].size()) break;
                    ci[k] = 0;
                }
            }
        }
    return r;
}

bool is_cocartesian_kan(const Prederivator& d, const DiagramObject& f) {
    if (!d.exact_ho()) throw CapabilityError("the Kan-extension test needs an exact homotopy category");
    if (d.kind() == Prederivator::Kind::Opposite) throw CapabilityError("cocartesian test on an opposite prederivator");
    const FinFunctor i = d.functor(inclusion_ulcorner());
    const KanPlan plan = make_kan_plan(i);
    const KanResult k = left_kan(d.base(), plan, pull(f, i));
    const DiagramMorphism eps = kan_counit(d.base(), plan, k, f);
    return is_pointwise_iso(d.base(), k.value, f, eps);
}

bool is_cocartesian_pointwise(const Prederivator& d, const DiagramObject& f) {
    switch (d.kind()) {
        case Prederivator::Kind::Represented: return d.base().ho_cocartesian(square_of(f));
        case Prederivator::Kind::Opposite: throw CapabilityError("cocartesian test on an opposite prederivator");
        case Prederivator::Kind::Shift: break;
    }
    const auto& y = d.shift_shape();
    const CatPtr sq = square();
    for (int o = 0; o < y->num_objects(); ++o) {
        const FinNatTrans c = point_times(y, sq, y->identity(o));
        if (!is_cocartesian_pointwise(d.inner(), pull(f, d.inner().functor(c.src)))) return false;
    }
    return true;
}

bool is_cocartesian(const Prederivator& d, const DiagramObject& f) {
    return d.exact_ho() ? is_cocartesian_kan(d, f) : is_cocartesian_pointwise(d, f);
}

bool check_cocontinuous(const HomotopicalBase& b, const BaseFunctor& phi, const FinFunctor& f, int bound,
                        std::string* counterexample) {
    const KanPlan plan = make_kan_plan(f);
    for (const auto& F : enumerate_diagrams(b, f.src, bound)) {
        const KanResult k = left_kan(b, plan, F);
        const KanResult kphi = left_kan(b, plan, apply_functor(b, phi, F));
        for (int y = 0; y < f.tgt->num_objects(); ++y) {
            std::vector<BaseMorphism> cocone;
            const auto& e = plan.commas[y].entries;
            const BaseObject target = phi.on_object(b, k.value.objects[y]);
            for (int i = 0; i < static_cast<int>(e.size()); ++i)
                cocone.push_back(phi.on_morphism(b, F.objects[e[i].first], k.value.objects[y], k.colims[y].legs[i]));
            const BaseMorphism mate = b.mediate(kphi.colims[y], cocone, target);
            if (!b.is_iso(kphi.value.objects[y], target, mate)) {
                if (counterexample) *counterexample = F.key() + " at " + f.tgt->object(y);
                return false;
            }
        }
    }
    return true;
}

}  // namespace kderiv
