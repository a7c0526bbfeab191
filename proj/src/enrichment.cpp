#include "kderiv/enrichment.hpp"

#include "kderiv/errors.hpp"

namespace kderiv {

namespace {

const std::size_t kPerShape = 40;

std::vector<DiagramObject> samples(const Prederivator& d, const CatPtr& x, int bound) {
    auto v = d.enumerate(x, bound);
    if (v.size() > kPerShape) v.resize(kPerShape);
    return v;
}

/// [n]×X -> [n]×([n]×X), (i, x) ↦ (i, (i, x)).
FinFunctor diagonal_times(int n, const CatPtr& x) {
    const CatPtr ord = ordinal(n);
    return pairing(projection1(ord, x), identity_functor(product(ord, x)));
}

/// X -> [n]×X, x ↦ (i, x).
FinFunctor vertex_times(int n, int i, const CatPtr& x) {
    return pairing(compose(point_functor(ordinal(n), i), to_terminal(x)), identity_functor(x));
}

FinFunctor unit_section(const CatPtr& x) { return pairing(to_terminal(x), identity_functor(x)); }

void fail(Verification& v, std::string what) {
    if (v.pass) v.failure = std::move(what);
    v.pass = false;
}

}  // namespace

// -- strict morphisms ------------------------------------------------------------

StrictMorphism identity_morphism(const Prederivator& d) {
    return {d, d, "id", [](const CatPtr&, const DiagramObject& f) { return f; }};
}

StrictMorphism postcompose(const Prederivator& d, const BaseFunctor& phi) {
    if (d.kind() != Prederivator::Kind::Represented) throw InvalidArgument("postcompose needs a represented prederivator");
    const HomotopicalBase b = d.base();
    return {d, d, "post(" + phi.name() + ")",
            [b, phi](const CatPtr&, const DiagramObject& f) { return apply_functor(b, phi, f); }};
}

StrictMorphism inverse_image_morphism(const Prederivator& src, const Prederivator& tgt, std::string name,
                                      std::function<FinFunctor(const CatPtr&)> u) {
    return {src, tgt, std::move(name), [u](const CatPtr& x, const DiagramObject& f) {
                return pull(f, u(x));
            }};
}

StrictMorphism compose(const StrictMorphism& g, const StrictMorphism& f) {
    auto fa = f.apply, ga = g.apply;
    return {f.src, g.tgt, g.name + "∘" + f.name,
            [fa, ga](const CatPtr& x, const DiagramObject& o) { return ga(x, fa(x, o)); }};
}

// -- simplices --------------------------------------------------------------------

EnrichedSimplex as_simplex(const StrictMorphism& f) {
    const Prederivator tgt = f.tgt;
    auto fa = f.apply;
    return {0, f.src, f.tgt, true, f.name, [tgt, fa](const CatPtr& x, const DiagramObject& o) {
                return pull(fa(x, o), tgt.functor(projection2(ordinal(0), x)));
            }};
}

StrictMorphism vertex(const EnrichedSimplex& s) {
    if (s.level != 0) throw InvalidArgument("vertex: not a 0-simplex");
    const Prederivator tgt = s.tgt;
    auto sa = s.apply;
    return {s.src, s.tgt, s.name, [tgt, sa](const CatPtr& x, const DiagramObject& o) {
                return pull(sa(x, o), tgt.functor(unit_section(x)));
            }};
}

EnrichedSimplex simplicial_operator(const EnrichedSimplex& s, const FinFunctor& theta) {
    if (theta.tgt->num_objects() != s.level + 1) throw InvalidArgument("simplicial_operator: level mismatch");
    const int m = theta.src->num_objects() - 1;
    const Prederivator tgt = s.tgt;
    auto sa = s.apply;
    return {m, s.src, s.tgt, s.eq, s.name, [tgt, sa, theta](const CatPtr& x, const DiagramObject& o) {
                return pull(sa(x, o), tgt.functor(product_functor(theta, identity_functor(x))));
            }};
}

EnrichedSimplex face(const EnrichedSimplex& s, int i) {
    auto out = simplicial_operator(s, coface(s.level, i));
    out.name = "d" + std::to_string(i) + "(" + s.name + ")";
    return out;
}

EnrichedSimplex degeneracy(const EnrichedSimplex& s, int i) {
    auto out = simplicial_operator(s, codegeneracy(s.level, i));
    out.name = "s" + std::to_string(i) + "(" + s.name + ")";
    return out;
}

EnrichedSimplex compose_simplices(const EnrichedSimplex& psi, const EnrichedSimplex& phi) {
    if (psi.level != phi.level) throw InvalidArgument("compose_simplices: level mismatch");
    const int n = phi.level;
    const Prederivator tgt = psi.tgt;
    auto pa = phi.apply, qa = psi.apply;
    return {n, phi.src, psi.tgt, phi.eq && psi.eq, psi.name + "∘" + phi.name,
            [n, tgt, pa, qa](const CatPtr& x, const DiagramObject& o) {
                const CatPtr nx = product(ordinal(n), x);
                return pull(qa(nx, pa(x, o)), tgt.functor(diagonal_times(n, x)));
            }};
}

EnrichedSimplex alpha_star(const Prederivator& d, const BaseNatTrans& alpha) {
    if (d.kind() != Prederivator::Kind::Represented) throw InvalidArgument("alpha_star needs a represented prederivator");
    const HomotopicalBase b = d.base();
    return {1, d, d, true, alpha.name() + "_*", [b, alpha](const CatPtr& x, const DiagramObject& f) {
                const CatPtr one = ordinal(1);
                const CatPtr sx = product(one, x);
                const int nx = x->num_objects(), mx = x->num_morphisms();
                const BaseFunctor& s = alpha.src;
                const BaseFunctor& t = alpha.tgt;
                DiagramObject out;
                out.shape = sx;
                out.objects.resize(sx->num_objects());
                out.morphisms.resize(sx->num_morphisms());
                for (int o = 0; o < nx; ++o) {
                    out.objects[o] = s.on_object(b, f.objects[o]);
                    out.objects[nx + o] = t.on_object(b, f.objects[o]);
                }
                for (int u = 0; u < one->num_morphisms(); ++u)
                    for (int m = 0; m < mx; ++m) {
                        const BaseObject& a = f.objects[x->src(m)];
                        const BaseObject& c = f.objects[x->tgt(m)];
                        BaseMorphism v;
                        if (one->src(u) == 1) {
                            v = t.on_morphism(b, a, c, f.morphisms[m]);
                        } else {
                            v = s.on_morphism(b, a, c, f.morphisms[m]);
                            if (one->tgt(u) == 1) v = b.compose(alpha.component(b, c), v);
                        }
                        out.morphisms[u * mx + m] = v;
                    }
                return out;
            }};
}

bool eq_membership(const Prederivator& d, const CatPtr& y, const CatPtr& x, const DiagramObject& f) {
    return Prederivator::shift(d, y, true).is_member(x, f);
}

// -- batteries ---------------------------------------------------------------------

std::vector<CatPtr> shape_battery() { return {terminal(), ordinal(1), ulcorner()}; }

std::vector<FinFunctor> functor_battery() {
    return {identity_functor(ordinal(1)), to_terminal(ordinal(1)), point_functor(ordinal(1), 0),
            point_functor(ordinal(1), 1), inclusion_ulcorner(), to_terminal(ulcorner()),
            point_functor(ulcorner(), 0)};
}

Verification check_strict(const StrictMorphism& f, int bound) {
    Verification v;
    for (const auto& u : functor_battery()) {
        for (const auto& a : samples(f.src, u.tgt, bound)) {
            ++v.checked;
            const DiagramObject lhs = f.apply(u.src, f.src.inverse_image(u, a));
            const DiagramObject rhs = f.tgt.inverse_image(u, f.apply(u.tgt, a));
            if (!(lhs == rhs)) {
                fail(v, f.name + " is not strict along " + u.src->name() + " -> " + u.tgt->name());
                return v;
            }
        }
    }
    return v;
}

Verification check_strict(const EnrichedSimplex& s, int bound) {
    const Prederivator t = s.target();
    return check_strict(StrictMorphism{s.src, t, s.name, s.apply}, bound);
}

Verification check_eq(const EnrichedSimplex& s, int bound) {
    Verification v;
    const Prederivator t = s.target();
    for (const auto& x : shape_battery())
        for (const auto& a : samples(s.src, x, bound)) {
            ++v.checked;
            if (!t.is_member(x, s.apply(x, a))) {
                fail(v, s.name + " leaves the eq part on " + x->name());
                return v;
            }
        }
    return v;
}

Verification check_equal(const StrictMorphism& a, const StrictMorphism& b, int bound) {
    Verification v;
    for (const auto& x : shape_battery())
        for (const auto& f : samples(a.src, x, bound)) {
            ++v.checked;
            if (!(a.apply(x, f) == b.apply(x, f))) {
                fail(v, a.name + " and " + b.name + " differ on " + x->name());
                return v;
            }
        }
    return v;
}

Verification check_equal(const EnrichedSimplex& a, const EnrichedSimplex& b, int bound) {
    if (a.level != b.level) {
        Verification v;
        fail(v, "levels differ");
        return v;
    }
    return check_equal(StrictMorphism{a.src, a.target(), a.name, a.apply},
                       StrictMorphism{b.src, b.target(), b.name, b.apply}, bound);
}

// -- homotopies ----------------------------------------------------------------------

Homotopy homotopy_boundaries(const EnrichedSimplex& psi) {
    if (psi.level != 1) throw InvalidArgument("homotopy_boundaries: not a 1-simplex");
    if (!psi.eq) throw InvalidArgument("homotopy_boundaries: " + psi.name + " is not eq-valued");
    Homotopy h{vertex(face(psi, 1)), vertex(face(psi, 0)), {}};
    const Prederivator tgt = psi.tgt;
    auto pa = psi.apply;
    h.transformation = [tgt, pa](const CatPtr& x, const DiagramObject& f) {
        const CatPtr one = ordinal(1);
        return dia(tgt, one, x, pa(x, f)).morphisms[one->hom(0, 1).at(0)];
    };
    return h;
}

namespace {
bool invertible(const Prederivator& d, const DiagramObject& a, const DiagramObject& b, const DiagramMorphism& m) {
    return d.exact_ho() ? is_pointwise_iso(d.base(), a, b, m) : is_pointwise_weq(d.base(), a, b, m);
}
}  // namespace

Verification check_homotopy(const Homotopy& h, int bound) {
    Verification v;
    const HomotopicalBase& b = h.phi0.tgt.base();
    for (const auto& x : shape_battery())
        for (const auto& f : samples(h.phi0.src, x, bound)) {
            ++v.checked;
            const DiagramObject a = h.phi0.apply(x, f), c = h.phi1.apply(x, f);
            const DiagramMorphism m = h.transformation(x, f);
            if (!is_diagram_morphism(b, a, c, m) || !invertible(h.phi0.tgt, a, c, m)) {
                fail(v, "induced transformation not invertible on " + x->name());
                return v;
            }
        }
    return v;
}

PathObject path_object(const Prederivator& d) {
    const Prederivator p = Prederivator::shift(d, ordinal(1), true);
    PathObject out{inverse_image_morphism(d, p, "s0", [](const CatPtr& x) { return projection2(ordinal(1), x); }),
                   inverse_image_morphism(p, d, "d1", [](const CatPtr& x) { return vertex_times(1, 0, x); }),
                   inverse_image_morphism(p, d, "d0", [](const CatPtr& x) { return vertex_times(1, 1, x); })};
    return out;
}

Verification check_path_object(const PathObject& p, int bound) {
    Verification v;
    const Prederivator& d = p.s0.src;
    const Prederivator& path = p.s0.tgt;
    for (const auto& x : shape_battery())
        for (const auto& f : samples(d, x, bound)) {
            ++v.checked;
            const DiagramObject s = p.s0.apply(x, f);
            if (!path.is_member(x, s)) {
                fail(v, "s0 image outside the eq part on " + x->name());
                return v;
            }
            if (!(p.d1.apply(x, s) == f) || !(p.d0.apply(x, s) == f)) {
                fail(v, "(d1, d0)∘s0 is not the diagonal on " + x->name());
                return v;
            }
        }
    return v;
}

StrongEquivalence strong_equivalence_from_initial(const Prederivator& d, const CatPtr& x, int x0, int bound) {
    for (int o = 0; o < x->num_objects(); ++o)
        if (x->hom(x0, o).size() != 1) throw InvalidArgument(x->object(x0) + " is not initial in " + x->name());
    const CatPtr e = terminal();
    const Prederivator de = Prederivator::shift(d, e, true);
    const Prederivator dx = Prederivator::shift(d, x, true);
    StrongEquivalence out{dx,
                          inverse_image_morphism(de, dx, "(p×−)*", [x](const CatPtr& z) {
                              return product_functor(to_terminal(x), identity_functor(z));
                          }),
                          inverse_image_morphism(dx, de, "(i×−)*", [x, x0](const CatPtr& z) {
                              return product_functor(point_functor(x, x0), identity_functor(z));
                          }),
                          {},
                          {},
                          {},
                          {},
                          {}};
    // H(0,−) = x0, H(1,−) = id
    const CatPtr one = ordinal(1);
    const CatPtr hx = product(one, x);
    out.h = FinFunctor{hx, x, {}, {}};
    for (int i = 0; i < 2; ++i)
        for (int o = 0; o < x->num_objects(); ++o) out.h.object_map.push_back(i == 0 ? x0 : o);
    for (int u = 0; u < one->num_morphisms(); ++u)
        for (int m = 0; m < x->num_morphisms(); ++m) {
            if (one->src(u) == 1) out.h.morphism_map.push_back(m);
            else if (one->tgt(u) == 0) out.h.morphism_map.push_back(x->identity(x0));
            else out.h.morphism_map.push_back(x->hom(x0, x->tgt(m)).at(0));
        }
    // D_X(Z) holds diagrams on X×Z; a 1-simplex value lives on X×([1]×Z)
    const FinFunctor h = out.h;
    out.homotopy = {1, dx, dx, true, "(H×−)*", [d, h, x](const CatPtr& z, const DiagramObject& f) {
                        const CatPtr one = ordinal(1);
                        const CatPtr oz = product(one, z);
                        const CatPtr src = product(x, oz);
                        const CatPtr tgt = product(x, z);
                        const int nz = z->num_objects(), mz = z->num_morphisms();
                        const int noz = oz->num_objects(), moz = oz->num_morphisms();
                        FinFunctor k{src, tgt, std::vector<int>(src->num_objects()),
                                     std::vector<int>(src->num_morphisms())};
                        for (int a = 0; a < x->num_objects(); ++a)
                            for (int i = 0; i < 2; ++i)
                                for (int c = 0; c < nz; ++c)
                                    k.object_map[a * noz + i * nz + c] = h(i * x->num_objects() + a) * nz + c;
                        for (int m = 0; m < x->num_morphisms(); ++m)
                            for (int u = 0; u < one->num_morphisms(); ++u)
                                for (int n = 0; n < mz; ++n)
                                    k.morphism_map[m * moz + u * mz + n] =
                                        h.on_morphism(u * x->num_morphisms() + m) * mz + n;
                        return pull(f, d.functor(k));
                    }};
    // i*p* = id on D(e×−)
    const StrictMorphism ip = compose(out.i_star, out.p_star);
    out.identity_composite = check_equal(ip, identity_morphism(de), bound);
    // ∂1 H* = p*i*, ∂0 H* = id on D(X×−)_eq
    const Homotopy hb = homotopy_boundaries(out.homotopy);
    const StrictMorphism pi = compose(out.p_star, out.i_star);
    Verification b1 = check_equal(hb.phi0, pi, bound);
    Verification b0 = check_equal(hb.phi1, identity_morphism(dx), bound);
    out.boundaries.checked = b1.checked + b0.checked;
    if (!b1.pass) fail(out.boundaries, "d1 H* != p*i*: " + b1.failure);
    if (!b0.pass) fail(out.boundaries, "d0 H* != id: " + b0.failure);
    out.eq = check_eq(out.homotopy, bound);
    Verification hv = check_homotopy(hb, bound);
    out.eq.checked += hv.checked;
    if (!hv.pass) fail(out.eq, hv.failure);
    return out;
}

// -- iso_n ------------------------------------------------------------------------------

Prederivator iso_prederivator(const Prederivator& d, int n) {
    if (!d.exact_ho()) throw CapabilityError("iso_n needs enumerable hom-sets (exact homotopy categories)");
    if (n < 0) throw InvalidArgument("iso_prederivator: n must be >= 0");
    return Prederivator::shift(d, ordinal(n), true);
}

StrictMorphism iso_degeneracy(const Prederivator& d, int n) {
    return inverse_image_morphism(d, iso_prederivator(d, n), "const", [n](const CatPtr& x) {
        return projection2(ordinal(n), x);
    });
}

StrictMorphism iso_operator(const Prederivator& d, const FinFunctor& theta) {
    const int n = theta.tgt->num_objects() - 1, m = theta.src->num_objects() - 1;
    return inverse_image_morphism(iso_prederivator(d, n), iso_prederivator(d, m), "θ*", [theta](const CatPtr& x) {
        return product_functor(theta, identity_functor(x));
    });
}

NerveChain rho(const EnrichedSimplex& s) {
    if (!s.eq) throw InvalidArgument("rho: " + s.name + " is not eq-valued");
    NerveChain c;
    const Prederivator tgt = s.tgt;
    auto sa = s.apply;
    const int n = s.level;
    for (int i = 0; i <= n; ++i)
        c.vertices.push_back({s.src, s.tgt, s.name + "@" + std::to_string(i),
                              [tgt, sa, n, i](const CatPtr& x, const DiagramObject& f) {
                                  return pull(sa(x, f), tgt.functor(vertex_times(n, i, x)));
                              }});
    for (int i = 0; i < n; ++i)
        c.edges.push_back([tgt, sa, n, i](const CatPtr& x, const DiagramObject& f) {
            const CatPtr ord = ordinal(n);
            return dia(tgt, ord, x, sa(x, f)).morphisms[ord->hom(i, i + 1).at(0)];
        });
    return c;
}

Verification check_nerve_chain(const NerveChain& c, int bound) {
    Verification v;
    const Prederivator& d = c.vertices.front().tgt;
    const HomotopicalBase& b = d.base();
    for (const auto& x : shape_battery())
        for (const auto& f : samples(c.vertices.front().src, x, bound)) {
            for (std::size_t i = 0; i < c.edges.size(); ++i) {
                ++v.checked;
                const DiagramObject a = c.vertices[i].apply(x, f), t = c.vertices[i + 1].apply(x, f);
                const DiagramMorphism m = c.edges[i](x, f);
                if (!is_diagram_morphism(b, a, t, m) || !invertible(d, a, t, m)) {
                    fail(v, "edge " + std::to_string(i) + " is not an isomorphism on " + x->name());
                    return v;
                }
            }
        }
    return v;
}

std::string validate(const ModificationChain& c) {
    if (c.psi.empty()) return "empty chain";
    if (c.beta.size() + 1 != c.psi.size()) return "need one modification per consecutive pair";
    for (std::size_t r = 0; r < c.beta.size(); ++r)
        if (!(c.beta[r].src == c.psi[r]) || !(c.beta[r].tgt == c.psi[r + 1]))
            return "modification " + std::to_string(r + 1) + " has the wrong endpoints";
    return {};
}

}  // namespace kderiv
