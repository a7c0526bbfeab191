#include "kderiv/fincat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "kderiv/errors.hpp"

namespace kderiv {

namespace {

std::uint64_t fnv(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
    return h;
}

std::uint64_t fnv(std::uint64_t h, long long v) {
    for (int i = 0; i < 8; ++i) {
        h ^= static_cast<unsigned char>(v >> (8 * i));
        h *= 1099511628211ULL;
    }
    return h;
}

CatPtr make(std::string name, std::vector<std::string> objects, std::vector<Arrow> morphisms,
            std::vector<int> identities, std::vector<int> composition) {
    return std::make_shared<const FinCat>(std::move(name), std::move(objects), std::move(morphisms),
                                          std::move(identities), std::move(composition));
}

CatPtr renamed(const CatPtr& c, std::string name) {
    return make(std::move(name), c->objects(), c->morphisms(), c->identities(), c->composition());
}

int unique_hom(const FinCat& c, int a, int b) {
    const auto& h = c.hom(a, b);
    if (h.size() != 1) {
        throw InvalidArgument("expected a unique morphism " + c.object(a) + " -> " + c.object(b) +
                              " in " + c.name());
    }
    return h.front();
}

/// Functor into a category with at most one morphism between two objects,
/// determined by its object map.
FinFunctor functor_from_objects(const CatPtr& src, const CatPtr& tgt, std::vector<int> object_map) {
    FinFunctor f{src, tgt, std::move(object_map), {}};
    f.morphism_map.resize(src->num_morphisms());
    for (int m = 0; m < src->num_morphisms(); ++m) {
        f.morphism_map[m] = unique_hom(*tgt, f.object_map[src->src(m)], f.object_map[src->tgt(m)]);
    }
    return f;
}

}  // namespace

FinCat::FinCat(std::string name, std::vector<std::string> objects, std::vector<Arrow> morphisms,
               std::vector<int> identities, std::vector<int> composition)
    : name_(std::move(name)),
      objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      composition_(std::move(composition)) {
    const auto n = objects_.size();
    const auto m = morphisms_.size();
    if (identities_.size() != n) identities_.resize(n, -1);
    if (composition_.size() != m * m) composition_.resize(m * m, -1);
    hom_.assign(n * n, {});
    for (std::size_t i = 0; i < m; ++i) {
        const auto& a = morphisms_[i];
        if (a.src >= 0 && a.tgt >= 0 && static_cast<std::size_t>(a.src) < n &&
            static_cast<std::size_t>(a.tgt) < n) {
            hom_[a.src * n + a.tgt].push_back(static_cast<int>(i));
        }
    }
    for (std::size_t i = 0; i < n; ++i) object_lookup_.emplace(objects_[i], static_cast<int>(i));
    for (std::size_t i = 0; i < m; ++i) morphism_lookup_.emplace(morphisms_[i].id, static_cast<int>(i));

    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& o : objects_) h = fnv(h, o);
    for (const auto& a : morphisms_) {
        h = fnv(h, a.id);
        h = fnv(h, a.src);
        h = fnv(h, a.tgt);
    }
    for (int c : composition_) h = fnv(h, c);
    fingerprint_ = h;
}

int FinCat::object_index(const std::string& id) const {
    auto it = object_lookup_.find(id);
    if (it == object_lookup_.end()) throw InvalidArgument("no object '" + id + "' in " + name_);
    return it->second;
}

int FinCat::morphism_index(const std::string& id) const {
    auto it = morphism_lookup_.find(id);
    if (it == morphism_lookup_.end()) throw InvalidArgument("no morphism '" + id + "' in " + name_);
    return it->second;
}

bool FinCat::is_identity(int m) const {
    const int s = morphisms_[m].src;
    return s >= 0 && s < num_objects() && identities_[s] == m;
}

bool FinCat::operator==(const FinCat& other) const {
    return fingerprint_ == other.fingerprint_ && objects_ == other.objects_ &&
           morphisms_ == other.morphisms_ && identities_ == other.identities_ &&
           composition_ == other.composition_;
}

bool same_category(const CatPtr& a, const CatPtr& b) {
    return a.get() == b.get() || (a && b && *a == *b);
}

bool FinFunctor::operator==(const FinFunctor& other) const {
    return same_category(src, other.src) && same_category(tgt, other.tgt) &&
           object_map == other.object_map && morphism_map == other.morphism_map;
}

// -- validation ----------------------------------------------------------------

std::vector<std::string> validate(const FinCat& c) {
    std::vector<std::string> out;
    const int n = c.num_objects();
    const int m = c.num_morphisms();
    for (int i = 0; i < m; ++i) {
        const auto& a = c.morphism(i);
        if (a.src < 0 || a.src >= n || a.tgt < 0 || a.tgt >= n) {
            out.push_back("morphism " + a.id + " has undeclared source or target");
        }
    }
    if (!out.empty()) return out;

    for (int o = 0; o < n; ++o) {
        const int id = c.identity(o);
        if (id < 0 || id >= m || c.src(id) != o || c.tgt(id) != o) {
            out.push_back("no identity for object " + c.object(o));
        }
    }
    for (int g = 0; g < m; ++g) {
        for (int f = 0; f < m; ++f) {
            const int gf = c.compose(g, f);
            if (c.tgt(f) != c.src(g)) {
                if (gf != -1) {
                    out.push_back("composition defined on non-composable pair (" + c.morphism(g).id +
                                  ", " + c.morphism(f).id + ")");
                }
                continue;
            }
            if (gf < 0 || gf >= m || c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g)) {
                out.push_back("composition missing or ill-typed on (" + c.morphism(g).id + ", " +
                              c.morphism(f).id + ")");
            }
        }
    }
    if (!out.empty()) return out;

    for (int f = 0; f < m; ++f) {
        const int l = c.identity(c.tgt(f));
        const int r = c.identity(c.src(f));
        if (c.compose(l, f) != f || c.compose(f, r) != f) {
            out.push_back("identities are not units for " + c.morphism(f).id);
        }
    }
    for (int f = 0; f < m; ++f) {
        for (int b = 0; b < n; ++b) {
            for (int g : c.hom(c.tgt(f), b)) {
                for (int d = 0; d < n; ++d) {
                    for (int h : c.hom(b, d)) {
                        if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f)) {
                            out.push_back("associativity fails on (" + c.morphism(h).id + ", " +
                                          c.morphism(g).id + ", " + c.morphism(f).id + ")");
                        }
                    }
                }
            }
        }
    }
    return out;
}

std::vector<std::string> validate(const FinFunctor& f) {
    std::vector<std::string> out;
    const auto& s = *f.src;
    const auto& t = *f.tgt;
    if (static_cast<int>(f.object_map.size()) != s.num_objects() ||
        static_cast<int>(f.morphism_map.size()) != s.num_morphisms()) {
        out.push_back("functor tables have the wrong size");
        return out;
    }
    for (int o = 0; o < s.num_objects(); ++o) {
        if (f.object_map[o] < 0 || f.object_map[o] >= t.num_objects()) {
            out.push_back("object " + s.object(o) + " maps out of range");
            return out;
        }
    }
    for (int m = 0; m < s.num_morphisms(); ++m) {
        const int fm = f.morphism_map[m];
        if (fm < 0 || fm >= t.num_morphisms()) {
            out.push_back("morphism " + s.morphism(m).id + " maps out of range");
            return out;
        }
        if (t.src(fm) != f.object_map[s.src(m)] || t.tgt(fm) != f.object_map[s.tgt(m)]) {
            out.push_back("morphism " + s.morphism(m).id + " does not preserve endpoints");
        }
    }
    for (int o = 0; o < s.num_objects(); ++o) {
        if (f.morphism_map[s.identity(o)] != t.identity(f.object_map[o])) {
            out.push_back("identity of " + s.object(o) + " not preserved");
        }
    }
    for (int g = 0; g < s.num_morphisms(); ++g) {
        for (int h = 0; h < s.num_morphisms(); ++h) {
            const int gh = s.compose(g, h);
            if (gh < 0) continue;
            if (f.morphism_map[gh] != t.compose(f.morphism_map[g], f.morphism_map[h])) {
                out.push_back("composition (" + s.morphism(g).id + ", " + s.morphism(h).id +
                              ") not preserved");
            }
        }
    }
    return out;
}

std::vector<std::string> validate(const FinNatTrans& a) {
    std::vector<std::string> out;
    if (!same_category(a.src.src, a.tgt.src) || !same_category(a.src.tgt, a.tgt.tgt)) {
        out.push_back("natural transformation between functors with different endpoints");
        return out;
    }
    const auto& s = *a.src.src;
    const auto& t = *a.src.tgt;
    if (static_cast<int>(a.components.size()) != s.num_objects()) {
        out.push_back("wrong number of components");
        return out;
    }
    for (int x = 0; x < s.num_objects(); ++x) {
        const int c = a.components[x];
        if (c < 0 || c >= t.num_morphisms() || t.src(c) != a.src(x) || t.tgt(c) != a.tgt(x)) {
            out.push_back("component at " + s.object(x) + " is ill-typed");
            return out;
        }
    }
    for (int m = 0; m < s.num_morphisms(); ++m) {
        const int x = s.src(m);
        const int y = s.tgt(m);
        if (t.compose(a.tgt.on_morphism(m), a.components[x]) !=
            t.compose(a.components[y], a.src.on_morphism(m))) {
            out.push_back("naturality square fails at " + s.morphism(m).id);
        }
    }
    return out;
}

bool is_finite_direct(const FinCat& c) {
    const int n = c.num_objects();
    std::vector<std::vector<int>> adj(n);
    for (int m = 0; m < c.num_morphisms(); ++m) {
        if (c.is_identity(m)) continue;
        if (c.src(m) == c.tgt(m)) return false;
        adj[c.src(m)].push_back(c.tgt(m));
    }
    std::vector<int> indeg(n, 0);
    for (const auto& v : adj)
        for (int w : v) ++indeg[w];
    std::vector<int> stack;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) stack.push_back(i);
    int seen = 0;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int w : adj[v])
            if (--indeg[w] == 0) stack.push_back(w);
    }
    return seen == n;
}

std::vector<int> indecomposables(const FinCat& c) {
    std::vector<bool> composite(c.num_morphisms(), false);
    for (int g = 0; g < c.num_morphisms(); ++g) {
        if (c.is_identity(g)) continue;
        for (int f = 0; f < c.num_morphisms(); ++f) {
            if (c.is_identity(f)) continue;
            const int gf = c.compose(g, f);
            if (gf >= 0) composite[gf] = true;
        }
    }
    std::vector<int> out;
    for (int m = 0; m < c.num_morphisms(); ++m)
        if (!c.is_identity(m) && !composite[m]) out.push_back(m);
    return out;
}

// -- standard shapes ---------------------------------------------------------------

CatPtr make_poset(std::string name, std::vector<std::string> objects,
                  const std::vector<std::vector<bool>>& leq) {
    const int n = static_cast<int>(objects.size());
    std::vector<Arrow> arrows;
    std::vector<int> index(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (!leq[a][b]) continue;
            index[a * n + b] = static_cast<int>(arrows.size());
            arrows.push_back({objects[a] + "->" + objects[b], a, b});
        }
    }
    const auto m = arrows.size();
    std::vector<int> comp(m * m, -1);
    for (std::size_t g = 0; g < m; ++g) {
        for (std::size_t f = 0; f < m; ++f) {
            if (arrows[f].tgt != arrows[g].src) continue;
            comp[g * m + f] = index[arrows[f].src * n + arrows[g].tgt];
        }
    }
    std::vector<int> ids(n);
    for (int a = 0; a < n; ++a) ids[a] = index[a * n + a];
    return make(std::move(name), std::move(objects), std::move(arrows), std::move(ids),
                std::move(comp));
}

CatPtr ordinal_uncached(int n) {
    if (n < 0) throw InvalidArgument("ordinal: n must be >= 0");
    std::vector<std::string> objs;
    for (int i = 0; i <= n; ++i) objs.push_back(std::to_string(i));
    std::vector<std::vector<bool>> leq(n + 1, std::vector<bool>(n + 1, false));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) leq[i][j] = true;
    return make_poset("[" + std::to_string(n) + "]", std::move(objs), leq);
}

CatPtr terminal() { return ordinal(0); }

CatPtr empty_category() { return make("∅", {}, {}, {}, {}); }

CatPtr arrow_cat_uncached(int n) {
    if (n < 0) throw InvalidArgument("arrow_cat: n must be >= 0");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) pairs.emplace_back(i, j);
    std::vector<std::string> objs;
    for (auto [i, j] : pairs) objs.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
    const auto k = pairs.size();
    std::vector<std::vector<bool>> leq(k, std::vector<bool>(k, false));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            leq[a][b] = pairs[a].first <= pairs[b].first && pairs[a].second <= pairs[b].second;
    return make_poset("Ar[" + std::to_string(n) + "]", std::move(objs), leq);
}

CatPtr square() { return renamed(product(ordinal(1), ordinal(1)), "□"); }

CatPtr ulcorner() {
    auto sq = square();
    return full_subcategory(sq, {sq->object_index("(0,0)"), sq->object_index("(1,0)"),
                                 sq->object_index("(0,1)")},
                            "⌜");
}

FinFunctor inclusion_ulcorner() {
    auto sq = square();
    auto ul = ulcorner();
    std::vector<int> om;
    for (const auto& o : ul->objects()) om.push_back(sq->object_index(o));
    FinFunctor f{ul, sq, om, {}};
    for (const auto& a : ul->morphisms()) f.morphism_map.push_back(sq->morphism_index(a.id));
    return f;
}

FinFunctor diagonal(int n) {
    auto o = ordinal(n);
    return pairing(identity_functor(o), identity_functor(o));
}

FinFunctor point_functor(const CatPtr& x_cat, int x) {
    if (x < 0 || x >= x_cat->num_objects()) throw InvalidArgument("point_functor: object out of range");
    return FinFunctor{terminal(), x_cat, {x}, {x_cat->identity(x)}};
}

FinNatTrans point_nat(const CatPtr& x_cat, int g) {
    if (g < 0 || g >= x_cat->num_morphisms()) throw InvalidArgument("point_nat: morphism out of range");
    return FinNatTrans{point_functor(x_cat, x_cat->src(g)), point_functor(x_cat, x_cat->tgt(g)), {g}};
}

FinFunctor to_terminal(const CatPtr& x_cat) {
    return FinFunctor{x_cat, terminal(), std::vector<int>(x_cat->num_objects(), 0),
                      std::vector<int>(x_cat->num_morphisms(), 0)};
}

CatPtr free_category(std::string name, std::vector<std::string> vertices,
                     const std::vector<Arrow>& edges) {
    const int n = static_cast<int>(vertices.size());
    for (const auto& e : edges) {
        if (e.src < 0 || e.src >= n || e.tgt < 0 || e.tgt >= n)
            throw InvalidArgument("free_category: edge " + e.id + " has undeclared endpoint");
    }
    // Paths by DFS; the acyclicity check bounds the search.
    {
        std::vector<Arrow> loops_check = edges;
        std::vector<std::vector<int>> adj(n);
        for (const auto& e : edges) adj[e.src].push_back(e.tgt);
        std::vector<int> state(n, 0);
        std::function<bool(int)> cyc = [&](int v) {
            state[v] = 1;
            for (int w : adj[v]) {
                if (state[w] == 1) return true;
                if (state[w] == 0 && cyc(w)) return true;
            }
            state[v] = 2;
            return false;
        };
        for (int v = 0; v < n; ++v)
            if (state[v] == 0 && cyc(v)) throw InvalidArgument("free_category: graph has a cycle");
    }
    std::vector<std::vector<int>> paths;  // edge index sequences
    std::vector<int> path_src;
    for (int v = 0; v < n; ++v) {
        paths.push_back({});
        path_src.push_back(v);
    }
    std::function<void(int, std::vector<int>&)> extend = [&](int v, std::vector<int>& cur) {
        for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
            if (edges[e].src != v) continue;
            cur.push_back(e);
            paths.push_back(cur);
            path_src.push_back(edges[cur.front()].src);
            extend(edges[e].tgt, cur);
            cur.pop_back();
        }
    };
    for (int v = 0; v < n; ++v) {
        std::vector<int> cur;
        extend(v, cur);
    }
    std::map<std::pair<int, std::vector<int>>, int> lookup;
    std::vector<Arrow> arrows;
    std::vector<int> ids(n);
    for (std::size_t p = 0; p < paths.size(); ++p) {
        const auto& pe = paths[p];
        const int s = path_src[p];
        const int t = pe.empty() ? s : edges[pe.back()].tgt;
        std::string id;
        if (pe.empty()) {
            id = "id(" + vertices[s] + ")";
            ids[s] = static_cast<int>(p);
        } else {
            for (std::size_t k = 0; k < pe.size(); ++k) id += (k ? "*" : "") + edges[pe[k]].id;
        }
        arrows.push_back({id, s, t});
        lookup[{s, pe}] = static_cast<int>(p);
    }
    const auto m = arrows.size();
    std::vector<int> comp(m * m, -1);
    for (std::size_t g = 0; g < m; ++g) {
        for (std::size_t f = 0; f < m; ++f) {
            if (arrows[f].tgt != arrows[g].src) continue;
            std::vector<int> cat = paths[f];
            cat.insert(cat.end(), paths[g].begin(), paths[g].end());
            comp[g * m + f] = lookup.at({arrows[f].src, cat});
        }
    }
    return make(std::move(name), std::move(vertices), std::move(arrows), std::move(ids),
                std::move(comp));
}

FinFunctor ordinal_map(int m, int n, const std::vector<int>& values) {
    if (static_cast<int>(values.size()) != m + 1) throw InvalidArgument("ordinal_map: wrong arity");
    for (int i = 0; i <= m; ++i) {
        if (values[i] < 0 || values[i] > n || (i > 0 && values[i] < values[i - 1]))
            throw InvalidArgument("ordinal_map: values must be monotone in [0, n]");
    }
    return functor_from_objects(ordinal(m), ordinal(n), values);
}

FinFunctor coface(int n, int i) {
    if (n < 1 || i < 0 || i > n) throw InvalidArgument("coface: index out of range");
    std::vector<int> v;
    for (int j = 0; j < n; ++j) v.push_back(j < i ? j : j + 1);
    return ordinal_map(n - 1, n, v);
}

FinFunctor codegeneracy(int n, int i) {
    if (n < 0 || i < 0 || i > n) throw InvalidArgument("codegeneracy: index out of range");
    std::vector<int> v;
    for (int j = 0; j <= n + 1; ++j) v.push_back(j <= i ? j : j - 1);
    return ordinal_map(n + 1, n, v);
}

namespace {
int ar_index(int n, int i, int j) {
    // objects of Ar[n] are listed lexicographically
    int idx = 0;
    for (int a = 0; a < i; ++a) idx += n + 1 - a;
    return idx + (j - i);
}
}  // namespace

FinFunctor arrow_map(const FinFunctor& theta) {
    const int m = theta.src->num_objects() - 1;
    const int n = theta.tgt->num_objects() - 1;
    auto src = arrow_cat(m);
    auto tgt = arrow_cat(n);
    std::vector<int> om;
    for (int i = 0; i <= m; ++i)
        for (int j = i; j <= m; ++j) om.push_back(ar_index(n, theta(i), theta(j)));
    return functor_from_objects(src, tgt, om);
}

FinFunctor ar_square(int n, int i, int j, int k) {
    if (!(0 <= i && i <= j && j <= k && k <= n)) throw InvalidArgument("ar_square: need i <= j <= k <= n");
    auto sq = square();
    std::vector<int> om(4);
    om[sq->object_index("(0,0)")] = ar_index(n, i, j);
    om[sq->object_index("(1,0)")] = ar_index(n, i, k);
    om[sq->object_index("(0,1)")] = ar_index(n, j, j);
    om[sq->object_index("(1,1)")] = ar_index(n, j, k);
    return functor_from_objects(sq, arrow_cat(n), om);
}

FinFunctor arrow_target(int n) {
    std::vector<int> om;
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) om.push_back(j);
    return functor_from_objects(arrow_cat(n), ordinal(n), om);
}

// Interned shapes: [n], Ar[n] and products of interned shapes are built once
// and shared, so diagrams over them compare by pointer.
CatPtr product_uncached(const CatPtr& a, const CatPtr& b);

namespace {
std::mutex intern_mu;
std::map<int, CatPtr> ordinals, arrows;
std::map<std::pair<const FinCat*, const FinCat*>, CatPtr> products;
std::set<const FinCat*> interned;

CatPtr intern(std::map<int, CatPtr>& table, int n, CatPtr (*make)(int)) {
    {
        std::lock_guard lock(intern_mu);
        if (auto it = table.find(n); it != table.end()) return it->second;
    }
    CatPtr c = make(n);
    std::lock_guard lock(intern_mu);
    auto [it, fresh] = table.emplace(n, c);
    if (fresh) interned.insert(c.get());
    return it->second;
}
}  // namespace

CatPtr ordinal(int n) {
    if (n < 0) throw InvalidArgument("ordinal: n must be >= 0");
    return intern(ordinals, n, ordinal_uncached);
}

CatPtr arrow_cat(int n) {
    if (n < 0) throw InvalidArgument("arrow_cat: n must be >= 0");
    return intern(arrows, n, arrow_cat_uncached);
}

CatPtr product(const CatPtr& a, const CatPtr& b) {
    const auto key = std::make_pair(a.get(), b.get());
    {
        std::lock_guard lock(intern_mu);
        if (!interned.count(a.get()) || !interned.count(b.get())) return product_uncached(a, b);
        if (auto it = products.find(key); it != products.end()) return it->second;
    }
    CatPtr c = product_uncached(a, b);
    std::lock_guard lock(intern_mu);
    auto [it, fresh] = products.emplace(key, c);
    if (fresh) interned.insert(c.get());
    return it->second;
}

// -- constructions ---------------------------------------------------------------

CatPtr product_uncached(const CatPtr& a, const CatPtr& b) {
    const int na = a->num_objects(), nb = b->num_objects();
    const int ma = a->num_morphisms(), mb = b->num_morphisms();
    std::vector<std::string> objs;
    objs.reserve(static_cast<std::size_t>(na) * nb);
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < nb; ++y) objs.push_back("(" + a->object(x) + "," + b->object(y) + ")");
    std::vector<Arrow> arrows;
    arrows.reserve(static_cast<std::size_t>(ma) * mb);
    for (int f = 0; f < ma; ++f)
        for (int g = 0; g < mb; ++g)
            arrows.push_back({"(" + a->morphism(f).id + "," + b->morphism(g).id + ")",
                              a->src(f) * nb + b->src(g), a->tgt(f) * nb + b->tgt(g)});
    std::vector<int> ids(static_cast<std::size_t>(na) * nb);
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < nb; ++y) ids[x * nb + y] = a->identity(x) * mb + b->identity(y);
    const std::size_t m = arrows.size();
    std::vector<int> comp(m * m, -1);
    for (int f2 = 0; f2 < ma; ++f2) {
        for (int f1 = 0; f1 < ma; ++f1) {
            const int fa = a->compose(f2, f1);
            if (fa < 0) continue;
            for (int g2 = 0; g2 < mb; ++g2) {
                for (int g1 = 0; g1 < mb; ++g1) {
                    const int gb = b->compose(g2, g1);
                    if (gb < 0) continue;
                    comp[static_cast<std::size_t>(f2 * mb + g2) * m + (f1 * mb + g1)] = fa * mb + gb;
                }
            }
        }
    }
    return make("(" + a->name() + "×" + b->name() + ")", std::move(objs), std::move(arrows),
                std::move(ids), std::move(comp));
}

CatPtr coproduct(const CatPtr& a, const CatPtr& b) {
    const int na = a->num_objects();
    const int ma = a->num_morphisms(), mb = b->num_morphisms();
    std::vector<std::string> objs;
    for (const auto& o : a->objects()) objs.push_back("L:" + o);
    for (const auto& o : b->objects()) objs.push_back("R:" + o);
    std::vector<Arrow> arrows;
    for (const auto& f : a->morphisms()) arrows.push_back({"L:" + f.id, f.src, f.tgt});
    for (const auto& g : b->morphisms()) arrows.push_back({"R:" + g.id, g.src + na, g.tgt + na});
    std::vector<int> ids;
    for (int i : a->identities()) ids.push_back(i);
    for (int i : b->identities()) ids.push_back(i + ma);
    const std::size_t m = arrows.size();
    std::vector<int> comp(m * m, -1);
    for (int g = 0; g < ma; ++g)
        for (int f = 0; f < ma; ++f) comp[g * m + f] = a->compose(g, f);
    for (int g = 0; g < mb; ++g)
        for (int f = 0; f < mb; ++f) {
            const int c = b->compose(g, f);
            comp[(g + ma) * m + (f + ma)] = c < 0 ? -1 : c + ma;
        }
    return make("(" + a->name() + "⊔" + b->name() + ")", std::move(objs), std::move(arrows),
                std::move(ids), std::move(comp));
}

CatPtr opposite(const CatPtr& c) {
    std::string name = c->name();
    const std::string suffix = "^op";
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
        name.resize(name.size() - suffix.size());
    else
        name += suffix;
    std::vector<Arrow> arrows;
    for (const auto& f : c->morphisms()) arrows.push_back({f.id, f.tgt, f.src});
    const std::size_t m = arrows.size();
    std::vector<int> comp(m * m, -1);
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t f = 0; f < m; ++f) comp[g * m + f] = c->compose(static_cast<int>(f), static_cast<int>(g));
    return make(std::move(name), c->objects(), std::move(arrows), c->identities(), std::move(comp));
}

CatPtr full_subcategory(const CatPtr& c, const std::vector<int>& objects, std::string name) {
    std::vector<int> pos(c->num_objects(), -1);
    std::vector<std::string> objs;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        pos[objects[i]] = static_cast<int>(i);
        objs.push_back(c->object(objects[i]));
    }
    std::vector<int> keep;
    std::vector<int> mpos(c->num_morphisms(), -1);
    std::vector<Arrow> arrows;
    for (int f = 0; f < c->num_morphisms(); ++f) {
        if (pos[c->src(f)] < 0 || pos[c->tgt(f)] < 0) continue;
        mpos[f] = static_cast<int>(keep.size());
        keep.push_back(f);
        arrows.push_back({c->morphism(f).id, pos[c->src(f)], pos[c->tgt(f)]});
    }
    const std::size_t m = keep.size();
    std::vector<int> comp(m * m, -1);
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t f = 0; f < m; ++f) {
            const int gf = c->compose(keep[g], keep[f]);
            comp[g * m + f] = gf < 0 ? -1 : mpos[gf];
        }
    std::vector<int> ids;
    for (int o : objects) ids.push_back(mpos[c->identity(o)]);
    return make(std::move(name), std::move(objs), std::move(arrows), std::move(ids), std::move(comp));
}

FinFunctor identity_functor(const CatPtr& c) {
    FinFunctor f{c, c, {}, {}};
    for (int i = 0; i < c->num_objects(); ++i) f.object_map.push_back(i);
    for (int i = 0; i < c->num_morphisms(); ++i) f.morphism_map.push_back(i);
    return f;
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
    if (!same_category(f.tgt, g.src)) throw InvalidArgument("compose: functors are not composable");
    FinFunctor h{f.src, g.tgt, {}, {}};
    for (int o : f.object_map) h.object_map.push_back(g.object_map[o]);
    for (int m : f.morphism_map) h.morphism_map.push_back(g.morphism_map[m]);
    return h;
}

FinFunctor projection1(const CatPtr& a, const CatPtr& b) {
    auto ab = product(a, b);
    FinFunctor f{ab, a, {}, {}};
    for (int x = 0; x < a->num_objects(); ++x)
        for (int y = 0; y < b->num_objects(); ++y) f.object_map.push_back(x);
    for (int p = 0; p < a->num_morphisms(); ++p)
        for (int q = 0; q < b->num_morphisms(); ++q) f.morphism_map.push_back(p);
    return f;
}

FinFunctor projection2(const CatPtr& a, const CatPtr& b) {
    auto ab = product(a, b);
    FinFunctor f{ab, b, {}, {}};
    for (int x = 0; x < a->num_objects(); ++x)
        for (int y = 0; y < b->num_objects(); ++y) f.object_map.push_back(y);
    for (int p = 0; p < a->num_morphisms(); ++p)
        for (int q = 0; q < b->num_morphisms(); ++q) f.morphism_map.push_back(q);
    return f;
}

FinFunctor pairing(const FinFunctor& f, const FinFunctor& g) {
    if (!same_category(f.src, g.src)) throw InvalidArgument("pairing: functors need a common domain");
    auto bc = product(f.tgt, g.tgt);
    const int nc = g.tgt->num_objects();
    const int mc = g.tgt->num_morphisms();
    FinFunctor h{f.src, bc, {}, {}};
    for (int x = 0; x < f.src->num_objects(); ++x) h.object_map.push_back(f(x) * nc + g(x));
    for (int m = 0; m < f.src->num_morphisms(); ++m)
        h.morphism_map.push_back(f.on_morphism(m) * mc + g.on_morphism(m));
    return h;
}

FinFunctor product_functor(const FinFunctor& f, const FinFunctor& g) {
    auto src = product(f.src, g.src);
    auto tgt = product(f.tgt, g.tgt);
    const int ns = g.src->num_objects(), nt = g.tgt->num_objects();
    const int ms = g.src->num_morphisms(), mt = g.tgt->num_morphisms();
    FinFunctor h{src, tgt, std::vector<int>(src->num_objects()), std::vector<int>(src->num_morphisms())};
    for (int x = 0; x < f.src->num_objects(); ++x)
        for (int y = 0; y < ns; ++y) h.object_map[x * ns + y] = f(x) * nt + g(y);
    for (int p = 0; p < f.src->num_morphisms(); ++p)
        for (int q = 0; q < ms; ++q) h.morphism_map[p * ms + q] = f.on_morphism(p) * mt + g.on_morphism(q);
    return h;
}

FinFunctor coproduct_inclusion(const CatPtr& a, const CatPtr& b, bool left) {
    auto ab = coproduct(a, b);
    const auto& part = left ? a : b;
    const int oo = left ? 0 : a->num_objects();
    const int mo = left ? 0 : a->num_morphisms();
    FinFunctor f{part, ab, {}, {}};
    for (int x = 0; x < part->num_objects(); ++x) f.object_map.push_back(x + oo);
    for (int m = 0; m < part->num_morphisms(); ++m) f.morphism_map.push_back(m + mo);
    return f;
}

FinFunctor opposite_functor(const FinFunctor& f) {
    return FinFunctor{opposite(f.src), opposite(f.tgt), f.object_map, f.morphism_map};
}

FinFunctor associator(const CatPtr& a, const CatPtr& b, const CatPtr& c) {
    auto ab = product(a, b);
    auto src = product(ab, c);
    auto tgt = product(a, product(b, c));
    const int nb = b->num_objects(), nc = c->num_objects();
    const int mb = b->num_morphisms(), mc = c->num_morphisms();
    FinFunctor h{src, tgt, std::vector<int>(src->num_objects()), std::vector<int>(src->num_morphisms())};
    for (int x = 0; x < a->num_objects(); ++x)
        for (int y = 0; y < nb; ++y)
            for (int z = 0; z < nc; ++z) h.object_map[(x * nb + y) * nc + z] = x * (nb * nc) + (y * nc + z);
    for (int p = 0; p < a->num_morphisms(); ++p)
        for (int q = 0; q < mb; ++q)
            for (int r = 0; r < mc; ++r)
                h.morphism_map[(p * mb + q) * mc + r] = p * (mb * mc) + (q * mc + r);
    return h;
}

FinFunctor left_times(const CatPtr& y, const FinFunctor& f) {
    return product_functor(identity_functor(y), f);
}

FinNatTrans identity_nat(const FinFunctor& f) {
    FinNatTrans a{f, f, {}};
    for (int x = 0; x < f.src->num_objects(); ++x) a.components.push_back(f.tgt->identity(f(x)));
    return a;
}

FinNatTrans left_times(const CatPtr& y, const FinNatTrans& a) {
    FinNatTrans out{left_times(y, a.src), left_times(y, a.tgt), {}};
    const int mt = a.src.tgt->num_morphisms();
    for (int w = 0; w < y->num_objects(); ++w)
        for (int x = 0; x < a.src.src->num_objects(); ++x)
            out.components.push_back(y->identity(w) * mt + a.components[x]);
    return out;
}

FinNatTrans opposite_nat(const FinNatTrans& a) {
    return FinNatTrans{opposite_functor(a.tgt), opposite_functor(a.src), a.components};
}

CommaData comma(const FinFunctor& f, int y) {
    const auto& x_cat = *f.src;
    const auto& y_cat = *f.tgt;
    if (y < 0 || y >= y_cat.num_objects()) throw InvalidArgument("comma: object out of range");
    CommaData out;
    std::vector<std::string> objs;
    for (int x = 0; x < x_cat.num_objects(); ++x) {
        for (int a : y_cat.hom(f(x), y)) {
            out.entries.emplace_back(x, a);
            objs.push_back("(" + x_cat.object(x) + "," + y_cat.morphism(a).id + ")");
        }
    }
    const int n = static_cast<int>(out.entries.size());
    std::vector<Arrow> arrows;
    std::vector<int> under;  // morphism of X under each comma morphism
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> by_pair;
    std::vector<int> ids(n, -1);
    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) {
            const auto [x, a] = out.entries[s];
            const auto [x2, a2] = out.entries[t];
            for (int u : x_cat.hom(x, x2)) {
                if (y_cat.compose(a2, f.on_morphism(u)) != a) continue;
                const int idx = static_cast<int>(arrows.size());
                arrows.push_back({"[" + x_cat.morphism(u).id + "|" + objs[s] + "->" + objs[t] + "]", s, t});
                under.push_back(u);
                if (s == t && x_cat.is_identity(u)) ids[s] = idx;
            }
        }
    }
    std::map<std::tuple<int, int, int>, int> lookup;  // (src, tgt, u) -> index
    for (int i = 0; i < static_cast<int>(arrows.size()); ++i)
        lookup[{arrows[i].src, arrows[i].tgt, under[i]}] = i;
    const std::size_t m = arrows.size();
    std::vector<int> comp(m * m, -1);
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t h = 0; h < m; ++h) {
            if (arrows[h].tgt != arrows[g].src) continue;
            const int u = x_cat.compose(under[g], under[h]);
            comp[g * m + h] = lookup.at({arrows[h].src, arrows[g].tgt, u});
        }
    auto cat = make("(" + x_cat.name() + "↓" + y_cat.object(y) + ")", std::move(objs), std::move(arrows),
                    std::move(ids), std::move(comp));
    out.comma = cat;
    out.j = FinFunctor{cat, f.src, {}, under};
    for (const auto& e : out.entries) out.j.object_map.push_back(e.first);
    out.p = to_terminal(cat);
    FinFunctor fj = compose(f, out.j);
    FinFunctor yp = compose(point_functor(f.tgt, y), out.p);
    out.alpha = FinNatTrans{fj, yp, {}};
    for (const auto& e : out.entries) out.alpha.components.push_back(e.second);
    return out;
}

}  // namespace kderiv
