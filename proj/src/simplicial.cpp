#include "kderiv/simplicial.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "kderiv/errors.hpp"

namespace kderiv {

TruncSSet::TruncSSet(int n) : N(n), ids(n + 1), degenerate(n + 1), faces(n + 1), degens(n + 1) {
    if (n < 0) throw InvalidArgument("truncation level must be >= 0");
}

int TruncSSet::add(int k, std::string id) {
    ids[k].push_back(std::move(id));
    degenerate[k].push_back(false);
    return size(k) - 1;
}

void TruncSSet::allocate() {
    for (int k = 0; k <= N; ++k) {
        degenerate[k].resize(size(k), false);
        faces[k].assign(k >= 1 ? k + 1 : 0, std::vector<int>(size(k), -1));
        degens[k].assign(k + 1 <= N ? k + 1 : 0, std::vector<int>(size(k), -1));
    }
}

void TruncSSet::mark_degenerate() {
    for (int k = 0; k <= N; ++k) degenerate[k].assign(size(k), false);
    for (int k = 0; k + 1 <= N; ++k)
        for (const auto& s : degens[k])
            for (int t : s)
                if (t >= 0) degenerate[k + 1][t] = true;
}

TruncBiSSet::TruncBiSSet(int n, int m)
    : N(n), M(m), ids(n + 1, std::vector<std::vector<std::string>>(m + 1)),
      hface(n + 1, std::vector<std::vector<std::vector<int>>>(m + 1)),
      hdeg(n + 1, std::vector<std::vector<std::vector<int>>>(m + 1)),
      vface(n + 1, std::vector<std::vector<std::vector<int>>>(m + 1)),
      vdeg(n + 1, std::vector<std::vector<std::vector<int>>>(m + 1)) {}

void TruncBiSSet::allocate() {
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= M; ++m) {
            const int s = size(n, m);
            hface[n][m].assign(n >= 1 ? n + 1 : 0, std::vector<int>(s, -1));
            hdeg[n][m].assign(n + 1 <= N ? n + 1 : 0, std::vector<int>(s, -1));
            vface[n][m].assign(m >= 1 ? m + 1 : 0, std::vector<int>(s, -1));
            vdeg[n][m].assign(m + 1 <= M ? m + 1 : 0, std::vector<int>(s, -1));
        }
}

TruncSSet TruncBiSSet::column(int n) const {
    TruncSSet s(M);
    for (int m = 0; m <= M; ++m) s.ids[m] = ids[n][m];
    s.allocate();
    for (int m = 0; m <= M; ++m) {
        s.faces[m] = vface[n][m];
        s.degens[m] = vdeg[n][m];
    }
    s.mark_degenerate();
    return s;
}

TruncSSet TruncBiSSet::row(int m) const {
    TruncSSet s(N);
    for (int n = 0; n <= N; ++n) s.ids[n] = ids[n][m];
    s.allocate();
    for (int n = 0; n <= N; ++n) {
        s.faces[n] = hface[n][m];
        s.degens[n] = hdeg[n][m];
    }
    s.mark_degenerate();
    return s;
}

// -- identities ------------------------------------------------------------------

namespace {

std::string at(int k, int s) { return "level " + std::to_string(k) + " simplex " + std::to_string(s); }

void check_tables(const TruncSSet& x, const std::string& tag, std::vector<std::string>& out) {
    for (int k = 0; k <= x.N; ++k) {
        for (int i = 0; i < static_cast<int>(x.faces[k].size()); ++i)
            for (int s = 0; s < x.size(k); ++s) {
                const int t = x.faces[k][i][s];
                if (t < 0 || t >= x.size(k - 1)) out.push_back(tag + "d" + std::to_string(i) + " undefined at " + at(k, s));
            }
        for (int i = 0; i < static_cast<int>(x.degens[k].size()); ++i)
            for (int s = 0; s < x.size(k); ++s) {
                const int t = x.degens[k][i][s];
                if (t < 0 || t >= x.size(k + 1)) out.push_back(tag + "s" + std::to_string(i) + " undefined at " + at(k, s));
            }
    }
}

void check_identities(const TruncSSet& x, const std::string& tag, std::vector<std::string>& out) {
    auto d = [&](int k, int i, int s) { return x.faces[k][i][s]; };
    auto sg = [&](int k, int i, int s) { return x.degens[k][i][s]; };
    auto name = [&](const std::string& rule, int k, int s) {
        return tag + rule + " fails at " + at(k, s);
    };
    for (int k = 2; k <= x.N; ++k)
        for (int s = 0; s < x.size(k); ++s)
            for (int j = 0; j <= k; ++j)
                for (int i = 0; i < j; ++i)
                    if (d(k - 1, i, d(k, j, s)) != d(k - 1, j - 1, d(k, i, s)))
                        out.push_back(name("d" + std::to_string(i) + "d" + std::to_string(j) + " = d" +
                                               std::to_string(j - 1) + "d" + std::to_string(i),
                                           k, s));
    for (int k = 0; k + 1 <= x.N; ++k)
        for (int s = 0; s < x.size(k); ++s)
            for (int j = 0; j <= k; ++j) {
                const int t = sg(k, j, s);
                for (int i = 0; i <= k + 1; ++i) {
                    const int lhs = d(k + 1, i, t);
                    int rhs;
                    if (i == j || i == j + 1) rhs = s;
                    else if (i < j) rhs = sg(k - 1, j - 1, d(k, i, s));
                    else rhs = sg(k - 1, j, d(k, i - 1, s));
                    if (lhs != rhs)
                        out.push_back(name("d" + std::to_string(i) + "s" + std::to_string(j), k, s));
                }
            }
    for (int k = 0; k + 2 <= x.N; ++k)
        for (int s = 0; s < x.size(k); ++s)
            for (int j = 0; j <= k; ++j)
                for (int i = 0; i <= j; ++i)
                    if (sg(k + 1, i, sg(k, j, s)) != sg(k + 1, j + 1, sg(k, i, s)))
                        out.push_back(name("s" + std::to_string(i) + "s" + std::to_string(j) + " = s" +
                                               std::to_string(j + 1) + "s" + std::to_string(i),
                                           k, s));
    for (int k = 1; k <= x.N; ++k)
        for (int s = 0; s < x.size(k); ++s) {
            bool image = false;
            for (const auto& row : x.degens[k - 1])
                for (int t : row) image = image || t == s;
            if (image != x.degenerate[k][s]) out.push_back(tag + "degeneracy flag wrong at " + at(k, s));
        }
}

}  // namespace

std::vector<std::string> verify(const TruncSSet& s) {
    std::vector<std::string> out;
    check_tables(s, "", out);
    if (out.empty()) check_identities(s, "", out);
    return out;
}

std::vector<std::string> verify(const TruncBiSSet& b) {
    std::vector<std::string> out;
    for (int n = 0; n <= b.N; ++n) {
        for (auto& e : verify(b.column(n))) out.push_back("column " + std::to_string(n) + ": " + e);
    }
    for (int m = 0; m <= b.M; ++m) {
        for (auto& e : verify(b.row(m))) out.push_back("row " + std::to_string(m) + ": " + e);
    }
    if (!out.empty()) return out;
    // horizontal and vertical operators commute
    for (int n = 0; n <= b.N; ++n)
        for (int m = 0; m <= b.M; ++m)
            for (int s = 0; s < b.size(n, m); ++s) {
                auto fail = [&](const std::string& what) {
                    out.push_back(what + " do not commute at (" + std::to_string(n) + "," + std::to_string(m) +
                                  ") simplex " + std::to_string(s));
                };
                for (std::size_t i = 0; i < b.hface[n][m].size(); ++i)
                    for (std::size_t j = 0; j < b.vface[n][m].size(); ++j)
                        if (b.vface[n - 1][m][j][b.hface[n][m][i][s]] != b.hface[n][m - 1][i][b.vface[n][m][j][s]])
                            fail("hd" + std::to_string(i) + " and vd" + std::to_string(j));
                for (std::size_t i = 0; i < b.hdeg[n][m].size(); ++i)
                    for (std::size_t j = 0; j < b.vdeg[n][m].size(); ++j)
                        if (b.vdeg[n + 1][m][j][b.hdeg[n][m][i][s]] != b.hdeg[n][m + 1][i][b.vdeg[n][m][j][s]])
                            fail("hs" + std::to_string(i) + " and vs" + std::to_string(j));
                for (std::size_t i = 0; i < b.hface[n][m].size(); ++i)
                    for (std::size_t j = 0; j < b.vdeg[n][m].size(); ++j)
                        if (b.vdeg[n - 1][m][j][b.hface[n][m][i][s]] != b.hface[n][m + 1][i][b.vdeg[n][m][j][s]])
                            fail("hd" + std::to_string(i) + " and vs" + std::to_string(j));
                for (std::size_t i = 0; i < b.hdeg[n][m].size(); ++i)
                    for (std::size_t j = 0; j < b.vface[n][m].size(); ++j)
                        if (b.vface[n + 1][m][j][b.hdeg[n][m][i][s]] != b.hdeg[n][m - 1][i][b.vface[n][m][j][s]])
                            fail("hs" + std::to_string(i) + " and vd" + std::to_string(j));
            }
    return out;
}

// -- nerves and fixtures -----------------------------------------------------------

TruncSSet nerve(const CatPtr& c, int n) {
    TruncSSet s(n);
    // level k: chains of k composable morphisms, stored as morphism lists;
    // level 0 as the identity of the object
    std::vector<std::map<std::vector<int>, int>> index(n + 1);
    std::vector<std::vector<std::vector<int>>> chains(n + 1);
    for (int o = 0; o < c->num_objects(); ++o) {
        chains[0].push_back({c->identity(o)});
        index[0][{c->identity(o)}] = s.add(0, c->object(o));
    }
    for (int k = 1; k <= n; ++k) {
        for (const auto& prev : chains[k - 1]) {
            const int last = k == 1 ? c->src(prev[0]) : c->tgt(prev.back());
            for (int m = 0; m < c->num_morphisms(); ++m) {
                if (c->src(m) != last) continue;
                std::vector<int> ch = k == 1 ? std::vector<int>{} : prev;
                ch.push_back(m);
                std::string id;
                for (std::size_t i = 0; i < ch.size(); ++i) id += (i ? "|" : "") + c->morphism(ch[i]).id;
                index[k][ch] = s.add(k, id);
                chains[k].push_back(std::move(ch));
                if (s.size(k) > enumeration_cap()) throw CapExceeded("nerve exceeds the cap", k);
            }
        }
    }
    s.allocate();
    auto vertex_of = [&](int o) { return index[0].at({c->identity(o)}); };
    for (int k = 1; k <= n; ++k)
        for (int t = 0; t < s.size(k); ++t) {
            const auto& ch = chains[k][t];
            for (int i = 0; i <= k; ++i) {
                if (k == 1) {
                    s.faces[1][i][t] = vertex_of(i == 0 ? c->tgt(ch[0]) : c->src(ch[0]));
                    continue;
                }
                std::vector<int> f;
                if (i == 0) f.assign(ch.begin() + 1, ch.end());
                else if (i == k) f.assign(ch.begin(), ch.end() - 1);
                else {
                    f.assign(ch.begin(), ch.begin() + i - 1);
                    f.push_back(c->compose(ch[i], ch[i - 1]));
                    f.insert(f.end(), ch.begin() + i + 1, ch.end());
                }
                s.faces[k][i][t] = index[k - 1].at(f);
            }
        }
    for (int k = 0; k + 1 <= n; ++k)
        for (int t = 0; t < s.size(k); ++t) {
            const auto& ch = chains[k][t];
            for (int i = 0; i <= k; ++i) {
                std::vector<int> d;
                if (k == 0) {
                    d = {ch[0]};
                } else {
                    const int obj = i == 0 ? c->src(ch[0]) : c->tgt(ch[i - 1]);
                    d = ch;
                    d.insert(d.begin() + i, c->identity(obj));
                }
                s.degens[k][i][t] = index[k + 1].at(d);
            }
        }
    s.mark_degenerate();
    return s;
}

CatPtr cyclic_group_category(int order) {
    if (order < 1) throw InvalidArgument("group order must be >= 1");
    std::vector<Arrow> ms;
    for (int g = 0; g < order; ++g) ms.push_back({g == 0 ? "e" : "g" + std::to_string(g), 0, 0});
    std::vector<int> comp(order * order);
    for (int g = 0; g < order; ++g)
        for (int f = 0; f < order; ++f) comp[g * order + f] = (g + f) % order;
    return std::make_shared<const FinCat>("Z/" + std::to_string(order), std::vector<std::string>{"*"}, ms,
                                          std::vector<int>{0}, comp);
}

TruncSSet circle_model() {
    TruncSSet s(2);
    s.add(0, "v");
    s.add(1, "s0v");
    s.add(1, "e");
    s.add(2, "s0s0v");
    s.add(2, "s0e");
    s.add(2, "s1e");
    s.allocate();
    s.faces[1][0] = {0, 0};
    s.faces[1][1] = {0, 0};
    // d_i of s0s0v, s0e, s1e
    s.faces[2][0] = {0, 1, 0};
    s.faces[2][1] = {0, 1, 1};
    s.faces[2][2] = {0, 0, 1};
    s.degens[0][0] = {0};
    s.degens[1][0] = {0, 1};
    s.degens[1][1] = {0, 2};
    s.mark_degenerate();
    return s;
}

TruncSSet diagonal(const TruncBiSSet& b) {
    if (b.N != b.M) throw InvalidArgument("diagonal needs N = M");
    TruncSSet s(b.N);
    for (int k = 0; k <= b.N; ++k) s.ids[k] = b.ids[k][k];
    s.allocate();
    for (int k = 0; k <= b.N; ++k)
        for (int t = 0; t < s.size(k); ++t) {
            for (int i = 0; k >= 1 && i <= k; ++i) s.faces[k][i][t] = b.hface[k][k - 1][i][b.vface[k][k][i][t]];
            for (int i = 0; k + 1 <= b.N && i <= k; ++i) s.degens[k][i][t] = b.hdeg[k][k + 1][i][b.vdeg[k][k][i][t]];
        }
    s.mark_degenerate();
    return s;
}

std::vector<std::string> verify_map(const TruncSSet& x, const TruncSSet& y, const SimplicialMap& f) {
    std::vector<std::string> out;
    if (static_cast<int>(f.levels.size()) != x.N + 1 || x.N != y.N) {
        out.push_back("map and truncation levels disagree");
        return out;
    }
    for (int k = 0; k <= x.N; ++k) {
        if (static_cast<int>(f.levels[k].size()) != x.size(k)) {
            out.push_back("level " + std::to_string(k) + " table has the wrong size");
            return out;
        }
        for (int v : f.levels[k])
            if (v < 0 || v >= y.size(k)) {
                out.push_back("level " + std::to_string(k) + " value out of range");
                return out;
            }
    }
    for (int k = 0; k <= x.N; ++k)
        for (int s = 0; s < x.size(k); ++s) {
            for (std::size_t i = 0; i < x.faces[k].size(); ++i)
                if (f.levels[k - 1][x.faces[k][i][s]] != y.faces[k][i][f.levels[k][s]])
                    out.push_back("map does not commute with d" + std::to_string(i) + " at " + at(k, s));
            for (std::size_t i = 0; i < x.degens[k].size(); ++i)
                if (f.levels[k + 1][x.degens[k][i][s]] != y.degens[k][i][f.levels[k][s]])
                    out.push_back("map does not commute with s" + std::to_string(i) + " at " + at(k, s));
        }
    return out;
}

std::vector<std::string> verify_map(const TruncBiSSet& x, const TruncBiSSet& y, const BiSimplicialMap& f) {
    std::vector<std::string> out;
    if (x.N != y.N || x.M != y.M) {
        out.push_back("truncation levels disagree");
        return out;
    }
    for (int n = 0; n <= x.N; ++n)
        for (int m = 0; m <= x.M; ++m) {
            if (static_cast<int>(f.levels[n][m].size()) != x.size(n, m)) {
                out.push_back("table (" + std::to_string(n) + "," + std::to_string(m) + ") has the wrong size");
                return out;
            }
            for (int v : f.levels[n][m])
                if (v < 0 || v >= y.size(n, m)) {
                    out.push_back("value out of range at (" + std::to_string(n) + "," + std::to_string(m) + ")");
                    return out;
                }
        }
    for (int n = 0; n <= x.N; ++n)
        for (int m = 0; m <= x.M; ++m)
            for (int s = 0; s < x.size(n, m); ++s) {
                auto where = "(" + std::to_string(n) + "," + std::to_string(m) + ") simplex " + std::to_string(s);
                const int fs = f.levels[n][m][s];
                for (std::size_t i = 0; i < x.hface[n][m].size(); ++i)
                    if (f.levels[n - 1][m][x.hface[n][m][i][s]] != y.hface[n][m][i][fs])
                        out.push_back("map does not commute with hd" + std::to_string(i) + " at " + where);
                for (std::size_t i = 0; i < x.hdeg[n][m].size(); ++i)
                    if (f.levels[n + 1][m][x.hdeg[n][m][i][s]] != y.hdeg[n][m][i][fs])
                        out.push_back("map does not commute with hs" + std::to_string(i) + " at " + where);
                for (std::size_t i = 0; i < x.vface[n][m].size(); ++i)
                    if (f.levels[n][m - 1][x.vface[n][m][i][s]] != y.vface[n][m][i][fs])
                        out.push_back("map does not commute with vd" + std::to_string(i) + " at " + where);
                for (std::size_t i = 0; i < x.vdeg[n][m].size(); ++i)
                    if (f.levels[n][m + 1][x.vdeg[n][m][i][s]] != y.vdeg[n][m][i][fs])
                        out.push_back("map does not commute with vs" + std::to_string(i) + " at " + where);
            }
    return out;
}

SimplicialMap diagonal(const BiSimplicialMap& f, int n) {
    SimplicialMap g;
    for (int k = 0; k <= n; ++k) g.levels.push_back(f.levels[k][k]);
    return g;
}

// -- presentations ------------------------------------------------------------------

std::vector<std::string> validate(const GroupPresentation& p) {
    std::vector<std::string> out;
    for (std::size_t r = 0; r < p.relators.size(); ++r)
        for (auto [g, e] : p.relators[r]) {
            if (g < 0 || g >= static_cast<int>(p.generators.size()))
                out.push_back("relator " + std::to_string(r) + " uses an undeclared generator");
            if (e != 1 && e != -1) out.push_back("relator " + std::to_string(r) + " has an exponent other than ±1");
        }
    return out;
}

namespace {
MatZ exponent_matrix(const std::vector<Word>& words, int gens) {
    MatZ m(static_cast<int>(words.size()), gens);
    for (std::size_t r = 0; r < words.size(); ++r)
        for (auto [g, e] : words[r]) m.at(static_cast<int>(r), g) += e;
    return m;
}
}  // namespace

std::string AbelianInvariants::describe() const {
    if (trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : torsion) {
        os << (first ? "" : " ⊕ ") << "Z/" << t;
        first = false;
    }
    if (free_rank > 0) os << (first ? "" : " ⊕ ") << "Z" << (free_rank > 1 ? "^" + std::to_string(free_rank) : "");
    return os.str();
}

AbelianInvariants abelianize(const GroupPresentation& p) {
    const auto problems = validate(p);
    if (!problems.empty()) throw InvalidArgument(problems.front());
    const RelationCokernel c = relation_cokernel(exponent_matrix(p.relators, static_cast<int>(p.generators.size())));
    return {c.torsion, c.free_rank, c.coords};
}

EdgePath edge_path(const TruncSSet& s, int basepoint) {
    if (s.N < 2) throw InvalidArgument("edge_path needs truncation level >= 2");
    if (basepoint < 0 || basepoint >= s.size(0)) throw InvalidArgument("basepoint out of range");
    EdgePath ep;
    ep.basepoint = basepoint;
    const int nv = s.size(0), ne = s.size(1);
    // adjacency sorted by edge id, then the other endpoint
    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (edge, sign) ; sign +1 leaves along the edge
    std::vector<int> order(ne);
    for (int e = 0; e < ne; ++e) order[e] = e;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return s.ids[1][a] < s.ids[1][b]; });
    for (int e : order) {
        const int u = s.faces[1][1][e], v = s.faces[1][0][e];
        adj[u].push_back({e, 1});
        adj[v].push_back({e, -1});
    }
    ep.in_component.assign(nv, false);
    ep.tree_path.assign(nv, {});
    std::vector<bool> tree_edge(ne, false);
    std::deque<int> queue{basepoint};
    ep.in_component[basepoint] = true;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        ep.component.push_back(u);
        for (auto [e, sign] : adj[u]) {
            const int w = sign > 0 ? s.faces[1][0][e] : s.faces[1][1][e];
            if (ep.in_component[w]) continue;
            ep.in_component[w] = true;
            tree_edge[e] = true;
            ep.tree_path[w] = ep.tree_path[u];
            ep.tree_path[w].push_back({e, sign});
            queue.push_back(w);
        }
    }
    ep.edge_generator.assign(ne, -1);
    for (int e = 0; e < ne; ++e) {
        if (s.degenerate[1][e] || !ep.in_component[s.faces[1][1][e]]) continue;
        ep.edge_generator[e] = static_cast<int>(ep.generator_edge.size());
        ep.generator_edge.push_back(e);
        ep.presentation.generators.push_back(s.ids[1][e]);
    }
    for (int e = 0; e < ne; ++e)
        if (tree_edge[e] && ep.edge_generator[e] >= 0) ep.presentation.relators.push_back({{ep.edge_generator[e], 1}});
    auto letter = [&](Word& w, int e, int sign) {
        if (ep.edge_generator[e] >= 0) w.push_back({ep.edge_generator[e], sign});
    };
    for (int t = 0; t < s.size(2); ++t) {
        if (!ep.in_component[s.faces[1][1][s.faces[2][2][t]]]) continue;
        Word w;
        letter(w, s.faces[2][2][t], 1);
        letter(w, s.faces[2][0][t], 1);
        letter(w, s.faces[2][1][t], -1);
        if (!w.empty()) ep.presentation.relators.push_back(std::move(w));
    }
    // tree paths as generator words
    for (auto& p : ep.tree_path) {
        Word w;
        for (auto [e, sign] : p) letter(w, e, sign);
        p = std::move(w);
    }
    return ep;
}

namespace {

RelationCokernel cokernel_of(const std::vector<Word>& words, int gens) {
    return relation_cokernel(exponent_matrix(words, gens));
}

std::vector<BigInt> coordinates(const Word& w, const RelationCokernel& c) {
    const std::size_t dim = c.torsion.size() + static_cast<std::size_t>(c.free_rank);
    std::vector<BigInt> v(dim, 0);
    for (auto [g, e] : w)
        for (std::size_t k = 0; k < dim; ++k) v[k] += e * c.coords[g][k];
    for (std::size_t k = 0; k < c.torsion.size(); ++k) {
        v[k] %= c.torsion[k];
        if (v[k] < 0) v[k] += c.torsion[k];
    }
    return v;
}

}  // namespace

InducedMap induced_map(const TruncSSet& x, const EdgePath& px, const TruncSSet& y, const EdgePath& py,
                       const SimplicialMap& f) {
    (void)y;
    InducedMap out;
    const int gy = static_cast<int>(py.presentation.generators.size());
    auto image_edge = [&](Word& w, int e, int sign) {
        const int fe = f.levels[1][e];
        if (py.edge_generator[fe] >= 0) w.push_back({py.edge_generator[fe], sign});
    };
    auto image_path = [&](Word& w, const Word& path, bool inverse) {
        // path letters are source generators; map each through its edge
        if (!inverse) {
            for (auto [g, e] : path) image_edge(w, px.generator_edge[g], e);
        } else {
            for (auto it = path.rbegin(); it != path.rend(); ++it) image_edge(w, px.generator_edge[it->first], -it->second);
        }
    };
    // generator e: u -> v stands for γ_u e γ_v^{-1}
    std::vector<Word> images;
    for (int e : px.generator_edge) {
        Word w;
        image_path(w, px.tree_path[x.faces[1][1][e]], false);
        image_edge(w, e, 1);
        image_path(w, px.tree_path[x.faces[1][0][e]], true);
        images.push_back(std::move(w));
    }
    const RelationCokernel target = cokernel_of(py.presentation.relators, gy);
    for (const auto& w : images) out.matrix.push_back(coordinates(w, target));
    // relators of the source must die in the target
    std::vector<Word> extended = py.presentation.relators;
    for (const auto& r : px.presentation.relators) {
        Word w;
        for (auto [g, e] : r)
            for (auto [h, s] : images[g]) w.push_back({h, e * s});
        extended.push_back(std::move(w));
    }
    const RelationCokernel with_images = cokernel_of(extended, gy);
    out.well_defined = with_images.torsion == target.torsion && with_images.free_rank == target.free_rank;
    std::vector<Word> quotient = py.presentation.relators;
    quotient.insert(quotient.end(), images.begin(), images.end());
    const RelationCokernel q = cokernel_of(quotient, gy);
    out.surjective = q.torsion.empty() && q.free_rank == 0;
    const RelationCokernel source = cokernel_of(px.presentation.relators, static_cast<int>(px.presentation.generators.size()));
    out.iso = out.well_defined && out.surjective && source.torsion == target.torsion && source.free_rank == target.free_rank;
    out.verdict = out.iso ? "iso" : (out.well_defined && out.surjective ? "epi" : "other");
    return out;
}

AbelianInvariants homology(const TruncSSet& s, int k) {
    if (k < 0 || k + 1 > s.N) throw InvalidArgument("homology degree out of range for the truncation");
    auto nondeg = [&](int level) {
        std::vector<int> v(s.size(level), -1);
        int c = 0;
        for (int t = 0; t < s.size(level); ++t)
            if (!s.degenerate[level][t]) v[t] = c++;
        return std::make_pair(v, c);
    };
    // boundary C_j -> C_{j-1} as a matrix rows = C_{j-1}, cols = C_j
    auto boundary = [&](int j) {
        auto [src, ns] = nondeg(j);
        auto [dst, nd] = nondeg(j - 1);
        MatZ m(nd, ns);
        for (int t = 0; t < s.size(j); ++t) {
            if (src[t] < 0) continue;
            for (int i = 0; i <= j; ++i) {
                const int f = dst[s.faces[j][i][t]];
                if (f >= 0) m.at(f, src[t]) += (i % 2 == 0 ? 1 : -1);
            }
        }
        return m;
    };
    const int ck = nondeg(k).second;
    const int rank_out = k == 0 ? 0 : smith_normal_form(boundary(k)).rank;
    const SmithResult in = smith_normal_form(boundary(k + 1));
    AbelianInvariants h;
    h.free_rank = ck - rank_out - in.rank;
    for (const auto& d : in.invariant_factors)
        if (d > 1) h.torsion.push_back(d);
    return h;
}

std::vector<std::string> check_simplicial_homotopy(const TruncSSet& x, const TruncSSet& y,
                                                   const SimplicialHomotopy& h, const SimplicialMap& f,
                                                   const SimplicialMap& g) {
    std::vector<std::string> out;
    if (static_cast<int>(h.components.size()) != x.N + 1) {
        out.push_back("homotopy has the wrong number of levels");
        return out;
    }
    for (int k = 0; k <= x.N; ++k) {
        if (static_cast<int>(h.components[k].size()) != k + 2) {
            out.push_back("level " + std::to_string(k) + " needs k+2 components");
            return out;
        }
        for (const auto& c : h.components[k])
            if (static_cast<int>(c.size()) != x.size(k)) {
                out.push_back("level " + std::to_string(k) + " component has the wrong size");
                return out;
            }
    }
    auto comp = [&](int k, int z, int s) { return h.components[k][z][s]; };
    for (int k = 0; k <= x.N; ++k)
        for (int s = 0; s < x.size(k); ++s) {
            if (comp(k, k + 1, s) != f.levels[k][s]) out.push_back("H(0) differs from f at " + at(k, s));
            if (comp(k, 0, s) != g.levels[k][s]) out.push_back("H(1) differs from g at " + at(k, s));
            for (int z = 0; z <= k + 1; ++z) {
                const int v = comp(k, z, s);
                for (std::size_t i = 0; i < x.faces[k].size(); ++i) {
                    const int z2 = z - (static_cast<int>(i) < z ? 1 : 0);
                    if (y.faces[k][i][v] != comp(k - 1, z2, x.faces[k][i][s]))
                        out.push_back("d" + std::to_string(i) + " fails for σ with " + std::to_string(z) +
                                      " zeros at " + at(k, s));
                }
                for (std::size_t i = 0; i < x.degens[k].size(); ++i) {
                    const int z2 = z + (static_cast<int>(i) < z ? 1 : 0);
                    if (y.degens[k][i][v] != comp(k + 1, z2, x.degens[k][i][s]))
                        out.push_back("s" + std::to_string(i) + " fails for σ with " + std::to_string(z) +
                                      " zeros at " + at(k, s));
                }
            }
        }
    return out;
}

}  // namespace kderiv
