#include "kderiv/json_io.hpp"

namespace kderiv {

namespace {

// Integers that fit in 64 bits stay numbers; larger ones become strings.
Json big(const BigInt& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return static_cast<long long>(x);
    return x.str();
}

Json big_vec(const std::vector<BigInt>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(big(x));
    return a;
}

Json word(const Word& w) {
    Json a = Json::array();
    for (auto [g, e] : w) a.push_back(Json::array({g, e}));
    return a;
}

Json strings(const std::vector<std::string>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

}  // namespace

Json to_json(const FinCat& c) {
    Json j;
    j["name"] = c.name();
    j["objects"] = strings(c.objects());
    Json ms = Json::array();
    for (int m = 0; m < c.num_morphisms(); ++m) {
        const auto& a = c.morphism(m);
        ms.push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}, {"identity", c.is_identity(m)}});
    }
    j["morphisms"] = std::move(ms);
    j["composition"] = c.composition();
    return j;
}

Json to_json(const BaseObject& o) {
    Json j;
    j["dims"] = o.dims;
    j["key"] = o.key();
    return j;
}

Json to_json(const DiagramObject& f) {
    Json j;
    j["shape"] = f.shape->name();
    Json objs = Json::array();
    for (const auto& o : f.objects) objs.push_back(o.key());
    j["objects"] = std::move(objs);
    Json ms = Json::array();
    for (int m = 0; m < f.shape->num_morphisms(); ++m)
        if (!f.shape->is_identity(m)) ms.push_back({{"id", f.shape->morphism(m).id}, {"map", f.morphisms[m].key()}});
    j["morphisms"] = std::move(ms);
    return j;
}

Json to_json(const TruncSSet& s) {
    Json j;
    j["truncation"] = s.N;
    Json levels = Json::array();
    for (int k = 0; k <= s.N; ++k) {
        Json l;
        l["level"] = k;
        l["size"] = s.size(k);
        l["ids"] = strings(s.ids[k]);
        Json deg = Json::array();
        for (bool b : s.degenerate[k]) deg.push_back(b);
        l["degenerate"] = std::move(deg);
        l["faces"] = k >= 1 ? Json(s.faces[k]) : Json::array();
        l["degeneracies"] = k + 1 <= s.N ? Json(s.degens[k]) : Json::array();
        levels.push_back(std::move(l));
    }
    j["levels"] = std::move(levels);
    return j;
}

Json to_json(const TruncBiSSet& b) {
    Json j;
    j["truncation"] = {b.N, b.M};
    Json cells = Json::array();
    for (int n = 0; n <= b.N; ++n)
        for (int m = 0; m <= b.M; ++m) {
            Json c;
            c["n"] = n;
            c["m"] = m;
            c["size"] = b.size(n, m);
            c["ids"] = strings(b.ids[n][m]);
            c["hfaces"] = n >= 1 ? Json(b.hface[n][m]) : Json::array();
            c["hdegeneracies"] = n + 1 <= b.N ? Json(b.hdeg[n][m]) : Json::array();
            c["vfaces"] = m >= 1 ? Json(b.vface[n][m]) : Json::array();
            c["vdegeneracies"] = m + 1 <= b.M ? Json(b.vdeg[n][m]) : Json::array();
            cells.push_back(std::move(c));
        }
    j["cells"] = std::move(cells);
    return j;
}

Json to_json(const GroupPresentation& p) {
    Json j;
    j["generators"] = strings(p.generators);
    Json rels = Json::array();
    for (const auto& r : p.relators) rels.push_back(word(r));
    j["relators"] = std::move(rels);
    return j;
}

Json to_json(const AbelianInvariants& a) {
    Json j;
    j["group"] = a.describe();
    j["invariant_factors"] = big_vec(a.torsion);
    j["free_rank"] = a.free_rank;
    return j;
}

Json to_json(const K0Result& r) {
    Json j;
    j["model"] = r.model;
    j["base"] = r.base;
    if (!r.cof.empty()) j["cof"] = r.cof;
    j["bounds"] = {{"bound", r.bound}, {"truncation", r.truncation}};
    j["level_sizes"] = r.level_sizes;
    j["group"] = r.invariants.describe();
    j["invariant_factors"] = big_vec(r.invariants.torsion);
    j["free_rank"] = r.invariants.free_rank;
    j["generators"] = r.presentation.generators.size();
    j["relators"] = r.presentation.relators.size();
    Json cert = Json::array();
    for (std::size_t g = 0; g < r.generator_objects.size(); ++g)
        cert.push_back({{"generator", r.presentation.generators[g]},
                        {"object", r.generator_objects[g].key()},
                        {"image", big_vec(r.invariants.certificate[g])}});
    j["certificate"] = std::move(cert);
    j["note"] = r.note;
    return j;
}

Json to_json(const InducedMap& m) {
    Json j;
    j["well_defined"] = m.well_defined;
    j["surjective"] = m.surjective;
    j["iso"] = m.iso;
    j["verdict"] = m.verdict;
    Json rows = Json::array();
    for (const auto& r : m.matrix) rows.push_back(big_vec(r));
    j["matrix"] = std::move(rows);
    return j;
}

Json to_json(const ComparisonReport& r) {
    Json j;
    j["name"] = r.name;
    j["pass"] = r.pass();
    j["source"] = to_json(r.source);
    j["target"] = to_json(r.target);
    j["violations"] = strings(r.violations);
    j["induced"] = to_json(r.induced);
    Json sizes = Json::array();
    for (const auto& l : r.map.levels) sizes.push_back(l.size());
    j["map_level_sizes"] = std::move(sizes);
    return j;
}

Json to_json(const AgreementReport& r) {
    Json j;
    j["name"] = "agreement";
    j["pass"] = r.pass();
    j["injective"] = r.injective;
    j["bijective"] = r.bijective;
    j["violations"] = strings(r.violations);
    j["diagonal"] = to_json(r.diagonal);
    return j;
}

Json to_json(const LConstructionReport& r) {
    Json j;
    j["name"] = "L";
    j["pass"] = r.pass();
    Json levels = Json::array();
    for (const auto& l : r.levels) levels.push_back(to_json(l));
    j["levels"] = std::move(levels);
    Json ops = Json::array();
    for (const auto& o : r.operators)
        ops.push_back({{"name", o.name}, {"violations", strings(o.violations)}, {"induced", to_json(o.induced)}});
    j["operators"] = std::move(ops);
    j["iota_F"] = to_json(r.iota_f);
    return j;
}

Json to_json(const AxiomReport& r) {
    Json j;
    j["axiom"] = r.axiom;
    j["shapes"] = strings(r.shapes);
    j["bound"] = r.bound;
    j["pass"] = r.pass;
    j["checked"] = r.checked;
    j["counterexample"] = r.counterexample;
    j["note"] = r.note;
    return j;
}

Json to_json(const Verification& v) {
    Json j;
    j["pass"] = v.pass;
    j["checked"] = v.checked;
    j["failure"] = v.failure;
    return j;
}

Json to_json(const SuiteReport& r) {
    Json j;
    j["suite"] = r.suite;
    j["base"] = r.base;
    j["bound"] = r.bound;
    j["pass"] = r.pass();
    Json cs = Json::array();
    for (const auto& c : r.checks) cs.push_back({{"name", c.name}, {"status", status_tag(c.status)}, {"detail", c.detail}});
    j["checks"] = std::move(cs);
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace kderiv
