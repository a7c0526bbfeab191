// kderiv: batch K0 calculator and invariant checker.
//
// Exit codes: 0 success, 1 check failure, 2 invalid configuration,
// 3 enumeration cap exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <regex>

#include <CLI11.hpp>

#include "kderiv/checks.hpp"
#include "kderiv/errors.hpp"
#include "kderiv/json_io.hpp"
#include "kderiv/ktheory.hpp"
#include "kderiv/parallel.hpp"

using namespace kderiv;

namespace {

struct Config {
    std::string model = "s";
    std::string base = "vect-iso";
    int q = 2;
    int bound = 1;
    std::string degrees = "0:1";
    std::string cof;
    int trunc = 2;
    long long cap = 0;
    std::string out;
    int workers = 1;
    std::string suite = "all";
    std::string what = "s";
    std::string shape;
    bool oracle = false;
};

HomotopicalBase make_base(const Config& c) {
    const std::regex re(R"((-?\d+):(-?\d+))");
    std::smatch m;
    if (!std::regex_match(c.degrees, m, re)) throw InvalidArgument("--degrees expects lo:hi, got " + c.degrees);
    return HomotopicalBase::from_tag(c.base, c.q, std::stoi(m[1]), std::stoi(m[2]));
}

std::optional<WaldhausenStructure> make_wald(const Config& c, const HomotopicalBase& b) {
    if (c.cof.empty()) return std::nullopt;
    return WaldhausenStructure{b, cof_from_tag(c.cof)};
}

// "e", "[n]", "Ar[n]", "square", "corner", "Z/k".
CatPtr parse_shape(const std::string& s) {
    std::smatch m;
    if (s == "e") return terminal();
    if (s == "square") return square();
    if (s == "corner") return ulcorner();
    if (std::regex_match(s, m, std::regex(R"(\[(\d+)\])"))) return ordinal(std::stoi(m[1]));
    if (std::regex_match(s, m, std::regex(R"(Ar\[(\d+)\])"))) return arrow_cat(std::stoi(m[1]));
    if (std::regex_match(s, m, std::regex(R"(Z/(\d+))"))) return cyclic_group_category(std::stoi(m[1]));
    throw InvalidArgument("unknown shape: " + s);
}

void emit(const Config& c, const Json& j) {
    const std::string text = dump(j);
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + c.out);
    f << text;
}

int cmd_k0(const Config& c) {
    const auto b = make_base(c);
    const Model model = model_from_tag(c.model);
    auto w = make_wald(c, b);
    if (model == Model::Waldhausen && !w) w = WaldhausenStructure{b, CofClass::Monos};
    const K0Result r = model == Model::Oracle ? k0_oracle(b, c.bound, w ? &*w : nullptr)
                                              : k0(model, b, c.bound, w ? &*w : nullptr);
    Json j = to_json(r);
    Json comps = Json::array();
    int code = 0;
    if (c.oracle && model != Model::Oracle) {
        const K0Result o = k0_oracle(b, c.bound, model == Model::Waldhausen ? &*w : nullptr);
        std::string why;
        const bool ok = certificates_compatible(r, o, &why);
        comps.push_back({{"name", "oracle"}, {"pass", ok}, {"detail", why}, {"oracle", to_json(o)}});
        if (!ok) code = 1;
    }
    j["comparisons"] = std::move(comps);
    emit(c, j);
    return code;
}

int cmd_check(const Config& c) {
    const SuiteReport r = run_suite(c.suite, CheckConfig{make_base(c), c.bound});
    emit(c, to_json(r));
    if (!r.pass()) {
        std::cerr << "check failed: " << r.first_failure() << "\n";
        return 1;
    }
    return 0;
}

int cmd_dump(const Config& c) {
    const auto b = make_base(c);
    const auto d = Prederivator::represent(b);
    Json j;
    j["what"] = c.what;
    if (c.what == "category") {
        j["category"] = to_json(*parse_shape(c.shape.empty() ? "[1]" : c.shape));
    } else if (c.what == "nerve") {
        j["shape"] = c.shape.empty() ? "[1]" : c.shape;
        j["nerve"] = to_json(nerve(parse_shape(c.shape.empty() ? "[1]" : c.shape), c.trunc));
    } else if (c.what == "presentation") {
        const TruncSSet s = c.shape.empty() ? build_s(d, 2, c.bound).set : nerve(parse_shape(c.shape), 2);
        const auto p = edge_path(s).presentation;
        j["source"] = c.shape.empty() ? "s " + b.tag() : "nerve " + c.shape;
        j["presentation"] = to_json(p);
        j["abelianization"] = to_json(abelianize(p));
    } else if (c.what == "s") {
        j["base"] = b.tag();
        j["bound"] = c.bound;
        j["s"] = to_json(build_s(d, c.trunc, c.bound).set);
    } else if (c.what == "bisimplicial") {
        j["base"] = b.tag();
        j["bound"] = c.bound;
        if (auto w = make_wald(c, b)) {
            j["cof"] = cof_tag(w->cof);
            j["bisimplicial"] = to_json(build_wald(*w, c.trunc, c.trunc, c.bound).set);
        } else {
            j["bisimplicial"] = to_json(build_Sbis(d, c.trunc, c.trunc, c.bound).set);
        }
    } else if (c.what == "nisoS") {
        j["base"] = b.tag();
        j["bound"] = c.bound;
        j["nisoS"] = to_json(build_NisoS(d, c.trunc, c.bound).set);
    } else {
        throw InvalidArgument("unknown --what: " + c.what);
    }
    emit(c, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kderiv: K0 of truncated S-constructions over finite bases"};
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* s) {
        s->add_option("--base", c.base, "vect-iso | ptset-iso | chain-qis | trivial");
        s->add_option("--q", c.q, "field size (prime)");
        s->add_option("--degrees", c.degrees, "chain degree window lo:hi");
        s->add_option("--bound", c.bound, "dimension bound for enumerated objects");
        s->add_option("--cof", c.cof, "cofibrations: monos | all-maps | split-monos");
        s->add_option("--trunc", c.trunc, "simplicial truncation N");
        s->add_option("--cap", c.cap, "enumeration cap (overrides KDERIV_CAP)");
        s->add_option("--out", c.out, "output file (stdout when absent)");
        s->add_option("--workers", c.workers, "worker threads; output does not depend on it");
    };
    auto* k0c = app.add_subcommand("k0", "compute K0 in one model");
    common(k0c);
    k0c->add_option("--model", c.model, "s | bisimplicial | derivator | waldhausen | oracle");
    k0c->add_flag("--oracle", c.oracle, "cross-check against the brute-force oracle");
    auto* check = app.add_subcommand("check", "run an invariant battery");
    common(check);
    check->add_option("--suite", c.suite, "axioms | simplicial | enrichment | comparison | all");
    auto* dumpc = app.add_subcommand("dump", "write a structure as JSON");
    common(dumpc);
    dumpc->add_option("--what", c.what, "category | s | bisimplicial | nisoS | nerve | presentation");
    dumpc->add_option("--shape", c.shape, "e | [n] | Ar[n] | square | corner | Z/k");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c.bound < 0) throw InvalidArgument("--bound must be non-negative");
        if (c.trunc < 0 || c.trunc > 3) throw InvalidArgument("--trunc must lie in 0..3");
        if (c.workers < 1) throw InvalidArgument("--workers must be positive");
        if (c.cap < 0) throw InvalidArgument("--cap must be non-negative");
        if (c.cap > 0) set_enumeration_cap(c.cap);
        set_worker_count(c.workers);
        if (*k0c) return cmd_k0(c);
        if (*check) return cmd_check(c);
        return cmd_dump(c);
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const CapabilityError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "check failure: " << e.what() << "\n";
        return 1;
    }
}
