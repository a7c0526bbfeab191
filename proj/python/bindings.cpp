// Thin pybind11 layer: every result crosses as the CLI's JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kderiv/checks.hpp"
#include "kderiv/errors.hpp"
#include "kderiv/json_io.hpp"
#include "kderiv/ktheory.hpp"
#include "kderiv/parallel.hpp"

namespace py = pybind11;
using namespace kderiv;

namespace {

HomotopicalBase base(const std::string& tag, int q, int lo, int hi) { return HomotopicalBase::from_tag(tag, q, lo, hi); }

std::string k0_json(const std::string& model, const std::string& tag, int bound, int q, int lo, int hi,
                    const std::string& cof) {
    const auto b = base(tag, q, lo, hi);
    const Model m = model_from_tag(model);
    std::optional<WaldhausenStructure> w;
    if (!cof.empty()) w = WaldhausenStructure{b, cof_from_tag(cof)};
    if (m == Model::Waldhausen && !w) w = WaldhausenStructure{b, CofClass::Monos};
    py::gil_scoped_release release;
    const K0Result r = m == Model::Oracle ? k0_oracle(b, bound, w ? &*w : nullptr) : k0(m, b, bound, w ? &*w : nullptr);
    return dump(to_json(r));
}

std::string check_json(const std::string& suite, const std::string& tag, int bound, int q, int lo, int hi) {
    const CheckConfig cfg{base(tag, q, lo, hi), bound};
    py::gil_scoped_release release;
    return dump(to_json(run_suite(suite, cfg)));
}

}  // namespace

PYBIND11_MODULE(_kderiv, m) {
    m.doc() = "K0 of truncated S-constructions over finite bases";
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

    m.def("k0_json", &k0_json, py::arg("model"), py::arg("base"), py::arg("bound"), py::arg("q") = 2,
          py::arg("lo") = 0, py::arg("hi") = 1, py::arg("cof") = "");
    m.def("check_json", &check_json, py::arg("suite"), py::arg("base"), py::arg("bound"), py::arg("q") = 2,
          py::arg("lo") = 0, py::arg("hi") = 1);
    m.def("nerve_json", [](const std::string& shape, int trunc) {
        CatPtr c;
        if (shape == "square") c = square();
        else if (shape == "corner") c = ulcorner();
        else if (shape == "e") c = terminal();
        else if (shape.rfind("Ar[", 0) == 0) c = arrow_cat(std::stoi(shape.substr(3)));
        else if (shape.rfind("Z/", 0) == 0) c = cyclic_group_category(std::stoi(shape.substr(2)));
        else if (shape.rfind("[", 0) == 0) c = ordinal(std::stoi(shape.substr(1)));
        else throw InvalidArgument("unknown shape: " + shape);
        return dump(to_json(nerve(c, trunc)));
    }, py::arg("shape"), py::arg("trunc") = 2);
    m.def("set_enumeration_cap", &set_enumeration_cap);
    m.def("enumeration_cap", &enumeration_cap);
    m.def("set_worker_count", &set_worker_count);
}
