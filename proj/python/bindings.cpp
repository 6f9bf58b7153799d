#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cftengine/catalog.hpp"
#include "cftengine/scenario.hpp"

namespace py = pybind11;
using namespace cfe;

namespace {

ScenarioResult dispatch(const std::string& kind, const std::string& text, std::uint64_t seed, bool certify) {
    Json input = parse_json_text(text);
    ScenarioOptions opt{seed, certify};
    if (kind == "group") return run_group_report(input, opt);
    if (kind == "mackey") return run_mackey_check(input, opt);
    if (kind == "cft") return run_cft_scenario(input, opt);
    if (kind == "hrv") return run_hrv_eval(input, opt);
    throw InputError("unknown scenario kind '" + kind + "'");
}

// pybind11 holders cannot be shared_ptr<const T>
struct Field {
    FieldPtr f;
};

std::vector<std::pair<Vec, Int>> terms_of(const LaurentElement& x) {
    std::vector<std::pair<Vec, Int>> out;
    for (const auto& [e, c] : x.terms()) out.emplace_back(e.c, c);
    return out;
}

}  // namespace

PYBIND11_MODULE(_cftengine, m) {
    m.doc() = "finite models of class field theory and higher-rank valuations";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ZeroValuation>(m, "ZeroValuation", PyExc_ArithmeticError);
    py::register_exception<ZeroInverse>(m, "ZeroInverse", PyExc_ZeroDivisionError);
    py::register_exception<WindowOverflow>(m, "WindowOverflow", PyExc_OverflowError);

    m.def(
        "run_scenario",
        [](const std::string& kind, const std::string& text, std::uint64_t seed, bool certify) {
            ScenarioResult r = dispatch(kind, text, seed, certify);
            return py::make_tuple(render_json(r.report), r.pass);
        },
        py::arg("kind"), py::arg("scenario"), py::arg("seed") = 0, py::arg("certify") = false,
        "Run a scenario given as JSON text; returns (report JSON, passed).");

    m.def("catalog_names", [] {
        std::vector<std::string> names;
        for (const auto& g : catalog()) names.push_back(g->name());
        return names;
    });
    m.def("group_order", [](const std::string& name) { return catalog_group(name)->order(); });

    m.def("rlo_compare", [](const Vec& a, const Vec& b) { return rlo_compare(RloVec(a), RloVec(b)); });

    py::class_<Field>(m, "LaurentField")
        .def(py::init([](Int p, int rank, const Vec& lo, const Vec& hi) { return Field{make_field(p, rank, lo, hi)}; }),
             py::arg("p"), py::arg("rank"), py::arg("lo"), py::arg("hi"))
        .def_property_readonly("p", [](const Field& f) { return f.f->p(); })
        .def_property_readonly("rank", [](const Field& f) { return f.f->rank(); })
        .def_property_readonly("lo", [](const Field& f) { return f.f->lo(); })
        .def_property_readonly("hi", [](const Field& f) { return f.f->hi(); })
        .def("variable", [](const Field& f, int i) { return LaurentElement::variable(f.f, i - 1); },
             "T_i for i = 1..rank")
        .def("constant", [](const Field& f, Int c) { return LaurentElement::constant(f.f, c); })
        .def("element", [](const Field& f, const std::vector<std::pair<Vec, Int>>& terms) {
            return LaurentElement(f.f, terms);
        });

    py::class_<LaurentElement>(m, "LaurentElement")
        .def_property_readonly("terms", &terms_of)
        .def_property_readonly("exact", &LaurentElement::exact)
        .def("is_zero", &LaurentElement::is_zero)
        .def("inverse", &LaurentElement::inverse)
        .def("pow", &LaurentElement::pow)
        .def("valuation", [](const LaurentElement& x) { return rank_n_valuation(x).c; })
        .def("valuation", [](const LaurentElement& x, int r) {
            return Valuation::standard(x.field()).project(r)(x).c;
        })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("__repr__", &LaurentElement::str);
}
