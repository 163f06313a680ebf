#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qcover/cb_engine.hpp"
#include "qcover/cli.hpp"
#include "qcover/udot.hpp"
#include "qcover/verify.hpp"

namespace py = pybind11;
using namespace qcover;

namespace {

Morphism morphism_of(const std::string& name) {
  auto m = parse_morphism(name);
  if (!m) throw py::value_error("unknown morphism '" + name + "'");
  return *m;
}

CBIndex index_of(const std::tuple<int, int, int>& t) { return {std::get<0>(t), std::get<1>(t), std::get<2>(t)}; }

}  // namespace

PYBIND11_MODULE(_qcover, m) {
  m.doc() = "Exact computations in the covering quantum algebra of osp(1|2)";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ZeroDivisorError>(m, "ZeroDivisorError", PyExc_ZeroDivisionError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<PiScalar>(m, "Scalar")
      .def(py::init([](const std::string& s) { return parse_scalar(s); }))
      .def(py::init<long>())
      .def_static("q", [](int e) { return PiScalar::q_power(e); }, py::arg("e") = 1)
      .def_static("pi", &PiScalar::pi)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("bar", [](const PiScalar& x) { return bar(x); })
      .def("specialize", [](const PiScalar& x, int sign) { return format_laurent(specialize(x, sign)); })
      .def("in_positive_cone", [](const PiScalar& x) { return cone_membership(x, Cone::positive); })
      .def("__str__", &format_scalar)
      .def("__repr__", [](const PiScalar& x) { return "Scalar('" + format_scalar(x) + "')"; });

  m.def("qint", [](long n) { return qint(n); });
  m.def("qbinom", [](long n, long a) { return qbinom(n, a); });
  m.def("theta_coeff", [](long n) { return theta_coeff(n); });

  py::class_<PBWElement>(m, "Element")
      .def(py::init([](const std::string& s) { return parse_element(s); }))
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("morphism", [](const PBWElement& x, const std::string& name) { return apply_morphism(morphism_of(name), x); })
      .def("coproduct", [](const PBWElement& x) { return format_tensor(coproduct(x)); })
      .def("antipode", [](const PBWElement& x) { return antipode(x); })
      .def("__str__", &format_element)
      .def("__repr__", [](const PBWElement& x) { return "Element('" + format_element(x) + "')"; });

  py::class_<UDotElement>(m, "DotElement")
      .def(py::init([](const std::string& s) { return parse_udot(s); }))
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("bar", [](const UDotElement& x) { return bar(x); })
      .def("morphism", [](const UDotElement& x, const std::string& name) { return apply_morphism(morphism_of(name), x); })
      .def("cb_expand", [](const UDotElement& x) {
        std::vector<std::pair<std::tuple<int, int, int>, std::string>> r;
        for (const auto& [i, c] : cb_expand(x)) r.push_back({{i.a, i.b, i.k}, format_rational(c)});
        return r;
      })
      .def("specialize", [](const UDotElement& x, int sign) { return format_specialized(specialize_udot(x, sign)); })
      .def("__str__", &format_udot)
      .def("__repr__", [](const UDotElement& x) { return "DotElement('" + format_udot(x) + "')"; });

  m.def("cb", [](int a, int b, int k) { return cb_element({a, b, k}); }, py::arg("a"), py::arg("b"), py::arg("k"));
  m.def("structure_constants", [](const std::tuple<int, int, int>& i1, const std::tuple<int, int, int>& i2) {
    std::vector<std::pair<std::tuple<int, int, int>, PiScalar>> r;
    for (const auto& [i, c] : structure_constants(index_of(i1), index_of(i2))) r.push_back({{i.a, i.b, i.k}, c});
    return r;
  });
  m.def("bilinear_form", [](const UDotElement& x, const UDotElement& y) { return format_rational(bilinear_form(x, y)); });
  m.def("tensor_cb", [](int s, int t) {
    std::map<std::pair<int, int>, std::map<std::pair<int, int>, PiScalar>> r = tensor_cb(s, t).elements;
    return r;
  }, "Canonical basis of ^omega L(s) (x) L(t): (a, b) -> {(m, n): coefficient}");
  m.def("decompose", [](int s, int t) { return casimir_decompose(tensor(simple_module(s, 1), simple_module(t, 1))); });

  m.def("verify", [](const std::string& suite, int max_n, int modules, int box, int weights, int samples, int cutoff,
                     unsigned threads) {
    VerifyOptions o;
    o.max_n = max_n;
    o.modules = modules;
    o.box = box;
    o.weights = weights;
    o.samples = samples;
    o.cutoff = cutoff;
    o.threads = threads;
    VerifyResult r;
    {
      py::gil_scoped_release release;
      r = run_suite(suite, o);
    }
    return std::make_pair(r.ok, r.message);
  }, py::arg("suite"), py::arg("max_n") = -1, py::arg("modules") = -1, py::arg("box") = -1, py::arg("weights") = -1,
     py::arg("samples") = -1, py::arg("cutoff") = -1, py::arg("threads") = 0);
  m.attr("suites") = suite_names();

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, "Run the command line; returns (exit code, stdout, stderr)");
}
