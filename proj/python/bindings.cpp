#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hyperfact/catalog.hpp"
#include "hyperfact/cli.hpp"
#include "hyperfact/schrod.hpp"

namespace py = pybind11;
using namespace hyperfact;

namespace {

Rational rational_arg(const py::object& v) {
    if (py::isinstance<py::str>(v)) return parse_rational(v.cast<std::string>());
    if (py::isinstance<py::int_>(v)) return Rational(v.cast<long>());
    return to_rational(v.cast<double>());
}

std::optional<Rational> optional_rational(const py::object& v) {
    if (v.is_none()) return std::nullopt;
    return rational_arg(v);
}

TildeForm form_arg(const std::string& s) { return s == "isospectral" ? TildeForm::isospectral : TildeForm::printed; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hypergeometric-type operators, ladder factorizations and Mielnik partner potentials";

    py::register_exception<Error>(m, "HyperfactError", PyExc_ValueError);

    py::class_<Family>(m, "Family")
        .def(py::init([](const std::string& kind, const py::object& alpha, const py::object& beta) {
                 return make_family(kind_from_tag(kind), rational_arg(alpha), rational_arg(beta));
             }),
             py::arg("kind"), py::arg("alpha"), py::arg("beta"))
        .def_property_readonly("kind", [](const Family& f) { return std::string(tag(f.kind())); })
        .def_property_readonly("alpha", &Family::alpha)
        .def_property_readonly("beta", &Family::beta)
        .def_property_readonly("interval", [](const Family& f) { return py::make_tuple(f.interval().lower, f.interval().upper); })
        .def_property_readonly("cutoff", [](const Family& f) { return cutoff(f).as_double(); })
        .def_property_readonly("base_point", &Family::base_point)
        .def("eigenvalue", [](const Family& f, int l) { return eigenvalue(f, l); }, py::arg("l"))
        .def("eigenvalue_exact", [](const Family& f, int l) { return to_string(eigenvalue_exact(f, l)); }, py::arg("l"))
        .def("tilde_eigenvalue",
             [](const Family& f, int mm, const py::object& delta) { return to_string(tilde_eigenvalue_exact(f, mm, rational_arg(delta))); },
             py::arg("m"), py::arg("delta"))
        .def("to_json", [](const Family& f) { return to_json(f).dump(); })
        .def("__repr__", [](const Family& f) { return "Family(" + family_label(f) + ")"; });

    m.def("associated_coefficients",
          [](const Family& f, int l, int mm) { return to_json(assoc<Rational>(f, l, mm)).dump(); }, py::arg("family"),
          py::arg("l"), py::arg("m"), "Associated function Phi_{l,m} = kappa^m p(s) as JSON with exact coefficients.");
    m.def("associated_value",
          [](const Family& f, int l, int mm, double s) {
              const DifferentiableValue v = eval(assoc<double>(f, l, mm), s);
              return py::make_tuple(v.value, v.deriv);
          },
          py::arg("family"), py::arg("l"), py::arg("m"), py::arg("s"));
    m.def("check_identities",
          [](const Family& f, int mm, int lmax, bool exact) {
              const LadderContext ctx = LadderContext::make(f, mm);
              return to_json(exact ? check_identities<Rational>(ctx, lmax) : check_identities<double>(ctx, lmax)).dump();
          },
          py::arg("family"), py::arg("m"), py::arg("lmax"), py::arg("exact") = true);

    py::class_<Deformation>(m, "Deformation")
        .def(py::init([](const Family& f, int mm, double gamma, std::optional<double> s0, const py::object& delta,
                         const std::string& form) {
                 return Deformation::make(f, mm, gamma, s0, optional_rational(delta), form_arg(form));
             }),
             py::arg("family"), py::arg("m"), py::arg("gamma") = INFINITY, py::arg("s0") = py::none(),
             py::arg("delta") = py::none(), py::arg("form") = "printed")
        .def_property_readonly("family", &Deformation::family)
        .def_property_readonly("m", &Deformation::m)
        .def_property_readonly("gamma", &Deformation::gamma)
        .def_property_readonly("s0", &Deformation::s0)
        .def_property_readonly("lambda_m", &Deformation::lambda_m_shifted)
        .def_property_readonly("rays", [](const Deformation& d) { return d.rays().describe(); })
        .def("to_json", [](const Deformation& d) { return to_json(d).dump(); })
        .def("potentials",
             [](const Deformation& d, double x) {
                 const PotentialPair p = potentials(d, x);
                 return py::make_tuple(p.upper, p.partner);
             },
             py::arg("x"))
        .def("superpotential", [](const Deformation& d, double x) { return superpotential_dx(d, x).value; }, py::arg("x"))
        .def("riccati_residual", [](const Deformation& d, const std::vector<double>& pts) { return check_riccati(d, pts); },
             py::arg("points"));

    m.def("admissible_gamma_range",
          [](const Family& f, int mm) {
              const GammaRays r = admissible_gamma_range(f, mm);
              return py::make_tuple(r.lower_limit, r.upper_limit, r.describe());
          },
          py::arg("family"), py::arg("m"));
    m.def("wavefunction", [](const Family& f, int l, int mm, double x) { return wavefunction(f, l, mm, x); },
          py::arg("family"), py::arg("l"), py::arg("m"), py::arg("x"));
    m.def("catalog_reference",
          [](int id, double alpha, double beta, int mm, double x, double gamma, std::optional<double> delta) {
              const CatalogValue v = catalog_reference(id, alpha, beta, mm, x, gamma, delta);
              return py::make_tuple(v.V_upper, v.W, v.lambda);
          },
          py::arg("id"), py::arg("alpha"), py::arg("beta"), py::arg("m"), py::arg("x"), py::arg("gamma") = INFINITY,
          py::arg("delta") = py::none());

    m.def("fd_spectrum",
          [](const std::function<double(double)>& V, double x_min, double x_max, int N, int n_states, double tol) {
              const FdSpectrum s = fd_spectrum(V, Grid{x_min, x_max, N}, n_states, tol);
              return s.eigenvalues;
          },
          py::arg("potential"), py::arg("x_min"), py::arg("x_max"), py::arg("N"), py::arg("n_states"),
          py::arg("tol") = 1e-3);
    m.def("verify_spectrum",
          [](const Deformation& d, const std::string& which, int n_levels, std::optional<std::tuple<double, double, int>> grid) {
              std::optional<Grid> g;
              if (grid) g = Grid{std::get<0>(*grid), std::get<1>(*grid), std::get<2>(*grid)};
              const Operator op = which == "partner" ? Operator::partner : Operator::upper;
              return to_json(verify_spectrum(d, op, n_levels, g)).dump();
          },
          py::arg("deformation"), py::arg("which") = "upper", py::arg("n_levels") = 4, py::arg("grid") = py::none());
    m.def("run_suite", [](const std::string& name) { return to_json(run_suite(suite_from_name(name))).dump(); },
          py::arg("name"));
    m.def("run_cli",
          [](std::vector<std::string> args) {
              args.insert(args.begin(), "hyperfact");
              std::vector<const char*> argv;
              for (const auto& a : args) argv.push_back(a.c_str());
              std::ostringstream out, err;
              const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"));
}
