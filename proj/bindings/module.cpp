// Python bindings for the core operations: Hill interval analysis, the
// holonomy certificate, geodesic integration, and report serialization.

#include "jetgeo/action_angle.hpp"
#include "jetgeo/config.hpp"
#include "jetgeo/errors.hpp"
#include "jetgeo/flow.hpp"
#include "jetgeo/hill.hpp"
#include "jetgeo/holonomy.hpp"
#include "jetgeo/polynomial.hpp"
#include "jetgeo/quadrature.hpp"
#include "jetgeo/report_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

namespace py = pybind11;
using namespace jetgeo;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hill intervals, holonomy certificates, and geodesic flow on jet space";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<NoHillIntervalError>(m, "NoHillIntervalError", base);
    py::register_exception<UnboundedIntervalError>(m, "UnboundedIntervalError", base);
    py::register_exception<CriticalEndpointError>(m, "CriticalEndpointError", base);
    py::register_exception<BadInitialEnergyError>(m, "BadInitialEnergyError", base);
    py::register_exception<InconsistentComputationError>(m, "InconsistentComputationError",
                                                         base);
    py::register_exception<OutsideHillError>(m, "OutsideHillError", base);
    py::register_exception<ConfigError>(m, "ConfigError", base);
    py::register_exception<NoConvergenceError>(m, "NoConvergenceError", base);

    py::class_<Polynomial>(m, "Polynomial")
        .def(py::init<std::vector<double>>(), py::arg("coefficients"),
             "Polynomial with ascending coefficients a_0..a_k")
        .def("eval", &Polynomial::eval, py::arg("x"))
        .def("degree", &Polynomial::degree)
        .def("bound", &Polynomial::bound)
        .def("derivative", &Polynomial::derivative)
        .def("coefficients",
             [](const Polynomial& p) {
                 const auto span = p.coeffs();
                 return std::vector<double>(span.begin(), span.end());
             })
        .def("__repr__", [](const Polynomial& p) {
            std::string s = "Polynomial([";
            const auto span = p.coeffs();
            for (std::size_t i = 0; i < span.size(); ++i)
                s += (i ? ", " : "") + format_double(span[i]);
            return s + "])";
        });

    py::enum_<EndpointKind>(m, "EndpointKind")
        .value("Regular", EndpointKind::Regular)
        .value("Critical", EndpointKind::Critical)
        .value("Unbounded", EndpointKind::Unbounded);

    py::enum_<GeoClass>(m, "GeoClass")
        .value("XPeriodic", GeoClass::XPeriodic)
        .value("EndpointCritical", GeoClass::EndpointCritical)
        .value("HorizontalLine", GeoClass::HorizontalLine)
        .value("AbnormalPoint", GeoClass::AbnormalPoint);

    py::enum_<Verdict>(m, "Verdict")
        .value("NoPeriodicGeodesics", Verdict::NoPeriodicGeodesics)
        .value("DegenerateInput", Verdict::DegenerateInput);

    py::class_<HillInterval>(m, "HillInterval")
        .def_readonly("f", &HillInterval::f)
        .def_readonly("lo", &HillInterval::lo)
        .def_readonly("hi", &HillInterval::hi)
        .def_readonly("lo_kind", &HillInterval::lo_kind)
        .def_readonly("hi_kind", &HillInterval::hi_kind)
        .def_readonly("geo_class", &HillInterval::geo_class)
        .def("bounded", &HillInterval::bounded)
        .def("width", &HillInterval::width)
        .def("midpoint", &HillInterval::midpoint)
        .def("__repr__", [](const HillInterval& h) {
            return "HillInterval([" + format_double(h.lo) + ", " + format_double(h.hi) +
                   "], " + to_string(h.geo_class) + ")";
        });

    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init<>())
        .def(py::init([](double rel_tol, double abs_tol, int max_level) {
                 QuadratureSpec s;
                 s.rel_tol = rel_tol;
                 s.abs_tol = abs_tol;
                 s.max_level = max_level;
                 return s;
             }),
             py::arg("rel_tol"), py::arg("abs_tol"), py::arg("max_level"))
        .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
        .def_readwrite("abs_tol", &QuadratureSpec::abs_tol)
        .def_readwrite("max_level", &QuadratureSpec::max_level);

    py::class_<PeriodReport>(m, "PeriodReport")
        .def_readonly("interval", &PeriodReport::interval)
        .def_readonly("period", &PeriodReport::period)
        .def_readonly("action", &PeriodReport::action)
        .def_readonly("delta_theta", &PeriodReport::delta_theta)
        .def_readonly("delta_theta_gram", &PeriodReport::delta_theta_gram)
        .def_readonly("gram", &PeriodReport::gram)
        .def_readonly("lambda_min", &PeriodReport::lambda_min)
        .def_readonly("gram_residual", &PeriodReport::gram_residual)
        .def_readonly("identity_residual", &PeriodReport::identity_residual)
        .def_readonly("margin", &PeriodReport::margin)
        .def_readonly("verdict", &PeriodReport::verdict);

    py::class_<State>(m, "State")
        .def(py::init<>())
        .def_readwrite("t", &State::t)
        .def_readwrite("x", &State::x)
        .def_readwrite("px", &State::px)
        .def_readwrite("thetas", &State::thetas);

    py::class_<StepStats>(m, "StepStats")
        .def_readonly("accepted", &StepStats::accepted)
        .def_readonly("rejected", &StepStats::rejected)
        .def_readonly("max_energy_drift", &StepStats::max_energy_drift);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def_readonly("stats", &Trajectory::stats);

    m.def("hill_intervals", &hill_intervals, py::arg("f"),
          "Maximal intervals with F^2 < 1 inside and F^2 = 1 on the boundary");
    m.def("period", &period, py::arg("interval"), py::arg("spec") = QuadratureSpec{});
    m.def("action", &action, py::arg("interval"), py::arg("spec") = QuadratureSpec{});
    m.def("holonomy", &holonomy, py::arg("interval"), py::arg("spec") = QuadratureSpec{});
    m.def("gram_matrix", &gram_matrix, py::arg("interval"), py::arg("spec") = QuadratureSpec{});
    m.def("inner_product", &inner_product, py::arg("p1"), py::arg("p2"), py::arg("interval"),
          py::arg("spec") = QuadratureSpec{});
    m.def("certify_interval", &certify_interval, py::arg("interval"),
          py::arg("spec") = QuadratureSpec{});
    m.def("certify", &certify, py::arg("f"), py::arg("spec") = QuadratureSpec{},
          "Certificates for every Hill interval of F, left to right");
    m.def("level_momentum", &level_momentum, py::arg("f"), py::arg("x"));
    m.def("integrate_geodesic", &integrate_geodesic, py::arg("f"), py::arg("start"),
          py::arg("t_end"), py::arg("ode_tol") = 1e-10, py::arg("sample_count") = 512);
    m.def("area_progress", &area_progress, py::arg("interval"), py::arg("x"),
          py::arg("spec") = QuadratureSpec{});
    m.def("angle_phi_h", &angle_phi_h, py::arg("interval"), py::arg("x"), py::arg("branch"),
          py::arg("spec") = QuadratureSpec{});
    m.def("period_report_json", &period_report_json, py::arg("report"));
    m.def("parse_period_report", &parse_period_report, py::arg("json_text"));
    m.def("trajectory_csv", &trajectory_csv, py::arg("f"), py::arg("trajectory"));
}
