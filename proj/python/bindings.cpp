// Python bindings for the modvar core.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modvar/cl_dynamics.hpp"
#include "modvar/cli_sim.hpp"
#include "modvar/core_model.hpp"
#include "modvar/overlap_window.hpp"
#include "modvar/schrodinger.hpp"
#include "modvar/two_particle.hpp"

namespace py = pybind11;
using namespace modvar;

PYBIND11_MODULE(_modvar, m) {
    m.doc() = "Modular-variable dynamics of separated wave packets";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<PhysicalConstants>(m, "PhysicalConstants")
        .def(py::init([](double mass, double hbar, double kb, double g) {
                 return PhysicalConstants::make(mass, hbar, kb, g);
             }),
             py::arg("m") = 1.0, py::arg("hbar") = 1.0, py::arg("kb") = 1.0, py::arg("g") = -3.0)
        .def_readonly("m", &PhysicalConstants::m)
        .def_readonly("hbar", &PhysicalConstants::hbar)
        .def_readonly("kb", &PhysicalConstants::kB)
        .def_readonly("g", &PhysicalConstants::g);

    py::class_<BathParams>(m, "BathParams")
        .def(py::init([](double gamma, double T, const PhysicalConstants& c) {
                 return BathParams::make(c, gamma, T);
             }),
             py::arg("gamma"), py::arg("temperature"), py::arg("constants") = PhysicalConstants{})
        .def_static("none", &BathParams::none)
        .def_readonly("gamma", &BathParams::gamma)
        .def_readonly("temperature", &BathParams::T)
        .def_readonly("diffusion", &BathParams::D);

    py::class_<GaussianPacket>(m, "GaussianPacket")
        .def(py::init(&GaussianPacket::make), py::arg("x0"), py::arg("p0"), py::arg("sigma0"))
        .def_readonly("x0", &GaussianPacket::x0)
        .def_readonly("p0", &GaussianPacket::p0)
        .def_readonly("sigma0", &GaussianPacket::sigma0);

    py::class_<SuperpositionSpec>(m, "SuperpositionSpec")
        .def_readonly("a", &SuperpositionSpec::a)
        .def_readonly("b", &SuperpositionSpec::b)
        .def_readonly("L", &SuperpositionSpec::L)
        .def_readonly("k", &SuperpositionSpec::k)
        .def_readonly("alpha", &SuperpositionSpec::alpha);

    m.def("make_superposition", &make_superposition, py::arg("L"), py::arg("sigma0"), py::arg("k"),
          py::arg("alpha"), py::arg("constants") = PhysicalConstants{});
    m.def("scaled_time_tau", &scaled_time_tau, py::arg("gamma"), py::arg("t"));

    py::class_<ModularClosedForm>(m, "ModularClosedForm")
        .def_readonly("value", &ModularClosedForm::value)
        .def_readonly("envelope", &ModularClosedForm::envelope)
        .def_readonly("phase", &ModularClosedForm::phase)
        .def_readonly("approximate", &ModularClosedForm::approximate);

    m.def(
        "modular_expectation",
        [](const SuperpositionSpec& s, const PhysicalConstants& c, double t) {
            const auto r = modular_expectation(s, c, t);
            return py::make_tuple(r.value, r.approximate);
        },
        py::arg("spec"), py::arg("constants"), py::arg("t"),
        "(value, approximate) of <cos(p L / hbar)> for a closed system");
    m.def("cl_modular_closed", &cl_modular_closed, py::arg("spec"), py::arg("bath"),
          py::arg("constants"), py::arg("t"));
    m.def(
        "cl_modular_quadrature",
        [](const SuperpositionSpec& s, const BathParams& b, const PhysicalConstants& c, double t) {
            const auto r = cl_modular_quadrature(s, b, c, t, s.L);
            return py::make_tuple(r.value, r.error);
        },
        py::arg("spec"), py::arg("bath"), py::arg("constants"), py::arg("t"),
        "(value, error estimate) of <cos(p L / hbar)> by quadrature of the density matrix");
    m.def("cl_density",
          py::overload_cast<const SuperpositionSpec&, const BathParams&, const PhysicalConstants&,
                            double, double>(&cl_density),
          py::arg("spec"), py::arg("bath"), py::arg("constants"), py::arg("x"), py::arg("t"));
    m.def("cl_current",
          py::overload_cast<const SuperpositionSpec&, const BathParams&, const PhysicalConstants&,
                            double, double>(&cl_current),
          py::arg("spec"), py::arg("bath"), py::arg("constants"), py::arg("x"), py::arg("t"));

    py::enum_<Framework>(m, "Framework")
        .value("SCHRODINGER", Framework::Schrodinger)
        .value("CALDEIRA_LEGGETT", Framework::CaldeiraLeggett)
        .value("COMMON_BATH", Framework::CommonBath);
    m.def(
        "overlap_window",
        [](Framework f, const SuperpositionSpec& s, const BathParams& b, const PhysicalConstants& c,
           double support_factor) { return overlap_window(f, s, b, c, support_factor).t_max; },
        py::arg("framework"), py::arg("spec"), py::arg("bath"), py::arg("constants"),
        py::arg("support_factor") = kDefaultSupportFactor, "end of the non-overlap window");

    py::enum_<StatisticsKind>(m, "Statistics")
        .value("MB", StatisticsKind::MB)
        .value("BE", StatisticsKind::BE)
        .value("FD", StatisticsKind::FD);
    py::class_<CompanionState>(m, "CompanionState")
        .def_static("equals_a", &CompanionState::equals_a)
        .def_static("equals_b", &CompanionState::equals_b)
        .def_static("disjoint", &CompanionState::disjoint)
        .def_static("gaussian", &CompanionState::gaussian, py::arg("packet"));
    m.def("modular_mb", &modular_mb, py::arg("spec"), py::arg("constants") = PhysicalConstants{});
    m.def("modular_indistinguishable", &modular_indistinguishable, py::arg("spec"),
          py::arg("companion"), py::arg("statistics"), py::arg("constants") = PhysicalConstants{});
    m.def("reduced_modular_common_bath", &reduced_modular_common_bath, py::arg("spec"),
          py::arg("bath"), py::arg("constants"), py::arg("t"));

    m.def(
        "generate_figure",
        [](const std::string& figure, const std::map<std::string, std::string>& overrides) {
            cli::ConfigEntries entries(overrides.begin(), overrides.end());
            const auto cfg = cli::resolve_config(figure, {}, entries);
            std::map<std::string, std::string> out;
            for (const auto& f : cli::generate_figure(cfg)) out[f.name] = f.content;
            return out;
        },
        py::arg("figure"), py::arg("overrides") = std::map<std::string, std::string>{},
        "CSV text of each file of a figure, keyed by file name");
}
