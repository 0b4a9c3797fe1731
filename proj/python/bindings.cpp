#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heatflow/config.hpp"
#include "heatflow/errors.hpp"
#include "heatflow/evolve.hpp"
#include "heatflow/heatkernel.hpp"
#include "heatflow/massfn.hpp"
#include "heatflow/plancherel.hpp"
#include "heatflow/rootsys.hpp"
#include "heatflow/spherical.hpp"

namespace py = pybind11;
using namespace heatflow;

#define STR_(x) #x
#define STR(x) STR_(x)

namespace {

RootDatum family_datum(const std::string &family, int n, int m, int m_short, int m_long) {
    if (family == "rank1") return build_root_system(FamilySpec::rank1(n));
    if (family == "a2") return build_root_system(FamilySpec::a2(m));
    if (family == "b2") return build_root_system(FamilySpec::b2(m_short, m_long));
    throw ConfigError("unknown family '" + family + "'");
}

py::list report_rows(const ConvergenceReport &rep) {
    py::list out;
    for (const auto &r : rep.rows) {
        py::dict d;
        d["p"] = r.p;
        d["t"] = r.t;
        d["mass"] = r.mass;
        d["E"] = r.result.E;
        d["region"] = r.result.region;
        d["tail"] = r.result.tail;
        d["weight_norm"] = r.weight_norm;
        d["error"] = r.error;
        out.append(d);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Heat kernels, spherical functions and mass functions on real hyperbolic space";
    m.attr("__version__") = STR(VERSION_INFO);

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def(
        "heat_kernel_log",
        [](int n, double t, double r, const std::string &route) { return heat_kernel(n, t, r, parse_route(route)).value.log(); },
        py::arg("n"), py::arg("t"), py::arg("r"), py::arg("route") = "auto", "log h_t(r) on H^n");
    m.def(
        "heat_kernel",
        [](int n, double t, double r, const std::string &route) { return heat_kernel(n, t, r, parse_route(route)).value.value(); },
        py::arg("n"), py::arg("t"), py::arg("r"), py::arg("route") = "auto");
    m.def(
        "lp_norm_log", [](int n, double t, double p) { return lp_norm_log(n, t, p).log(); }, py::arg("n"), py::arg("t"),
        py::arg("p"));
    m.def(
        "concentration_defect",
        [](int n, double t, double p) { return concentration_defect(n, t, p, RegionSchedule::defaults()); },
        py::arg("n"), py::arg("t"), py::arg("p"));
    m.def(
        "critical_region",
        [](int n, double p, double t) {
            RadialRegion g = critical_region(n, p, t, RegionSchedule::defaults());
            return std::make_pair(g.lo, g.hi);
        },
        py::arg("n"), py::arg("p"), py::arg("t"));

    m.def("phi", &phi_lambda_real, py::arg("n"), py::arg("lam"), py::arg("r"), "spherical function phi_lambda(r), real part");
    m.def(
        "phi0_log", [](int n, double r) { return phi0(n, r).log(); }, py::arg("n"), py::arg("r"));
    m.def("plancherel_density", &plancherel_density_h, py::arg("n"), py::arg("lam"));
    m.def(
        "plancherel_density_log",
        [](const std::string &family, const std::vector<double> &lam, int n, int mult, int m_short, int m_long) {
            return plancherel_density_log(family_datum(family, n, mult, m_short, m_long), lam).log();
        },
        py::arg("family"), py::arg("lam"), py::arg("n") = 3, py::arg("m") = 1, py::arg("m_short") = 1,
        py::arg("m_long") = 1);
    m.def(
        "root_system_json",
        [](const std::string &family, int n, int mult, int m_short, int m_long) {
            return to_json(family_datum(family, n, mult, m_short, m_long));
        },
        py::arg("family"), py::arg("n") = 3, py::arg("m") = 1, py::arg("m_short") = 1, py::arg("m_long") = 1);

    m.def(
        "mass",
        [](const std::string &config, double p, const std::string &choice, double r, double theta) {
            ExperimentConfig c = parse_config(config);
            MassFunction M(c.spec.datum, p, MassChoice::parse(choice, p), std::max(64.0, r + 1));
            return M.at(r, std::cos(theta));
        },
        py::arg("config"), py::arg("p"), py::arg("choice"), py::arg("r"), py::arg("theta") = 0.0,
        "mass function of the config's datum at (r, theta)");
    m.def(
        "solution_log",
        [](const std::string &config, double t, double r, double theta) {
            ExperimentConfig c = parse_config(config);
            return solve(c.spec.datum, t, HPoint::axial(c.n, r, theta), c.spec.options.bump_route).log();
        },
        py::arg("config"), py::arg("t"), py::arg("r"), py::arg("theta") = 0.0);
    m.def(
        "converge",
        [](const std::string &config) {
            ExperimentConfig c = parse_config(config);
            ConvergenceReport rep;
            {
                py::gil_scoped_release release;
                rep = convergence_experiment(c.spec);
            }
            return report_rows(rep);
        },
        py::arg("config"), "run the convergence experiment described by a config text");
}
