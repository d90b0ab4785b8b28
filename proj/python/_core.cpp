// SPDX-License-Identifier: Apache-2.0
//
// fsorf: performance analysis of dual-hop hybrid FSO/RF links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "fsorf/channel_models.hpp"
#include "fsorf/errors.hpp"
#include "fsorf/link_analytics.hpp"
#include "fsorf/simulate.hpp"
#include "fsorf/special_functions.hpp"
#include "fsorf/sweep.hpp"
#include "fsorf/validation.hpp"

namespace py = pybind11;
using namespace fsorf;

namespace
{

TurbulenceRegime regime_from(const std::string& name, double alpha, double beta, double xi)
{
    if (name == "custom")
    {
        return {"custom", alpha, beta, xi};
    }
    return regime_preset(name);
}

LinkConfig link_from(const std::string& scheme,
                     const std::string& regime,
                     double gamma_avg_db,
                     double gamma_th_db,
                     double eta,
                     double alpha,
                     double beta,
                     double xi)
{
    return make_link(regime_from(regime, alpha, beta, xi), parse_scheme(scheme), gamma_avg_db, gamma_th_db, eta);
}

py::dict result_dict(const SimResult& r)
{
    py::dict d;
    d["estimate"] = r.estimate;
    d["ci95_half_width"] = r.ci95_half_width;
    d["ci95_low"] = r.ci95_low;
    d["ci95_high"] = r.ci95_high;
    d["n_samples"] = r.n_samples;
    d["undersampled"] = r.undersampled;
    return d;
}

py::dict row_dict(const SweepRow& r)
{
    py::dict d;
    d["scheme"] = r.scheme;
    d["regime"] = r.regime;
    d["gamma_avg_db"] = r.gamma_avg_db;
    d["pout_analytic"] = r.pout_analytic;
    d["pout_mc"] = r.pout_mc;
    d["pout_ci95"] = r.pout_ci95;
    d["ber_analytic"] = r.ber_analytic;
    d["ber_mc"] = r.ber_mc;
    d["ber_ci95"] = r.ber_ci95;
    d["n_samples"] = r.n_samples;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Analytic and Monte Carlo performance of dual-hop hybrid FSO/RF links";
    m.attr("__version__") = std::string(version_string);

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DegenerateParameterError>(m, "DegenerateParameterError", PyExc_ArithmeticError);
    py::register_exception<PoleError>(m, "PoleError", PyExc_ArithmeticError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<RangeError>(m, "RangeError", PyExc_ArithmeticError);

    // Special functions.
    m.def(
        "ln_gamma",
        [](double x) {
            const LogGamma g = ln_gamma(x);
            return py::make_tuple(static_cast<double>(g.log_abs), g.sign);
        },
        py::arg("x"), "Return (ln|Gamma(x)|, sign of Gamma(x)).");
    m.def(
        "meijer_g",
        [](int mm, int n, std::vector<double> a, std::vector<double> b, double z) {
            return meijer_g(MeijerGSpec{mm, n, std::move(a), std::move(b)}, z);
        },
        py::arg("m"), py::arg("n"), py::arg("a"), py::arg("b"), py::arg("z"),
        "Meijer G^{m,n}_{p,q}(z | a; b) for real z > 0.");
    m.def(
        "meijer_g_oracle",
        [](int mm, int n, std::vector<double> a, std::vector<double> b, double z) {
            return meijer_g_oracle(MeijerGSpec{mm, n, std::move(a), std::move(b)}, z);
        },
        py::arg("m"), py::arg("n"), py::arg("a"), py::arg("b"), py::arg("z"),
        "Meijer G by quadrature of its Mellin-Barnes integral.");

    // Channel models.
    m.def(
        "cdf_fso",
        [](double gamma, double gamma_bar, double alpha, double beta, double xi) {
            return cdf_fso(gamma, FsoParams::make(alpha, beta, xi, gamma_bar));
        },
        py::arg("gamma"), py::arg("gamma_bar"), py::arg("alpha") = 4.0, py::arg("beta") = 1.9,
        py::arg("xi") = 10.45);
    m.def(
        "cdf_rf",
        [](double gamma, double gamma_bar, const std::string& scheme) {
            return cdf_rf(gamma, RfParams{gamma_bar, parse_scheme(scheme)});
        },
        py::arg("gamma"), py::arg("gamma_bar"), py::arg("scheme") = "alamouti");

    // Link metrics. Every function takes the same link description.
#define FSORF_LINK_ARGS                                                                                          \
    py::arg("scheme"), py::arg("gamma_avg_db"), py::arg("regime") = "moderate", py::arg("gamma_th_db") = 10.0, \
        py::arg("eta") = 1.0, py::arg("alpha") = 4.0, py::arg("beta") = 1.9, py::arg("xi") = 10.45

    m.def(
        "outage",
        [](const std::string& scheme, double db, const std::string& regime, double th, double eta, double a,
           double b, double xi) { return outage(link_from(scheme, regime, db, th, eta, a, b, xi)); },
        FSORF_LINK_ARGS);
    m.def(
        "ber",
        [](const std::string& scheme, double db, const std::string& regime, double th, double eta, double a,
           double b, double xi) { return ber_analytic(link_from(scheme, regime, db, th, eta, a, b, xi)); },
        FSORF_LINK_ARGS, "Closed-form DPSK bit error rate.");
    m.def(
        "ber_quadrature",
        [](const std::string& scheme, double db, const std::string& regime, double th, double eta, double a,
           double b, double xi) { return ber_quadrature(link_from(scheme, regime, db, th, eta, a, b, xi)); },
        FSORF_LINK_ARGS, "Bit error rate by numerical integration of the end-to-end CDF.");
    m.def(
        "simulate",
        [](const std::string& scheme, double db, const std::string& regime, double th, double eta, double a,
           double b, double xi, std::size_t n_samples, std::uint64_t seed, unsigned n_workers) {
            const LinkConfig cfg = link_from(scheme, regime, db, th, eta, a, b, xi);
            SimConfig sim;
            sim.n_samples = n_samples;
            sim.seed = seed;
            sim.n_workers = n_workers;
            LinkEstimates est;
            {
                py::gil_scoped_release release;
                est = mc_link(cfg, sim);
            }
            py::dict d;
            d["outage"] = result_dict(est.outage);
            d["ber"] = result_dict(est.ber);
            return d;
        },
        FSORF_LINK_ARGS, py::arg("n_samples") = 1'000'000, py::arg("seed") = 1, py::arg("n_workers") = 1,
        "Monte Carlo outage and BER estimates with 95% intervals.");
#undef FSORF_LINK_ARGS

    // Sweeps.
    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("scheme", &SweepSpec::scheme)
        .def_readwrite("regime", &SweepSpec::regime)
        .def_readwrite("alpha", &SweepSpec::alpha)
        .def_readwrite("beta", &SweepSpec::beta)
        .def_readwrite("xi", &SweepSpec::xi)
        .def_readwrite("xi_is_squared", &SweepSpec::xi_is_squared)
        .def_readwrite("snr_db_start", &SweepSpec::snr_db_start)
        .def_readwrite("snr_db_stop", &SweepSpec::snr_db_stop)
        .def_readwrite("snr_db_step", &SweepSpec::snr_db_step)
        .def_readwrite("gamma_th_db", &SweepSpec::gamma_th_db)
        .def_readwrite("eta", &SweepSpec::eta)
        .def_readwrite("n_samples", &SweepSpec::n_samples)
        .def_readwrite("seed", &SweepSpec::seed)
        .def_readwrite("outputs", &SweepSpec::outputs)
        .def_readwrite("metrics", &SweepSpec::metrics)
        .def_readwrite("n_workers", &SweepSpec::n_workers)
        .def("set_snr_db", [](SweepSpec& s, const std::string& text) { parse_snr_range(text, s); },
             py::arg("text"), "Set the grid from 'v' or 'start:stop:step'.")
        .def("apply_config", [](SweepSpec& s, const std::string& text) { apply_config_text(text, s); },
             py::arg("text"), "Apply key=value or JSON configuration text.")
        .def("validate", &SweepSpec::validate)
        .def("grid", &SweepSpec::grid);

    m.def(
        "run_sweep",
        [](const SweepSpec& spec) {
            std::vector<SweepRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_sweep(spec);
            }
            py::list out;
            for (const auto& r : rows)
            {
                out.append(row_dict(r));
            }
            return out;
        },
        py::arg("spec"));
    m.def(
        "sweep_csv",
        [](const SweepSpec& spec) {
            std::ostringstream os;
            {
                py::gil_scoped_release release;
                write_csv(os, "sweep", {spec}, run_sweep(spec));
            }
            return os.str();
        },
        py::arg("spec"), "Run a sweep and return the CSV text the command-line tool writes.");

    m.def(
        "validate",
        [](const std::string& suite, double psi2_perturbation) {
            const auto sections = run_validation(suite, {psi2_perturbation});
            std::ostringstream os;
            write_report(os, sections);
            bool ok = true;
            for (const auto& s : sections)
            {
                ok = ok && s.passed();
            }
            return py::make_tuple(ok, os.str());
        },
        py::arg("suite") = "all", py::arg("psi2_perturbation") = 0.0,
        "Run a validation suite; returns (passed, report text).");
}
