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

#include "fsorf/validation.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <ostream>

#include <fmt/format.h>

namespace fsorf
{
namespace
{

double rel_error(double value, double reference)
{
    if (reference == 0.0)
    {
        return std::abs(value);
    }
    return std::abs(value - reference) / std::abs(reference);
}

// Runs `measure`, turning exceptions into a failed check.
Check make_check(std::string name, double tolerance, const std::function<double()>& measure)
{
    Check c{std::move(name), 0.0, tolerance, false, {}};
    try
    {
        c.measured = measure();
        c.passed = c.measured <= tolerance;
    }
    catch (const std::exception& e)
    {
        c.measured = NAN;
        c.note = e.what();
    }
    return c;
}

std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
    {
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    }
    return g;
}

// Largest drop between consecutive values; zero for a non-decreasing sequence.
double max_decrease(const std::function<double(double)>& f, const std::vector<double>& grid)
{
    double worst = 0;
    double prev = f(0.0);
    for (double x : grid)
    {
        const double v = f(x);
        worst = std::max(worst, prev - v);
        prev = v;
    }
    return worst;
}

const std::vector<double> ber_grid_db = {0, 5, 10, 15, 20, 25, 30};

} // namespace

std::vector<OracleCase> oracle_test_set()
{
    std::vector<OracleCase> cases;
    for (const auto& regime : {moderate_regime(), strong_regime()})
    {
        const FsoParams p = regime.fso(1.0);
        const PsiVectors psi = PsiVectors::from(p);
        const MeijerGSpec g31 = fso_cdf_kernel(p);
        const MeijerGSpec g63_1{6, 3, {psi.psi1.begin(), psi.psi1.end()}, {psi.psi2.begin(), psi.psi2.end()}};
        const MeijerGSpec g63_3{6, 3, {psi.psi3.begin(), psi.psi3.end()}, {psi.psi2.begin(), psi.psi2.end()}};
        for (double z : {0.1, 0.5, 2.0, 5.0, 10.0})
        {
            cases.push_back({fmt::format("G31 {} z={}", regime.name, z), g31, z});
        }
        for (double z : {0.01, 0.1, 0.5, 1.0, 2.0})
        {
            cases.push_back({fmt::format("G63 psi1 {} z={}", regime.name, z), g63_1, z});
        }
        for (double z : {0.01, 0.1, 0.5, 1.0, 2.0})
        {
            cases.push_back({fmt::format("G63 psi3 {} z={}", regime.name, z), g63_3, z});
        }
    }
    return cases;
}

bool Section::passed() const
{
    return first_failure() == nullptr;
}

const Check* Section::first_failure() const
{
    for (const auto& c : checks)
    {
        if (!c.passed)
        {
            return &c;
        }
    }
    return nullptr;
}

//---------------------------------------------------------------------------//
// Suites
//---------------------------------------------------------------------------//

Section validate_special()
{
    Section s{"special", {}, {}};

    for (const auto& oc : oracle_test_set())
    {
        s.checks.push_back(make_check("meijer_g vs oracle " + oc.label, 1e-8, [&] {
            return rel_error(meijer_g(oc.spec, oc.z), meijer_g_oracle(oc.spec, oc.z));
        }));
    }

    MeijerGOptions loose;
    loose.series.rel_tol = 1e-13L;
    for (const auto& oc : oracle_test_set())
    {
        s.checks.push_back(make_check("series window 1e-13 " + oc.label, 1e-10, [&] {
            return rel_error(meijer_g(oc.spec, oc.z, loose), meijer_g(oc.spec, oc.z));
        }));
    }

    const MeijerGSpec exp_spec{1, 0, {}, {0.0}};
    const MeijerGSpec rational_spec{1, 1, {0.0}, {0.0}};
    for (double z : {0.01, 0.1, 1.0, 10.0, 100.0})
    {
        s.checks.push_back(make_check(fmt::format("identity G10_01 = exp(-z) z={}", z), 1e-12,
                                      [&] { return rel_error(meijer_g(exp_spec, z), std::exp(-z)); }));
        s.checks.push_back(make_check(fmt::format("identity G11_11 = 1/(1+z) z={}", z), 1e-12,
                                      [&] { return rel_error(meijer_g(rational_spec, z), 1.0 / (1.0 + z)); }));
    }
    s.checks.push_back(make_check("oracle identity G10_01 z=1", 1e-10,
                                  [&] { return rel_error(meijer_g_oracle(exp_spec, 1.0), std::exp(-1.0)); }));
    s.checks.push_back(make_check("oracle identity G11_11 z=1", 1e-10,
                                  [&] { return rel_error(meijer_g_oracle(rational_spec, 1.0), 0.5); }));

    for (double x : {0.1, 0.95, 2.1, 54.6})
    {
        s.checks.push_back(make_check(fmt::format("ln_gamma recurrence x={}", x), 1e-12, [&] {
            const wide_t lhs = std::exp(ln_gamma(x + 1).log_abs);
            const wide_t rhs = x * std::exp(ln_gamma(x).log_abs);
            return static_cast<double>(std::abs(lhs - rhs) / rhs);
        }));
    }
    return s;
}

Section validate_cdf()
{
    Section s{"cdf", {}, {}};
    const auto grid = log_grid(1e-6, 1e6, 1000);

    for (const auto& regime : {moderate_regime(), strong_regime()})
    {
        const FsoParams p = regime.fso(1.0);
        auto f = [&](double g) { return cdf_fso(g, p); };
        s.checks.push_back(make_check("cdf_fso non-decreasing " + regime.name, 1e-12,
                                      [&] { return max_decrease(f, grid); }));
        s.checks.push_back(make_check("cdf_fso(0) = 0 " + regime.name, 0.0, [&] { return std::abs(f(0.0)); }));
        s.checks.push_back(make_check("cdf_fso -> 1 " + regime.name, 1e-6, [&] { return 1.0 - f(grid.back()); }));
    }
    for (Scheme scheme : {Scheme::alamouti, Scheme::antenna_selection})
    {
        const RfParams p{1.0, scheme};
        auto f = [&](double g) { return cdf_rf(g, p); };
        const std::string tag(to_string(scheme));
        s.checks.push_back(make_check("cdf_rf non-decreasing " + tag, 0.0, [&] { return max_decrease(f, grid); }));
        s.checks.push_back(make_check("cdf_rf(0) = 0 " + tag, 0.0, [&] { return std::abs(f(0.0)); }));
        s.checks.push_back(make_check("cdf_rf -> 1 " + tag, 1e-12, [&] { return 1.0 - f(60.0); }));
        s.checks.push_back(make_check("cdf_rf <= cdf_rayleigh " + tag, 0.0, [&] {
            double worst = 0;
            for (double g : grid)
            {
                worst = std::max(worst, f(g) - cdf_rayleigh(g, 1.0));
            }
            return worst;
        }));
    }
    s.checks.push_back(make_check("alamouti cdf <= selection cdf", 0.0, [&] {
        double worst = 0;
        for (double g : grid)
        {
            worst = std::max(worst, cdf_rf(g, {1.0, Scheme::alamouti}) - cdf_rf(g, {1.0, Scheme::antenna_selection}));
        }
        return worst;
    }));

    for (const auto& regime : {moderate_regime(), strong_regime()})
    {
        for (Scheme scheme : {Scheme::alamouti, Scheme::antenna_selection})
        {
            for (double db : ber_grid_db)
            {
                const LinkConfig cfg = make_link(regime, scheme, db, 10.0);
                s.checks.push_back(make_check(
                    fmt::format("outage factorization {} {} {} dB", to_string(scheme), regime.name, db), 1e-12, [&] {
                        const double combined =
                            outage_combined(cdf_rf(cfg.gamma_th, cfg.rf), cdf_fso(cfg.gamma_th, cfg.fso));
                        return std::abs(outage(cfg) - combined);
                    }));
            }
        }
    }
    return s;
}

Section validate_ber(const ValidationOptions& opts)
{
    Section s{"ber", {}, {}};
    const ClosedFormOptions printed{AcBerForm::printed, opts.psi2_perturbation};
    const ClosedFormOptions corrected{AcBerForm::corrected, opts.psi2_perturbation};

    for (const auto& regime : {moderate_regime(), strong_regime()})
    {
        for (Scheme scheme : {Scheme::alamouti, Scheme::antenna_selection})
        {
            std::vector<double> ber_values;
            std::vector<double> pout_values;
            for (double db : ber_grid_db)
            {
                const LinkConfig cfg = make_link(regime, scheme, db, 10.0);
                const std::string where = fmt::format("{} {} {} dB", to_string(scheme), regime.name, db);
                Check c = make_check("closed-form/quadrature mismatch " + where, 1e-6, [&] {
                    const double q = ber_quadrature(cfg);
                    const double e_printed = rel_error(ber_closed(cfg, printed), q);
                    if (scheme == Scheme::antenna_selection || e_printed <= 1e-6)
                    {
                        return e_printed;
                    }
                    const double e_corrected = rel_error(ber_closed(cfg, corrected), q);
                    s.discrepancies.push_back({"ber_ac_closed " + where,
                                               "second Meijer-G term weight 1/(gamma_bar_RF (1 + 1/gamma_bar_RF)^2) "
                                               "in place of 1/(2 gamma_bar_RF (1 + 1/gamma_bar_RF)^2)",
                                               e_printed, e_corrected});
                    return e_corrected;
                });
                s.checks.push_back(std::move(c));
                try
                {
                    ber_values.push_back(ber_analytic(cfg));
                    pout_values.push_back(outage(cfg));
                }
                catch (const std::exception&)
                {
                    ber_values.push_back(NAN);
                    pout_values.push_back(NAN);
                }
            }
            const std::string tag = fmt::format("{} {}", to_string(scheme), regime.name);
            s.checks.push_back(make_check("ber bounds and strict decrease " + tag, 0.0, [&] {
                double bad = 0;
                for (std::size_t i = 0; i < ber_values.size(); ++i)
                {
                    const bool in_range = ber_values[i] >= 0 && ber_values[i] <= 0.5;
                    const bool decreasing = i == 0 || ber_values[i] < ber_values[i - 1];
                    bad += (in_range && decreasing) ? 0 : 1;
                }
                return bad;
            }));
            s.checks.push_back(make_check("outage bounds and strict decrease " + tag, 0.0, [&] {
                double bad = 0;
                for (std::size_t i = 0; i < pout_values.size(); ++i)
                {
                    const bool in_range = pout_values[i] >= 0 && pout_values[i] <= 1;
                    const bool decreasing = i == 0 || pout_values[i] < pout_values[i - 1];
                    bad += (in_range && decreasing) ? 0 : 1;
                }
                return bad;
            }));
        }
        s.checks.push_back(make_check("|log10 BER_AC - log10 BER_AS| " + regime.name, 0.3, [&] {
            double worst = 0;
            for (double db : ber_grid_db)
            {
                const double ac = ber_analytic(make_link(regime, Scheme::alamouti, db, 10.0));
                const double as = ber_analytic(make_link(regime, Scheme::antenna_selection, db, 10.0));
                worst = std::max(worst, std::abs(std::log10(ac) - std::log10(as)));
            }
            return worst;
        }));
    }
    return s;
}

std::vector<Section> run_validation(std::string_view suite, const ValidationOptions& opts)
{
    if (suite == "special")
        return {validate_special()};
    if (suite == "cdf")
        return {validate_cdf()};
    if (suite == "ber")
        return {validate_ber(opts)};
    if (suite == "all")
        return {validate_special(), validate_cdf(), validate_ber(opts)};
    throw ParameterError(fmt::format("unknown validation suite '{}'", suite));
}

void write_report(std::ostream& os, const std::vector<Section>& sections)
{
    std::size_t failed_sections = 0;
    for (const auto& s : sections)
    {
        os << fmt::format("== section {} ({} checks) ==\n", s.name, s.checks.size());
        for (const auto& c : s.checks)
        {
            os << fmt::format("{}  {:<58} measured {:.3e}  tolerance {:.1e}{}\n", c.passed ? "PASS" : "FAIL", c.name,
                              c.measured, c.tolerance, c.note.empty() ? "" : "  (" + c.note + ")");
        }
        for (const auto& d : s.discrepancies)
        {
            os << fmt::format("DISCREPANCY  {}: printed form rel. error {:.3e}; quadrature taken as "
                              "authoritative; corrected {} gives {:.3e}\n",
                              d.name, d.printed_rel_error, d.corrected_term, d.corrected_rel_error);
        }
        if (const Check* f = s.first_failure())
        {
            ++failed_sections;
            os << fmt::format("section {}: FAIL (first failing check: {})\n", s.name, f->name);
        }
        else
        {
            os << fmt::format("section {}: PASS\n", s.name);
        }
    }
    os << fmt::format("summary: {} section(s), {} failed\n", sections.size(), failed_sections);
}

} // namespace fsorf
