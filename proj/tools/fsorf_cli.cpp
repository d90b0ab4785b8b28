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

/*
 * fsorf command-line front end.
 *
 *   fsorf sweep    [options]   outage/BER sweep over the average SNR grid
 *   fsorf fig2|fig3|fig4       the published figure sweeps
 *   fsorf validate [suite]     special | cdf | ber | all
 *
 * Exit status: 0 success, 1 validation or numerical failure, 2 usage error.
 */

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fsorf/sweep.hpp"
#include "fsorf/validation.hpp"

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

constexpr std::size_t precise_samples = 100'000'000;

// Values given on the command line; unset ones leave the config in place.
struct Overrides
{
    std::optional<std::string> config;
    std::optional<std::string> scheme;
    std::optional<std::string> regime;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> xi;
    bool xi_squared = false;
    std::optional<double> gamma_th_db;
    std::optional<std::string> snr_db;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> outputs;
    std::optional<unsigned> workers;
    std::optional<double> eta;
    bool precise = false;
    std::string out;
    std::string format = "csv";
};

void add_common_options(CLI::App* cmd, Overrides& o, bool link_options)
{
    cmd->add_option("--config", o.config, "key=value or JSON file with SweepSpec fields")->check(CLI::ExistingFile);
    if (link_options)
    {
        cmd->add_option("--scheme", o.scheme, "alamouti | as | both");
        cmd->add_option("--regime", o.regime, "moderate | strong | custom");
        cmd->add_option("--alpha", o.alpha, "large-scale turbulence shape (custom regime)");
        cmd->add_option("--beta", o.beta, "small-scale turbulence shape (custom regime)");
        cmd->add_option("--xi", o.xi, "pointing-error parameter (custom regime)");
        cmd->add_flag("--xi-squared", o.xi_squared, "interpret the regime's xi value as xi^2");
        cmd->add_option("--eta", o.eta, "optical conversion efficiency");
    }
    cmd->add_option("--gamma-th-db", o.gamma_th_db, "outage threshold in dB");
    cmd->add_option("--snr-db", o.snr_db, "average SNR grid: value or start:stop:step (dB)");
    cmd->add_option("--samples", o.samples, "Monte Carlo samples per grid point");
    cmd->add_option("--seed", o.seed, "Monte Carlo seed");
    cmd->add_option("--outputs", o.outputs, "analytic | mc | both");
    cmd->add_option("--workers", o.workers, "Monte Carlo threads (does not change results)");
    cmd->add_flag("--precise", o.precise, "use 1e8 Monte Carlo samples");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

fsorf::SweepSpec resolve_spec(const Overrides& o)
{
    fsorf::SweepSpec spec;
    if (o.config)
    {
        fsorf::apply_config_file(*o.config, spec);
    }
    if (o.scheme)
        spec.scheme = *o.scheme;
    if (o.regime)
        spec.regime = *o.regime;
    if (o.alpha)
        spec.alpha = *o.alpha;
    if (o.beta)
        spec.beta = *o.beta;
    if (o.xi)
        spec.xi = *o.xi;
    if (o.xi_squared)
        spec.xi_is_squared = true;
    if (o.gamma_th_db)
        spec.gamma_th_db = *o.gamma_th_db;
    if (o.snr_db)
        fsorf::parse_snr_range(*o.snr_db, spec);
    if (o.samples)
        spec.n_samples = *o.samples;
    if (o.precise)
        spec.n_samples = precise_samples;
    if (o.seed)
        spec.seed = *o.seed;
    if (o.outputs)
        spec.outputs = *o.outputs;
    if (o.workers)
        spec.n_workers = *o.workers;
    if (o.eta)
        spec.eta = *o.eta;
    // A custom parameter on the command line implies the custom regime.
    if (!o.regime && (o.alpha || o.beta || o.xi))
        spec.regime = "custom";
    spec.validate();
    return spec;
}

// Attached whenever an Alamouti closed-form BER column is written.
std::vector<std::string> with_ber_note(std::vector<std::string> notes, const std::vector<fsorf::SweepRow>& rows)
{
    const bool has_ac_ber = std::any_of(rows.begin(), rows.end(), [](const fsorf::SweepRow& r) {
        return r.scheme == fsorf::to_string(fsorf::Scheme::alamouti) && r.ber_analytic.has_value();
    });
    if (has_ac_ber)
    {
        notes.emplace_back("note: alamouti ber_analytic weights its second Meijer-G term by "
                           "1/(gamma_bar_RF (1 + 1/gamma_bar_RF)^2); the halved weight disagrees with numerical "
                           "integration (run 'fsorf validate ber' for the discrepancy report)");
    }
    return notes;
}

int emit(const Overrides& o,
         std::string_view command,
         const std::vector<fsorf::SweepSpec>& specs,
         const std::vector<fsorf::SweepRow>& rows,
         const std::vector<std::string>& notes)
{
    std::ostringstream buf;
    if (o.format == "json")
        fsorf::write_json(buf, command, specs, rows, notes);
    else
        fsorf::write_csv(buf, command, specs, rows, notes);

    if (o.out.empty())
    {
        std::cout << buf.str();
        return exit_ok;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file || !(file << buf.str()))
    {
        std::cerr << "fsorf: cannot write '" << o.out << "'\n";
        return exit_failure;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage and DPSK bit-error rate of dual-hop hybrid FSO/RF links"};
    app.set_version_flag("--version", std::string(fsorf::version_string));
    app.require_subcommand(1);

    Overrides sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "outage/BER sweep over average SNR");
    add_common_options(sweep, sweep_opts, true);

    Overrides fig_opts[3];
    CLI::App* fig_cmds[3];
    const char* fig_help[3] = {"BER vs average SNR, both schemes and regimes",
                               "outage vs average SNR, both schemes and regimes",
                               "outage vs average SNR, antenna selection, moderate regime"};
    for (int i = 0; i < 3; ++i)
    {
        fig_cmds[i] = app.add_subcommand("fig" + std::to_string(i + 2), fig_help[i]);
        add_common_options(fig_cmds[i], fig_opts[i], false);
    }

    std::string suite = "all";
    double perturb_psi2 = 0.0;
    std::string report_out;
    auto* validate = app.add_subcommand("validate", "run the oracle suites");
    validate->add_option("suite", suite, "special | cdf | ber | all")
        ->check(CLI::IsMember({"special", "cdf", "ber", "all"}));
    validate->add_option("--perturb-psi2", perturb_psi2, "add this offset to every psi2 entry (fault injection)");
    validate->add_option("--out", report_out, "report file (default: stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return exit_usage;
    }

    try
    {
        if (sweep->parsed())
        {
            const fsorf::SweepSpec spec = resolve_spec(sweep_opts);
            std::vector<fsorf::SweepRow> rows;
            try
            {
                rows = fsorf::run_sweep(spec);
            }
            catch (const std::exception& e)
            {
                std::cerr << "fsorf sweep: " << e.what() << '\n';
                return exit_failure;
            }
            return emit(sweep_opts, "sweep", {spec}, rows, with_ber_note({}, rows));
        }

        for (int i = 0; i < 3; ++i)
        {
            if (!fig_cmds[i]->parsed())
                continue;
            const auto fig = static_cast<fsorf::Figure>(i);
            const fsorf::SweepSpec base = resolve_spec(fig_opts[i]);
            const auto specs = fsorf::figure_specs(fig, base);
            std::vector<std::string> notes;
            if (fig == fsorf::Figure::fig4)
            {
                notes.emplace_back("scope: only the antenna-selection detect-and-forward curve is produced; the "
                                   "amplify-and-forward (fixed/variable gain) and parallel FSO/RF baselines are "
                                   "out of scope and not emitted");
            }
            std::vector<fsorf::SweepRow> rows;
            try
            {
                rows = fsorf::run_figure(fig, base);
            }
            catch (const std::exception& e)
            {
                std::cerr << "fsorf " << to_string(fig) << ": " << e.what() << '\n';
                return exit_failure;
            }
            return emit(fig_opts[i], to_string(fig), specs, rows, with_ber_note(notes, rows));
        }

        if (validate->parsed())
        {
            const auto sections = fsorf::run_validation(suite, {perturb_psi2});
            std::ostringstream buf;
            fsorf::write_report(buf, sections);
            if (report_out.empty())
            {
                std::cout << buf.str();
            }
            else
            {
                std::ofstream(report_out, std::ios::binary) << buf.str();
            }
            for (const auto& s : sections)
            {
                if (const auto* f = s.first_failure())
                {
                    std::cerr << "fsorf validate: FAILED " << f->name << '\n';
                    return exit_failure;
                }
            }
            return exit_ok;
        }
    }
    catch (const fsorf::ParameterError& e)
    {
        std::cerr << "fsorf: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception& e)
    {
        std::cerr << "fsorf: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_usage;
}
