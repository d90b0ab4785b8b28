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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsorf/link_analytics.hpp"

namespace fsorf
{

inline constexpr std::string_view version_string = "0.1.0";

/*!
 * A parameter sweep over the average SNR grid.
 *
 * String-valued fields take the same spellings as the command line:
 * scheme in {alamouti, as, both}, regime in {moderate, strong, custom},
 * outputs in {analytic, mc, both}, metrics in {pout, ber, both}. A custom
 * regime reads alpha, beta and xi; xi_is_squared reinterprets xi as xi^2.
 */
struct SweepSpec
{
    std::string scheme = "both";
    std::string regime = "moderate";
    double alpha = 4.0;
    double beta = 1.9;
    double xi = 10.45;
    bool xi_is_squared = false;
    double snr_db_start = 0.0;
    double snr_db_stop = 30.0;
    double snr_db_step = 2.0;
    double gamma_th_db = 10.0;
    double eta = 1.0;
    std::size_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    std::string outputs = "both";
    std::string metrics = "both";
    // Threads for the Monte Carlo engine; does not change any output.
    unsigned n_workers = 1;

    // Throws ParameterError describing the first invalid field.
    void validate() const;
    [[nodiscard]] std::vector<double> grid() const;
    [[nodiscard]] std::vector<Scheme> schemes() const;
    // Regime with the xi interpretation applied.
    [[nodiscard]] TurbulenceRegime resolved_regime() const;
    // "start:stop:step".
    [[nodiscard]] std::string snr_db_text() const;
};

// Parses "v" or "start:stop:step" into the spec's grid fields.
void parse_snr_range(std::string_view text, SweepSpec& spec);

struct SweepRow
{
    std::string scheme;
    std::string regime;
    double gamma_avg_db = 0;
    std::optional<double> pout_analytic;
    std::optional<double> pout_mc;
    std::optional<double> pout_ci95;
    std::optional<double> ber_analytic;
    std::optional<double> ber_mc;
    std::optional<double> ber_ci95;
    std::optional<std::size_t> n_samples;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

enum class Figure
{
    fig2, // BER, both schemes, both regimes
    fig3, // outage, both schemes, both regimes
    fig4, // outage, selection only, moderate regime
};

Figure parse_figure(std::string_view name);
std::string_view to_string(Figure fig);

// The per-regime specs a figure runs, derived from `base` (grid, samples,
// seed, outputs and threshold are kept).
std::vector<SweepSpec> figure_specs(Figure fig, const SweepSpec& base);
std::vector<SweepRow> run_figure(Figure fig, const SweepSpec& base);

//---------------------------------------------------------------------------//
// Output
//---------------------------------------------------------------------------//

// "# fsorf <version> cmd=<command> seed=... <resolved parameters>".
std::string header_comment(std::string_view command, const std::vector<SweepSpec>& specs);

// Scientific notation below 1e-3, fixed otherwise.
std::string format_value(double v);

void write_csv(std::ostream& os,
               std::string_view command,
               const std::vector<SweepSpec>& specs,
               const std::vector<SweepRow>& rows,
               const std::vector<std::string>& extra_comments = {});

// {"meta": {...}, "rows": [...]}; missing values are null.
void write_json(std::ostream& os,
                std::string_view command,
                const std::vector<SweepSpec>& specs,
                const std::vector<SweepRow>& rows,
                const std::vector<std::string>& extra_comments = {});

//---------------------------------------------------------------------------//
// Configuration files
//---------------------------------------------------------------------------//

// Flat key=value lines ('#' comments) or a JSON object; keys are SweepSpec
// field names, with snr_db accepted as "start:stop:step". Unknown keys throw
// ParameterError.
void apply_config_text(std::string_view text, SweepSpec& spec);
void apply_config_file(const std::string& path, SweepSpec& spec);

} // namespace fsorf
