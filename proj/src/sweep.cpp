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

#include "fsorf/sweep.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "fsorf/simulate.hpp"

namespace fsorf
{
namespace
{

using nlohmann::json;

bool one_of(std::string_view v, std::initializer_list<std::string_view> options)
{
    for (auto o : options)
    {
        if (v == o)
        {
            return true;
        }
    }
    return false;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
    {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view key)
{
    text = trim(text);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
    {
        throw ParameterError(fmt::format("{}: '{}' is not a number", key, text));
    }
    return v;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view key)
{
    text = trim(text);
    // Accept 1e6-style counts as long as they are exact integers.
    const double d = parse_double(text, key);
    if (!(d >= 0) || d != std::floor(d) || d > 1.8e19)
    {
        throw ParameterError(fmt::format("{}: '{}' is not a non-negative integer", key, text));
    }
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc{} && ptr == text.data() + text.size())
    {
        return v;
    }
    return static_cast<std::uint64_t>(d);
}

bool parse_bool(std::string_view text, std::string_view key)
{
    text = trim(text);
    if (one_of(text, {"1", "true", "yes", "on"}))
    {
        return true;
    }
    if (one_of(text, {"0", "false", "no", "off"}))
    {
        return false;
    }
    throw ParameterError(fmt::format("{}: '{}' is not a boolean", key, text));
}

void set_field(SweepSpec& spec, std::string_view key, std::string_view value)
{
    value = trim(value);
    if (key == "scheme")
        spec.scheme = std::string(value);
    else if (key == "regime")
        spec.regime = std::string(value);
    else if (key == "alpha")
        spec.alpha = parse_double(value, key);
    else if (key == "beta")
        spec.beta = parse_double(value, key);
    else if (key == "xi")
        spec.xi = parse_double(value, key);
    else if (key == "xi_is_squared")
        spec.xi_is_squared = parse_bool(value, key);
    else if (key == "snr_db")
        parse_snr_range(value, spec);
    else if (key == "snr_db_start")
        spec.snr_db_start = parse_double(value, key);
    else if (key == "snr_db_stop")
        spec.snr_db_stop = parse_double(value, key);
    else if (key == "snr_db_step")
        spec.snr_db_step = parse_double(value, key);
    else if (key == "gamma_th_db")
        spec.gamma_th_db = parse_double(value, key);
    else if (key == "eta")
        spec.eta = parse_double(value, key);
    else if (key == "n_samples")
        spec.n_samples = parse_unsigned(value, key);
    else if (key == "seed")
        spec.seed = parse_unsigned(value, key);
    else if (key == "outputs")
        spec.outputs = std::string(value);
    else if (key == "metrics")
        spec.metrics = std::string(value);
    else if (key == "n_workers")
        spec.n_workers = static_cast<unsigned>(parse_unsigned(value, key));
    else
        throw ParameterError(fmt::format("config: unknown key '{}'", key));
}

std::string json_scalar_text(const json& v)
{
    if (v.is_string())
    {
        return v.get<std::string>();
    }
    if (v.is_boolean())
    {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number_unsigned())
    {
        return std::to_string(v.get<std::uint64_t>());
    }
    if (v.is_number_integer())
    {
        return std::to_string(v.get<std::int64_t>());
    }
    if (v.is_number())
    {
        return fmt::format("{}", v.get<double>());
    }
    throw ParameterError("config: values must be scalars");
}

std::string row_scheme_name(Scheme s)
{
    return std::string(to_string(s));
}

json optional_json(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

std::string optional_text(const std::optional<double>& v)
{
    return v ? format_value(*v) : std::string{};
}

} // namespace

//---------------------------------------------------------------------------//
// SweepSpec
//---------------------------------------------------------------------------//

void SweepSpec::validate() const
{
    if (!one_of(scheme, {"alamouti", "as", "both"}))
    {
        throw ParameterError(fmt::format("scheme must be alamouti, as or both (got '{}')", scheme));
    }
    if (!one_of(regime, {"moderate", "strong", "custom"}))
    {
        throw ParameterError(fmt::format("regime must be moderate, strong or custom (got '{}')", regime));
    }
    if (!one_of(outputs, {"analytic", "mc", "both"}))
    {
        throw ParameterError(fmt::format("outputs must be analytic, mc or both (got '{}')", outputs));
    }
    if (!one_of(metrics, {"pout", "ber", "both"}))
    {
        throw ParameterError(fmt::format("metrics must be pout, ber or both (got '{}')", metrics));
    }
    if (!std::isfinite(snr_db_start) || !std::isfinite(snr_db_stop) || snr_db_start > snr_db_stop)
    {
        throw ParameterError("snr_db: start must not exceed stop");
    }
    if (!(snr_db_step > 0) || !std::isfinite(snr_db_step))
    {
        throw ParameterError("snr_db: step must be positive");
    }
    if (!std::isfinite(gamma_th_db))
    {
        throw ParameterError("gamma_th_db must be finite");
    }
    if (!(eta > 0) || !std::isfinite(eta))
    {
        throw ParameterError("eta must be positive");
    }
    if (outputs != "analytic" && n_samples < 1000)
    {
        throw ParameterError("n_samples must be at least 1000");
    }
    if (n_workers < 1)
    {
        throw ParameterError("n_workers must be at least 1");
    }
    resolved_regime().fso(1.0).validate();
}

std::vector<double> SweepSpec::grid() const
{
    std::vector<double> g;
    const double span = snr_db_stop - snr_db_start;
    const auto n = static_cast<std::size_t>(std::floor(span / snr_db_step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i)
    {
        g.push_back(snr_db_start + static_cast<double>(i) * snr_db_step);
    }
    return g;
}

std::vector<Scheme> SweepSpec::schemes() const
{
    if (scheme == "both")
    {
        return {Scheme::alamouti, Scheme::antenna_selection};
    }
    return {parse_scheme(scheme)};
}

TurbulenceRegime SweepSpec::resolved_regime() const
{
    TurbulenceRegime r = regime == "custom" ? TurbulenceRegime{"custom", alpha, beta, xi} : regime_preset(regime);
    if (xi_is_squared)
    {
        r.xi = std::sqrt(r.xi);
    }
    return r;
}

std::string SweepSpec::snr_db_text() const
{
    return fmt::format("{}:{}:{}", snr_db_start, snr_db_stop, snr_db_step);
}

void parse_snr_range(std::string_view text, SweepSpec& spec)
{
    text = trim(text);
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    for (;;)
    {
        const auto colon = text.find(':', pos);
        parts.push_back(text.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos));
        if (colon == std::string_view::npos)
        {
            break;
        }
        pos = colon + 1;
    }
    if (parts.size() == 1)
    {
        spec.snr_db_start = spec.snr_db_stop = parse_double(parts[0], "snr_db");
        spec.snr_db_step = 1.0;
    }
    else if (parts.size() == 3)
    {
        spec.snr_db_start = parse_double(parts[0], "snr_db");
        spec.snr_db_stop = parse_double(parts[1], "snr_db");
        spec.snr_db_step = parse_double(parts[2], "snr_db");
    }
    else
    {
        throw ParameterError(fmt::format("snr_db: expected 'value' or 'start:stop:step' (got '{}')", text));
    }
}

//---------------------------------------------------------------------------//
// Sweeps
//---------------------------------------------------------------------------//

std::vector<SweepRow> run_sweep(const SweepSpec& spec)
{
    spec.validate();
    const TurbulenceRegime regime = spec.resolved_regime();
    const double gamma_th_db = spec.gamma_th_db;
    const bool analytic = spec.outputs != "mc";
    const bool mc = spec.outputs != "analytic";
    const bool want_pout = spec.metrics != "ber";
    const bool want_ber = spec.metrics != "pout";
    const SimConfig sim{spec.n_samples, spec.seed, spec.n_workers, 65536, false};

    std::vector<SweepRow> rows;
    for (Scheme scheme : spec.schemes())
    {
        for (double db : spec.grid())
        {
            const LinkConfig cfg = make_link(regime, scheme, db, gamma_th_db, spec.eta);
            SweepRow row;
            row.scheme = row_scheme_name(scheme);
            row.regime = regime.name;
            row.gamma_avg_db = db;
            if (analytic)
            {
                if (want_pout)
                    row.pout_analytic = outage(cfg);
                if (want_ber)
                    row.ber_analytic = ber_analytic(cfg);
            }
            if (mc)
            {
                const LinkEstimates est = mc_link(cfg, sim);
                if (want_pout)
                {
                    row.pout_mc = est.outage.estimate;
                    row.pout_ci95 = est.outage.ci95_half_width;
                }
                if (want_ber)
                {
                    row.ber_mc = est.ber.estimate;
                    row.ber_ci95 = est.ber.ci95_half_width;
                }
                row.n_samples = spec.n_samples;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

Figure parse_figure(std::string_view name)
{
    if (name == "fig2")
        return Figure::fig2;
    if (name == "fig3")
        return Figure::fig3;
    if (name == "fig4")
        return Figure::fig4;
    throw ParameterError(fmt::format("unknown figure '{}'", name));
}

std::string_view to_string(Figure fig)
{
    switch (fig)
    {
    case Figure::fig2:
        return "fig2";
    case Figure::fig3:
        return "fig3";
    case Figure::fig4:
        return "fig4";
    }
    return "";
}

std::vector<SweepSpec> figure_specs(Figure fig, const SweepSpec& base)
{
    SweepSpec s = base;
    s.xi_is_squared = false;
    std::vector<SweepSpec> specs;
    switch (fig)
    {
    case Figure::fig2:
    case Figure::fig3:
        s.scheme = "both";
        s.metrics = fig == Figure::fig2 ? "ber" : "pout";
        for (const char* r : {"moderate", "strong"})
        {
            s.regime = r;
            specs.push_back(s);
        }
        break;
    case Figure::fig4:
        s.scheme = "as";
        s.metrics = "pout";
        s.regime = "moderate";
        specs.push_back(s);
        break;
    }
    return specs;
}

std::vector<SweepRow> run_figure(Figure fig, const SweepSpec& base)
{
    std::vector<SweepRow> rows;
    for (const auto& s : figure_specs(fig, base))
    {
        auto part = run_sweep(s);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

//---------------------------------------------------------------------------//
// Output
//---------------------------------------------------------------------------//

std::string format_value(double v)
{
    if (std::abs(v) < 1e-3)
    {
        return fmt::format("{:.9e}", v);
    }
    return fmt::format("{:.10f}", v);
}

std::string header_comment(std::string_view command, const std::vector<SweepSpec>& specs)
{
    std::string out = fmt::format("# fsorf {} cmd={}", version_string, command);
    if (specs.empty())
    {
        return out;
    }
    const SweepSpec& s0 = specs.front();
    out += fmt::format(" seed={} snr_db={} gamma_th_db={} eta={} n_samples={} outputs={} metrics={}", s0.seed,
                       s0.snr_db_text(), s0.gamma_th_db, s0.eta, s0.n_samples, s0.outputs, s0.metrics);
    for (const auto& s : specs)
    {
        const TurbulenceRegime r = s.resolved_regime();
        const FsoParams p = r.fso(1.0);
        out += fmt::format(" | scheme={} regime={} alpha={} beta={} xi={} kappa={:.12g}", s.scheme, r.name, r.alpha,
                           r.beta, r.xi, p.kappa);
    }
    return out;
}

void write_csv(std::ostream& os,
               std::string_view command,
               const std::vector<SweepSpec>& specs,
               const std::vector<SweepRow>& rows,
               const std::vector<std::string>& extra_comments)
{
    os << header_comment(command, specs) << '\n';
    for (const auto& c : extra_comments)
    {
        os << "# " << c << '\n';
    }
    os << "scheme,regime,gamma_avg_db,pout_analytic,pout_mc,pout_ci95,ber_analytic,ber_mc,ber_ci95,n_samples\n";
    for (const auto& r : rows)
    {
        os << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.scheme, r.regime, r.gamma_avg_db,
                          optional_text(r.pout_analytic), optional_text(r.pout_mc), optional_text(r.pout_ci95),
                          optional_text(r.ber_analytic), optional_text(r.ber_mc), optional_text(r.ber_ci95),
                          r.n_samples ? std::to_string(*r.n_samples) : std::string{});
    }
}

void write_json(std::ostream& os,
                std::string_view command,
                const std::vector<SweepSpec>& specs,
                const std::vector<SweepRow>& rows,
                const std::vector<std::string>& extra_comments)
{
    json meta;
    meta["generator"] = fmt::format("fsorf {}", version_string);
    meta["command"] = std::string(command);
    meta["header"] = header_comment(command, specs);
    meta["notes"] = extra_comments;
    json out_rows = json::array();
    for (const auto& r : rows)
    {
        json j;
        j["scheme"] = r.scheme;
        j["regime"] = r.regime;
        j["gamma_avg_db"] = r.gamma_avg_db;
        j["pout_analytic"] = optional_json(r.pout_analytic);
        j["pout_mc"] = optional_json(r.pout_mc);
        j["pout_ci95"] = optional_json(r.pout_ci95);
        j["ber_analytic"] = optional_json(r.ber_analytic);
        j["ber_mc"] = optional_json(r.ber_mc);
        j["ber_ci95"] = optional_json(r.ber_ci95);
        j["n_samples"] = r.n_samples ? json(*r.n_samples) : json(nullptr);
        out_rows.push_back(std::move(j));
    }
    json doc;
    doc["meta"] = std::move(meta);
    doc["rows"] = std::move(out_rows);
    os << doc.dump(2) << '\n';
}

//---------------------------------------------------------------------------//
// Configuration
//---------------------------------------------------------------------------//

void apply_config_text(std::string_view text, SweepSpec& spec)
{
    const std::string_view body = trim(text);
    if (!body.empty() && body.front() == '{')
    {
        json doc;
        try
        {
            doc = json::parse(body);
        }
        catch (const json::parse_error& e)
        {
            throw ParameterError(fmt::format("config: invalid JSON ({})", e.what()));
        }
        for (const auto& [key, value] : doc.items())
        {
            if (key == "snr_db" && value.is_array())
            {
                if (value.size() != 3)
                {
                    throw ParameterError("config: snr_db array must be [start, stop, step]");
                }
                spec.snr_db_start = value[0].get<double>();
                spec.snr_db_stop = value[1].get<double>();
                spec.snr_db_step = value[2].get<double>();
                continue;
            }
            set_field(spec, key, json_scalar_text(value));
        }
        return;
    }

    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line))
    {
        ++line_no;
        std::string_view l = trim(line);
        if (l.empty() || l.front() == '#')
        {
            continue;
        }
        const auto eq = l.find('=');
        if (eq == std::string_view::npos)
        {
            throw ParameterError(fmt::format("config line {}: expected key=value", line_no));
        }
        set_field(spec, trim(l.substr(0, eq)), l.substr(eq + 1));
    }
}

void apply_config_file(const std::string& path, SweepSpec& spec)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ParameterError(fmt::format("cannot open config file '{}'", path));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(buf.str(), spec);
}

} // namespace fsorf
